#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qschur/verify.hpp"

using namespace qschur;

namespace {

enum Exit { kOk = 0, kIdentityFailure = 1, kUsage = 2, kPrecondition = 3 };

struct Options {
  std::string field = "q=2";
  std::string basis;
  std::string sub;
  bool has_sub = false;
  std::string lambda;
  std::string mu;
  long r = 0;
  bool has_r = false;
  std::string format = "text";
  std::size_t max_terms = 0;
};

// "q=2,q=3" and "q=2^2:1,1,1,q=3" both split before each "q=".
std::vector<std::string> split_fields(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t next = text.find(",q=", start);
    out.push_back(text.substr(start, next == std::string::npos ? std::string::npos : next - start));
    if (next == std::string::npos) break;
    start = next + 1;
  }
  return out;
}

void emit(const Options& o, const std::string& kind, const std::string& value) {
  if (o.format == "json") {
    nlohmann::ordered_json j{{"kind", kind}, {"field", o.field}, {"basis", o.basis}};
    if (o.has_sub) j["sub"] = o.sub;
    if (!o.lambda.empty()) j["lambda"] = o.lambda;
    if (!o.mu.empty()) j["mu"] = o.mu;
    if (o.has_r) j["r"] = o.r;
    j["value"] = value;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << value << "\n";
  }
}

void emit_list(const Options& o, const std::string& kind, const std::vector<std::string>& items) {
  if (o.format == "json") {
    nlohmann::ordered_json j{{"kind", kind}, {"field", o.field}, {"basis", o.basis}, {"items", items}};
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& s : items) std::cout << s << "\n";
  }
}

Subspace target_space(const FieldRef& f, const Options& o) {
  const Subspace v = Subspace::parse(f, o.basis);
  return o.has_sub ? internal_quotient(v, Subspace::parse(f, o.sub)) : v;
}

Partition need_partition(const std::string& text, const char* flag) {
  if (text.empty()) throw Error(ErrorKind::ParseError, std::string(flag) + " is required");
  return Partition::parse(text);
}

int cmd_compute(const std::string& kind, const Options& o) {
  const FieldRef f = Field::parse(o.field);
  SchurContext ctx(f);
  const Subspace v = target_space(f, o);
  Poly value(f);
  if (kind == "S") {
    value = ctx.schur_S(need_partition(o.lambda, "--lambda"), v);
  } else if (kind == "skew") {
    value = ctx.skew_S(need_partition(o.lambda, "--lambda"), Partition::parse(o.mu), v);
  } else if (kind == "tilde") {
    value = ctx.tilde_S(need_partition(o.lambda, "--lambda"), Partition::parse(o.mu), v);
  } else if (kind == "H" || kind == "E") {
    if (!o.has_r) throw Error(ErrorKind::ParseError, "--r is required");
    value = kind == "H" ? ctx.h_r(o.r, v) : ctx.e_r(o.r, v);
  } else if (kind == "pi") {
    value = pi_product(v);
  } else {
    emit(o, kind, additive_poly(v).to_string());
    return kOk;
  }
  emit(o, kind, value.to_string());
  return kOk;
}

int cmd_quotient(const Options& o) {
  const FieldRef f = Field::parse(o.field);
  const Subspace v = Subspace::parse(f, o.basis);
  emit(o, "quotient", internal_quotient(v, Subspace::parse(f, o.sub)).to_string());
  return kOk;
}

int cmd_lines(const Options& o) {
  const FieldRef f = Field::parse(o.field);
  std::vector<std::string> items;
  for (const auto& line : enumerate_lines(Subspace::parse(f, o.basis))) items.push_back(line.to_string());
  emit_list(o, "lines", items);
  return kOk;
}

int cmd_flags(const Options& o) {
  const FieldRef f = Field::parse(o.field);
  std::vector<std::string> items;
  for (const auto& flag : enumerate_flags(Subspace::parse(f, o.basis))) {
    std::string s;
    for (const auto& step : flag.chain) s += (s.empty() ? "" : " > ") + ("<" + step.to_string() + ">");
    items.push_back(s);
  }
  emit_list(o, "flags", items);
  return kOk;
}

struct VerifyOptions {
  std::vector<std::string> identities;
  std::string fields;
  std::string dims;
  int max_weight = -1;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string config;
  unsigned threads = 0;
  bool timing = false;
  long max_value_chars = -1;
};

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  const auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::ParseError, "bad --dim '" + text + "'");
    return static_cast<std::size_t>(std::stoul(s));
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {number(text), number(text)};
  return {number(text.substr(0, dots)), number(text.substr(dots + 2))};
}

int cmd_verify(const VerifyOptions& vo) {
  SweepConfig cfg;
  if (!vo.config.empty()) {
    std::ifstream in(vo.config);
    if (!in) throw Error(ErrorKind::ConfigInvalid, "cannot read " + vo.config);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = sweep_config_from_json(ss.str());
  }
  if (!vo.identities.empty()) cfg.identities = std::set<std::string>(vo.identities.begin(), vo.identities.end());
  if (cfg.identities.empty() && vo.config.empty()) cfg.identities = {"all"};
  if (!vo.fields.empty()) cfg.fields = split_fields(vo.fields);
  if (!vo.dims.empty()) std::tie(cfg.dim_min, cfg.dim_max) = parse_dims(vo.dims);
  if (vo.max_weight >= 0) cfg.max_weight = vo.max_weight;
  if (vo.has_seed) cfg.seed = vo.seed;
  if (vo.threads) cfg.threads = vo.threads;
  if (vo.timing) cfg.timing = true;
  if (vo.max_value_chars >= 0) cfg.report.max_value_chars = static_cast<std::size_t>(vo.max_value_chars);
  const SweepReport report = run_sweep(cfg);
  std::cout << report_to_json(report) << "\n";
  return report.ok() ? kOk : kIdentityFailure;
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidField:
    case ErrorKind::ConfigInvalid:
      return kUsage;
    default:
      return kPrecondition;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation and verification of q-analogue Schur functions over finite fields"};
  app.require_subcommand(1);
  Options o;
  VerifyOptions vo;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--field", o.field, "field spec, e.g. q=3 or q=2^2:1,1,1")->capture_default_str();
    cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    cmd->add_option("--max-terms", o.max_terms, "term limit for intermediate polynomials");
  };

  std::string kind;
  auto* compute = app.add_subcommand("compute", "compute one value on a subspace");
  compute->add_option("kind", kind, "S, skew, tilde, H, E, pi or f")
      ->required()
      ->check(CLI::IsMember({"S", "skew", "tilde", "H", "E", "pi", "f"}));
  add_common(compute);
  compute->add_option("--basis", o.basis, "spanning vectors separated by ';'")->required();
  compute->add_option("--sub", o.sub, "compute on the quotient by this subspace");
  compute->add_option("--lambda", o.lambda, "partition such as 2,1");
  compute->add_option("--mu", o.mu, "partition such as 1");
  compute->add_option("--r", o.r, "index for H and E");

  auto* quotient = app.add_subcommand("quotient", "canonical basis of V//U");
  add_common(quotient);
  quotient->add_option("--basis", o.basis, "spanning vectors of V")->required();
  quotient->add_option("--sub", o.sub, "spanning vectors of U")->required();

  auto* lines = app.add_subcommand("lines", "list the lines of V");
  add_common(lines);
  lines->add_option("--basis", o.basis, "spanning vectors of V")->required();

  auto* flags = app.add_subcommand("flags", "list the complete flags of V");
  add_common(flags);
  flags->add_option("--basis", o.basis, "spanning vectors of V")->required();

  auto* verify = app.add_subcommand("verify", "run an exact verification sweep and print the JSON report");
  verify->add_option("--identity", vo.identities, "identity names or 'all'")->delimiter(',');
  verify->add_option("--field", vo.fields, "comma separated field specs");
  verify->add_option("--dim", vo.dims, "dimension or range such as 2..3");
  verify->add_option("--max-weight", vo.max_weight, "largest |lambda|");
  verify->add_option("--seed", vo.seed, "random seed");
  verify->add_option("--config", vo.config, "JSON file with sweep settings");
  verify->add_option("--threads", vo.threads, "worker threads (0 selects all cores)");
  verify->add_flag("--timing", vo.timing, "report wall times (output is then not reproducible)");
  verify->add_option("--max-value-chars", vo.max_value_chars, "elide passing values longer than this (0 keeps all)");
  verify->add_option("--max-terms", o.max_terms, "term limit for intermediate polynomials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (o.max_terms) set_term_limit(o.max_terms);
    o.has_sub = compute->count("--sub") > 0 || quotient->count("--sub") > 0;
    o.has_r = compute->count("--r") > 0;
    vo.has_seed = verify->count("--seed") > 0;
    if (*compute) return cmd_compute(kind, o);
    if (*quotient) return cmd_quotient(o);
    if (*lines) return cmd_lines(o);
    if (*flags) return cmd_flags(o);
    return cmd_verify(vo);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  }
}
