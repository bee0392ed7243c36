#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "acceptance/battery.hpp"
#include "sturmbeta/beta.hpp"
#include "sturmbeta/errors.hpp"
#include "sturmbeta/io.hpp"
#include "sturmbeta/mahler.hpp"
#include "sturmbeta/numeric/precision.hpp"
#include "sturmbeta/parry_measure.hpp"
#include "sturmbeta/words.hpp"

using namespace sturmbeta;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedChecks = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitUnresolved = 4;

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kPrecisionExhausted:
      return kExitPrecision;
    case ErrorKind::kInequalityUnresolved:
    case ErrorKind::kIdentityViolated:
      return kExitUnresolved;
    default:
      return kExitPrecondition;
  }
}

// "11" is a finite word; "2(1)" is 2 followed by 1 repeated.
DigitWord parse_dbeta1(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos) return DigitWord::finite(parse_word(text));
  if (text.back() != ')') throw ParseError("expected a closing ')' in '" + text + "'");
  return DigitWord::periodic(parse_word(text.substr(0, open)), parse_word(text.substr(open + 1, text.size() - open - 2)));
}

Digit digit(int v, const char* name) {
  if (v < 0 || v > 255) throw PreconditionError(std::string(name) + " must be a digit in 0..255");
  return static_cast<Digit>(v);
}

BetaNumber resolve_beta(const RunConfig& c) {
  SolveOptions opt;
  opt.bits = c.bits;
  if (!c.beta.empty()) return BetaNumber::parse(c.beta);
  if (!c.dbeta1.empty()) return solve_beta(parse_dbeta1(c.dbeta1), opt);
  if (!c.slope.empty()) return sturmian_beta(Slope::parse(c.slope), digit(c.a, "a"), digit(c.b, "b"), opt);
  throw PreconditionError("give --beta, --dbeta1, or --slope with --a/--b");
}

std::string kv(const std::string& key, const std::string& value) { return key + ": " + value + "\n"; }

std::string ball_text(const RealBall& x) { return x.midpoint_string(40) + " +/- " + x.radius_string(); }

int cmd_word(const RunConfig& c, std::ostream& out) {
  DigitWord w;
  if (c.kind == "fibonacci") {
    w = fibonacci_word();
  } else {
    if (c.slope.empty()) throw PreconditionError("--slope is required for kind " + c.kind);
    const Slope alpha = Slope::parse(c.slope);
    const Intercept rho = Intercept::parse(c.rho);
    if (c.kind == "lower") {
      w = lower_mechanical(alpha, rho);
    } else if (c.kind == "upper") {
      w = upper_mechanical(alpha, rho);
    } else if (c.kind == "characteristic") {
      w = characteristic(alpha);
    } else {
      throw PreconditionError("unknown word kind '" + c.kind + "'");
    }
  }
  const std::string s = w.prefix_string(c.n);
  if (c.format == "json") {
    out << "{\"kind\": \"" << c.kind << "\", \"n\": " << c.n << ", \"word\": \"" << s << "\"}\n";
  } else {
    out << s << "\n";
  }
  return kExitOk;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  const BetaNumber beta = resolve_beta(c);
  const RealBall v = beta.value_at(c.bits);
  const std::size_t verified = beta.kind() == BetaNumber::Kind::kSolved ? beta.verified_depth() : 0;
  if (c.format == "json") {
    out << to_json(beta, verified) << "\n";
    return kExitOk;
  }
  out << kv("beta", ball_text(v));
  out << kv("floor", std::to_string(beta.floor()));
  out << kv("kind", beta.kind() == BetaNumber::Kind::kExact ? "exact" : beta.kind() == BetaNumber::Kind::kSolved ? "solved" : "ball");
  if (beta.exact_value()) out << kv("exact", beta.exact_value()->to_string());
  out << kv("re-expansion verified digits", beta.kind() == BetaNumber::Kind::kSolved ? std::to_string(verified) : "n/a");
  return kExitOk;
}

int cmd_orbit(const RunConfig& c, std::ostream& out) {
  const BetaNumber beta = resolve_beta(c);
  const OrbitRecord rec = orbit(beta, c.n, c.bits);
  if (c.format == "human") {
    out << kv("points", std::to_string(rec.points.size()));
    out << kv("min", ball_text(rec.running_min));
    out << kv("max", ball_text(rec.running_max));
    out << kv("diam", ball_text(diam_estimate(rec)));
    if (rec.truncated_at) out << kv("truncated at", std::to_string(*rec.truncated_at));
    return kExitOk;
  }
  out << orbit_csv(rec);
  return kExitOk;
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  const BetaNumber beta = resolve_beta(c);
  const ClassEvidence e = classify(beta, c.depth);
  if (c.format == "json") {
    out << to_json(e) << "\n";
    return kExitOk;
  }
  out << to_string(e.verdict) << "\n";
  out << kv("depth", std::to_string(e.depth));
  if (e.finite_digits) out << kv("finite digits", to_string(*e.finite_digits));
  if (e.period) out << kv("period", to_string(e.period->preperiod) + "(" + to_string(e.period->period) + ")");
  out << kv("longest zero run", std::to_string(e.max_zero_run));
  if (e.missing_factor) out << kv("missing factor", to_string(*e.missing_factor));
  out << kv("note", e.note);
  return kExitOk;
}

int cmd_freq(const RunConfig& c, std::ostream& out) {
  if (c.slope.empty()) throw PreconditionError("--slope is required");
  const FrequencyReport r = frequency_report(Slope::parse(c.slope), digit(c.a, "a"), digit(c.b, "b"), c.bits);
  std::optional<BirkhoffRun> run;
  if (c.birkhoff_points > 0) {
    run = birkhoff_frequencies(r.beta, r.a, r.b, c.seed, c.birkhoff_points, c.birkhoff_length);
  }
  if (c.format == "json") {
    out << to_json(r, run ? &*run : nullptr) << "\n";
  } else {
    out << kv("beta", ball_text(r.beta.value()));
    out << kv("F", ball_text(r.F));
    out << kv("mu_b", ball_text(r.mu_b));
    out << kv("mu_a", ball_text(r.mu_a));
    out << kv("defect_b", ball_text(r.defect_b) + " [" + std::string(to_string(r.defect_b_status)) + "]");
    out << kv("defect_a", ball_text(r.defect_a) + " [" + std::string(to_string(r.defect_a_status)) + "]");
    out << kv("case", std::string(to_string(r.proof_case)));
    if (r.j_with_a_zero) out << kv("note", "a = 0: J uses the general formula");
    if (run) {
      double fa = 0, fb = 0;
      for (std::size_t i = 0; i < run->freq_a.size(); ++i) {
        fa += run->freq_a[i] / static_cast<double>(run->freq_a.size());
        fb += run->freq_b[i] / static_cast<double>(run->freq_b.size());
      }
      out << kv("birkhoff mean freq_a", std::to_string(fa));
      out << kv("birkhoff mean freq_b", std::to_string(fb));
      out << kv("seed", std::to_string(run->seed));
    }
  }
  for (DefectStatus s : {r.defect_a_status, r.defect_b_status}) {
    if (s == DefectStatus::kUnresolved || s == DefectStatus::kViolated) return kExitUnresolved;
  }
  return kExitOk;
}

int cmd_mahler(const RunConfig& c, std::ostream& out) {
  if (c.slope.empty()) throw PreconditionError("--slope is required");
  const IdentityReport r = identity_check(Slope::parse(c.slope), digit(c.a, "a"), digit(c.b, "b"), c.bits);
  if (c.format == "json") {
    out << to_json(r) << "\n";
    return kExitOk;
  }
  out << kv("beta", ball_text(r.beta));
  out << kv("digit series", ball_text(r.direct));
  out << kv("(1-1/beta) f(alpha,1/beta)", ball_text(r.mahler));
  out << kv("closed form", ball_text(r.rhs));
  std::ostringstream g;
  g << r.max_gap;
  out << kv("max pairwise gap", g.str());
  return kExitOk;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  std::vector<int> which;
  if (c.suite == "quick") {
    which = {1, 2, 7, 9};
  } else if (c.suite != "acceptance") {
    for (char ch : c.suite) {
      if (ch < '1' || ch > '9') throw PreconditionError("suite is 'acceptance', 'quick', or criterion digits like 379");
      which.push_back(ch - '0');
    }
  }
  int failed = 0;
  for (const auto& r : acceptance::run(which)) {
    out << acceptance::format_line(r) << "\n";
    if (!r.pass) ++failed;
  }
  out << (failed == 0 ? "all PASS" : std::to_string(failed) + " FAIL") << "\n";
  return failed == 0 ? kExitOk : kExitFailedChecks;
}

int dispatch(const RunConfig& c) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) throw PreconditionError("cannot write '" + c.output + "'");
    out = &file;
  }
  if (c.command == "word") return cmd_word(c, *out);
  if (c.command == "solve") return cmd_solve(c, *out);
  if (c.command == "orbit") return cmd_orbit(c, *out);
  if (c.command == "classify") return cmd_classify(c, *out);
  if (c.command == "freq") return cmd_freq(c, *out);
  if (c.command == "mahler") return cmd_mahler(c, *out);
  if (c.command == "check") return cmd_check(c, *out);
  throw PreconditionError("unknown command '" + c.command + "'");
}

void apply_precision_env() {
  const char* env = std::getenv("STURMBETA_PRECISION_CEILING");
  if (!env || !*env) return;
  PrecisionLadder ladder = default_ladder();
  try {
    ladder.ceiling_bits = static_cast<unsigned>(std::stoul(env));
  } catch (const std::exception&) {
    throw PreconditionError("STURMBETA_PRECISION_CEILING must be a bit count");
  }
  if (ladder.start_bits > ladder.ceiling_bits) ladder.start_bits = ladder.ceiling_bits;
  set_default_ladder(ladder);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sturmian words, beta-expansions and certified checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool dump = false;
  bool json = false;
  bool csv = false;
  std::string config_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--bits", cfg.bits, "working precision in bits")->capture_default_str();
    sub->add_option("--format", cfg.format, "human, json or csv")->capture_default_str();
    sub->add_flag("--json", json, "same as --format json");
    sub->add_flag("--csv", csv, "same as --format csv");
    sub->add_option("-o,--output", cfg.output, "write to a file instead of stdout");
    sub->add_flag("--dump-config", dump, "print the run configuration as JSON and exit");
  };
  auto beta_source = [&](CLI::App* sub) {
    sub->add_option("--beta", cfg.beta, "int:N, rat:P/Q, surd:(p+q*sqrt(d))/r or dec:DIGITS~ERR");
    sub->add_option("--dbeta1", cfg.dbeta1, "expansion of 1, e.g. 11 or 2(1)");
    sub->add_option("--slope,--solve-slope", cfg.slope, "slope of the Sturmian expansion (with --a, --b)");
    sub->add_option("--a", cfg.a, "smaller digit")->capture_default_str();
    sub->add_option("--b", cfg.b, "larger digit, equal to floor(beta)")->capture_default_str();
  };

  auto* word = app.add_subcommand("word", "print a prefix of a mechanical or Fibonacci word");
  word->add_option("--slope", cfg.slope, "slope: surd:..., cf:[0;...] or dec:...");
  word->add_option("--kind", cfg.kind, "lower, upper, characteristic or fibonacci")->capture_default_str();
  word->add_option("--rho", cfg.rho, "intercept")->capture_default_str();
  word->add_option("--n", cfg.n, "prefix length")->capture_default_str();
  common(word);

  auto* solve = app.add_subcommand("solve", "find beta with a given expansion of 1");
  beta_source(solve);
  solve->add_option("--depth", cfg.depth, "re-expansion check depth")->capture_default_str();
  common(solve);

  auto* orbit_cmd = app.add_subcommand("orbit", "orbit of 1 under T_beta (CSV by default)");
  beta_source(orbit_cmd);
  orbit_cmd->add_option("--n", cfg.n, "number of points")->capture_default_str();
  common(orbit_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "evidence for the class of beta");
  beta_source(classify_cmd);
  classify_cmd->add_option("--depth", cfg.depth, "prefix length examined")->capture_default_str();
  common(classify_cmd);

  auto* freq = app.add_subcommand("freq", "Parry-measure digit frequencies and defects");
  beta_source(freq);
  freq->add_option("--seed", cfg.seed, "seed of the Birkhoff cross-check")->capture_default_str();
  freq->add_option("--birkhoff", cfg.birkhoff_points, "number of random orbits (0 = skip)")->capture_default_str();
  freq->add_option("--birkhoff-length", cfg.birkhoff_length, "orbit length")->capture_default_str();
  common(freq);

  auto* mahler = app.add_subcommand("mahler", "three evaluations of the digit-series identity");
  beta_source(mahler);
  common(mahler);

  auto* check = app.add_subcommand("check", "run the acceptance battery");
  check->add_option("suite", cfg.suite, "acceptance, quick, or criterion digits")->capture_default_str();
  common(check);

  auto* run = app.add_subcommand("run", "run a saved configuration");
  run->add_option("--config", config_path, "JSON file written by --dump-config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << nlohmann::ordered_json{{"error", "Usage"}, {"message", e.what()}}.dump() << "\n";
    return kExitPrecondition;
  }

  try {
    apply_precision_env();
    if (run->parsed()) {
      std::ifstream in(config_path);
      if (!in) throw PreconditionError("cannot read '" + config_path + "'");
      std::stringstream text;
      text << in.rdbuf();
      cfg = RunConfig::from_json(text.str());
    } else {
      cfg.command = app.get_subcommands().front()->get_name();
      if (json) cfg.format = "json";
      if (csv) cfg.format = "csv";
      if (cfg.command == "orbit" && cfg.format == "human" && !app.get_subcommands().front()->count("--format")) {
        cfg.format = "csv";
      }
    }
    if (dump) {
      std::cout << cfg.to_json() << "\n";
      return kExitOk;
    }
    return dispatch(cfg);
  } catch (const Error& e) {
    std::cerr << error_json(e) << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << error_json(e) << "\n";
    return kExitPrecondition;
  }
}
