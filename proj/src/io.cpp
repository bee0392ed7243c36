#include "sturmbeta/io.hpp"

#include <sstream>

#include "json.hpp"
#include "sturmbeta/errors.hpp"

namespace sturmbeta {
namespace {

using nlohmann::ordered_json;

ordered_json ball(const RealBall& x) {
  return ordered_json{{"mid", x.midpoint_string(0)}, {"rad", x.radius_string()}};
}

ordered_json structure(const WordStructure& s) {
  return ordered_json{{"preperiod", to_string(s.preperiod)}, {"period", to_string(s.period)}};
}

}  // namespace

std::string to_json(const RealBall& x) { return ball(x).dump(); }

std::string to_json(const BetaNumber& beta, std::size_t verified_digits) {
  ordered_json j;
  const char* kind = beta.kind() == BetaNumber::Kind::kExact    ? "exact"
                     : beta.kind() == BetaNumber::Kind::kSolved ? "solved"
                                                                : "ball";
  j["kind"] = kind;
  if (beta.exact_value()) j["exact"] = beta.exact_value()->to_string();
  j["beta"] = ball(beta.value());
  j["floor"] = beta.floor();
  j["verified_digits"] = verified_digits;
  return j.dump(2);
}

std::string to_json(const ClassEvidence& e) {
  ordered_json j;
  j["verdict"] = std::string(to_string(e.verdict));
  j["depth"] = e.depth;
  if (e.finite_digits) j["finite_digits"] = to_string(*e.finite_digits);
  if (e.period) j["period"] = structure(*e.period);
  j["max_zero_run"] = e.max_zero_run;
  j["max_zero_run_first_half"] = e.max_zero_run_first_half;
  j["missing_factor"] = e.missing_factor ? ordered_json(to_string(*e.missing_factor)) : ordered_json(nullptr);
  j["note"] = e.note;
  return j.dump(2);
}

std::string to_json(const SturmianEvidence& e) {
  ordered_json j;
  j["sturmian"] = e.sturmian;
  j["maximal"] = e.maximal;
  j["a"] = e.a;
  j["b"] = e.b;
  j["depth"] = e.depth;
  j["reason"] = e.reason;
  if (e.orbit_min) j["orbit_min"] = ball(*e.orbit_min);
  j["orbit_above_lower_bound"] = e.orbit_above_lower_bound;
  return j.dump(2);
}

std::string to_json(const FrequencyReport& r, const BirkhoffRun* birkhoff) {
  ordered_json j;
  j["alpha"] = r.alpha.to_string();
  j["a"] = r.a;
  j["b"] = r.b;
  j["beta"] = ball(r.beta.value());
  j["bits"] = r.bits;
  j["terms"] = r.terms;
  j["F"] = ball(r.F);
  j["I"] = ball(r.I);
  j["J"] = ball(r.J);
  j["mu_b"] = ball(r.mu_b);
  j["mu_a"] = ball(r.mu_a);
  j["defect_b"] = ball(r.defect_b);
  j["defect_a"] = ball(r.defect_a);
  j["case"] = std::string(to_string(r.proof_case));
  j["defect_b_status"] = std::string(to_string(r.defect_b_status));
  j["defect_a_status"] = std::string(to_string(r.defect_a_status));
  j["j_with_a_zero"] = r.j_with_a_zero;
  if (birkhoff) {
    ordered_json bj;
    bj["seed"] = birkhoff->seed;
    bj["length"] = birkhoff->length;
    bj["start"] = birkhoff->start;
    bj["freq_a"] = birkhoff->freq_a;
    bj["freq_b"] = birkhoff->freq_b;
    j["birkhoff"] = bj;
  }
  return j.dump(2);
}

std::string to_json(const IdentityReport& r) {
  ordered_json j;
  j["a"] = r.a;
  j["b"] = r.b;
  j["bits"] = r.bits;
  j["beta"] = ball(r.beta);
  j["direct"] = ball(r.direct);
  j["mahler"] = ball(r.mahler);
  j["rhs"] = ball(r.rhs);
  j["gap_direct_mahler"] = r.gap_direct_mahler;
  j["gap_direct_rhs"] = r.gap_direct_rhs;
  j["gap_mahler_rhs"] = r.gap_mahler_rhs;
  j["max_gap"] = r.max_gap;
  return j.dump(2);
}

std::string error_json(const std::exception& e) {
  ordered_json j;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    j["error"] = std::string(err->name());
  } else {
    j["error"] = "Internal";
  }
  j["message"] = e.what();
  return j.dump();
}

std::string orbit_csv(const OrbitRecord& rec) {
  std::ostringstream out;
  out << "n,digit,mid,rad,min_mid,min_rad,max_mid,max_rad\n";
  RealBall lo = rec.points.front();
  RealBall hi = rec.points.front();
  for (std::size_t i = 0; i < rec.points.size(); ++i) {
    const RealBall& p = rec.points[i];
    lo = RealBall::min(lo, p);
    hi = RealBall::max(hi, p);
    out << i << ',' << (i < rec.digits.size() ? std::to_string(rec.digits[i]) : std::string()) << ','
        << p.midpoint_string(40) << ',' << p.radius_string() << ',' << lo.midpoint_string(40) << ','
        << lo.radius_string() << ',' << hi.midpoint_string(40) << ',' << hi.radius_string() << '\n';
  }
  return out.str();
}

std::string RunConfig::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["slope"] = slope;
  j["kind"] = kind;
  j["rho"] = rho;
  j["a"] = a;
  j["b"] = b;
  j["n"] = n;
  j["depth"] = depth;
  j["bits"] = bits;
  j["beta"] = beta;
  j["dbeta1"] = dbeta1;
  j["suite"] = suite;
  j["format"] = format;
  j["output"] = output;
  j["seed"] = seed;
  j["birkhoff_points"] = birkhoff_points;
  j["birkhoff_length"] = birkhoff_length;
  return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
  RunConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    auto take = [&j](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    take("command", c.command);
    take("slope", c.slope);
    take("kind", c.kind);
    take("rho", c.rho);
    take("a", c.a);
    take("b", c.b);
    take("n", c.n);
    take("depth", c.depth);
    take("bits", c.bits);
    take("beta", c.beta);
    take("dbeta1", c.dbeta1);
    take("suite", c.suite);
    take("format", c.format);
    take("output", c.output);
    take("seed", c.seed);
    take("birkhoff_points", c.birkhoff_points);
    take("birkhoff_length", c.birkhoff_length);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad run config: ") + e.what());
  }
  return c;
}

}  // namespace sturmbeta
