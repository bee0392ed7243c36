#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sturmbeta/beta.hpp"
#include "sturmbeta/errors.hpp"
#include "sturmbeta/io.hpp"
#include "sturmbeta/mahler.hpp"
#include "sturmbeta/parry_measure.hpp"
#include "sturmbeta/words.hpp"

namespace py = pybind11;
using namespace sturmbeta;

namespace {

Digit as_digit(int v) {
  if (v < 0 || v > 255) throw PreconditionError("digits must lie in 0..255");
  return static_cast<Digit>(v);
}

DigitWord parse_dbeta1(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos) return DigitWord::finite(parse_word(text));
  if (text.back() != ')') throw ParseError("expected a closing ')' in '" + text + "'");
  return DigitWord::periodic(parse_word(text.substr(0, open)), parse_word(text.substr(open + 1, text.size() - open - 2)));
}

std::string word(const std::string& kind, const std::string& slope, const std::string& rho, std::size_t n) {
  if (kind == "fibonacci") return fibonacci_word().prefix_string(n);
  const Slope alpha = Slope::parse(slope);
  if (kind == "lower") return lower_mechanical(alpha, Intercept::parse(rho)).prefix_string(n);
  if (kind == "upper") return upper_mechanical(alpha, Intercept::parse(rho)).prefix_string(n);
  if (kind == "characteristic") return characteristic(alpha).prefix_string(n);
  throw PreconditionError("unknown word kind '" + kind + "'");
}

std::string solve_json(const std::string& dbeta1, unsigned bits, std::size_t depth) {
  SolveOptions opt;
  opt.bits = bits;
  opt.verification_depth = depth;
  const BetaNumber beta = solve_beta(parse_dbeta1(dbeta1), opt);
  return to_json(beta, beta.kind() == BetaNumber::Kind::kSolved ? beta.verified_depth() : 0);
}

std::string sturmian_json(const std::string& slope, int a, int b, unsigned bits) {
  SolveOptions opt;
  opt.bits = bits;
  const BetaNumber beta = sturmian_beta(Slope::parse(slope), as_digit(a), as_digit(b), opt);
  return to_json(beta, beta.verified_depth());
}

std::string frequency_json(const std::string& slope, int a, int b, unsigned bits, std::size_t birkhoff_points,
                           std::uint64_t seed, std::size_t birkhoff_length) {
  const FrequencyReport r = frequency_report(Slope::parse(slope), as_digit(a), as_digit(b), bits);
  if (birkhoff_points == 0) return to_json(r);
  const BirkhoffRun run = birkhoff_frequencies(r.beta, r.a, r.b, seed, birkhoff_points, birkhoff_length);
  return to_json(r, &run);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sturmian words, beta-expansions of 1 and certified digit statistics.";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(e.name()), e.what());
      PyErr_SetObject(error.ptr(), args.ptr());
    }
  });

  m.def("word", &word, py::arg("kind"), py::arg("slope") = "", py::arg("rho") = "0", py::arg("n") = 34);
  m.def("solve_json", &solve_json, py::arg("dbeta1"), py::arg("bits") = 128, py::arg("depth") = 1000);
  m.def("sturmian_json", &sturmian_json, py::arg("slope"), py::arg("a"), py::arg("b"), py::arg("bits") = 128);
  m.def(
      "classify_json",
      [](const std::string& beta, std::size_t depth) { return to_json(classify(BetaNumber::parse(beta), depth)); },
      py::arg("beta"), py::arg("depth") = 1000);
  m.def(
      "orbit_csv",
      [](const std::string& beta, std::size_t n, unsigned bits) {
        return orbit_csv(orbit(BetaNumber::parse(beta), n, bits));
      },
      py::arg("beta"), py::arg("n") = 34, py::arg("bits") = 128);
  m.def("frequency_json", &frequency_json, py::arg("slope"), py::arg("a"), py::arg("b"), py::arg("bits") = 128,
        py::arg("birkhoff_points") = 0, py::arg("seed") = 20260101, py::arg("birkhoff_length") = 100000);
  m.def(
      "identity_json",
      [](const std::string& slope, int a, int b, unsigned bits) {
        return to_json(identity_check(Slope::parse(slope), as_digit(a), as_digit(b), bits));
      },
      py::arg("slope"), py::arg("a"), py::arg("b"), py::arg("bits") = 512);
  m.def(
      "mahler_f",
      [](const std::string& slope, const std::string& z, unsigned bits) {
        mpq_class q;
        if (q.set_str(z, 10) != 0) throw ParseError("z must be a rational like -1/3");
        q.canonicalize();
        return to_json(mahler_f(Slope::parse(slope), RealBall::from_rational(q, bits), bits).value);
      },
      py::arg("slope"), py::arg("z"), py::arg("bits") = 128);
}
