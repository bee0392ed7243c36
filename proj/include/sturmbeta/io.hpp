#pragma once

#include <cstdint>
#include <exception>
#include <string>

#include "sturmbeta/beta.hpp"
#include "sturmbeta/mahler.hpp"
#include "sturmbeta/parry_measure.hpp"

namespace sturmbeta {

// Machine-readable forms. Every ball is written as {"mid": "...", "rad": "..."}
// with the midpoint at full working precision.
std::string to_json(const RealBall& x);
std::string to_json(const BetaNumber& beta, std::size_t verified_digits);
std::string to_json(const ClassEvidence& e);
std::string to_json(const SturmianEvidence& e);
std::string to_json(const FrequencyReport& r, const BirkhoffRun* birkhoff = nullptr);
std::string to_json(const IdentityReport& r);
std::string error_json(const std::exception& e);

// n,digit,mid,rad,min_mid,min_rad,max_mid,max_rad
std::string orbit_csv(const OrbitRecord& rec);

// Options of one CLI run. Serializes to JSON and back without loss.
struct RunConfig {
  std::string command;
  std::string slope;
  std::string kind = "lower";
  std::string rho = "0";
  int a = 0;
  int b = 1;
  std::uint64_t n = 34;
  std::uint64_t depth = 1000;
  unsigned bits = 128;
  std::string beta;
  std::string dbeta1;
  std::string suite = "acceptance";
  std::string format = "human";  // human | json | csv
  std::string output;
  std::uint64_t seed = 20260101;
  std::uint64_t birkhoff_points = 0;
  std::uint64_t birkhoff_length = 100000;

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
  bool operator==(const RunConfig&) const = default;
};

}  // namespace sturmbeta
