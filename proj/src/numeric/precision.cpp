#include "sturmbeta/numeric/precision.hpp"

#include <algorithm>
#include <mutex>

#include "sturmbeta/errors.hpp"

namespace sturmbeta {
namespace {

std::mutex g_ladder_mutex;
PrecisionLadder g_ladder;

}  // namespace

std::vector<unsigned> PrecisionLadder::rungs() const { return rungs_from(start_bits); }

std::vector<unsigned> PrecisionLadder::rungs_from(unsigned from_bits) const {
  std::vector<unsigned> out;
  unsigned bits = std::max({start_bits, from_bits, 2u});
  if (bits >= ceiling_bits) return {std::max(ceiling_bits, 2u)};
  for (; bits < ceiling_bits; bits *= 2) out.push_back(bits);
  out.push_back(ceiling_bits);
  return out;
}

PrecisionLadder default_ladder() {
  std::lock_guard<std::mutex> lock(g_ladder_mutex);
  return g_ladder;
}

void set_default_ladder(const PrecisionLadder& ladder) {
  if (ladder.start_bits < 2 || ladder.ceiling_bits < ladder.start_bits) {
    throw PreconditionError("precision ladder needs 2 <= start <= ceiling");
  }
  std::lock_guard<std::mutex> lock(g_ladder_mutex);
  g_ladder = ladder;
}

}  // namespace sturmbeta
