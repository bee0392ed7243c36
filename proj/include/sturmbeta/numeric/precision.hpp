#pragma once

#include <vector>

namespace sturmbeta {

// Working-precision ladder: start at `start_bits` and double up to
// `ceiling_bits` before giving up with PrecisionExhausted.
struct PrecisionLadder {
  unsigned start_bits = 128;
  unsigned ceiling_bits = 16384;

  // start, 2*start, ... and finally the ceiling itself.
  std::vector<unsigned> rungs() const;
  // Rungs starting from max(start_bits, from_bits).
  std::vector<unsigned> rungs_from(unsigned from_bits) const;
};

// Process-wide default ladder. The CLI overrides the ceiling from the
// STURMBETA_PRECISION_CEILING environment variable.
PrecisionLadder default_ladder();
void set_default_ladder(const PrecisionLadder& ladder);

}  // namespace sturmbeta
