#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace burstvit {

// Deterministic RNG. std::mt19937 is fully specified by the standard; the
// distribution mappings below are hand-rolled because std::*_distribution
// output is implementation-defined and would break byte-identical runs
// across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(static_cast<uint32_t>(seed ^ (seed >> 32))) {}

  double uniform();                     // [0, 1)
  double uniform(double lo, double hi); // [lo, hi)
  long uniform_int(long lo, long hi);   // inclusive bounds
  double normal();                      // standard normal, Box-Muller
  double normal(double mean, double stddev);
  double trunc_normal(double stddev, double bound); // resample outside +-bound
  void shuffle(std::vector<int>& idx);  // Fisher-Yates

  uint32_t next_u32() { return eng_(); }

 private:
  std::mt19937 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace burstvit
