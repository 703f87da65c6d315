#include "burstvit/rng.hpp"

#include <cmath>

namespace burstvit {

double Rng::uniform() {
  // 53 random bits -> [0,1)
  uint64_t hi = eng_();
  uint64_t lo = eng_();
  uint64_t bits = ((hi << 32) | lo) >> 11;
  return static_cast<double>(bits) * (1.0 / 9007199254740992.0);
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

long Rng::uniform_int(long lo, long hi) {
  // modulo-free rejection sampling over 64 bits
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  for (;;) {
    uint64_t x = (static_cast<uint64_t>(eng_()) << 32) | eng_();
    if (x < limit) return lo + static_cast<long>(x % span);
  }
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1, u2;
  do {
    u1 = uniform();
  } while (u1 <= 1e-300);
  u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double Rng::normal(double mean, double stddev) { return mean + stddev * normal(); }

double Rng::trunc_normal(double stddev, double bound) {
  for (;;) {
    double x = normal(0.0, stddev);
    if (x >= -bound && x <= bound) return x;
  }
}

void Rng::shuffle(std::vector<int>& idx) {
  for (long i = static_cast<long>(idx.size()) - 1; i > 0; --i) {
    long j = uniform_int(0, i);
    std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
  }
}

}  // namespace burstvit
