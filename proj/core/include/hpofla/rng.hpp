#pragma once

#include <cstdint>
#include <random>

namespace hpofla {

// Seeded 64-bit generator shared by sampling and fixture generation.
//
// Engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not portable, so bounded integers
// and unit reals are derived here from raw engine output:
//   uniform_index(n): Lemire's multiply-shift with rejection, unbiased.
//   uniform_unit():   top 53 bits scaled by 2^-53, in [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound);

  double uniform_unit();

  // Uniform real in [lo, hi]; returns lo when lo == hi.
  double uniform_real(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hpofla
