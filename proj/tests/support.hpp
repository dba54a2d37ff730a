#pragma once

#include <cstdint>
#include <random>

#include <doctest.h>

#include "rellich/error.hpp"
#include "rellich/params.hpp"

namespace rellich::testing {

/// Platform-independent uniform draws for property tests.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  int integer(int lo, int hi) {
    return lo + static_cast<int>(uniform(0.0, 1.0) * (hi - lo + 1));
  }

  /// p ∈ [1, 10] or ∞ with probability 1/5.
  ExtendedIndex index() {
    if (uniform(0.0, 1.0) < 0.2) return ExtendedIndex::infinity();
    return ExtendedIndex::finite(uniform(1.0, 10.0));
  }

 private:
  std::mt19937_64 rng_;
};

/// Error code thrown by `call`; fails the test when nothing is thrown.
template <typename Call>
ErrorCode code_of(Call&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace rellich::testing
