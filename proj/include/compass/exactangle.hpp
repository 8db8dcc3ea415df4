#pragma once

// Exact cosine/sine pairs for rational fractions of a turn whose
// denominator is 2^k * m with m in {1, 3, 5, 15}, plus the Gauss-Wantzel
// constructibility test.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "compass/exactfield.hpp"

namespace compass {

class AngleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// numerator/denominator of a full turn, in lowest terms.
struct RationalTurn {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  static RationalTurn make(std::int64_t numerator, std::int64_t denominator);
};

struct UnitCircleDirection {
  Constructible c;
  Constructible s;
};

enum class AngleOp { Add, Sub };

/// Prime factorization as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// True iff n = 2^a times a product of distinct Fermat primes
/// (3, 5, 17, 257, 65537).  Requires n >= 3.
bool is_constructible(std::int64_t n);

/// True when chord_sq / exact_cos_sin can handle 1/n of a turn.
bool angle_supported(std::int64_t n);

UnitCircleDirection angle_sum(const UnitCircleDirection& a, const UnitCircleDirection& b, AngleOp op);

/// Bisects an angle in the closed upper half plane; result has s >= 0.
UnitCircleDirection half_angle(const UnitCircleDirection& a);

UnitCircleDirection exact_cos_sin(const TowerPtr& tower, RationalTurn t);

/// Squared edge of the regular n-gon inscribed in a circle of squared
/// radius radius_sq: radius_sq * (2 - 2 cos(2 pi / n)).
Constructible chord_sq(std::int64_t n, const Constructible& radius_sq);

}  // namespace compass
