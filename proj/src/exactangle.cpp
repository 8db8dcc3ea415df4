#include "compass/exactangle.hpp"

#include <algorithm>
#include <numeric>

namespace compass {

namespace {

constexpr std::int64_t kFermatPrimes[] = {3, 5, 17, 257, 65537};

bool is_fermat_prime(std::int64_t p) {
  return std::find(std::begin(kFermatPrimes), std::end(kFermatPrimes), p) != std::end(kFermatPrimes);
}

std::int64_t odd_part(std::int64_t n, int* twos = nullptr) {
  int k = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++k;
  }
  if (twos) *twos = k;
  return n;
}

UnitCircleDirection unit(const TowerPtr& t, long c_num, long c_den) {
  return {t->number(c_num, c_den), t->number(0)};
}

std::string unsupported_reason(std::int64_t q) {
  for (const auto& [p, e] : factorize(q)) {
    if (p == 2) continue;
    if (p != 3 && p != 5) {
      if (is_fermat_prime(p))
        return "unsupported factor " + std::to_string(p) + " (Fermat prime outside the base {3, 5})";
      return "unsupported factor " + std::to_string(p) + " (not a Fermat prime)";
    }
    if (e > 1) return "unsupported factor " + std::to_string(p) + "^" + std::to_string(e) + " (repeated Fermat prime)";
  }
  return "unsupported denominator " + std::to_string(q);
}

}  // namespace

RationalTurn RationalTurn::make(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw AngleError("turn with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator < 0 ? -numerator : numerator, denominator);
  return {numerator / g, denominator / g};
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_constructible(std::int64_t n) {
  if (n < 3) throw AngleError("polygon needs at least 3 sides, got " + std::to_string(n));
  std::int64_t m = odd_part(n);
  for (std::int64_t p : kFermatPrimes) {
    if (m % p == 0) m /= p;
  }
  return m == 1;
}

bool angle_supported(std::int64_t n) {
  if (n < 1) return false;
  const std::int64_t m = odd_part(n);
  return m == 1 || m == 3 || m == 5 || m == 15;
}

UnitCircleDirection angle_sum(const UnitCircleDirection& a, const UnitCircleDirection& b, AngleOp op) {
  if (op == AngleOp::Add) return {a.c * b.c - a.s * b.s, a.s * b.c + a.c * b.s};
  return {a.c * b.c + a.s * b.s, a.s * b.c - a.c * b.s};
}

UnitCircleDirection half_angle(const UnitCircleDirection& a) {
  if (sign(a.s) < 0) throw AngleError("half_angle requires an angle in the upper half plane");
  const auto& t = a.c.tower();
  const auto half = t->number(1, 2);
  return {sqrt((t->number(1) + a.c) * half), sqrt((t->number(1) - a.c) * half)};
}

UnitCircleDirection exact_cos_sin(const TowerPtr& tower, RationalTurn turn) {
  turn = RationalTurn::make(turn.numerator, turn.denominator);
  const std::int64_t q = turn.denominator;
  std::int64_t p = turn.numerator % q;
  if (p < 0) p += q;

  int k = 0;
  const std::int64_t m = odd_part(q, &k);
  if (m != 1 && m != 3 && m != 5 && m != 15) throw AngleError(unsupported_reason(q));

  const auto& t = tower;
  UnitCircleDirection step = unit(t, 1, 1);
  int halvings = k;
  if (m == 1) {
    if (k > 0) {
      step = unit(t, -1, 1);
      halvings = k - 1;
    }
  } else {
    const UnitCircleDirection third{t->number(-1, 2), sqrt(t->number(3)) / t->number(2)};
    const auto r5 = sqrt(t->number(5));
    const UnitCircleDirection fifth{(r5 - t->number(1)) / t->number(4),
                                    sqrt(t->number(10) + t->number(2) * r5) / t->number(4)};
    if (m == 3) {
      step = third;
    } else if (m == 5) {
      step = fifth;
    } else {
      // 1/15 = 2/5 - 1/3
      step = angle_sum(angle_sum(fifth, fifth, AngleOp::Add), third, AngleOp::Sub);
    }
  }
  for (int i = 0; i < halvings; ++i) step = half_angle(step);

  UnitCircleDirection result = unit(t, 1, 1);
  for (std::int64_t bits = p; bits > 0; bits >>= 1) {
    if (bits & 1) result = angle_sum(result, step, AngleOp::Add);
    if (bits > 1) step = angle_sum(step, step, AngleOp::Add);
  }
  return result;
}

Constructible chord_sq(std::int64_t n, const Constructible& radius_sq) {
  if (!is_constructible(n)) throw AngleError(std::to_string(n) + "-gon is not constructible");
  if (!angle_supported(n)) throw AngleError(unsupported_reason(n));
  if (sign(radius_sq) <= 0) throw AngleError("chord_sq needs a positive squared radius");
  const auto& t = radius_sq.tower();
  const auto dir = exact_cos_sin(t, RationalTurn::make(1, n));
  return radius_sq * (t->number(2) - t->number(2) * dir.c);
}

}  // namespace compass
