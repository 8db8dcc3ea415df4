#include "compass/exactfield.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <sstream>

namespace compass {

namespace {

using Coeffs = std::vector<Rational>;
using View = std::span<const Rational>;

std::atomic<std::uint64_t> next_tower_id{1};

bool all_zero(View v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

void trim(Coeffs& v) {
  while (v.size() > 1) {
    const std::size_t h = v.size() / 2;
    if (!all_zero(View(v).subspan(h))) break;
    v.resize(h);
  }
}

Coeffs padded(View v, std::size_t n) {
  Coeffs out(v.begin(), v.end());
  out.resize(std::max(n, v.size()));
  return out;
}

std::size_t log2_size(std::size_t n) { return static_cast<std::size_t>(std::countr_zero(n)); }

Coeffs add(View a, View b) {
  Coeffs out = padded(a, b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Coeffs sub(View a, View b) {
  Coeffs out = padded(a, b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Coeffs scale(View a, const Rational& k) {
  Coeffs out(a.begin(), a.end());
  for (auto& c : out) c *= k;
  return out;
}

// a and b have equal power-of-two length n = 2^d; generator d-1 splits them.
Coeffs mul_rec(const Tower& t, View a, View b) {
  const std::size_t n = a.size();
  if (n == 1) return {a[0] * b[0]};
  const std::size_t h = n / 2;
  const View alo = a.first(h), ahi = a.subspan(h);
  const View blo = b.first(h), bhi = b.subspan(h);
  const bool ahz = all_zero(ahi), bhz = all_zero(bhi);

  Coeffs lo, hi;
  if (ahz && bhz) {
    lo = mul_rec(t, alo, blo);
    hi.assign(h, Rational(0));
  } else if (ahz) {
    lo = mul_rec(t, alo, blo);
    hi = mul_rec(t, alo, bhi);
  } else if (bhz) {
    lo = mul_rec(t, alo, blo);
    hi = mul_rec(t, ahi, blo);
  } else {
    const Coeffs p = mul_rec(t, alo, blo);
    const Coeffs q = mul_rec(t, ahi, bhi);
    const Coeffs s = mul_rec(t, add(alo, ahi), add(blo, bhi));
    const Coeffs r = padded(t.radicand(log2_size(n) - 1), h);
    lo = add(p, mul_rec(t, q, r));
    hi = sub(sub(s, p), q);
  }
  lo.insert(lo.end(), std::make_move_iterator(hi.begin()), std::make_move_iterator(hi.end()));
  return lo;
}

// (lo + hi*g)^-1 = (lo - hi*g) / (lo^2 - hi^2 * r)
Coeffs inverse_rec(const Tower& t, View a) {
  const std::size_t n = a.size();
  if (n == 1) {
    if (a[0] == 0) throw DivisionByZero();
    return {1 / a[0]};
  }
  const std::size_t h = n / 2;
  const View lo = a.first(h), hi = a.subspan(h);
  if (all_zero(hi)) return padded(inverse_rec(t, lo), n);
  const Coeffs r = padded(t.radicand(log2_size(n) - 1), h);
  const Coeffs den = sub(mul_rec(t, lo, lo), mul_rec(t, mul_rec(t, hi, hi), r));
  const Coeffs inv = inverse_rec(t, den);
  Coeffs out = mul_rec(t, lo, inv);
  Coeffs neg_hi = mul_rec(t, hi, inv);
  for (auto& c : neg_hi) out.push_back(-c);
  return out;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

// Splits t = f^2 * rest, removing square factors found by trial division
// and a final perfect-square cofactor.
mpz_class square_part(mpz_class& t) {
  mpz_class f = 1;
  for (unsigned long p = 2; p < 65536 && p * p <= t; ++p) {
    const mpz_class pp = p * p;
    while (mpz_divisible_p(t.get_mpz_t(), pp.get_mpz_t())) {
      t /= pp;
      f *= p;
    }
  }
  if (t > 1 && mpz_perfect_square_p(t.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    f *= r;
    t = 1;
  }
  return f;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

std::string format_coeffs(const Tower& t, View c) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    std::string prod;
    for (std::size_t k = 0; (std::size_t{1} << k) <= i; ++k) {
      if (i & (std::size_t{1} << k)) {
        if (!prod.empty()) prod += "*";
        prod += t.generator_text(k);
      }
    }
    const bool neg = c[i] < 0;
    const Rational mag = abs(c[i]);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (prod.empty()) {
      os << rational_text(mag);
    } else if (mag == 1) {
      os << prod;
    } else {
      os << rational_text(mag) << "*" << prod;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Tower

Tower::Tower() : id_(next_tower_id.fetch_add(1)) {}

std::shared_ptr<Tower> Tower::create() { return std::shared_ptr<Tower>(new Tower()); }

Constructible Tower::number(const Rational& q) { return Constructible(shared_from_this(), q); }

Constructible Tower::number(long num, long den) { return number(Rational(num, den)); }

Constructible Tower::generator(std::size_t k) {
  if (k >= depth()) throw FieldError("no such generator");
  Coeffs c(std::size_t{1} << (k + 1));
  c[std::size_t{1} << k] = 1;
  return Constructible(Constructible::Trusted{}, shared_from_this(), std::move(c));
}

std::size_t Tower::extend(Coeffs radicand) {
  trim(radicand);
  const RationalInterval bound = evaluate(radicand);
  Rational hi = bound.hi + 1;
  // Integer seed keeps bisection midpoints dyadic.
  mpz_class ceil_hi;
  mpz_cdiv_q(ceil_hi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  Generator g;
  g.text = "sqrt(" + format_coeffs(*this, radicand) + ")";
  g.radicand = std::move(radicand);
  g.enclosure = {Rational(0), Rational(ceil_hi)};
  gens_.push_back(std::move(g));
  return gens_.size() - 1;
}

void Tower::bisect(std::size_t k) {
  const Rational mid = gens_[k].enclosure.midpoint();
  Coeffs diff = scale(gens_[k].radicand, Rational(-1));
  diff[0] += mid * mid;
  const int s = sign_of(diff);
  assert(s != 0);
  if (s > 0) {
    gens_[k].enclosure.hi = mid;
  } else {
    gens_[k].enclosure.lo = mid;
  }
}

RationalInterval Tower::evaluate(View coeffs) const {
  const std::size_t n = coeffs.size();
  std::vector<RationalInterval> prod(n);
  prod[0] = {Rational(1), Rational(1)};
  RationalInterval sum{coeffs[0], coeffs[0]};
  for (std::size_t mask = 1; mask < n; ++mask) {
    const std::size_t top = std::bit_width(mask) - 1;
    const RationalInterval& base = prod[mask ^ (std::size_t{1} << top)];
    const RationalInterval& e = gens_[top].enclosure;
    prod[mask] = {base.lo * e.lo, base.hi * e.hi};
    const Rational& c = coeffs[mask];
    if (c == 0) continue;
    if (c > 0) {
      sum.lo += c * prod[mask].lo;
      sum.hi += c * prod[mask].hi;
    } else {
      sum.lo += c * prod[mask].hi;
      sum.hi += c * prod[mask].lo;
    }
  }
  return sum;
}

int Tower::sign_of(View coeffs) {
  Coeffs c(coeffs.begin(), coeffs.end());
  trim(c);
  if (c.size() == 1) return sgn(c[0]);
  const std::size_t d = log2_size(c.size());
  for (unsigned iter = 0; iter < refinement_cap_; ++iter) {
    const RationalInterval iv = evaluate(c);
    if (iv.lo > 0) return 1;
    if (iv.hi < 0) return -1;
    for (std::size_t k = 0; k < d; ++k) bisect(k);
  }
  throw RefinementLimit("sign refinement cap exceeded");
}

RationalInterval Tower::approximate(View coeffs, const Rational& max_width) {
  const std::size_t d = log2_size(coeffs.size());
  for (unsigned iter = 0; iter < refinement_cap_; ++iter) {
    RationalInterval iv = evaluate(coeffs);
    if (iv.width() <= max_width) return iv;
    for (std::size_t k = 0; k < d; ++k) bisect(k);
  }
  throw RefinementLimit("decimal refinement cap exceeded");
}

Coeffs Tower::mul(View a, View b) const {
  const std::size_t n = std::max(a.size(), b.size());
  Coeffs out = mul_rec(*this, padded(a, n), padded(b, n));
  trim(out);
  return out;
}

Coeffs Tower::inverse(View a) const {
  Coeffs c(a.begin(), a.end());
  trim(c);
  Coeffs out = inverse_rec(*this, c);
  trim(out);
  return out;
}

// Finds y in Q(g_0..g_{level-1}) with y^2 = x, or nothing.  Writing
// x = a + b*g with g the top generator of the level:
//   b == 0: y is sqrt(a) in the sub-field, or sqrt(a*r)*g/r;
//   b != 0: y = p + q*g needs a^2 - b^2*r = s^2 in the sub-field and
//           p^2 = (a +- s)/2, q = b/(2p).
std::optional<Coeffs> Tower::try_sqrt(View x, std::size_t level) {
  if (level == 0) {
    Coeffs c(x.begin(), x.end());
    trim(c);
    if (c.size() != 1) return std::nullopt;
    auto r = rational_sqrt(c[0]);
    if (!r) return std::nullopt;
    return Coeffs{*r};
  }
  const std::size_t n = std::size_t{1} << level;
  const std::size_t h = n / 2;
  const Coeffs full = padded(x, n);
  const View a = View(full).first(h), b = View(full).subspan(h);
  const Coeffs r = padded(gens_[level - 1].radicand, h);

  auto with_top = [&](Coeffs lo, const Coeffs& hi) {
    lo = padded(lo, h);
    lo.insert(lo.end(), hi.begin(), hi.end());
    lo.resize(n);
    trim(lo);
    return lo;
  };

  if (all_zero(b)) {
    if (auto y = try_sqrt(a, level - 1)) return y;
    if (auto z = try_sqrt(mul(a, r), level - 1)) {
      Coeffs hi = padded(mul(*z, inverse(r)), h);
      return with_top(Coeffs(h, Rational(0)), hi);
    }
    return std::nullopt;
  }

  const Coeffs norm = sub(mul(a, a), mul(mul(b, b), r));
  const auto s = try_sqrt(norm, level - 1);
  if (!s) return std::nullopt;
  for (int sgn_s : {1, -1}) {
    Coeffs half = add(a, scale(*s, Rational(sgn_s)));
    half = scale(half, Rational(1, 2));
    trim(half);
    if (half.size() == 1 && half[0] == 0) continue;
    if (auto p = try_sqrt(half, level - 1)) {
      const Coeffs q = mul(b, inverse(scale(*p, Rational(2))));
      return with_top(*p, padded(q, h));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructible

Constructible::Constructible(TowerPtr tower, const Rational& q)
    : tower_(std::move(tower)), coeffs_{q} {
  if (!tower_) throw FieldError("value requires a tower");
  coeffs_[0].canonicalize();
}

Constructible::Constructible(Trusted, TowerPtr tower, std::vector<Rational> coeffs)
    : tower_(std::move(tower)), coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

Constructible::Constructible(TowerPtr tower, std::vector<Rational> coeffs)
    : tower_(std::move(tower)), coeffs_(std::move(coeffs)) {
  if (!tower_) throw FieldError("value requires a tower");
  if (coeffs_.empty() || !std::has_single_bit(coeffs_.size()))
    throw FieldError("coefficient count must be a power of two");
  if (log2_size(coeffs_.size()) > tower_->depth())
    throw FieldError("coefficients exceed tower depth");
  canonicalize();
}

void Constructible::canonicalize() {
  for (auto& c : coeffs_) c.canonicalize();
  trim(coeffs_);
}

std::size_t Constructible::depth() const { return log2_size(coeffs_.size()); }

std::vector<Rational> Constructible::lifted(std::size_t d) const {
  return padded(coeffs_, std::size_t{1} << std::max(d, depth()));
}

const Rational& Constructible::as_rational() const {
  if (!is_rational()) throw FieldError("value is irrational");
  return coeffs_[0];
}

const Tower& Constructible::same_tower(const Constructible& b) const {
  if (tower_ != b.tower_) throw ContextMismatch();
  return *tower_;
}

Constructible Constructible::operator-() const {
  return Constructible(Constructible::Trusted{}, tower_, scale(coeffs_, Rational(-1)));
}

Constructible operator+(const Constructible& a, const Constructible& b) {
  a.same_tower(b);
  return Constructible(Constructible::Trusted{}, a.tower_, add(a.coeffs_, b.coeffs_));
}

Constructible operator-(const Constructible& a, const Constructible& b) {
  a.same_tower(b);
  return Constructible(Constructible::Trusted{}, a.tower_, sub(a.coeffs_, b.coeffs_));
}

Constructible operator*(const Constructible& a, const Constructible& b) {
  const Tower& t = a.same_tower(b);
  return Constructible(Constructible::Trusted{}, a.tower_, t.mul(a.coeffs_, b.coeffs_));
}

Constructible operator/(const Constructible& a, const Constructible& b) {
  const Tower& t = a.same_tower(b);
  if (b.is_zero()) throw DivisionByZero();
  return Constructible(Constructible::Trusted{}, a.tower_, t.mul(a.coeffs_, t.inverse(b.coeffs_)));
}

bool operator==(const Constructible& a, const Constructible& b) {
  a.same_tower(b);
  return a.coeffs_ == b.coeffs_;
}

// ---------------------------------------------------------------------------
// Free operations

Constructible arith(const Constructible& a, const Constructible& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::Add: return a + b;
    case ArithKind::Sub: return a - b;
    case ArithKind::Mul: return a * b;
    case ArithKind::Div: return a / b;
  }
  throw FieldError("unknown arithmetic kind");
}

int sign(const Constructible& x) { return x.tower_->sign_of(x.coeffs_); }

bool equals(const Constructible& a, const Constructible& b) { return sign(a - b) == 0; }

Constructible sqrt(const Constructible& x) {
  const int s = sign(x);
  if (s < 0) throw NegativeRadicand();
  if (s == 0) return x;
  Tower& t = *x.tower_;
  if (auto y = t.try_sqrt(x.coeffs_, t.depth())) {
    Constructible root(Constructible::Trusted{}, x.tower_, std::move(*y));
    return sign(root) < 0 ? -root : root;
  }

  // x = (m/d) * x' with x' integral and primitive; sqrt(x) = f/d * sqrt(x' * t')
  // where m*d = f^2 * t'.
  mpz_class m = 0, d = 1;
  for (const auto& c : x.coeffs_) {
    if (c == 0) continue;
    mpz_gcd(m.get_mpz_t(), m.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  }
  const Rational content(m, d);
  mpz_class rest = m * d;
  const mpz_class f = square_part(rest);
  Coeffs radicand = scale(x.coeffs_, Rational(rest) / content);
  const std::size_t k = t.extend(std::move(radicand));
  return t.number(Rational(f, d)) * t.generator(k);
}

RationalInterval to_decimal(const Constructible& x, unsigned precision_bits) {
  if (precision_bits < 1) throw FieldError("precision must be positive");
  if (x.is_rational()) return {x.coeffs_[0], x.coeffs_[0]};
  Rational max_width(1);
  max_width /= Rational(mpz_class(1) << precision_bits);
  return x.tower_->approximate(x.coeffs_, max_width);
}

std::string to_string(const Constructible& x) { return format_coeffs(*x.tower_, x.coeffs_); }

double approx(const Constructible& x) { return to_decimal(x, 64).midpoint().get_d(); }

}  // namespace compass
