#pragma once

// Exact arithmetic in towers of real quadratic extensions of the rationals.
//
// A Tower is an extend-only list of square-root generators g_0, g_1, ...
// where g_k = sqrt(r_k) and r_k is a positive non-square element of
// Q(g_0, ..., g_{k-1}).  A Constructible value at depth d is stored as 2^d
// rational coordinates in the basis of generator products: coefficient i
// multiplies the product of g_j over the set bits j of i.  Because every
// extension is proper this basis is a true basis, so the coordinate vector
// (trimmed of trailing all-zero halves) is canonical and equality is a
// plain vector comparison.
//
// Signs of nonzero values are decided by rational interval evaluation using
// per-generator enclosures that the tower refines by bisection on demand.
//
// Threading: values are immutable and can be read from any thread.  A Tower
// mutates on extension and on enclosure refinement, so all values sharing a
// tower must be used from one thread at a time.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace compass {

using Rational = mpq_class;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public FieldError {
 public:
  DivisionByZero() : FieldError("division by zero") {}
};

class ContextMismatch : public FieldError {
 public:
  ContextMismatch() : FieldError("values belong to different extension towers") {}
};

class NegativeRadicand : public FieldError {
 public:
  NegativeRadicand() : FieldError("square root of a negative number") {}
};

/// Raised when sign determination exceeds the refinement cap.  The zero test
/// is exact, so hitting this means a bug rather than bad input.
class RefinementLimit : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

class Constructible;

class Tower : public std::enable_shared_from_this<Tower> {
 public:
  static constexpr unsigned kDefaultRefinementCap = 4096;

  static std::shared_ptr<Tower> create();

  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  std::uint64_t id() const { return id_; }
  std::size_t depth() const { return gens_.size(); }

  /// Radicand of generator k as a coordinate vector of length <= 2^k.
  std::span<const Rational> radicand(std::size_t k) const { return gens_.at(k).radicand; }
  /// Current enclosure [lo, hi] of sqrt(radicand(k)); only ever narrows.
  RationalInterval enclosure(std::size_t k) const { return gens_.at(k).enclosure; }
  /// Printable radical expression for generator k, e.g. "sqrt(10 - 2*sqrt(5))".
  const std::string& generator_text(std::size_t k) const { return gens_.at(k).text; }

  Constructible number(const Rational& q);
  Constructible number(long num, long den = 1);
  Constructible generator(std::size_t k);

  unsigned refinement_cap() const { return refinement_cap_; }
  void set_refinement_cap(unsigned cap) { refinement_cap_ = cap; }

 private:
  Tower();

  struct Generator {
    std::vector<Rational> radicand;
    RationalInterval enclosure;
    std::string text;
  };

  // Adjoins sqrt(radicand); the caller guarantees radicand is positive and
  // not a square in the current tower.
  std::size_t extend(std::vector<Rational> radicand);
  void bisect(std::size_t k);
  RationalInterval evaluate(std::span<const Rational> coeffs) const;
  int sign_of(std::span<const Rational> coeffs);
  RationalInterval approximate(std::span<const Rational> coeffs, const Rational& max_width);

  std::vector<Rational> mul(std::span<const Rational> a, std::span<const Rational> b) const;
  std::vector<Rational> inverse(std::span<const Rational> a) const;
  std::optional<std::vector<Rational>> try_sqrt(std::span<const Rational> x, std::size_t level);

  std::uint64_t id_;
  std::vector<Generator> gens_;
  unsigned refinement_cap_ = kDefaultRefinementCap;

  friend class Constructible;
  friend Constructible sqrt(const Constructible& x);
  friend int sign(const Constructible& x);
  friend RationalInterval to_decimal(const Constructible& x, unsigned precision_bits);
  friend std::string to_string(const Constructible& x);
  friend Constructible operator*(const Constructible& a, const Constructible& b);
  friend Constructible operator/(const Constructible& a, const Constructible& b);
};

using TowerPtr = std::shared_ptr<Tower>;

/// An exact element of a Tower.
class Constructible {
 public:
  Constructible(TowerPtr tower, const Rational& q);
  Constructible(TowerPtr tower, std::vector<Rational> coeffs);

  const TowerPtr& tower() const { return tower_; }
  std::uint64_t context_id() const { return tower_->id(); }
  std::size_t depth() const;
  std::span<const Rational> coefficients() const { return coeffs_; }
  /// Coordinates padded with zero blocks to 2^depth entries.
  std::vector<Rational> lifted(std::size_t depth) const;

  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }
  bool is_rational() const { return coeffs_.size() == 1; }
  /// Value as a rational; throws FieldError when irrational.
  const Rational& as_rational() const;

  Constructible operator-() const;
  friend Constructible operator+(const Constructible& a, const Constructible& b);
  friend Constructible operator-(const Constructible& a, const Constructible& b);
  friend Constructible operator*(const Constructible& a, const Constructible& b);
  friend Constructible operator/(const Constructible& a, const Constructible& b);
  Constructible& operator+=(const Constructible& b) { return *this = *this + b; }
  Constructible& operator-=(const Constructible& b) { return *this = *this - b; }
  Constructible& operator*=(const Constructible& b) { return *this = *this * b; }
  Constructible& operator/=(const Constructible& b) { return *this = *this / b; }

  /// Exact equality.  Same-tower values compare coordinate vectors.
  friend bool operator==(const Constructible& a, const Constructible& b);

 private:
  struct Trusted {};
  // Coefficients from internal arithmetic are already in lowest terms.
  Constructible(Trusted, TowerPtr tower, std::vector<Rational> coeffs);

  void canonicalize();
  const Tower& same_tower(const Constructible& b) const;

  TowerPtr tower_;
  std::vector<Rational> coeffs_;

  friend class Tower;
  friend Constructible sqrt(const Constructible& x);
  friend int sign(const Constructible& x);
  friend RationalInterval to_decimal(const Constructible& x, unsigned precision_bits);
  friend std::string to_string(const Constructible& x);
};

enum class ArithKind { Add, Sub, Mul, Div };

Constructible arith(const Constructible& a, const Constructible& b, ArithKind kind);
Constructible sqrt(const Constructible& x);
int sign(const Constructible& x);
bool equals(const Constructible& a, const Constructible& b);
/// Rational interval containing x, of width at most 2^-precision_bits.
RationalInterval to_decimal(const Constructible& x, unsigned precision_bits);
/// Radical expression, e.g. "1/4 + 1/4*sqrt(5)"; parseable by geoscript.
std::string to_string(const Constructible& x);
/// Midpoint of a 64-bit enclosure, as a double.
double approx(const Constructible& x);

inline Constructible square(const Constructible& x) { return x * x; }

}  // namespace compass
