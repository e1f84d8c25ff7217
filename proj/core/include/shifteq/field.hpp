#ifndef SHIFTEQ_FIELD_HPP
#define SHIFTEQ_FIELD_HPP

#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "shifteq/errors.hpp"

namespace shifteq {

__extension__ using uint128 = unsigned __int128;
__extension__ using int128 = __int128;

/// The one random engine used across the library. Every randomized
/// operation takes an explicit handle so runs are reproducible from a seed.
using Rng = std::mt19937_64;

/// 2^61 - 1.
inline constexpr std::uint64_t kDefaultPrime = (std::uint64_t{1} << 61) - 1;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_probable_prime(std::uint64_t n) noexcept;

// ---------------------------------------------------------------------------
// Prime field F_p
// ---------------------------------------------------------------------------

/// Element of F_p. Carries its modulus so the arithmetic operators work
/// without a field handle; the value is always kept in [0, p).
class Zp {
 public:
  Zp(std::uint64_t value, std::uint64_t modulus) noexcept : v_(value), p_(modulus) {}

  std::uint64_t value() const noexcept { return v_; }
  std::uint64_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return v_ == 0; }

  Zp& operator+=(Zp o) noexcept {
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Zp& operator-=(Zp o) noexcept {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Zp& operator*=(Zp o) noexcept {
    v_ = mul_mod(v_, o.v_, p_);
    return *this;
  }
  Zp& operator/=(Zp o) { return *this *= o.inverse(); }

  friend Zp operator+(Zp a, Zp b) noexcept { return a += b; }
  friend Zp operator-(Zp a, Zp b) noexcept { return a -= b; }
  friend Zp operator*(Zp a, Zp b) noexcept { return a *= b; }
  friend Zp operator/(Zp a, Zp b) { return a /= b; }
  friend Zp operator-(Zp a) noexcept { return Zp(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }
  friend bool operator==(Zp a, Zp b) noexcept { return a.v_ == b.v_ && a.p_ == b.p_; }

  Zp pow(std::uint64_t e) const noexcept;
  /// Throws Error(kDivisionByZero) on zero.
  Zp inverse() const;

  friend std::ostream& operator<<(std::ostream& os, Zp a) { return os << a.v_; }

  static std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
    const uint128 x = static_cast<uint128>(a) * b;
    if (p == kDefaultPrime) {
      std::uint64_t r = static_cast<std::uint64_t>(x & kDefaultPrime) +
                        static_cast<std::uint64_t>(x >> 61);
      if (r >= kDefaultPrime) r -= kDefaultPrime;
      if (r >= kDefaultPrime) r -= kDefaultPrime;
      return r;
    }
    return static_cast<std::uint64_t>(x % p);
  }

 private:
  std::uint64_t v_;
  std::uint64_t p_;
};

class FieldSpec;

class PrimeField {
 public:
  using Element = Zp;

  /// Throws Error(kInvalidArgument) unless p is a prime below 2^63.
  explicit PrimeField(std::uint64_t p = kDefaultPrime);

  std::uint64_t modulus() const noexcept { return p_; }
  std::uint64_t characteristic() const noexcept { return p_; }
  /// Number of elements; nullopt would mean infinite.
  std::optional<std::uint64_t> order() const noexcept { return p_; }

  Zp zero() const noexcept { return Zp(0, p_); }
  Zp one() const noexcept { return Zp(1 % p_, p_); }
  Zp from_uint(std::uint64_t v) const noexcept { return Zp(v % p_, p_); }
  Zp from_int(std::int64_t v) const noexcept;
  Zp from_fraction(std::int64_t num, std::int64_t den) const { return from_int(num) / from_int(den); }
  Zp inv(Zp a) const { return a.inverse(); }
  bool is_zero(Zp a) const noexcept { return a.is_zero(); }

  /// Uniform element of {0, 1, ..., set_size - 1}. Throws kSetTooLarge when
  /// set_size > p and kInvalidArgument when set_size == 0.
  Zp sample(std::uint64_t set_size, Rng& rng) const;
  Zp sample_nonzero(Rng& rng) const;

  /// Canonical decimal representative.
  std::string to_string(Zp a) const { return std::to_string(a.value()); }
  /// Accepts decimal integers (optionally signed) and "a/b" fractions.
  Zp parse(std::string_view text) const;

  FieldSpec spec() const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Exact rational number, always reduced, backed by GMP.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& get() const noexcept { return q_; }
  bool is_zero() const noexcept { return sgn(q_) == 0; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  Rational inverse() const;
  /// "a" for integers, "a/b" otherwise.
  std::string to_string() const;

  friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.to_string(); }

 private:
  mpq_class q_;
};

class RationalField {
 public:
  using Element = Rational;

  std::uint64_t characteristic() const noexcept { return 0; }
  std::optional<std::uint64_t> order() const noexcept { return std::nullopt; }

  Rational zero() const { return Rational(0L); }
  Rational one() const { return Rational(1L); }
  Rational from_uint(std::uint64_t v) const;
  Rational from_int(std::int64_t v) const { return Rational(static_cast<long>(v)); }
  Rational from_fraction(std::int64_t num, std::int64_t den) const;
  Rational inv(const Rational& a) const { return a.inverse(); }
  bool is_zero(const Rational& a) const noexcept { return a.is_zero(); }

  /// Uniform integer in {0, ..., set_size - 1}.
  Rational sample(std::uint64_t set_size, Rng& rng) const;
  /// Uniform nonzero integer in [-1000, 1000].
  Rational sample_nonzero(Rng& rng) const;

  std::string to_string(const Rational& a) const { return a.to_string(); }
  Rational parse(std::string_view text) const;

  FieldSpec spec() const;

  friend bool operator==(const RationalField&, const RationalField&) noexcept { return true; }
};

// ---------------------------------------------------------------------------
// Field concept and textual field specification
// ---------------------------------------------------------------------------

template <class F>
concept Field = requires(const F& f, const typename F::Element& a, std::int64_t k,
                         std::uint64_t u, std::string_view s, Rng& rng) {
  typename F::Element;
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.from_int(k) } -> std::same_as<typename F::Element>;
  { f.from_uint(u) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.sample(u, rng) } -> std::same_as<typename F::Element>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { f.parse(s) } -> std::same_as<typename F::Element>;
  { f.order() } -> std::same_as<std::optional<std::uint64_t>>;
  { f.characteristic() } -> std::same_as<std::uint64_t>;
  { a + a } -> std::same_as<typename F::Element>;
  { a - a } -> std::same_as<typename F::Element>;
  { a * a } -> std::same_as<typename F::Element>;
  { -a } -> std::same_as<typename F::Element>;
  { a == a } -> std::convertible_to<bool>;
};

/// Runtime description of a field: "p=<prime>" or "rational".
class FieldSpec {
 public:
  enum class Kind { kPrime, kRational };

  static FieldSpec prime(std::uint64_t p) { return FieldSpec(Kind::kPrime, p); }
  static FieldSpec rational() { return FieldSpec(Kind::kRational, 0); }
  /// Throws ParseError on malformed text and Error(kInvalidArgument) on a
  /// composite modulus.
  static FieldSpec parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::kPrime; }
  std::uint64_t modulus() const noexcept { return p_; }
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// Factorials
// ---------------------------------------------------------------------------

/// (r!)^{-1} for 0 <= r <= d, plus r! itself, computed in the field.
template <Field F>
class FactorialTable {
 public:
  using Element = typename F::Element;

  /// Throws kCharacteristicTooSmall when the characteristic is positive and
  /// does not exceed d (then d! vanishes in the field).
  FactorialTable(const F& field, unsigned d) {
    const std::uint64_t ch = field.characteristic();
    if (ch != 0 && ch <= d) {
      throw Error(Errc::kCharacteristicTooSmall,
                  "characteristic " + std::to_string(ch) + " must exceed degree " + std::to_string(d));
    }
    factorials_.reserve(d + 1);
    factorials_.push_back(field.one());
    for (unsigned r = 1; r <= d; ++r) factorials_.push_back(factorials_.back() * field.from_uint(r));
    inv_factorials_.assign(d + 1, field.one());
    inv_factorials_[d] = field.inv(factorials_[d]);
    for (unsigned r = d; r > 0; --r) inv_factorials_[r - 1] = inv_factorials_[r] * field.from_uint(r);
  }

  unsigned max_order() const noexcept { return static_cast<unsigned>(factorials_.size() - 1); }
  const Element& factorial(unsigned r) const { return factorials_.at(r); }
  const Element& inv_factorial(unsigned r) const { return inv_factorials_.at(r); }
  const std::vector<Element>& inv_factorials() const noexcept { return inv_factorials_; }

 private:
  std::vector<Element> factorials_;
  std::vector<Element> inv_factorials_;
};

template <Field F>
FactorialTable<F> build_factorial_table(const F& field, unsigned d) {
  return FactorialTable<F>(field, d);
}

}  // namespace shifteq

#endif  // SHIFTEQ_FIELD_HPP
