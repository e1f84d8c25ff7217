#include "shifteq/field.hpp"

#include <charconv>
#include <limits>

namespace shifteq {
namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = Zp::mul_mod(r, b, m);
    b = Zp::mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits "a/b" into numerator and optional denominator text.
std::pair<std::string_view, std::string_view> split_fraction(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return {s, {}};
  return {trim(s.substr(0, slash)), trim(s.substr(slash + 1))};
}

bool is_decimal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

bool is_probable_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = Zp::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Zp Zp::pow(std::uint64_t e) const noexcept { return Zp(pow_mod(v_, e, p_), p_); }

Zp Zp::inverse() const {
  if (v_ == 0) throw Error(Errc::kDivisionByZero, "inverse of zero in F_" + std::to_string(p_));
  // Extended Euclid on signed 128-bit to stay clear of overflow for p < 2^63.
  int128 t = 0, new_t = 1;
  int128 r = p_, new_r = v_;
  while (new_r != 0) {
    const int128 q = r / new_r;
    const int128 tt = t - q * new_t;
    t = new_t;
    new_t = tt;
    const int128 rr = r - q * new_r;
    r = new_r;
    new_r = rr;
  }
  if (t < 0) t += p_;
  return Zp(static_cast<std::uint64_t>(t), p_);
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 63)) {
    throw Error(Errc::kInvalidArgument, "modulus must be below 2^63");
  }
  if (!is_probable_prime(p)) {
    throw Error(Errc::kInvalidArgument, "modulus " + std::to_string(p) + " is not prime");
  }
}

Zp PrimeField::from_int(std::int64_t v) const noexcept {
  if (v >= 0) return from_uint(static_cast<std::uint64_t>(v));
  // Avoid negating INT64_MIN.
  const std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return -from_uint(mag);
}

Zp PrimeField::sample(std::uint64_t set_size, Rng& rng) const {
  if (set_size == 0) throw Error(Errc::kInvalidArgument, "sampling set must be nonempty");
  if (set_size > p_) {
    throw Error(Errc::kSetTooLarge,
                "sampling set of size " + std::to_string(set_size) + " exceeds field size " + std::to_string(p_));
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, set_size - 1);
  return Zp(dist(rng), p_);
}

Zp PrimeField::sample_nonzero(Rng& rng) const {
  std::uniform_int_distribution<std::uint64_t> dist(1, p_ - 1);
  return Zp(dist(rng), p_);
}

Zp PrimeField::parse(std::string_view text) const {
  text = trim(text);
  const auto [num, den] = split_fraction(text);
  auto parse_one = [&](std::string_view s) {
    if (!is_decimal(s, true)) throw ParseError(0, "malformed field element '" + std::string(text) + "'");
    const bool negative = s.front() == '-';
    if (s.front() == '-' || s.front() == '+') s.remove_prefix(1);
    // Reduce digit by digit so arbitrarily long literals are accepted.
    Zp acc = zero();
    const Zp ten = from_uint(10);
    for (char c : s) acc = acc * ten + from_uint(static_cast<std::uint64_t>(c - '0'));
    return negative ? -acc : acc;
  };
  Zp value = parse_one(num);
  if (!den.empty() || text.find('/') != std::string_view::npos) {
    const Zp d = parse_one(den);
    if (d.is_zero()) throw Error(Errc::kDivisionByZero, "zero denominator in '" + std::string(text) + "'");
    value = value / d;
  }
  return value;
}

FieldSpec PrimeField::spec() const { return FieldSpec::prime(p_); }

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(Errc::kDivisionByZero, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(Errc::kDivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(Errc::kDivisionByZero, "inverse of rational zero");
  return Rational(mpq_class(1) / q_);
}

std::string Rational::to_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational RationalField::from_uint(std::uint64_t v) const {
  return Rational(mpq_class(mpz_class(std::to_string(v))));
}

Rational RationalField::from_fraction(std::int64_t num, std::int64_t den) const {
  return Rational(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
}

Rational RationalField::sample(std::uint64_t set_size, Rng& rng) const {
  if (set_size == 0) throw Error(Errc::kInvalidArgument, "sampling set must be nonempty");
  std::uniform_int_distribution<std::uint64_t> dist(0, set_size - 1);
  return from_uint(dist(rng));
}

Rational RationalField::sample_nonzero(Rng& rng) const {
  std::uniform_int_distribution<int> dist(1, 2000);
  const int k = dist(rng);
  return from_int(k <= 1000 ? k : 1000 - k);
}

Rational RationalField::parse(std::string_view text) const {
  text = trim(text);
  const auto [num, den] = split_fraction(text);
  auto to_mpz = [&](std::string_view s) {
    if (!is_decimal(s, true)) throw ParseError(0, "malformed rational '" + std::string(text) + "'");
    if (s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s));
  };
  if (text.find('/') == std::string_view::npos) return Rational(mpq_class(to_mpz(num)));
  return Rational(to_mpz(num), to_mpz(den));
}

FieldSpec RationalField::spec() const { return FieldSpec::rational(); }

FieldSpec FieldSpec::parse(std::string_view text) {
  text = trim(text);
  if (text == "rational") return rational();
  if (text.size() > 2 && text.substr(0, 2) == "p=") {
    const std::string_view digits = text.substr(2);
    std::uint64_t p = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw ParseError(2, "malformed modulus in field spec '" + std::string(text) + "'");
    }
    PrimeField check(p);  // validates primality
    return prime(p);
  }
  throw ParseError(0, "field spec must be 'p=<prime>' or 'rational', got '" + std::string(text) + "'");
}

std::string FieldSpec::to_string() const {
  return is_prime() ? "p=" + std::to_string(p_) : std::string("rational");
}

}  // namespace shifteq
