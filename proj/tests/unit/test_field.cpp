#include <gtest/gtest.h>

#include "shifteq/field.hpp"

namespace shifteq {
namespace {

TEST(PrimeField, ArithmeticWrapsModP) {
  const PrimeField f(101);
  EXPECT_EQ(f.from_uint(100) + f.from_uint(5), f.from_uint(4));
  EXPECT_EQ(f.from_uint(3) - f.from_uint(5), f.from_uint(99));
  EXPECT_EQ(f.from_uint(50) * f.from_uint(3), f.from_uint(49));
  EXPECT_EQ(-f.zero(), f.zero());
  EXPECT_EQ(f.from_int(-1), f.from_uint(100));
}

TEST(PrimeField, SmallPrimeExamples) {
  const PrimeField f(7);
  EXPECT_EQ(f.from_uint(3) + f.from_uint(5), f.from_uint(1));
  EXPECT_EQ(f.inv(f.from_uint(3)), f.from_uint(5));
}

TEST(PrimeField, SeededSamplingIsReproducible) {
  const PrimeField f(101);
  Rng a(42), b(42);
  for (int i = 0; i < 50; ++i) {
    const Zp x = f.sample(101, a);
    EXPECT_EQ(x, f.sample(101, b));
    EXPECT_LE(x.value(), 100u);
  }
  Rng c(1);
  try {
    (void)PrimeField(5).sample(7, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSetTooLarge);
  }
}

TEST(PrimeField, SerializeParseRoundTrip) {
  const PrimeField f;
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Zp x = f.sample_nonzero(rng);
    EXPECT_EQ(f.to_string(f.parse(f.to_string(x))), f.to_string(x));
  }
}

TEST(PrimeField, InverseAndDivision) {
  const PrimeField f(101);
  for (std::uint64_t v = 1; v < 101; ++v) EXPECT_EQ(f.from_uint(v) * f.inv(f.from_uint(v)), f.one());
  EXPECT_EQ(f.from_uint(1) / f.from_uint(2), f.from_uint(51));
  try {
    (void)f.inv(f.zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDivisionByZero);
  }
}

TEST(PrimeField, MersenneReductionMatchesGenericPath) {
  const PrimeField f;
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto a = f.sample_nonzero(rng);
    const auto b = f.sample_nonzero(rng);
    const uint128 wide = static_cast<uint128>(a.value()) * b.value();
    EXPECT_EQ((a * b).value(), static_cast<std::uint64_t>(wide % kDefaultPrime));
  }
}

TEST(PrimeField, PowMatchesRepeatedProduct) {
  const PrimeField f(101);
  Zp acc = f.one();
  const Zp x = f.from_uint(7);
  for (std::uint64_t e = 0; e < 120; ++e) {
    EXPECT_EQ(x.pow(e), acc);
    acc *= x;
  }
  EXPECT_EQ(x.pow(100), f.one());
}

TEST(PrimeField, RejectsCompositeAndHugeModuli) {
  EXPECT_THROW(PrimeField(100), Error);
  EXPECT_THROW(PrimeField(1), Error);
  EXPECT_THROW(PrimeField((std::uint64_t{1} << 63) + 29), Error);
  EXPECT_NO_THROW(PrimeField(2));
}

TEST(PrimeField, MillerRabinAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t k = 2; k * k <= n && prime; ++k) prime = n % k != 0;
    EXPECT_EQ(is_probable_prime(n), prime) << n;
  }
  EXPECT_TRUE(is_probable_prime(kDefaultPrime));
  EXPECT_FALSE(is_probable_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(PrimeField, SampleRespectsSetSize) {
  const PrimeField f(101);
  Rng rng(1);
  for (int i = 0; i < 500; ++i) EXPECT_LT(f.sample(10, rng).value(), 10u);
  EXPECT_EQ(f.sample(1, rng), f.zero());
  try {
    (void)f.sample(102, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSetTooLarge);
  }
  EXPECT_THROW((void)f.sample(0, rng), Error);
  for (int i = 0; i < 500; ++i) EXPECT_FALSE(f.sample_nonzero(rng).is_zero());
}

TEST(PrimeField, ParseAndPrint) {
  const PrimeField f(101);
  EXPECT_EQ(f.parse("5"), f.from_uint(5));
  EXPECT_EQ(f.parse(" -1 "), f.from_uint(100));
  EXPECT_EQ(f.parse("1/2"), f.from_uint(51));
  EXPECT_EQ(f.parse("1000000000000000000000000"), f.from_uint(0) + f.parse("1000000000000000000000000"));
  EXPECT_EQ(f.to_string(f.from_int(-3)), "98");
  EXPECT_THROW(f.parse("abc"), ParseError);
  EXPECT_THROW(f.parse("1/0"), Error);
}

TEST(RationalField, ExactArithmetic) {
  const RationalField q;
  const Rational half = q.from_fraction(1, 2);
  const Rational third = q.from_fraction(1, 3);
  EXPECT_EQ(half + third, q.from_fraction(5, 6));
  EXPECT_EQ(half * third, q.from_fraction(1, 6));
  EXPECT_EQ(half / third, q.from_fraction(3, 2));
  EXPECT_EQ(q.from_fraction(2, 4), half);
  EXPECT_EQ(q.from_fraction(-1, -2), half);
  EXPECT_THROW(half / q.zero(), Error);
  EXPECT_EQ(q.to_string(q.from_fraction(-6, 4)), "-3/2");
  EXPECT_EQ(q.to_string(q.from_int(7)), "7");
  EXPECT_EQ(q.parse("-3/2"), q.from_fraction(-3, 2));
  EXPECT_EQ(q.characteristic(), 0u);
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const Rational x = q.sample(10, rng);
    EXPECT_EQ(x.denominator(), 1);
    EXPECT_TRUE(x.numerator() >= 0 && x.numerator() <= 9);
    const Rational y = q.sample_nonzero(rng);
    EXPECT_EQ(q.parse(q.to_string(y / q.from_int(7))), y / q.from_int(7));
  }
  EXPECT_FALSE(q.order().has_value());
}

TEST(FieldSpec, ParseRoundTrip) {
  EXPECT_EQ(FieldSpec::parse("p=101"), FieldSpec::prime(101));
  EXPECT_EQ(FieldSpec::parse("rational"), FieldSpec::rational());
  EXPECT_EQ(FieldSpec::prime(101).to_string(), "p=101");
  EXPECT_THROW(FieldSpec::parse("p=100"), Error);
  EXPECT_THROW(FieldSpec::parse("q=7"), ParseError);
  EXPECT_THROW(FieldSpec::parse("p=1x"), ParseError);
}

TEST(FactorialTable, ValuesAndCharacteristicGuard) {
  const PrimeField f(101);
  const FactorialTable<PrimeField> t(f, 5);
  EXPECT_EQ(t.factorial(5), f.from_uint(120));
  for (unsigned r = 0; r <= 5; ++r) EXPECT_EQ(t.factorial(r) * t.inv_factorial(r), f.one());
  try {
    FactorialTable<PrimeField> bad(PrimeField(5), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kCharacteristicTooSmall);
  }
  EXPECT_NO_THROW(FactorialTable<PrimeField>(PrimeField(7), 6));
  const FactorialTable<PrimeField> four(f, 4);
  EXPECT_EQ(four.inv_factorials(), (std::vector<Zp>{f.one(), f.one(), f.from_uint(51), f.inv(f.from_uint(6)),
                                                     f.inv(f.from_uint(24))}));
  const FactorialTable<RationalField> q(RationalField{}, 4);
  EXPECT_EQ(q.inv_factorial(3), RationalField{}.from_fraction(1, 6));
  EXPECT_EQ(q.inv_factorial(4), RationalField{}.from_fraction(1, 24));
}

}  // namespace
}  // namespace shifteq
