#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "shifteq/circuit.hpp"

namespace shifteq {
namespace {

using C = Circuit<PrimeField>;
const PrimeField kF101(101);

Vec<PrimeField> vec(std::initializer_list<long> xs) {
  Vec<PrimeField> v;
  for (long x : xs) v.push_back(kF101.from_int(x));
  return v;
}

TEST(Circuit, ParseSharesLeaves) {
  const C c = parse_expression("x1*x1 + 3", 1, kF101);
  EXPECT_EQ(c.count<InputGate>(), 1u);
  EXPECT_EQ(c.count<ConstGate<PrimeField>>(), 1u);
  EXPECT_EQ(c.count<MulGate>(), 1u);
  EXPECT_EQ(c.count<AddGate>(), 1u);
}

TEST(Circuit, PowerOfSum) {
  const C c = parse_expression("(x1+x2)^2", 2, kF101);
  EXPECT_EQ(c.count<AddGate>(), 1u);
  EXPECT_EQ(c.count<MulGate>(), 1u);
  EXPECT_EQ(c.evaluate(vec({1, 2})), kF101.from_uint(9));
  EXPECT_EQ(c.syntactic_degree_bound(), 2u);
}

TEST(Circuit, UnknownVariableIsParseError) {
  EXPECT_THROW((void)parse_expression("x3", 2, kF101), ParseError);
  EXPECT_THROW((void)parse_expression("x1 +", 2, kF101), ParseError);
  EXPECT_THROW((void)parse_expression("(x1", 2, kF101), ParseError);
  EXPECT_THROW((void)parse_expression("x1 x2", 2, kF101), ParseError);
  try {
    (void)parse_expression("x1 + y", 1, kF101);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(Circuit, ConstantsAndDegrees) {
  const C seven = parse_expression("7", 2, kF101);
  EXPECT_EQ(seven.evaluate(vec({4, 9})), kF101.from_uint(7));
  EXPECT_EQ(seven.syntactic_degree_bound(), 0u);
  const C cancel = parse_expression("x1*x1 - x1*x1", 1, kF101);
  EXPECT_EQ(cancel.syntactic_degree_bound(), 2u);
  EXPECT_TRUE(cancel.to_dense().is_zero());
}

TEST(Circuit, ToDense) {
  EXPECT_EQ(parse_expression("(x1+1)^3", 1, kF101).to_dense(),
            parse_expression("x1^3 + 3*x1^2 + 3*x1 + 1", 1, kF101).to_dense());
  EXPECT_TRUE(parse_expression("x1*x2 - x2*x1", 2, kF101).to_dense().is_zero());
  try {
    (void)parse_expression("(x1+x2+1)^400", 2, kF101).to_dense();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kTooLarge);
  }
}

TEST(Circuit, UnaryMinusAndRationalLiterals) {
  EXPECT_EQ(parse_expression("-x1 + -2", 1, kF101).evaluate(vec({3})), kF101.from_int(-5));
  EXPECT_EQ(parse_expression("x1^0", 1, kF101).evaluate(vec({0})), kF101.one());
  const RationalField q;
  const auto c = parse_expression("1/2*x1", 1, q);
  EXPECT_EQ(c.evaluate(Vec<RationalField>{q.from_int(3)}), q.from_fraction(3, 2));
  EXPECT_THROW((void)parse_expression("1/2*x1", 1, kF101), ParseError);
}

TEST(Circuit, RejectsMalformedGraphs) {
  using G = Gate<PrimeField>;
  EXPECT_THROW(C(kF101, 1, std::vector<G>{AddGate{0, 1}, InputGate{0}}, 0), Error);
  EXPECT_THROW(C(kF101, 1, std::vector<G>{InputGate{1}}, 0), Error);
  EXPECT_THROW(C(kF101, 2, std::vector<G>{InputGate{0}, InputGate{1}}, 1), Error);
}

TEST(Circuit, DenseAgreesWithEvaluation) {
  const PrimeField big;
  Rng rng(12);
  const char* exprs[] = {"(x1+2*x2-x3)^3*(x2+1) - x1*x3", "x1*(x2*(x3+x1)^2 + 5)^2", "(x1-x2)^4 - (x2-x1)^4 + x3"};
  for (const char* e : exprs) {
    const auto c = parse_expression(e, 3, big);
    const auto dense = c.to_dense();
    EXPECT_GE(c.syntactic_degree_bound(), dense.degree().value_or(0));
    for (int k = 0; k < 50; ++k) {
      const auto x = testing::random_vector(big, 3, kDefaultPrime, rng);
      EXPECT_EQ(c.evaluate(x), dense.evaluate(x)) << e;
    }
  }
}

}  // namespace
}  // namespace shifteq
