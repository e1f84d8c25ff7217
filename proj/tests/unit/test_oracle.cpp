#include <gtest/gtest.h>

#include <thread>

#include "brute_force.hpp"
#include "shifteq/circuit.hpp"
#include "shifteq/oracle.hpp"

namespace shifteq {
namespace {

using O = Oracle<PrimeField>;
using P = DensePoly<PrimeField>;
const PrimeField kF101(101);
const PrimeField kBig;

P parse(const std::string& text, std::size_t n, const PrimeField& f = kF101) {
  return parse_expression(text, n, f).to_dense();
}

Vec<PrimeField> vec(std::initializer_list<long> xs, const PrimeField& f = kF101) {
  Vec<PrimeField> v;
  for (long x : xs) v.push_back(f.from_int(x));
  return v;
}

TEST(Oracle, BaseOracles) {
  EXPECT_EQ(from_dense(parse("x1^2", 1))(vec({3})), kF101.from_uint(9));
  const O c = from_circuit(parse_expression("(x1+x2)^2", 2, kF101), 2);
  EXPECT_EQ(c(vec({1, 2})), kF101.from_uint(9));
  EXPECT_EQ(c.degree_bound(), 2u);
  const O z = from_dense(P(kF101, 2));
  EXPECT_EQ(z(vec({4, 5})), kF101.zero());
  EXPECT_EQ(z.degree_bound(), 0u);
  EXPECT_THROW((void)c(vec({1})), Error);
}

TEST(Oracle, ShiftedExamples) {
  const O sq = from_dense(parse("x1^2", 1));
  EXPECT_EQ(shifted(sq, std::span<const Zp>(vec({1})))(vec({2})), kF101.from_uint(9));
  EXPECT_THROW((void)shifted(sq, std::span<const Zp>(vec({1, 2}))), Error);

  Rng rng(1);
  const O f = from_dense(random_poly(3, 4, 0.5, kBig, rng));
  const auto a = testing::random_vector(kBig, 3, 1000, rng);
  const auto b = testing::random_vector(kBig, 3, 1000, rng);
  Vec<PrimeField> ab = a;
  for (int i = 0; i < 3; ++i) ab[i] += b[i];
  const O zero_shift = shifted(f, std::span<const Zp>(vec({0, 0, 0}, kBig)));
  const O twice = shifted(shifted(f, std::span<const Zp>(a)), std::span<const Zp>(b));
  const O once = shifted(f, std::span<const Zp>(ab));
  for (int k = 0; k < 20; ++k) {
    const auto x = testing::random_vector(kBig, 3, kDefaultPrime, rng);
    EXPECT_EQ(zero_shift(x), f(x));
    EXPECT_EQ(twice(x), once(x));
  }
}

TEST(Oracle, LinearCombinationExamples) {
  const O f = from_dense(parse("x1^3 + x2", 2));
  const O diff = linear_combination<PrimeField>(vec({1, -1}), std::vector<O>{f, f});
  Rng rng(2);
  for (int k = 0; k < 20; ++k) EXPECT_TRUE(diff(testing::random_vector(kF101, 2, 101, rng)).is_zero());
  const O x1 = from_dense(P::variable(kF101, 2, 0));
  const O x2 = from_dense(P::variable(kF101, 2, 1));
  const O comb = linear_combination<PrimeField>(vec({2, 3}), std::vector<O>{x1, x2});
  EXPECT_EQ(comb(vec({1, 1})), kF101.from_uint(5));
  EXPECT_EQ(linear_combination<PrimeField>(vec({1, 1}), std::vector<O>{f, x1}).degree_bound(), 3u);
  EXPECT_THROW((void)linear_combination<PrimeField>(Vec<PrimeField>{}, std::vector<O>{}), Error);
  const O other = from_dense(P::variable(kF101, 3, 0));
  EXPECT_THROW((void)linear_combination<PrimeField>(vec({1, 1}), std::vector<O>{x1, other}), Error);
}

TEST(Oracle, HomogeneousExamples) {
  const O cube = from_dense(parse("(x1+1)^3", 1));
  EXPECT_EQ(homogeneous_oracle(cube, 1)(vec({2})), kF101.from_uint(6));
  EXPECT_EQ(homogeneous_oracle(cube, 1).degree_bound(), 1u);
  EXPECT_THROW((void)homogeneous_oracle(cube, 4), Error);

  const O hom = from_dense(parse("x1^2*x2 + 3*x2^3", 2));
  const O h3 = homogeneous_oracle(hom, 3);
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto x = testing::random_vector(kF101, 2, 101, rng);
    EXPECT_EQ(h3(x), hom(x));
  }
}

TEST(Oracle, HomogeneousNeedsLargeEnoughField) {
  const PrimeField tiny(3);
  const O f = from_dense(parse("x1^3", 1, tiny));
  try {
    (void)homogeneous_oracle(f, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kFieldTooSmall);
  }
}

TEST(Oracle, HomogeneousCustomNodes) {
  const O f = from_dense(parse("x1^2 + 5*x1 + 1", 1));
  const O h = homogeneous_oracle(f, 1, vec({3, 7, 11}));
  EXPECT_EQ(h(vec({2})), kF101.from_uint(10));
  EXPECT_THROW((void)homogeneous_oracle(f, 1, vec({3, 3, 11})), Error);
  EXPECT_THROW((void)homogeneous_oracle(f, 1, vec({3, 4})), Error);
}

TEST(Oracle, DirectionalDerivativeExamples) {
  const O f = from_dense(parse("x1^2*x2", 2, kBig));
  const O d1 = directional_derivative_oracle(f, 3, 1, std::span<const Zp>(vec({1, 0}, kBig)));
  const O h3 = homogeneous_oracle(f, 3);
  const O d0 = directional_derivative_oracle(f, 3, 0, std::span<const Zp>(vec({4, 9}, kBig)));
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const auto x = testing::random_vector(kBig, 2, kDefaultPrime, rng);
    EXPECT_EQ(d1(x), kBig.from_uint(2) * x[0] * x[1]);
    EXPECT_EQ(d0(x), h3(x));
  }
  EXPECT_THROW((void)directional_derivative_oracle(f, 2, 3, std::span<const Zp>(vec({1, 0}, kBig))), Error);
  EXPECT_THROW((void)directional_derivative_oracle(f, 4, 1, std::span<const Zp>(vec({1, 0}, kBig))), Error);
}

TEST(Oracle, FirstOrderExamples) {
  Rng rng(5);
  const O sq = from_dense(parse("x1^2", 1, kBig));
  const O zero_dir = first_order_oracle(sq, std::span<const Zp>(vec({0}, kBig)));
  const O along = first_order_oracle(sq, std::span<const Zp>(vec({7}, kBig)));
  const O inv = first_order_oracle(from_dense(parse("(x1-x2)^2", 2, kBig)), std::span<const Zp>(vec({1, 1}, kBig)));
  for (int k = 0; k < 20; ++k) {
    const auto x = testing::random_vector(kBig, 1, kDefaultPrime, rng);
    EXPECT_TRUE(zero_dir(x).is_zero());
    EXPECT_EQ(along(x), kBig.from_uint(14) * x[0]);
    EXPECT_TRUE(inv(testing::random_vector(kBig, 2, kDefaultPrime, rng)).is_zero());
  }
  EXPECT_TRUE(first_order_oracle(from_dense(parse("5", 1, kBig)), std::span<const Zp>(vec({1}, kBig)))(vec({3}, kBig))
                  .is_zero());
}

class OracleProperties : public ::testing::TestWithParam<int> {};

TEST_P(OracleProperties, HomogeneousMatchesDenseComponent) {
  Rng rng(100 + GetParam());
  const std::size_t n = 1 + GetParam() % 4;
  const unsigned d = 1 + GetParam() % 5;
  const P f = random_poly(n, d, 0.6, kBig, rng);
  const O o = with_degree_bound(from_dense(f), d);
  for (unsigned i = 0; i <= d; ++i) {
    const O h = homogeneous_oracle(o, i);
    const P hd = homogeneous_component(f, i);
    for (int k = 0; k < 50; ++k) {
      const auto x = testing::random_vector(kBig, n, kDefaultPrime, rng);
      EXPECT_EQ(h(x), hd.evaluate(x));
    }
  }
}

TEST_P(OracleProperties, ComponentsSumToOracle) {
  Rng rng(200 + GetParam());
  const std::size_t n = 1 + GetParam() % 4;
  const unsigned d = 1 + GetParam() % 6;
  const O o = from_dense(random_poly(n, d, 0.5, kBig, rng));
  for (int k = 0; k < 10; ++k) {
    const auto x = testing::random_vector(kBig, n, kDefaultPrime, rng);
    Zp sum = kBig.zero();
    for (unsigned i = 0; i <= o.degree_bound(); ++i) sum += homogeneous_oracle(o, i)(x);
    EXPECT_EQ(sum, o(x));
  }
}

TEST_P(OracleProperties, DirectionalDerivativeMatchesDefinition) {
  Rng rng(300 + GetParam());
  const std::size_t n = 1 + GetParam() % 4;
  const unsigned d = 1 + GetParam() % 5;
  const P f = random_poly(n, d, 0.6, kBig, rng);
  const O o = with_degree_bound(from_dense(f), d);
  const auto a = testing::random_vector(kBig, n, kDefaultPrime, rng);
  for (unsigned k = 0; k <= d; ++k) {
    for (unsigned r = 0; r <= std::min(k, 3u); ++r) {
      const O dd = directional_derivative_oracle(o, k, r, std::span<const Zp>(a));
      const P expected = directional_derivative(homogeneous_component(f, k), std::span<const Zp>(a), r);
      for (int t = 0; t < 50; ++t) {
        const auto x = testing::random_vector(kBig, n, kDefaultPrime, rng);
        EXPECT_EQ(dd(x), expected.evaluate(x)) << "k=" << k << " r=" << r;
      }
    }
  }
}

TEST_P(OracleProperties, TaylorIdentityThroughOracles) {
  Rng rng(400 + GetParam());
  const std::size_t n = 1 + GetParam() % 4;
  const unsigned d = 1 + GetParam() % 6;
  const O o = with_degree_bound(from_dense(random_poly(n, d, 0.5, kBig, rng)), d);
  const auto a = testing::random_vector(kBig, n, kDefaultPrime, rng);
  const FactorialTable<PrimeField> fact(kBig, d);
  const unsigned i = GetParam() % (d + 1);
  const O lhs = homogeneous_oracle(shifted(o, std::span<const Zp>(a)), i);
  for (int t = 0; t < 5; ++t) {
    const auto x = testing::random_vector(kBig, n, kDefaultPrime, rng);
    Zp rhs = kBig.zero();
    for (unsigned j = i; j <= d; ++j)
      rhs += fact.inv_factorial(j - i) * directional_derivative_oracle(o, j, j - i, std::span<const Zp>(a))(x);
    EXPECT_EQ(lhs(x), rhs);
  }
}

INSTANTIATE_TEST_SUITE_P(Random, OracleProperties, ::testing::Range(0, 20));

TEST(Oracle, QueryAccounting) {
  Rng rng(6);
  const unsigned d = 4;
  const O f = from_dense(random_poly(3, d, 1.0, kBig, rng));
  ASSERT_EQ(f.degree_bound(), d);
  const auto x = testing::random_vector(kBig, 3, kDefaultPrime, rng);
  const auto a = testing::random_vector(kBig, 3, kDefaultPrime, rng);

  std::uint64_t before = f.queries();
  (void)f(x);
  EXPECT_EQ(f.queries() - before, 1u);

  const O h = homogeneous_oracle(f, 2);
  before = h.queries();
  (void)h(x);
  EXPECT_EQ(h.queries() - before, d + 1);

  const O top = directional_derivative_oracle(f, d, 1, std::span<const Zp>(a));
  before = top.queries();
  (void)top(x);
  EXPECT_EQ(top.queries() - before, (d + 1) * (d + 1));

  const unsigned k = 2;
  const O low = directional_derivative_oracle(f, k, 1, std::span<const Zp>(a));
  before = low.queries();
  (void)low(x);
  EXPECT_EQ(low.queries() - before, (k + 1) * (d + 1));
}

TEST(Oracle, SharedBaseCountedOnce) {
  const O f = from_dense(parse("x1 + x2", 2));
  const O g = from_dense(parse("x1", 2));
  const O diff = difference(f, f);
  (void)diff(vec({1, 2}));
  EXPECT_EQ(diff.queries(), 2u);
  (void)g(vec({1, 2}));
  EXPECT_EQ(total_queries<PrimeField>({&diff, &g, &f}), 3u);
}

TEST(Oracle, LinearTransformAndRestriction) {
  const O f = from_dense(parse("x1*x2", 2));
  const auto a = Matrix<PrimeField>::from_ints(kF101, {{1, 1}, {1, -1}});
  EXPECT_EQ(linearly_transformed(f, a)(vec({3, 1})), kF101.from_uint(8));
  const O r = restricted(f, std::span<const Zp>(vec({5})));
  EXPECT_EQ(r(vec({0, 3})), kF101.from_uint(15));
}

TEST(Oracle, MemoizedCachesQueries) {
  const O f = from_dense(parse("x1^2", 1));
  const O m = memoized(f);
  (void)m(vec({3}));
  (void)m(vec({3}));
  (void)m(vec({4}));
  EXPECT_EQ(m.queries(), 2u);
  EXPECT_TRUE(m.explicit_form().has_value());
}

TEST(Oracle, ConcurrentEvaluationCountsExactly) {
  const O f = from_dense(parse("x1^3 + x2", 2, kBig));
  const O h = homogeneous_oracle(f, 3);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&h, t] {
      for (int k = 0; k < 100; ++k) (void)h(vec({t, k}, kBig));
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(h.queries(), 4u * 100u * 4u);
}

TEST(Oracle, ExplicitForm) {
  const P f = parse("x1*x2 + 1", 2);
  EXPECT_EQ(*from_dense(f).explicit_form(), f);
  EXPECT_EQ(*from_circuit(parse_expression("x1*x2 + 1", 2, kF101)).explicit_form(), f);
  EXPECT_FALSE(homogeneous_oracle(from_dense(f), 2).explicit_form().has_value());
  EXPECT_FALSE(from_circuit(parse_expression("(x1+x2+1)^500", 2, kF101)).explicit_form().has_value());
}

}  // namespace
}  // namespace shifteq
