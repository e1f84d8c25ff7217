#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "shifteq/circuit.hpp"
#include "shifteq/lindep.hpp"

namespace shifteq {
namespace {

using O = Oracle<PrimeField>;
using P = DensePoly<PrimeField>;
const PrimeField kF101(101);
const PrimeField kBig;

O oracle(const std::string& text, std::size_t n, const PrimeField& f = kBig) {
  return from_circuit(parse_expression(text, n, f));
}

SpanQuery<PrimeField> query(const std::string& g, std::vector<std::string> hs, std::size_t n) {
  SpanQuery<PrimeField> q{oracle(g, n), {}};
  for (const auto& h : hs) q.generators.push_back(oracle(h, n));
  return q;
}

HittingSet<PrimeField> grid(const PrimeField& f, std::size_t n, unsigned d) {
  HittingSet<PrimeField> hs;
  std::vector<std::uint64_t> idx(n, 0);
  for (;;) {
    Vec<PrimeField> p;
    for (auto i : idx) p.push_back(f.from_uint(i));
    hs.points.push_back(p);
    std::size_t k = 0;
    while (k < n && ++idx[k] > d) idx[k++] = 0;
    if (k == n) break;
  }
  return hs;
}

// Runs all three span solvers on q; each must agree with `expect`.
void check_all(const SpanQuery<PrimeField>& q, unsigned d, bool expect, const Vec<PrimeField>* coeffs = nullptr) {
  const std::size_t n = q.target.num_vars();
  Rng rng(17);
  const auto hs = grid(q.target.field(), n, d);
  const LinDepResult<PrimeField> results[] = {
      solve_span_randomized(q, 1e-9, rng),
      solve_span_hitting_set(q, hs),
      solve_span_white_box(q, PitEngine<PrimeField>(HittingSetEngine<PrimeField>(hs))),
  };
  for (const auto& r : results) {
    EXPECT_EQ(r.has_solution(), expect);
    if (r.has_solution()) {
      EXPECT_TRUE(r.verified);
      if (coeffs) EXPECT_EQ(r.solution->point, *coeffs);
    }
  }
}

TEST(SpanSolvers, InSpanExample) {
  const Vec<PrimeField> c{kBig.from_uint(2), kBig.from_uint(3)};
  check_all(query("2*x1 + 3*x2", {"x1", "x2"}, 2), 1, true, &c);
}

TEST(SpanSolvers, NotInSpanExample) { check_all(query("x1*x2", {"x1", "x2"}, 2), 2, false); }

TEST(SpanSolvers, DependentGeneratorsGiveAffineFamily) {
  const auto q = query("x1", {"x1", "2*x1"}, 1);
  Rng rng(3);
  const auto r = solve_span_randomized(q, 1e-9, rng);
  ASSERT_TRUE(r.has_solution());
  ASSERT_EQ(r.solution->basis.size(), 1u);
  const auto& v = r.solution->basis[0];
  EXPECT_EQ(v[0] + v[1] * kBig.from_uint(2), kBig.zero());
  const auto& p = r.solution->point;
  EXPECT_EQ(p[0] + p[1] * kBig.from_uint(2), kBig.one());
  const auto hs = solve_span_hitting_set(q, grid(kBig, 1, 1));
  ASSERT_TRUE(hs.has_solution());
  EXPECT_EQ(hs.solution->basis.size(), 1u);
}

TEST(SpanSolvers, EmptyGenerators) {
  check_all(query("0", {}, 2), 1, true);
  check_all(query("x1 - x1", {}, 2), 1, true);
  check_all(query("x1", {}, 2), 1, false);
}

TEST(SpanSolvers, MismatchedSpacesThrow) {
  SpanQuery<PrimeField> q{oracle("x1", 2), {oracle("x1", 3)}};
  Rng rng(1);
  EXPECT_THROW((void)solve_span_randomized(q, 1e-9, rng), Error);
  SpanQuery<PrimeField> r{oracle("x1", 1), {oracle("x1", 1, kF101)}};
  EXPECT_THROW((void)solve_span_hitting_set(r, HittingSet<PrimeField>{}), Error);
}

TEST(SpanSolvers, AgreeWithDenseOracleOnRandomInstances) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 3;
    const unsigned d = 1 + t % 3;
    const std::size_t k = 1 + t % 4;
    std::vector<P> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(random_poly(n, d, 0.5, kBig, rng));
    P g(kBig, n);
    if (t % 2 == 0) {
      for (const auto& h : gens) g += h * kBig.sample(100, rng);
    } else {
      g = random_poly(n, d, 0.7, kBig, rng);
    }
    const auto expect = testing::dense_span_solve(g, gens);
    SpanQuery<PrimeField> q{from_dense(g), {}};
    for (const auto& h : gens) q.generators.push_back(from_dense(h));

    const auto hs = grid(kBig, n, d);
    const LinDepResult<PrimeField> results[] = {
        solve_span_randomized(q, 1e-9, rng),
        solve_span_hitting_set(q, hs),
        solve_span_white_box(q, PitEngine<PrimeField>(HittingSetEngine<PrimeField>(hs))),
    };
    for (const auto& r : results) {
      ASSERT_EQ(r.has_solution(), expect.has_value()) << t;
      if (!expect) continue;
      P combo(kBig, n);
      for (std::size_t i = 0; i < k; ++i) combo += gens[i] * r.solution->point[i];
      EXPECT_EQ(combo, g);
      EXPECT_EQ(r.solution->basis.size(), expect->basis.size());
      EXPECT_TRUE(testing::same_span(kBig, r.solution->basis, expect->basis));
    }
  }
}

TEST(SolveJoint, ShiftOfSquare) {
  // (x+1)^2 = x^2 + b * 2x + 1 with the constant handled on the target side.
  JointLinearSystem<PrimeField> sys;
  sys.unknown_dim = 1;
  sys.equations.push_back({oracle("(x1+1)^2 - x1^2 - 1", 1), {oracle("2*x1", 1)}});
  Rng rng(5);
  const auto r = solve_joint(sys, JointStrategy<PrimeField>(JointRandomized{1e-9, &rng}));
  ASSERT_TRUE(r.has_solution());
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.solution->point, (Vec<PrimeField>{kBig.one()}));
  const auto h = solve_joint(sys, JointStrategy<PrimeField>(JointHittingSet<PrimeField>{grid(kBig, 1, 2)}));
  ASSERT_TRUE(h.has_solution());
  EXPECT_EQ(h.solution->point, (Vec<PrimeField>{kBig.one()}));
}

TEST(SolveJoint, InconsistentSystem) {
  JointLinearSystem<PrimeField> sys;
  sys.unknown_dim = 1;
  sys.equations.push_back({oracle("x1", 2), {oracle("x1", 2)}});
  sys.equations.push_back({oracle("2*x2", 2), {oracle("x2", 2)}});
  Rng rng(6);
  EXPECT_FALSE(solve_joint(sys, JointStrategy<PrimeField>(JointRandomized{1e-9, &rng})).has_solution());
  EXPECT_FALSE(
      solve_joint(sys, JointStrategy<PrimeField>(JointHittingSet<PrimeField>{grid(kBig, 2, 1)})).has_solution());
}

TEST(SolveJoint, ZeroUnknownsTestsTargets) {
  JointLinearSystem<PrimeField> sys;
  sys.equations.push_back({oracle("x1 - x1", 1), {}});
  Rng rng(7);
  EXPECT_TRUE(solve_joint(sys, JointStrategy<PrimeField>(JointRandomized{1e-9, &rng})).has_solution());
  sys.equations.push_back({oracle("x1", 1), {}});
  EXPECT_FALSE(solve_joint(sys, JointStrategy<PrimeField>(JointRandomized{1e-9, &rng})).has_solution());
}

TEST(SolveJoint, ArgumentChecks) {
  Rng rng(8);
  JointLinearSystem<PrimeField> empty;
  EXPECT_THROW((void)solve_joint(empty, JointStrategy<PrimeField>(JointRandomized{1e-9, &rng})), Error);
  JointLinearSystem<PrimeField> bad;
  bad.unknown_dim = 2;
  bad.equations.push_back({oracle("x1", 1), {oracle("x1", 1)}});
  EXPECT_THROW((void)solve_joint(bad, JointStrategy<PrimeField>(JointRandomized{1e-9, &rng})), Error);
  JointLinearSystem<PrimeField> ok;
  ok.unknown_dim = 1;
  ok.equations.push_back({oracle("x1", 1), {oracle("x1", 1)}});
  EXPECT_THROW((void)solve_joint(ok, JointStrategy<PrimeField>(JointRandomized{1e-9, nullptr})), Error);
}

TEST(SolveJoint, PlantedSystems) {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 3;
    const std::size_t b = 1 + t % 3;
    const std::size_t eqs = 1 + t % 2;
    const auto truth = testing::random_vector(kBig, b, kDefaultPrime, rng);
    JointLinearSystem<PrimeField> sys;
    sys.unknown_dim = b;
    std::vector<std::pair<P, std::vector<P>>> dense;
    for (std::size_t e = 0; e < eqs; ++e) {
      std::vector<P> gens;
      P target(kBig, n);
      for (std::size_t l = 0; l < b; ++l) {
        gens.push_back(random_poly(n, 2, 0.6, kBig, rng));
        target += gens.back() * truth[l];
      }
      LinearIdentity<PrimeField> id{from_dense(target), {}};
      for (const auto& g : gens) id.generators.push_back(from_dense(g));
      sys.equations.push_back(id);
      dense.emplace_back(target, gens);
    }
    const auto r = solve_joint(sys, JointStrategy<PrimeField>(JointRandomized{1e-9, &rng}));
    ASSERT_TRUE(r.has_solution()) << t;
    for (const auto& [target, gens] : dense) {
      P combo(kBig, n);
      for (std::size_t l = 0; l < b; ++l) combo += gens[l] * r.solution->point[l];
      EXPECT_EQ(combo, target);
    }
  }
}

}  // namespace
}  // namespace shifteq
