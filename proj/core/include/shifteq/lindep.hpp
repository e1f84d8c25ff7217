#ifndef SHIFTEQ_LINDEP_HPP
#define SHIFTEQ_LINDEP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "shifteq/errors.hpp"
#include "shifteq/field.hpp"
#include "shifteq/linalg.hpp"
#include "shifteq/oracle.hpp"
#include "shifteq/pit.hpp"

namespace shifteq {

/// Is target in span(generators)?
template <Field F>
struct SpanQuery {
  Oracle<F> target;
  std::vector<Oracle<F>> generators;
};

/// target == sum_l b_l * generators[l].
template <Field F>
struct LinearIdentity {
  Oracle<F> target;
  std::vector<Oracle<F>> generators;
};

/// Identities sharing the unknowns b_1..b_{unknown_dim}.
template <Field F>
struct JointLinearSystem {
  std::size_t unknown_dim = 0;
  std::vector<LinearIdentity<F>> equations;
};

template <Field F>
struct LinDepResult {
  /// nullopt means no solution.
  std::optional<AffineSubspace<F>> solution;
  /// A final identity test ran on the particular point and passed.
  bool verified = false;

  bool has_solution() const noexcept { return solution.has_value(); }
};

struct JointRandomized {
  double epsilon = 1e-9;
  Rng* rng = nullptr;
  std::size_t redundancy = 20;
};

template <Field F>
struct JointHittingSet {
  HittingSet<F> hs;
};

template <Field F>
using JointStrategy = std::variant<JointRandomized, JointHittingSet<F>>;

namespace detail {

template <Field F>
void check_query(const SpanQuery<F>& q) {
  for (const auto& h : q.generators) {
    if (h.num_vars() != q.target.num_vars() || !(h.field() == q.target.field())) {
      throw Error(Errc::kDimensionMismatch, "generators and target live over different spaces");
    }
  }
}

template <Field F>
unsigned max_degree(const SpanQuery<F>& q) {
  unsigned d = q.target.degree_bound();
  for (const auto& h : q.generators) d = std::max(d, h.degree_bound());
  return d;
}

// sum_i beta_i h_i - g.
template <Field F>
Oracle<F> residual(const SpanQuery<F>& q, const Vec<F>& beta) {
  const F& field = q.target.field();
  std::vector<Oracle<F>> terms = q.generators;
  Vec<F> coeffs = beta;
  terms.push_back(q.target);
  coeffs.push_back(-field.one());
  return linear_combination(coeffs, terms);
}

// Incremental basis selection shared by the randomized and white-box
// solvers. `pick` receives the determinant oracle y -> det M_l(y) and
// returns a point where it is nonzero, or nullopt to declare h_l dependent
// on the current basis.
template <Field F, class Pick>
AffineSubspace<F> scan_span(const SpanQuery<F>& q, Pick&& pick) {
  const F& field = q.target.field();
  const std::size_t n = q.target.num_vars();
  const std::size_t k = q.generators.size();
  std::vector<std::size_t> basis;
  std::vector<Vec<F>> points;
  // values[i][j] = generators[basis[i]](points[j])
  std::vector<Vec<F>> values;
  std::vector<Vec<F>> relations;

  for (std::size_t l = 0; l < k; ++l) {
    const std::size_t c = basis.size();
    Matrix<F> fixed(field, c + 1, c);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j) fixed(i, j) = values[i][j];
    for (std::size_t j = 0; j < c; ++j) fixed(c, j) = q.generators[l](points[j]);

    std::vector<Oracle<F>> rows;
    for (std::size_t i : basis) rows.push_back(q.generators[i]);
    rows.push_back(q.generators[l]);
    const Oracle<F> det = from_function<F>(
        field, n, max_degree(q), [fixed, rows, c, field](std::span<const typename F::Element> y) {
          Matrix<F> m(field, c + 1, c + 1);
          for (std::size_t i = 0; i <= c; ++i) {
            for (std::size_t j = 0; j < c; ++j) m(i, j) = fixed(i, j);
            m(i, c) = rows[i](y);
          }
          return determinant(std::move(m));
        });

    if (auto y = pick(det)) {
      for (std::size_t i = 0; i < c; ++i) values[i].push_back(q.generators[basis[i]](*y));
      Vec<F> row(fixed.row(c).begin(), fixed.row(c).end());
      row.push_back(q.generators[l](*y));
      values.push_back(std::move(row));
      points.push_back(std::move(*y));
      basis.push_back(l);
      continue;
    }
    // h_l(a_j) = sum_i lambda_i h_{basis_i}(a_j) for every selected point.
    Matrix<F> sys(field, c, c);
    Vec<F> rhs(c, field.zero());
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t i = 0; i < c; ++i) sys(j, i) = values[i][j];
      rhs[j] = fixed(c, j);
    }
    const auto lambda = solve_affine(sys, std::span<const typename F::Element>(rhs));
    Vec<F> rel(k, field.zero());
    rel[l] = field.one();
    for (std::size_t i = 0; i < c; ++i) rel[basis[i]] = -lambda->point[i];
    relations.push_back(std::move(rel));
  }

  AffineSubspace<F> out;
  out.ambient_dim = k;
  out.point.assign(k, field.zero());
  out.basis = std::move(relations);
  const std::size_t r = basis.size();
  if (r > 0) {
    Matrix<F> h(field, r, r);
    Vec<F> rhs;
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i < r; ++i) h(j, i) = values[i][j];
      rhs.push_back(q.target(points[j]));
    }
    const auto beta = solve_affine(h, std::span<const typename F::Element>(rhs));
    for (std::size_t i = 0; i < r; ++i) out.point[basis[i]] = beta->point[i];
  }
  return out;
}

}  // namespace detail

/// Randomized span test. Candidate points come from S^n with
/// |S| = floor(2dk/epsilon); the result is confirmed by one Schwartz-Zippel
/// test. Two-sided error at most epsilon.
template <Field F>
LinDepResult<F> solve_span_randomized(const SpanQuery<F>& q, double epsilon, Rng& rng) {
  detail::check_query(q);
  const F& field = q.target.field();
  const std::size_t n = q.target.num_vars();
  const std::size_t k = q.generators.size();
  const unsigned d = std::max(1u, detail::max_degree(q));
  const long double want = std::floor(2.0L * d * std::max<std::size_t>(k, 1) / epsilon);
  std::uint64_t s = want >= 9.2e18L ? std::uint64_t{1} << 63 : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(want));
  if (const auto order = field.order(); order && s > *order) s = *order;

  const AffineSubspace<F> sol = detail::scan_span(q, [&](const Oracle<F>& det) -> std::optional<Vec<F>> {
    Vec<F> y;
    for (std::size_t i = 0; i < n; ++i) y.push_back(field.sample(s, rng));
    if (field.is_zero(det(y))) return std::nullopt;
    return y;
  });
  const SchwartzZippel<F> sz(epsilon / 2, rng);
  if (!sz.is_zero(detail::residual(q, sol.point))) return {};
  return {sol, true};
}

/// Deterministic span test on the evaluation vectors over a hitting set.
/// Correct whenever the set hits span(g, h_1, ..., h_k).
template <Field F>
LinDepResult<F> solve_span_hitting_set(const SpanQuery<F>& q, const HittingSet<F>& hs) {
  detail::check_query(q);
  const F& field = q.target.field();
  const std::size_t k = q.generators.size();
  Matrix<F> m(field, hs.points.size(), k);
  Vec<F> rhs;
  for (std::size_t j = 0; j < hs.points.size(); ++j) {
    for (std::size_t i = 0; i < k; ++i) m(j, i) = q.generators[i](hs.points[j]);
    rhs.push_back(q.target(hs.points[j]));
  }
  auto sol = solve_affine(m, std::span<const typename F::Element>(rhs));
  if (!sol) return {};
  return {std::move(sol), true};
}

/// Span test driven by a PIT engine: each determinant is tested with the
/// engine and a nonzero point is recovered by find_nonzero_point.
/// Correct whenever the engine is valid for the determinants and the
/// residual.
template <Field F>
LinDepResult<F> solve_span_white_box(const SpanQuery<F>& q, const PitEngine<F>& engine) {
  detail::check_query(q);
  const AffineSubspace<F> sol = detail::scan_span(q, [&](const Oracle<F>& det) -> std::optional<Vec<F>> {
    if (engine.is_zero(det)) return std::nullopt;
    return find_nonzero_point(det, engine);
  });
  if (!engine.is_zero(detail::residual(q, sol.point))) return {};
  return {sol, true};
}

namespace detail {

template <Field F>
std::optional<AffineSubspace<F>> solve_sampled(const JointLinearSystem<F>& sys, const std::vector<Vec<F>>& points,
                                               const F& field) {
  const std::size_t b = sys.unknown_dim;
  Matrix<F> m(field, 0, b);
  Vec<F> rhs;
  Vec<F> row(b, field.zero());
  for (const auto& eq : sys.equations) {
    for (const auto& x : points) {
      for (std::size_t l = 0; l < b; ++l) row[l] = eq.generators[l](x);
      m.append_row(row);
      rhs.push_back(eq.target(x));
    }
  }
  return solve_affine(m, std::span<const typename F::Element>(rhs));
}

template <Field F>
bool verify_joint(const JointLinearSystem<F>& sys, const Vec<F>& b, const PitEngine<F>& engine) {
  for (const auto& eq : sys.equations) {
    if (eq.generators.empty()) {
      if (!engine.is_zero(eq.target)) return false;
      continue;
    }
    if (!engine.is_zero(residual(SpanQuery<F>{eq.target, eq.generators}, b))) return false;
  }
  return true;
}

}  // namespace detail

/// Solves all identities of the system at once by stacking their
/// evaluations at common sample points, then checks the particular point
/// against every identity. The randomized strategy samples
/// unknown_dim + redundancy points and retries once with fresh points
/// before giving up; the hitting-set strategy evaluates on the set.
template <Field F>
LinDepResult<F> solve_joint(const JointLinearSystem<F>& sys, const JointStrategy<F>& strategy) {
  if (sys.equations.empty()) throw Error(Errc::kInvalidArgument, "joint system without equations");
  const F& field = sys.equations.front().target.field();
  const std::size_t n = sys.equations.front().target.num_vars();
  unsigned d = 0;
  for (const auto& eq : sys.equations) {
    if (eq.generators.size() != sys.unknown_dim) {
      throw Error(Errc::kDimensionMismatch, "equation has " + std::to_string(eq.generators.size()) +
                                                " generators, system has " + std::to_string(sys.unknown_dim) +
                                                " unknowns");
    }
    detail::check_query(SpanQuery<F>{eq.target, eq.generators});
    if (eq.target.num_vars() != n) throw Error(Errc::kDimensionMismatch, "equations over different spaces");
    d = std::max(d, detail::max_degree(SpanQuery<F>{eq.target, eq.generators}));
  }

  if (const auto* hs = std::get_if<JointHittingSet<F>>(&strategy)) {
    auto sol = detail::solve_sampled(sys, hs->hs.points, field);
    if (!sol) return {};
    return {std::move(sol), true};
  }

  const auto& rnd = std::get<JointRandomized>(strategy);
  if (rnd.rng == nullptr) throw Error(Errc::kInvalidArgument, "randomized strategy needs an Rng");
  const SchwartzZippel<F> sz(rnd.epsilon, *rnd.rng);
  const PitEngine<F> engine(sz);
  const std::size_t m = sys.unknown_dim + rnd.redundancy;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<Vec<F>> points;
    for (std::size_t j = 0; j < m; ++j) points.push_back(sz.sample_point(field, n, d));
    auto sol = detail::solve_sampled(sys, points, field);
    // Every true solution satisfies the sampled rows, so an inconsistent
    // sample proves the system inconsistent.
    if (!sol) return {};
    if (detail::verify_joint(sys, sol->point, engine)) return {std::move(sol), true};
  }
  return {};
}

}  // namespace shifteq

#endif  // SHIFTEQ_LINDEP_HPP
