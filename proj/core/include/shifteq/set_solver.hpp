#ifndef SHIFTEQ_SET_SOLVER_HPP
#define SHIFTEQ_SET_SOLVER_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "shifteq/errors.hpp"
#include "shifteq/field.hpp"
#include "shifteq/linalg.hpp"
#include "shifteq/lindep.hpp"
#include "shifteq/oracle.hpp"
#include "shifteq/pit.hpp"
#include "shifteq/polynomial.hpp"

namespace shifteq {

struct RandomizedStrategy {};

template <Field F>
struct HittingSetStrategy {
  HittingSet<F> hs;
};

/// PIT and joint solves both run on the hitting set's points.
template <Field F>
struct WhiteBoxStrategy {
  HittingSet<F> hs;
};

enum class Algorithm { kMain, kAlt };

template <Field F>
struct SetConfig {
  /// Total error budget; each randomized sub-call gets epsilon / d^2.
  double epsilon = 1e-9;
  std::variant<RandomizedStrategy, HittingSetStrategy<F>, WhiteBoxStrategy<F>> strategy = RandomizedStrategy{};
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kMain;
  /// Cross-check a returned shift by dense expansion when both inputs have
  /// an explicit form; a mismatch turns the verdict into fail.
  bool verify_with_dense = false;
  /// find_shift_alt: fail outright when the recursive shift has a nonzero
  /// prefix instead of moving it within the recursion's stabilizer coset.
  bool strict_alt_prefix = false;
};

enum class ShiftStatus { kShift, kFail };

template <Field F>
struct ShiftResult {
  ShiftStatus status = ShiftStatus::kFail;
  Vec<F> shift;
  std::optional<AffineSubspace<F>> stabilizer;
  std::optional<AffineSubspace<F>> coset;
  /// Exact degree of f; nullopt for the zero polynomial.
  std::optional<unsigned> degree;
  std::uint64_t queries_used = 0;
  double wall_time_ms = 0.0;
  /// Set when a dense cross-check ran.
  std::optional<bool> dense_verified;

  bool found() const noexcept { return status == ShiftStatus::kShift; }
};

template <Field F>
struct EssentialVariables {
  std::size_t m = 0;
  /// Invertible; f_d(A y) depends on y_1..y_m only.
  Matrix<F> a;
};

namespace detail {

template <Field F>
class SetContext {
 public:
  using Element = typename F::Element;

  explicit SetContext(const SetConfig<F>& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw Error(Errc::kInvalidArgument, "epsilon must lie in (0, 1)");
  }

  Rng& rng() noexcept { return rng_; }
  const SetConfig<F>& config() const noexcept { return cfg_; }

  /// Per-call budget for an instance of degree d.
  double step_epsilon(unsigned d) const {
    const double d2 = std::max(1.0, static_cast<double>(d) * d);
    return cfg_.epsilon / d2;
  }

  PitEngine<F> engine(double eps) {
    if (const auto* hs = hitting_set()) return HittingSetEngine<F>(*hs);
    return SchwartzZippel<F>(eps, rng_);
  }

  bool is_zero(const Oracle<F>& o, double eps) { return engine(eps).is_zero(o); }

  LinDepResult<F> solve_joint(const JointLinearSystem<F>& sys, double eps) {
    if (const auto* hs = hitting_set()) return shifteq::solve_joint(sys, JointStrategy<F>(JointHittingSet<F>{*hs}));
    return shifteq::solve_joint(sys, JointStrategy<F>(JointRandomized{eps, &rng_, 20}));
  }

  Vec<F> random_point(const F& field, std::size_t n, unsigned d, double eps) {
    return SchwartzZippel<F>(eps, rng_).sample_point(field, n, d);
  }

 private:
  const HittingSet<F>* hitting_set() const {
    if (const auto* h = std::get_if<HittingSetStrategy<F>>(&cfg_.strategy)) return &h->hs;
    if (const auto* w = std::get_if<WhiteBoxStrategy<F>>(&cfg_.strategy)) return &w->hs;
    return nullptr;
  }

  SetConfig<F> cfg_;
  Rng rng_;
};

template <Field F>
Vec<F> unit_vector(const F& field, std::size_t n, std::size_t l) {
  Vec<F> e(n, field.zero());
  e[l] = field.one();
  return e;
}

// H^i(o), or the zero oracle above o's degree bound.
template <Field F>
Oracle<F> component(const Oracle<F>& o, unsigned i) {
  if (i > o.degree_bound()) return zero_oracle(o.field(), o.num_vars());
  return homogeneous_oracle(o, i);
}

template <Field F>
std::optional<unsigned> exact_degree(SetContext<F>& ctx, const Oracle<F>& o, unsigned d_bound, double eps) {
  const Oracle<F> bounded = with_degree_bound(o, d_bound);
  for (unsigned i = d_bound + 1; i-- > 0;) {
    if (!ctx.is_zero(homogeneous_oracle(bounded, i), eps)) return i;
  }
  return std::nullopt;
}

template <Field F>
bool dense_check(const Oracle<F>& f, const Oracle<F>& g, const Vec<F>& a, std::optional<bool>& out) {
  const auto fd = f.explicit_form();
  const auto gd = g.explicit_form();
  if (!fd || !gd) return true;
  out = shift(*fd, std::span<const typename F::Element>(a)) == *gd;
  return *out;
}

template <Field F>
AffineSubspace<F> full_space(const F& field, std::size_t n) {
  AffineSubspace<F> s;
  s.ambient_dim = n;
  s.point.assign(n, field.zero());
  for (std::size_t l = 0; l < n; ++l) s.basis.push_back(unit_vector(field, n, l));
  return s;
}

// S_f for f of exact degree d >= 1: the common kernel of b -> f_i^{(1)}(b, .)
// over i = 1..d. Basis vectors failing the f(x+v) = f(x) check trigger one
// resolve; whatever still fails is dropped.
template <Field F>
AffineSubspace<F> stabilizer(SetContext<F>& ctx, const Oracle<F>& f, unsigned d, double eps) {
  const F& field = f.field();
  const std::size_t n = f.num_vars();
  if (d == 0) return full_space(field, n);
  const Oracle<F> fb = with_degree_bound(f, d);
  JointLinearSystem<F> sys{n, {}};
  for (unsigned i = 1; i <= d; ++i) {
    LinearIdentity<F> eq{zero_oracle(field, n), {}};
    for (std::size_t l = 0; l < n; ++l) {
      const Vec<F> e = unit_vector(field, n, l);
      eq.generators.push_back(directional_derivative_oracle(fb, i, 1, std::span<const typename F::Element>(e)));
    }
    sys.equations.push_back(std::move(eq));
  }
  AffineSubspace<F> out;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto res = ctx.solve_joint(sys, eps);
    out = res.solution ? *res.solution : AffineSubspace<F>{n, Vec<F>(n, field.zero()), {}};
    std::vector<Vec<F>> good;
    for (const auto& v : out.basis) {
      const Oracle<F> diff = difference(shifted(fb, std::span<const typename F::Element>(v)), fb);
      if (ctx.is_zero(diff, eps)) good.push_back(v);
    }
    const bool all_good = good.size() == out.basis.size();
    out.basis = std::move(good);
    if (all_good) break;
  }
  out.point.assign(n, field.zero());
  return out;
}

template <Field F>
EssentialVariables<F> essential(SetContext<F>& ctx, const Oracle<F>& f, unsigned d, double eps) {
  const F& field = f.field();
  const std::size_t n = f.num_vars();
  if (d == 0) return {0, Matrix<F>::identity(field, n)};
  const Oracle<F> fb = with_degree_bound(f, d);
  std::vector<Oracle<F>> grad;
  for (std::size_t l = 0; l < n; ++l) {
    const Vec<F> e = unit_vector(field, n, l);
    grad.push_back(directional_derivative_oracle(fb, d, 1, std::span<const typename F::Element>(e)));
  }
  Matrix<F> samples(field, 0, n);
  for (std::size_t j = 0; j < n + 20; ++j) {
    const Vec<F> x = ctx.random_point(field, n, d, eps);
    Vec<F> row;
    for (const auto& g : grad) row.push_back(g(x));
    samples.append_row(row);
  }
  const auto null = nullspace(samples);
  const std::size_t m = n - null.size();

  // Complete the nullspace basis with standard vectors, greedily.
  std::vector<Vec<F>> cols;
  Matrix<F> span(field, 0, n);
  for (const auto& v : null) span.append_row(v);
  for (std::size_t l = 0; l < n && cols.size() < m; ++l) {
    Matrix<F> trial = span;
    const Vec<F> e = unit_vector(field, n, l);
    trial.append_row(e);
    if (rank(trial) == trial.rows()) {
      span = std::move(trial);
      cols.push_back(e);
    }
  }
  for (const auto& v : null) cols.push_back(v);
  Matrix<F> a(field, n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) a(r, c) = cols[c][r];
  return {m, std::move(a)};
}

template <Field F>
Vec<F> add(Vec<F> a, const Vec<F>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// Component-by-component shift search on f of exact degree d >= 1.
template <Field F>
std::optional<Vec<F>> main_shift(SetContext<F>& ctx, const Oracle<F>& f, const Oracle<F>& g, unsigned d, double eps) {
  const F& field = f.field();
  const std::size_t n = f.num_vars();
  const Oracle<F> fb = with_degree_bound(f, d);
  const FactorialTable<F> fact(field, d);

  std::vector<Oracle<F>> hf, hg;
  for (unsigned i = 0; i <= d; ++i) {
    hf.push_back(homogeneous_oracle(fb, i));
    hg.push_back(component(g, i));
  }
  // gens[i][l] = f_{i+1}^{(1)}(e_l, x); zero for i = d.
  std::vector<std::vector<Oracle<F>>> gens(d + 1);
  for (unsigned i = 0; i <= d; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      if (i == d) {
        gens[i].push_back(zero_oracle(field, n));
      } else {
        const Vec<F> e = unit_vector(field, n, l);
        gens[i].push_back(directional_derivative_oracle(fb, i + 1, 1, std::span<const typename F::Element>(e)));
      }
    }
  }

  Vec<F> a(n, field.zero());
  for (unsigned k = 1; k <= d; ++k) {
    JointLinearSystem<F> sys{n, {}};
    for (unsigned i = d - k; i <= d; ++i) {
      std::vector<Oracle<F>> terms{hg[i], hf[i]};
      Vec<F> coeffs{field.one(), -field.one()};
      for (unsigned j = i + 2; j <= d; ++j) {
        terms.push_back(directional_derivative_oracle(fb, j, j - i, std::span<const typename F::Element>(a)));
        coeffs.push_back(-fact.inv_factorial(j - i));
      }
      sys.equations.push_back({linear_combination(coeffs, terms), gens[i]});
    }
    const auto res = ctx.solve_joint(sys, eps);
    if (!res.solution) return std::nullopt;
    a = res.solution->point;
  }
  if (!ctx.is_zero(difference(shifted(f, std::span<const typename F::Element>(a)), g), eps)) return std::nullopt;
  return a;
}

// Essential-variables recursion. Returns s with f(x + s) = g(x) in f's coordinates.
template <Field F>
std::optional<Vec<F>> alt_shift(SetContext<F>& ctx, const Oracle<F>& f, const Oracle<F>& g, unsigned d, double eps) {
  const F& field = f.field();
  const std::size_t n = f.num_vars();
  if (d == 0) {
    if (!ctx.is_zero(difference(with_degree_bound(f, 0), g), eps)) return std::nullopt;
    return Vec<F>(n, field.zero());
  }
  const Oracle<F> fb = with_degree_bound(f, d);
  const auto [m, a] = essential(ctx, fb, d, eps);
  const Oracle<F> fa = linearly_transformed(fb, a);
  const Oracle<F> ga = linearly_transformed(g, a);
  const Oracle<F> top = homogeneous_oracle(fa, d);

  JointLinearSystem<F> sys{m, {}};
  std::vector<Oracle<F>> zeros(m, zero_oracle(field, n));
  sys.equations.push_back({difference(component(ga, d), top), zeros});
  std::vector<Oracle<F>> partials;
  for (std::size_t l = 0; l < m; ++l) {
    const Vec<F> e = unit_vector(field, n, l);
    partials.push_back(directional_derivative_oracle(fa, d, 1, std::span<const typename F::Element>(e)));
  }
  sys.equations.push_back({difference(component(ga, d - 1), homogeneous_oracle(fa, d - 1)), partials});
  const auto res = ctx.solve_joint(sys, eps);
  if (!res.solution) return std::nullopt;
  Vec<F> b(n, field.zero());
  std::copy(res.solution->point.begin(), res.solution->point.end(), b.begin());

  const Oracle<F> f1 = with_degree_bound(difference(shifted(fa, std::span<const typename F::Element>(b)), top), d - 1);
  const Oracle<F> g1 = difference(ga, top);
  auto c = alt_shift(ctx, f1, g1, d - 1, eps);
  if (!c) return std::nullopt;

  const auto prefix_zero = [&](const Vec<F>& v) {
    return std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m),
                       [&](const auto& x) { return field.is_zero(x); });
  };
  if (!prefix_zero(*c)) {
    if (ctx.config().strict_alt_prefix) return std::nullopt;
    // Move c inside c + S_{f1} until its first m coordinates vanish.
    const auto stab = stabilizer(ctx, f1, d - 1, eps);
    Matrix<F> sysm(field, m, stab.basis.size());
    Vec<F> rhs;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < stab.basis.size(); ++j) sysm(r, j) = stab.basis[j][r];
      rhs.push_back(-(*c)[r]);
    }
    const auto t = solve_affine(sysm, std::span<const typename F::Element>(rhs));
    if (!t) return std::nullopt;
    for (std::size_t j = 0; j < stab.basis.size(); ++j)
      for (std::size_t r = 0; r < n; ++r) (*c)[r] += t->point[j] * stab.basis[j][r];
  }
  b = add<F>(std::move(b), *c);
  if (!ctx.is_zero(difference(shifted(fa, std::span<const typename F::Element>(b)), ga), eps)) return std::nullopt;
  return a.apply(b);
}

}  // namespace detail

/// Largest i <= d_bound with H^i(o) nonzero per the configured PIT;
/// nullopt when every component vanishes.
template <Field F>
std::optional<unsigned> exact_degree(const Oracle<F>& o, unsigned d_bound, const SetConfig<F>& cfg = {}) {
  detail::SetContext<F> ctx(cfg);
  return detail::exact_degree(ctx, o, d_bound, ctx.step_epsilon(d_bound));
}

/// One identity test of f(x + a) - g(x).
template <Field F>
bool verify_shift(const Oracle<F>& f, const Oracle<F>& g, std::span<const typename F::Element> a,
                  const PitEngine<F>& engine) {
  return engine.is_zero(difference(shifted(f, a), g));
}

/// S_f as a subspace through 0. The whole space for constants.
template <Field F>
AffineSubspace<F> stabilizer_basis(const Oracle<F>& f, unsigned d, const SetConfig<F>& cfg = {}) {
  detail::SetContext<F> ctx(cfg);
  return detail::stabilizer(ctx, f, d, ctx.step_epsilon(d));
}

template <Field F>
EssentialVariables<F> essential_variables(const Oracle<F>& f, unsigned d, const SetConfig<F>& cfg = {}) {
  detail::SetContext<F> ctx(cfg);
  return detail::essential(ctx, f, d, ctx.step_epsilon(d));
}

namespace detail {

template <Field F, class Body>
ShiftResult<F> run_set(const Oracle<F>& f, const Oracle<F>& g, const SetConfig<F>& cfg, Body&& body) {
  if (f.num_vars() != g.num_vars() || !(f.field() == g.field())) {
    throw Error(Errc::kDimensionMismatch, "f and g live over different spaces");
  }
  const auto start = std::chrono::steady_clock::now();
  const F& field = f.field();
  const std::size_t n = f.num_vars();
  SetContext<F> ctx(cfg);
  ShiftResult<F> out;

  const double pre_eps = ctx.step_epsilon(f.degree_bound());
  out.degree = exact_degree(ctx, f, f.degree_bound(), pre_eps);
  std::optional<Vec<F>> a;
  if (!out.degree) {
    if (ctx.is_zero(g, pre_eps)) a = Vec<F>(n, field.zero());
  } else if (*out.degree == 0) {
    if (ctx.is_zero(difference(f, g), pre_eps)) a = Vec<F>(n, field.zero());
  } else {
    a = body(ctx, *out.degree, ctx.step_epsilon(*out.degree));
  }
  if (a && cfg.verify_with_dense && !dense_check(f, g, *a, out.dense_verified)) a.reset();
  if (a) {
    out.status = ShiftStatus::kShift;
    out.shift = std::move(*a);
  }
  out.queries_used = total_queries<F>({&f, &g});
  out.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace detail

/// Shift a with f(x + a) = g(x), or fail. Uses the essential-variables
/// recursion when cfg.algorithm is kAlt.
template <Field F>
ShiftResult<F> find_shift(const Oracle<F>& f, const Oracle<F>& g, const SetConfig<F>& cfg = {}) {
  return detail::run_set(f, g, cfg, [&](detail::SetContext<F>& ctx, unsigned d, double eps) {
    return cfg.algorithm == Algorithm::kAlt ? detail::alt_shift(ctx, f, g, d, eps)
                                            : detail::main_shift(ctx, f, g, d, eps);
  });
}

/// Recursive variant working in essential-variable coordinates. The degree
/// argument is an upper bound on deg f; the exact degree is recomputed.
template <Field F>
ShiftResult<F> find_shift_alt(const Oracle<F>& f, const Oracle<F>& g, unsigned d, const SetConfig<F>& cfg = {}) {
  const Oracle<F> fb = with_degree_bound(f, d);
  auto out = detail::run_set(fb, g, cfg, [&](detail::SetContext<F>& ctx, unsigned exact, double eps) {
    return detail::alt_shift(ctx, fb, g, exact, eps);
  });
  return out;
}

/// S_{f,g} = a + S_f, or nullopt when f and g are not shift equivalent.
/// Also fills the result's stabilizer and coset.
template <Field F>
std::optional<AffineSubspace<F>> shift_space(const Oracle<F>& f, const Oracle<F>& g, const SetConfig<F>& cfg,
                                             ShiftResult<F>* result = nullptr) {
  ShiftResult<F> r = find_shift(f, g, cfg);
  std::optional<AffineSubspace<F>> coset;
  if (r.found()) {
    detail::SetContext<F> ctx(cfg);
    const unsigned d = r.degree.value_or(0);
    AffineSubspace<F> stab = detail::stabilizer(ctx, f, d, ctx.step_epsilon(d));
    coset = stab;
    coset->point = r.shift;
    r.stabilizer = std::move(stab);
    r.coset = coset;
    r.queries_used = total_queries<F>({&f, &g});
  }
  if (result) *result = std::move(r);
  return coset;
}

}  // namespace shifteq

#endif  // SHIFTEQ_SET_SOLVER_HPP
