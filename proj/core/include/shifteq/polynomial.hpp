#ifndef SHIFTEQ_POLYNOMIAL_HPP
#define SHIFTEQ_POLYNOMIAL_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shifteq/errors.hpp"
#include "shifteq/field.hpp"
#include "shifteq/linalg.hpp"

namespace shifteq {

/// Exponent vector of a monomial in n variables.
class Monomial {
 public:
  explicit Monomial(std::size_t n) : exps_(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  std::size_t num_vars() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  unsigned total_degree() const noexcept {
    return std::accumulate(exps_.begin(), exps_.end(), 0U);
  }

  Monomial operator*(const Monomial& o) const {
    Monomial out = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += o.exps_[i];
    return out;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// All monomials in n variables of total degree <= d, graded by degree and
/// then lexicographic. Deterministic order; used for random instances and
/// coefficient-vector views.
inline std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<Monomial> out;
  Monomial cur(n);
  // Enumerate compositions of each total degree t into n parts.
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var + 1 == n) {
      cur[var] = remaining;
      out.push_back(cur);
      cur[var] = 0;
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      cur[var] = e;
      self(self, var + 1, remaining - e);
    }
    cur[var] = 0;
  };
  for (unsigned t = 0; t <= d; ++t) {
    if (n == 0) {
      if (t == 0) out.push_back(cur);
      continue;
    }
    rec(rec, 0, t);
  }
  return out;
}

/// Explicit multivariate polynomial stored as a map from monomial to nonzero
/// coefficient. This is the brute-force ground truth the black-box machinery
/// is checked against.
template <Field F>
class DensePoly {
 public:
  using Element = typename F::Element;
  using TermMap = std::map<Monomial, Element>;

  DensePoly(const F& field, std::size_t n) : field_(field), n_(n) {}

  static DensePoly constant(const F& field, std::size_t n, const Element& c) {
    DensePoly p(field, n);
    p.add_term(Monomial(n), c);
    return p;
  }

  /// x_{j+1}; j is zero-based.
  static DensePoly variable(const F& field, std::size_t n, std::size_t j) {
    if (j >= n) throw Error(Errc::kDimensionMismatch, "variable index out of range");
    Monomial m(n);
    m[j] = 1;
    DensePoly p(field, n);
    p.add_term(m, field.one());
    return p;
  }

  const F& field() const noexcept { return field_; }
  std::size_t num_vars() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree; nullopt for the zero polynomial.
  std::optional<unsigned> degree() const {
    if (terms_.empty()) return std::nullopt;
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }

  Element coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add_term(const Monomial& m, const Element& c) {
    if (m.num_vars() != n_) throw Error(Errc::kDimensionMismatch, "monomial arity != polynomial arity");
    if (field_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (field_.is_zero(it->second)) terms_.erase(it);
  }

  Element evaluate(std::span<const Element> point) const {
    if (point.size() != n_) {
      throw Error(Errc::kDimensionMismatch,
                  "point has " + std::to_string(point.size()) + " coordinates, expected " + std::to_string(n_));
    }
    if (terms_.empty()) return field_.zero();
    unsigned max_exp = 0;
    for (const auto& [m, c] : terms_)
      for (auto e : m.exponents()) max_exp = std::max<unsigned>(max_exp, e);
    std::vector<std::vector<Element>> powers(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      powers[v].reserve(max_exp + 1);
      powers[v].push_back(field_.one());
      for (unsigned e = 1; e <= max_exp; ++e) powers[v].push_back(powers[v].back() * point[v]);
    }
    Element acc = field_.zero();
    for (const auto& [m, c] : terms_) {
      Element t = c;
      for (std::size_t v = 0; v < n_; ++v)
        if (m[v] != 0) t *= powers[v][m[v]];
      acc += t;
    }
    return acc;
  }

  DensePoly& operator+=(const DensePoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  DensePoly& operator-=(const DensePoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  DensePoly& operator*=(const Element& s) {
    if (field_.is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
  friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
  friend DensePoly operator*(DensePoly a, const Element& s) { return a *= s; }
  friend DensePoly operator-(DensePoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
    a.check_compatible(b);
    DensePoly out(a.field_, a.n_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  /// Exact term-map equality.
  friend bool operator==(const DensePoly& a, const DensePoly& b) {
    return a.n_ == b.n_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  /// Rendering that the expression parser accepts, highest degree first.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<const Monomial*, const Element*>> order;
    for (const auto& [m, c] : terms_) order.emplace_back(&m, &c);
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
      const unsigned dx = x.first->total_degree(), dy = y.first->total_degree();
      if (dx != dy) return dx > dy;
      return *y.first < *x.first;
    });
    std::string out;
    for (const auto& [m, c] : order) {
      if (!out.empty()) out += " + ";
      std::string factors;
      for (std::size_t v = 0; v < n_; ++v) {
        if ((*m)[v] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += "x" + std::to_string(v + 1);
        if ((*m)[v] > 1) factors += "^" + std::to_string((*m)[v]);
      }
      const std::string coeff = field_.to_string(*c);
      if (factors.empty()) {
        out += coeff;
      } else if (*c == field_.one()) {
        out += factors;
      } else {
        out += coeff + "*" + factors;
      }
    }
    return out;
  }

 private:
  void check_compatible(const DensePoly& o) const {
    if (o.n_ != n_) throw Error(Errc::kDimensionMismatch, "polynomials have different variable counts");
  }

  F field_;
  std::size_t n_;
  TermMap terms_;
};

namespace detail {

// Rows 0..d of Pascal's triangle, reduced in the field.
template <Field F>
std::vector<std::vector<typename F::Element>> binomial_rows(const F& field, unsigned d) {
  std::vector<std::vector<typename F::Element>> rows;
  rows.reserve(d + 1);
  rows.push_back({field.one()});
  for (unsigned e = 1; e <= d; ++e) {
    std::vector<typename F::Element> row(e + 1, field.one());
    for (unsigned k = 1; k < e; ++k) row[k] = rows[e - 1][k - 1] + rows[e - 1][k];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

/// f(x + a), expanded one variable at a time.
template <Field F>
DensePoly<F> shift(const DensePoly<F>& f, std::span<const typename F::Element> a) {
  const F& field = f.field();
  const std::size_t n = f.num_vars();
  if (a.size() != n) throw Error(Errc::kDimensionMismatch, "shift vector length != variable count");
  const unsigned d = f.degree().value_or(0);
  const auto binom = detail::binomial_rows(field, d);
  DensePoly<F> cur = f;
  for (std::size_t v = 0; v < n; ++v) {
    if (field.is_zero(a[v])) continue;
    std::vector<typename F::Element> apow{field.one()};
    for (unsigned e = 1; e <= d; ++e) apow.push_back(apow.back() * a[v]);
    DensePoly<F> next(field, n);
    for (const auto& [m, c] : cur.terms()) {
      const unsigned e = m[v];
      Monomial mk = m;
      for (unsigned k = 0; k <= e; ++k) {
        mk[v] = k;
        next.add_term(mk, c * binom[e][k] * apow[e - k]);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

/// Sum of the terms of total degree exactly i.
template <Field F>
DensePoly<F> homogeneous_component(const DensePoly<F>& f, unsigned i) {
  DensePoly<F> out(f.field(), f.num_vars());
  for (const auto& [m, c] : f.terms())
    if (m.total_degree() == i) out.add_term(m, c);
  return out;
}

/// Formal partial derivative with respect to x_{j+1} (j zero-based).
template <Field F>
DensePoly<F> partial_derivative(const DensePoly<F>& f, std::size_t j) {
  if (j >= f.num_vars()) throw Error(Errc::kDimensionMismatch, "variable index out of range");
  const F& field = f.field();
  DensePoly<F> out(field, f.num_vars());
  for (const auto& [m, c] : f.terms()) {
    if (m[j] == 0) continue;
    Monomial md = m;
    md[j] -= 1;
    out.add_term(md, c * field.from_uint(m[j]));
  }
  return out;
}

/// Order-r directional derivative along a: r applications of
/// b -> sum_j a_j * db/dx_j. Order 0 is f itself.
template <Field F>
DensePoly<F> directional_derivative(const DensePoly<F>& f, std::span<const typename F::Element> a, unsigned r) {
  if (a.size() != f.num_vars()) throw Error(Errc::kDimensionMismatch, "direction length != variable count");
  DensePoly<F> cur = f;
  for (unsigned step = 0; step < r && !cur.is_zero(); ++step) {
    DensePoly<F> next(f.field(), f.num_vars());
    for (std::size_t j = 0; j < f.num_vars(); ++j) {
      if (f.field().is_zero(a[j])) continue;
      next += partial_derivative(cur, j) * a[j];
    }
    cur = std::move(next);
  }
  return cur;
}

/// f(A x): x_j is replaced by the linear form sum_k A(j,k) x_k.
template <Field F>
DensePoly<F> substitute_linear(const DensePoly<F>& f, const Matrix<F>& a) {
  const F& field = f.field();
  const std::size_t n = f.num_vars();
  if (a.rows() != n || a.cols() != n) throw Error(Errc::kDimensionMismatch, "substitution matrix must be n x n");
  std::vector<DensePoly<F>> forms;
  for (std::size_t j = 0; j < n; ++j) {
    DensePoly<F> l(field, n);
    for (std::size_t k = 0; k < n; ++k) l += DensePoly<F>::variable(field, n, k) * a(j, k);
    forms.push_back(std::move(l));
  }
  // powers[j][e] = forms[j]^e, grown on demand.
  std::vector<std::vector<DensePoly<F>>> powers(n);
  for (std::size_t j = 0; j < n; ++j) powers[j].push_back(DensePoly<F>::constant(field, n, field.one()));
  DensePoly<F> out(field, n);
  for (const auto& [m, c] : f.terms()) {
    DensePoly<F> t = DensePoly<F>::constant(field, n, c);
    for (std::size_t j = 0; j < n; ++j) {
      while (powers[j].size() <= m[j]) powers[j].push_back(powers[j].back() * forms[j]);
      if (m[j] != 0) t = t * powers[j][m[j]];
    }
    out += t;
  }
  return out;
}

/// Random polynomial: each monomial of total degree <= d is kept with
/// probability `density`, with a uniform nonzero coefficient.
template <Field F>
DensePoly<F> random_poly(std::size_t n, unsigned d, double density, const F& field, Rng& rng) {
  if (!(density > 0.0 && density <= 1.0)) throw Error(Errc::kInvalidArgument, "density must lie in (0, 1]");
  std::bernoulli_distribution keep(density);
  DensePoly<F> out(field, n);
  for (const auto& m : monomials_up_to(n, d)) {
    if (keep(rng)) out.add_term(m, field.sample_nonzero(rng));
  }
  return out;
}

}  // namespace shifteq

#endif  // SHIFTEQ_POLYNOMIAL_HPP
