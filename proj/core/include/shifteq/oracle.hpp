#ifndef SHIFTEQ_ORACLE_HPP
#define SHIFTEQ_ORACLE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shifteq/circuit.hpp"
#include "shifteq/errors.hpp"
#include "shifteq/field.hpp"
#include "shifteq/linalg.hpp"
#include "shifteq/polynomial.hpp"

namespace shifteq {

namespace detail {

template <Field F>
class OracleNode {
 public:
  using Element = typename F::Element;

  virtual ~OracleNode() = default;
  virtual Element eval(std::span<const Element> x) const = 0;
  virtual std::vector<const OracleNode*> children() const { return {}; }
  /// Non-null only on base oracles: the number of times they were queried.
  virtual const std::atomic<std::uint64_t>* counter() const { return nullptr; }
  /// Explicit expansion, when the node knows one.
  virtual std::optional<DensePoly<F>> expand() const { return std::nullopt; }
};

// Base oracles count every evaluation.
template <Field F>
class CountingNode : public OracleNode<F> {
 public:
  const std::atomic<std::uint64_t>* counter() const override { return &count_; }

 protected:
  void tick() const { count_.fetch_add(1, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> count_{0};
};

}  // namespace detail

/// Black-box handle on a polynomial of total degree at most `degree_bound()`.
/// Cheap to copy; every derived oracle shares the nodes it is built from.
///
/// The degree bound is trusted. An oracle whose function exceeds its bound
/// makes interpolation-based derived oracles (homogeneous components,
/// directional derivatives) silently wrong.
template <Field F>
class Oracle {
 public:
  using Element = typename F::Element;
  using Node = detail::OracleNode<F>;

  Oracle(std::shared_ptr<const Node> node, const F& field, std::size_t n, unsigned degree_bound)
      : node_(std::move(node)), field_(field), n_(n), degree_bound_(degree_bound) {}

  Element operator()(std::span<const Element> x) const {
    if (x.size() != n_) {
      throw Error(Errc::kDimensionMismatch,
                  "oracle expects " + std::to_string(n_) + " coordinates, got " + std::to_string(x.size()));
    }
    return node_->eval(x);
  }
  Element operator()(const std::vector<Element>& x) const { return (*this)(std::span<const Element>(x)); }

  const F& field() const noexcept { return field_; }
  std::size_t num_vars() const noexcept { return n_; }
  unsigned degree_bound() const noexcept { return degree_bound_; }
  const Node& node() const noexcept { return *node_; }
  const std::shared_ptr<const Node>& node_ptr() const noexcept { return node_; }

  /// Queries issued so far against every base oracle this one reads.
  std::uint64_t queries() const;

  /// Explicit polynomial for oracles built from a DensePoly or from a
  /// circuit small enough to expand; nullopt otherwise.
  std::optional<DensePoly<F>> explicit_form() const { return node_->expand(); }

 private:
  std::shared_ptr<const Node> node_;
  F field_;
  std::size_t n_;
  unsigned degree_bound_;
};

/// Total base queries over the union of the oracles' base nodes. Base nodes
/// shared between the oracles are counted once.
template <Field F>
std::uint64_t total_queries(std::initializer_list<const Oracle<F>*> oracles) {
  std::set<const std::atomic<std::uint64_t>*> counters;
  std::set<const detail::OracleNode<F>*> seen;
  std::vector<const detail::OracleNode<F>*> stack;
  for (const auto* o : oracles) stack.push_back(&o->node());
  while (!stack.empty()) {
    const auto* node = stack.back();
    stack.pop_back();
    if (!seen.insert(node).second) continue;
    if (const auto* c = node->counter()) counters.insert(c);
    for (const auto* child : node->children()) stack.push_back(child);
  }
  std::uint64_t total = 0;
  for (const auto* c : counters) total += c->load(std::memory_order_relaxed);
  return total;
}

template <Field F>
std::uint64_t Oracle<F>::queries() const {
  return total_queries<F>({this});
}

namespace detail {

template <Field F>
class DenseNode final : public CountingNode<F> {
 public:
  using Element = typename F::Element;

  explicit DenseNode(DensePoly<F> poly) : poly_(std::move(poly)) {
    const std::size_t n = poly_.num_vars();
    for (const auto& [m, c] : poly_.terms()) {
      for (std::size_t v = 0; v < n; ++v) {
        exps_.push_back(m[v]);
        max_exp_ = std::max<unsigned>(max_exp_, m[v]);
      }
      coeffs_.push_back(c);
    }
  }

  Element eval(std::span<const Element> x) const override {
    this->tick();
    const F& field = poly_.field();
    const std::size_t n = poly_.num_vars();
    const std::size_t stride = max_exp_ + 1;
    std::vector<Element> powers;
    powers.reserve(n * stride);
    for (std::size_t v = 0; v < n; ++v) {
      powers.push_back(field.one());
      for (unsigned e = 1; e <= max_exp_; ++e) powers.push_back(powers.back() * x[v]);
    }
    Element acc = field.zero();
    const std::uint32_t* e = exps_.data();
    for (const auto& c : coeffs_) {
      Element t = c;
      for (std::size_t v = 0; v < n; ++v, ++e)
        if (*e != 0) t *= powers[v * stride + *e];
      acc += t;
    }
    return acc;
  }

  std::optional<DensePoly<F>> expand() const override { return poly_; }

 private:
  DensePoly<F> poly_;
  std::vector<std::uint32_t> exps_;
  std::vector<Element> coeffs_;
  unsigned max_exp_ = 0;
};

template <Field F>
class CircuitNode final : public CountingNode<F> {
 public:
  using Element = typename F::Element;

  explicit CircuitNode(Circuit<F> c) : circuit_(std::move(c)) {}

  Element eval(std::span<const Element> x) const override {
    this->tick();
    return circuit_.evaluate(x);
  }

  std::optional<DensePoly<F>> expand() const override {
    try {
      return circuit_.to_dense();
    } catch (const Error& e) {
      if (e.code() == Errc::kTooLarge) return std::nullopt;
      throw;
    }
  }

 private:
  Circuit<F> circuit_;
};

template <Field F>
class FunctionNode final : public CountingNode<F> {
 public:
  using Element = typename F::Element;
  using Fn = std::function<Element(std::span<const Element>)>;

  explicit FunctionNode(Fn fn) : fn_(std::move(fn)) {}

  Element eval(std::span<const Element> x) const override {
    this->tick();
    return fn_(x);
  }

 private:
  Fn fn_;
};

template <Field F>
class ConstantNode final : public CountingNode<F> {
 public:
  using Element = typename F::Element;

  ConstantNode(const F& field, std::size_t n, Element c) : field_(field), n_(n), c_(std::move(c)) {}

  Element eval(std::span<const Element>) const override {
    this->tick();
    return c_;
  }
  std::optional<DensePoly<F>> expand() const override { return DensePoly<F>::constant(field_, n_, c_); }

 private:
  F field_;
  std::size_t n_;
  Element c_;
};

template <Field F>
class ShiftNode final : public OracleNode<F> {
 public:
  using Element = typename F::Element;

  ShiftNode(Oracle<F> child, std::vector<Element> a) : child_(std::move(child)), a_(std::move(a)) {}

  Element eval(std::span<const Element> x) const override {
    std::vector<Element> y(x.begin(), x.end());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a_[i];
    return child_(y);
  }
  std::vector<const OracleNode<F>*> children() const override { return {&child_.node()}; }

 private:
  Oracle<F> child_;
  std::vector<Element> a_;
};

template <Field F>
class LinearMapNode final : public OracleNode<F> {
 public:
  using Element = typename F::Element;

  LinearMapNode(Oracle<F> child, Matrix<F> a) : child_(std::move(child)), a_(std::move(a)) {}

  Element eval(std::span<const Element> x) const override { return child_(a_.apply(x)); }
  std::vector<const OracleNode<F>*> children() const override { return {&child_.node()}; }

 private:
  Oracle<F> child_;
  Matrix<F> a_;
};

template <Field F>
class RestrictNode final : public OracleNode<F> {
 public:
  using Element = typename F::Element;

  RestrictNode(Oracle<F> child, std::vector<Element> prefix) : child_(std::move(child)), prefix_(std::move(prefix)) {}

  Element eval(std::span<const Element> x) const override {
    std::vector<Element> y(x.begin(), x.end());
    std::copy(prefix_.begin(), prefix_.end(), y.begin());
    return child_(y);
  }
  std::vector<const OracleNode<F>*> children() const override { return {&child_.node()}; }

 private:
  Oracle<F> child_;
  std::vector<Element> prefix_;
};

template <Field F>
class LinearCombinationNode final : public OracleNode<F> {
 public:
  using Element = typename F::Element;

  LinearCombinationNode(std::vector<Element> coeffs, std::vector<Oracle<F>> terms)
      : coeffs_(std::move(coeffs)), terms_(std::move(terms)) {}

  Element eval(std::span<const Element> x) const override {
    const F& field = terms_.front().field();
    Element acc = field.zero();
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (field.is_zero(coeffs_[i])) continue;
      acc += coeffs_[i] * terms_[i](x);
    }
    return acc;
  }
  std::vector<const OracleNode<F>*> children() const override {
    std::vector<const OracleNode<F>*> out;
    for (const auto& t : terms_) out.push_back(&t.node());
    return out;
  }

 private:
  std::vector<Element> coeffs_;
  std::vector<Oracle<F>> terms_;
};

// H^i of the child via f(alpha_j x) = sum_k alpha_j^k H^k(f)(x) and row i
// of the inverse Vandermonde matrix.
template <Field F>
class HomogeneousNode final : public OracleNode<F> {
 public:
  using Element = typename F::Element;

  HomogeneousNode(Oracle<F> child, std::vector<Element> nodes, std::vector<Element> weights)
      : child_(std::move(child)), nodes_(std::move(nodes)), weights_(std::move(weights)) {}

  Element eval(std::span<const Element> x) const override {
    const F& field = child_.field();
    Element acc = field.zero();
    std::vector<Element> y(x.begin(), x.end());
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      for (std::size_t v = 0; v < y.size(); ++v) y[v] = nodes_[j] * x[v];
      const Element value = child_(y);
      if (!field.is_zero(weights_[j])) acc += weights_[j] * value;
    }
    return acc;
  }
  std::vector<const OracleNode<F>*> children() const override { return {&child_.node()}; }

 private:
  Oracle<F> child_;
  std::vector<Element> nodes_;
  std::vector<Element> weights_;
};

template <Field F>
class MemoNode final : public OracleNode<F> {
 public:
  using Element = typename F::Element;

  explicit MemoNode(Oracle<F> child) : child_(std::move(child)) {}

  Element eval(std::span<const Element> x) const override {
    const F& field = child_.field();
    std::string key;
    for (const auto& v : x) {
      key += field.to_string(v);
      key += ',';
    }
    {
      std::lock_guard lock(mu_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    Element value = child_(x);
    std::lock_guard lock(mu_);
    cache_.try_emplace(std::move(key), value);
    return value;
  }
  std::vector<const OracleNode<F>*> children() const override { return {&child_.node()}; }
  std::optional<DensePoly<F>> expand() const override { return child_.explicit_form(); }

 private:
  Oracle<F> child_;
  mutable std::mutex mu_;
  mutable std::map<std::string, Element> cache_;
};

template <Field F>
void require_arity(const Oracle<F>& o, std::size_t len, const char* what) {
  if (len != o.num_vars()) {
    throw Error(Errc::kDimensionMismatch, std::string(what) + " has length " + std::to_string(len) +
                                              ", oracle has " + std::to_string(o.num_vars()) + " variables");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Base oracles
// ---------------------------------------------------------------------------

/// Degree bound is the exact degree (0 for the zero polynomial).
template <Field F>
Oracle<F> from_dense(const DensePoly<F>& f) {
  const F field = f.field();
  const std::size_t n = f.num_vars();
  const unsigned d = f.degree().value_or(0);
  return Oracle<F>(std::make_shared<detail::DenseNode<F>>(f), field, n, d);
}

template <Field F>
Oracle<F> from_circuit(const Circuit<F>& c, unsigned degree_bound) {
  return Oracle<F>(std::make_shared<detail::CircuitNode<F>>(c), c.field(), c.num_vars(), degree_bound);
}

/// Circuit oracle with the circuit's syntactic degree as bound.
template <Field F>
Oracle<F> from_circuit(const Circuit<F>& c) {
  const std::uint64_t bound = c.syntactic_degree_bound();
  if (bound > std::numeric_limits<unsigned>::max()) throw Error(Errc::kTooLarge, "syntactic degree overflows");
  return from_circuit(c, static_cast<unsigned>(bound));
}

template <Field F>
Oracle<F> from_function(const F& field, std::size_t n, unsigned degree_bound,
                        std::function<typename F::Element(std::span<const typename F::Element>)> fn) {
  return Oracle<F>(std::make_shared<detail::FunctionNode<F>>(std::move(fn)), field, n, degree_bound);
}

template <Field F>
Oracle<F> constant_oracle(const F& field, std::size_t n, const typename F::Element& c) {
  return Oracle<F>(std::make_shared<detail::ConstantNode<F>>(field, n, c), field, n, 0);
}

template <Field F>
Oracle<F> zero_oracle(const F& field, std::size_t n) {
  return constant_oracle(field, n, field.zero());
}

// ---------------------------------------------------------------------------
// Derived oracles
// ---------------------------------------------------------------------------

/// x -> o(x + a).
template <Field F>
Oracle<F> shifted(const Oracle<F>& o, std::span<const typename F::Element> a) {
  detail::require_arity(o, a.size(), "shift vector");
  std::vector<typename F::Element> av(a.begin(), a.end());
  return Oracle<F>(std::make_shared<detail::ShiftNode<F>>(o, std::move(av)), o.field(), o.num_vars(),
                   o.degree_bound());
}

/// x -> o(A x).
template <Field F>
Oracle<F> linearly_transformed(const Oracle<F>& o, const Matrix<F>& a) {
  if (a.rows() != o.num_vars() || a.cols() != o.num_vars()) {
    throw Error(Errc::kDimensionMismatch, "transform must be n x n");
  }
  return Oracle<F>(std::make_shared<detail::LinearMapNode<F>>(o, a), o.field(), o.num_vars(), o.degree_bound());
}

/// o with its first prefix.size() coordinates pinned to `prefix`.
template <Field F>
Oracle<F> restricted(const Oracle<F>& o, std::span<const typename F::Element> prefix) {
  if (prefix.size() > o.num_vars()) throw Error(Errc::kDimensionMismatch, "restriction prefix too long");
  std::vector<typename F::Element> pv(prefix.begin(), prefix.end());
  return Oracle<F>(std::make_shared<detail::RestrictNode<F>>(o, std::move(pv)), o.field(), o.num_vars(),
                   o.degree_bound());
}

/// Same evaluation, different declared degree bound.
template <Field F>
Oracle<F> with_degree_bound(const Oracle<F>& o, unsigned d) {
  return Oracle<F>(o.node_ptr(), o.field(), o.num_vars(), d);
}

/// sum_i coeffs[i] * oracles[i]; degree bound is the maximum.
template <Field F>
Oracle<F> linear_combination(std::span<const typename F::Element> coeffs, std::span<const Oracle<F>> oracles) {
  if (oracles.empty()) throw Error(Errc::kInvalidArgument, "linear combination of no oracles");
  if (coeffs.size() != oracles.size()) throw Error(Errc::kDimensionMismatch, "coefficient count != oracle count");
  const auto& first = oracles.front();
  unsigned bound = 0;
  for (const auto& o : oracles) {
    if (o.num_vars() != first.num_vars() || !(o.field() == first.field())) {
      throw Error(Errc::kDimensionMismatch, "linear combination of oracles over different spaces");
    }
    bound = std::max(bound, o.degree_bound());
  }
  std::vector<typename F::Element> cv(coeffs.begin(), coeffs.end());
  std::vector<Oracle<F>> ov(oracles.begin(), oracles.end());
  return Oracle<F>(std::make_shared<detail::LinearCombinationNode<F>>(std::move(cv), std::move(ov)), first.field(),
                   first.num_vars(), bound);
}

template <Field F>
Oracle<F> linear_combination(const std::vector<typename F::Element>& coeffs, const std::vector<Oracle<F>>& oracles) {
  return linear_combination<F>(std::span<const typename F::Element>(coeffs), std::span<const Oracle<F>>(oracles));
}

/// a - b.
template <Field F>
Oracle<F> difference(const Oracle<F>& a, const Oracle<F>& b) {
  const F& field = a.field();
  return linear_combination<F>(std::vector{field.one(), -field.one()}, std::vector{a, b});
}

/// c * o.
template <Field F>
Oracle<F> scaled_output(const Oracle<F>& o, const typename F::Element& c) {
  return linear_combination<F>(std::vector{c}, std::vector{o});
}

/// Default interpolation nodes 0, 1, ..., d.
template <Field F>
std::vector<typename F::Element> default_nodes(const F& field, unsigned d) {
  const auto order = field.order();
  if (order && *order <= d) {
    throw Error(Errc::kFieldTooSmall, "need " + std::to_string(d + 1) + " distinct nodes, field has " +
                                          std::to_string(*order) + " elements");
  }
  std::vector<typename F::Element> nodes;
  nodes.reserve(d + 1);
  for (unsigned j = 0; j <= d; ++j) nodes.push_back(field.from_uint(j));
  return nodes;
}

/// Degree-i homogeneous component of o, by evaluating o at alpha_j * x for
/// the d+1 nodes and solving the Vandermonde system. One query costs
/// d+1 queries of o, where d is o's degree bound. The result's degree bound
/// is i.
template <Field F>
Oracle<F> homogeneous_oracle(const Oracle<F>& o, unsigned i,
                             std::optional<std::vector<typename F::Element>> nodes = std::nullopt) {
  const unsigned d = o.degree_bound();
  if (i > d) {
    throw Error(Errc::kInvalidArgument,
                "component " + std::to_string(i) + " above degree bound " + std::to_string(d));
  }
  const F& field = o.field();
  std::vector<typename F::Element> alphas = nodes ? std::move(*nodes) : default_nodes(field, d);
  if (alphas.size() != d + 1) {
    throw Error(Errc::kDimensionMismatch, "need exactly " + std::to_string(d + 1) + " interpolation nodes");
  }
  const Matrix<F> vinv = vandermonde_inverse(field, std::span<const typename F::Element>(alphas));
  const auto row = vinv.row(i);
  std::vector<typename F::Element> weights(row.begin(), row.end());
  return Oracle<F>(std::make_shared<detail::HomogeneousNode<F>>(o, std::move(alphas), std::move(weights)), field,
                   o.num_vars(), i);
}

/// f_k^{(r)}(a, x): the order-r directional derivative along a of the
/// degree-k component of o, computed as r! * H^{k-r}( H^k(o)(x + a) ).
/// One query costs (k+1)(d+1) base queries; (d+1)^2 when k = d.
template <Field F>
Oracle<F> directional_derivative_oracle(const Oracle<F>& o, unsigned k, unsigned r,
                                        std::span<const typename F::Element> a) {
  detail::require_arity(o, a.size(), "direction");
  if (r > k || k > o.degree_bound()) {
    throw Error(Errc::kInvalidArgument, "need r <= k <= degree bound (r=" + std::to_string(r) +
                                            ", k=" + std::to_string(k) + ", d=" + std::to_string(o.degree_bound()) + ")");
  }
  const FactorialTable<F> table(o.field(), r);
  const Oracle<F> top = homogeneous_oracle(o, k);
  const Oracle<F> component = homogeneous_oracle(shifted(top, a), k - r);
  if (r == 0) return component;
  return scaled_output(component, table.factorial(r));
}

/// f^{(1)}(a, x) = sum_{k=1}^{d} f_k^{(1)}(a, x).
template <Field F>
Oracle<F> first_order_oracle(const Oracle<F>& o, std::span<const typename F::Element> a) {
  detail::require_arity(o, a.size(), "direction");
  const unsigned d = o.degree_bound();
  if (d == 0) return zero_oracle(o.field(), o.num_vars());
  std::vector<Oracle<F>> parts;
  for (unsigned k = 1; k <= d; ++k) parts.push_back(directional_derivative_oracle(o, k, 1, a));
  const std::vector<typename F::Element> ones(parts.size(), o.field().one());
  return linear_combination(ones, parts);
}

/// Caches values by point. Thread-safe.
template <Field F>
Oracle<F> memoized(const Oracle<F>& o) {
  return Oracle<F>(std::make_shared<detail::MemoNode<F>>(o), o.field(), o.num_vars(), o.degree_bound());
}

}  // namespace shifteq

#endif  // SHIFTEQ_ORACLE_HPP
