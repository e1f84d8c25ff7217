#ifndef SHIFTEQ_CIRCUIT_HPP
#define SHIFTEQ_CIRCUIT_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "shifteq/errors.hpp"
#include "shifteq/field.hpp"
#include "shifteq/polynomial.hpp"

namespace shifteq {

struct InputGate {
  std::size_t var;  // zero-based
};
template <Field F>
struct ConstGate {
  typename F::Element value;
};
struct AddGate {
  std::size_t left, right;
};
struct MulGate {
  std::size_t left, right;
};

template <Field F>
using Gate = std::variant<InputGate, ConstGate<F>, AddGate, MulGate>;

/// Limits for expanding a circuit into an explicit polynomial.
struct DenseLimits {
  std::uint64_t max_degree = 64;
  std::size_t max_terms = 200000;
};

/// Arithmetic circuit over {+, x}. Gates are stored in topological order,
/// children before parents, and the last reachable gate is the output.
template <Field F>
class Circuit {
 public:
  using Element = typename F::Element;

  /// Validates acyclicity (child indices precede their parent), input
  /// ranges, and that every gate except the output feeds some other gate.
  Circuit(const F& field, std::size_t n, std::vector<Gate<F>> gates, std::size_t output)
      : field_(field), n_(n), gates_(std::move(gates)), output_(output) {
    if (gates_.empty() || output_ >= gates_.size()) {
      throw Error(Errc::kInvalidArgument, "circuit needs an output gate");
    }
    std::vector<std::size_t> out_degree(gates_.size(), 0);
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      std::visit(
          [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, InputGate>) {
              if (g.var >= n_) throw Error(Errc::kDimensionMismatch, "input gate references x" + std::to_string(g.var + 1));
            } else if constexpr (std::is_same_v<G, AddGate> || std::is_same_v<G, MulGate>) {
              if (g.left >= i || g.right >= i) throw Error(Errc::kInvalidArgument, "gate children must precede the gate");
              ++out_degree[g.left];
              ++out_degree[g.right];
            }
          },
          gates_[i]);
    }
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      if (i != output_ && out_degree[i] == 0) {
        throw Error(Errc::kInvalidArgument, "gate " + std::to_string(i) + " is a second output");
      }
    }
    if (out_degree[output_] != 0) throw Error(Errc::kInvalidArgument, "output gate feeds another gate");
  }

  const F& field() const noexcept { return field_; }
  std::size_t num_vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return gates_.size(); }
  std::size_t output() const noexcept { return output_; }
  const std::vector<Gate<F>>& gates() const noexcept { return gates_; }

  template <class G>
  std::size_t count() const {
    return static_cast<std::size_t>(
        std::count_if(gates_.begin(), gates_.end(), [](const Gate<F>& g) { return std::holds_alternative<G>(g); }));
  }

  Element evaluate(std::span<const Element> point) const {
    if (point.size() != n_) throw Error(Errc::kDimensionMismatch, "circuit point has wrong length");
    std::vector<Element> val;
    val.reserve(gates_.size());
    for (const auto& gate : gates_) {
      val.push_back(std::visit(
          [&](const auto& g) -> Element {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, InputGate>) return point[g.var];
            else if constexpr (std::is_same_v<G, ConstGate<F>>) return g.value;
            else if constexpr (std::is_same_v<G, AddGate>) return val[g.left] + val[g.right];
            else return val[g.left] * val[g.right];
          },
          gate));
    }
    return val[output_];
  }

  /// input -> 1, const -> 0, add -> max, mul -> sum. Saturates at 2^63.
  std::uint64_t syntactic_degree_bound() const {
    constexpr std::uint64_t kCap = std::uint64_t{1} << 63;
    std::vector<std::uint64_t> deg;
    deg.reserve(gates_.size());
    for (const auto& gate : gates_) {
      deg.push_back(std::visit(
          [&](const auto& g) -> std::uint64_t {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, InputGate>) return 1;
            else if constexpr (std::is_same_v<G, ConstGate<F>>) return 0;
            else if constexpr (std::is_same_v<G, AddGate>) return std::max(deg[g.left], deg[g.right]);
            else return std::min(kCap, deg[g.left] + deg[g.right]);
          },
          gate));
    }
    return deg[output_];
  }

  /// Exact expansion. Throws kTooLarge when the syntactic degree or any
  /// intermediate term count exceeds the limits.
  DensePoly<F> to_dense(const DenseLimits& limits = {}) const {
    const std::uint64_t bound = syntactic_degree_bound();
    if (bound > limits.max_degree) {
      throw Error(Errc::kTooLarge, "syntactic degree " + std::to_string(bound) + " exceeds limit " +
                                       std::to_string(limits.max_degree));
    }
    std::vector<DensePoly<F>> val;
    val.reserve(gates_.size());
    for (const auto& gate : gates_) {
      DensePoly<F> p = std::visit(
          [&](const auto& g) -> DensePoly<F> {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, InputGate>) return DensePoly<F>::variable(field_, n_, g.var);
            else if constexpr (std::is_same_v<G, ConstGate<F>>) return DensePoly<F>::constant(field_, n_, g.value);
            else if constexpr (std::is_same_v<G, AddGate>) return val[g.left] + val[g.right];
            else return val[g.left] * val[g.right];
          },
          gate);
      if (p.num_terms() > limits.max_terms) {
        throw Error(Errc::kTooLarge, "expansion exceeds " + std::to_string(limits.max_terms) + " terms");
      }
      val.push_back(std::move(p));
    }
    return std::move(val[output_]);
  }

 private:
  F field_;
  std::size_t n_;
  std::vector<Gate<F>> gates_;
  std::size_t output_;
};

namespace detail {

inline constexpr std::uint64_t kMaxExponent = 4096;

// Recursive-descent parser for
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | base ('^' uint)?
//   base   := 'x' uint | int | int '/' uint | '(' expr ')'
// Leaves are hash-consed; internal gates never are.
template <Field F>
class ExpressionParser {
 public:
  using Element = typename F::Element;

  ExpressionParser(std::string_view text, std::size_t n, const F& field) : text_(text), n_(n), field_(field) {}

  Circuit<F> parse() {
    const std::size_t root = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return prune(root);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool at_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

  std::string_view digits() {
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::uint64_t small_uint(std::uint64_t limit, const char* what) {
    skip_ws();
    if (!at_digit()) fail(std::string("expected ") + what);
    const std::size_t start = pos_;
    const std::string_view ds = digits();
    if (ds.size() > 18) {
      pos_ = start;
      fail(std::string(what) + " too large");
    }
    const std::uint64_t v = std::stoull(std::string(ds));
    if (v > limit) {
      pos_ = start;
      fail(std::string(what) + " too large");
    }
    return v;
  }

  std::size_t push(Gate<F> g) {
    gates_.push_back(std::move(g));
    return gates_.size() - 1;
  }

  std::size_t input(std::size_t var) {
    auto [it, inserted] = inputs_.try_emplace(var, 0);
    if (inserted) it->second = push(InputGate{var});
    return it->second;
  }

  std::size_t constant(const Element& v) {
    const std::string key = field_.to_string(v);
    auto [it, inserted] = consts_.try_emplace(key, 0);
    if (inserted) it->second = push(ConstGate<F>{v});
    return it->second;
  }

  std::size_t negate(std::size_t g) { return push(MulGate{constant(-field_.one()), g}); }

  std::size_t power(std::size_t g, std::uint64_t k) {
    if (k == 0) return constant(field_.one());
    if (k == 1) return g;
    const std::size_t l = power(g, k / 2);
    const std::size_t r = power(g, k - k / 2);
    return push(MulGate{l, r});
  }

  std::size_t expr() {
    std::size_t acc = term();
    for (;;) {
      if (accept('+')) {
        const std::size_t rhs = term();
        acc = push(AddGate{acc, rhs});
      } else if (accept('-')) {
        const std::size_t rhs = term();
        acc = push(AddGate{acc, negate(rhs)});
      } else {
        return acc;
      }
    }
  }

  std::size_t term() {
    std::size_t acc = factor();
    while (accept('*')) {
      const std::size_t rhs = factor();
      acc = push(MulGate{acc, rhs});
    }
    return acc;
  }

  std::size_t factor() {
    if (peek('-')) {
      const std::size_t save = pos_;
      ++pos_;
      if (!at_digit()) return negate(factor());
      pos_ = save;  // negative literal: handled by base()
    }
    const std::size_t b = base();
    if (accept('^')) return power(b, small_uint(kMaxExponent, "exponent"));
    return b;
  }

  std::size_t base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const std::size_t inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      if (!at_digit()) fail("expected variable index after 'x'");
      const std::string_view ds = digits();
      const std::uint64_t idx = ds.size() > 9 ? 0 : std::stoull(std::string(ds));
      if (idx == 0 || idx > n_) {
        pos_ = start - 1;
        fail("unknown variable x" + std::string(ds) + " (n = " + std::to_string(n_) + ")");
      }
      return input(static_cast<std::size_t>(idx - 1));
    }
    if (c == '-' || at_digit()) {
      const std::size_t start = pos_;
      if (c == '-') ++pos_;
      if (!at_digit()) fail("expected integer");
      digits();
      std::size_t end = pos_;
      // Rational literal a/b.
      if (pos_ < text_.size() && text_[pos_] == '/') {
        if (field_.characteristic() != 0) fail("fraction literals are only allowed over the rationals");
        ++pos_;
        if (!at_digit()) fail("expected denominator");
        digits();
        end = pos_;
      }
      const std::string_view lit = text_.substr(start, end - start);
      try {
        return constant(field_.parse(lit));
      } catch (const Error& e) {
        pos_ = start;
        fail(e.what());
      }
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // Drops gates not reachable from the root (e.g. the base of x^0) and
  // renumbers the rest in their original order.
  Circuit<F> prune(std::size_t root) {
    std::vector<bool> live(gates_.size(), false);
    live[root] = true;
    for (std::size_t i = root + 1; i-- > 0;) {
      if (!live[i]) continue;
      if (const auto* a = std::get_if<AddGate>(&gates_[i])) {
        live[a->left] = live[a->right] = true;
      } else if (const auto* m = std::get_if<MulGate>(&gates_[i])) {
        live[m->left] = live[m->right] = true;
      }
    }
    std::vector<std::size_t> remap(gates_.size(), 0);
    std::vector<Gate<F>> kept;
    for (std::size_t i = 0; i <= root; ++i) {
      if (!live[i]) continue;
      Gate<F> g = gates_[i];
      if (auto* a = std::get_if<AddGate>(&g)) {
        a->left = remap[a->left];
        a->right = remap[a->right];
      } else if (auto* m = std::get_if<MulGate>(&g)) {
        m->left = remap[m->left];
        m->right = remap[m->right];
      }
      remap[i] = kept.size();
      kept.push_back(std::move(g));
    }
    const std::size_t out = remap[root];
    return Circuit<F>(field_, n_, std::move(kept), out);
  }

  std::string_view text_;
  std::size_t n_;
  F field_;
  std::size_t pos_ = 0;
  std::vector<Gate<F>> gates_;
  std::map<std::size_t, std::size_t> inputs_;
  std::map<std::string, std::size_t> consts_;
};

}  // namespace detail

/// Parses the expression grammar into a circuit over x1..xn. `^k` becomes
/// a balanced multiplication tree; subtraction and unary minus multiply by a
/// shared (-1) constant gate.
template <Field F>
Circuit<F> parse_expression(std::string_view text, std::size_t n, const F& field) {
  return detail::ExpressionParser<F>(text, n, field).parse();
}

}  // namespace shifteq

#endif  // SHIFTEQ_CIRCUIT_HPP
