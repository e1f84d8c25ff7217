#ifndef SHIFTEQ_PIT_HPP
#define SHIFTEQ_PIT_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "shifteq/errors.hpp"
#include "shifteq/field.hpp"
#include "shifteq/linalg.hpp"
#include "shifteq/oracle.hpp"

namespace shifteq {

template <Field F>
struct HittingSet {
  std::vector<Vec<F>> points;
  /// "user" or "random(seed=..., size=...)".
  std::string provenance = "user";
};

/// ceil(d / epsilon), at least 1, saturating at 2^63.
inline std::uint64_t sampling_set_size(unsigned d, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(Errc::kInvalidArgument, "epsilon must be positive");
  const long double want = std::ceil(static_cast<long double>(d) / static_cast<long double>(epsilon));
  if (want >= 9.2e18L) return std::uint64_t{1} << 63;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(want));
}

/// One-sample Schwartz-Zippel test over T^n, T = {0, ..., |T|-1}.
///
/// |T| is ceil(d/epsilon) for an oracle of degree bound d, or a fixed size
/// when constructed with `with_set_size`. Over F_p a |T| above p is clamped
/// to p, or raises kCannotMeetEpsilon in strict mode. The engine keeps a
/// pointer to the caller's Rng.
template <Field F>
class SchwartzZippel {
 public:
  SchwartzZippel(double epsilon, Rng& rng, bool strict = false) : epsilon_(epsilon), rng_(&rng), strict_(strict) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(Errc::kInvalidArgument, "epsilon must lie in (0, 1)");
  }

  static SchwartzZippel with_set_size(std::uint64_t size, Rng& rng) {
    if (size == 0) throw Error(Errc::kInvalidArgument, "sampling set must be nonempty");
    SchwartzZippel e(0.5, rng);
    e.fixed_size_ = size;
    return e;
  }

  double epsilon() const noexcept { return epsilon_; }

  std::uint64_t set_size(const F& field, unsigned d) const {
    std::uint64_t size = fixed_size_ ? *fixed_size_ : sampling_set_size(d, epsilon_);
    if (const auto order = field.order(); order && size > *order) {
      if (strict_ || fixed_size_) {
        throw Error(Errc::kCannotMeetEpsilon, "sampling set of size " + std::to_string(size) +
                                                  " does not fit in a field of size " + std::to_string(*order));
      }
      size = *order;
    }
    return size;
  }

  Vec<F> sample_point(const F& field, std::size_t n, unsigned d) const {
    const std::uint64_t size = set_size(field, d);
    Vec<F> x;
    x.reserve(n);
    for (std::size_t i = 0; i < n; ++i) x.push_back(field.sample(size, *rng_));
    return x;
  }

  /// Exactly one oracle query.
  bool is_zero(const Oracle<F>& o) const {
    const Vec<F> x = sample_point(o.field(), o.num_vars(), o.degree_bound());
    return o.field().is_zero(o(x));
  }

 private:
  double epsilon_;
  Rng* rng_;
  bool strict_;
  std::optional<std::uint64_t> fixed_size_;
};

/// Declares zero iff the oracle vanishes on every point of the set.
template <Field F>
class HittingSetEngine {
 public:
  explicit HittingSetEngine(HittingSet<F> hs) : hs_(std::move(hs)) {}

  const HittingSet<F>& hitting_set() const noexcept { return hs_; }

  bool is_zero(const Oracle<F>& o) const {
    for (const auto& p : hs_.points) {
      if (!o.field().is_zero(o(p))) return false;
    }
    return true;
  }

 private:
  HittingSet<F> hs_;
};

template <Field F>
class PitEngine {
 public:
  PitEngine(SchwartzZippel<F> e) : impl_(std::move(e)) {}   // NOLINT(google-explicit-constructor)
  PitEngine(HittingSetEngine<F> e) : impl_(std::move(e)) {}  // NOLINT(google-explicit-constructor)

  bool is_zero(const Oracle<F>& o) const {
    return std::visit([&](const auto& e) { return e.is_zero(o); }, impl_);
  }
  bool deterministic() const noexcept { return std::holds_alternative<HittingSetEngine<F>>(impl_); }

  const SchwartzZippel<F>* schwartz_zippel() const noexcept { return std::get_if<SchwartzZippel<F>>(&impl_); }
  const HittingSetEngine<F>* hitting_set() const noexcept { return std::get_if<HittingSetEngine<F>>(&impl_); }

 private:
  std::variant<SchwartzZippel<F>, HittingSetEngine<F>> impl_;
};

/// `size` points uniform over T^n with |T| = min(|F|, d^2 * size). Throws
/// kFieldTooSmall when |F| < max(d^2, s).
template <Field F>
HittingSet<F> random_hitting_set(std::size_t n, unsigned d, std::uint64_t s, std::size_t size, const F& field,
                                 Rng& rng) {
  const std::uint64_t d2 = std::uint64_t{d} * d;
  if (const auto order = field.order(); order && *order < std::max(d2, s)) {
    throw Error(Errc::kFieldTooSmall, "field of size " + std::to_string(*order) + " below max(d^2, s)");
  }
  std::uint64_t domain = std::max<std::uint64_t>(1, d2 * size);
  if (const auto order = field.order(); order && domain > *order) domain = *order;
  HittingSet<F> hs;
  hs.provenance = "random(size=" + std::to_string(size) + ", domain=" + std::to_string(domain) + ")";
  hs.points.reserve(size);
  for (std::size_t j = 0; j < size; ++j) {
    Vec<F> p;
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i) p.push_back(field.sample(domain, rng));
    hs.points.push_back(std::move(p));
  }
  return hs;
}

/// Fixes x_1, ..., x_n in turn, scanning {0, ..., d} for each and keeping
/// the first value under which the engine still reports the restriction
/// nonzero. Throws kNotFound when a scan comes up empty or the final point
/// evaluates to zero.
template <Field F>
Vec<F> find_nonzero_point(const Oracle<F>& o, const PitEngine<F>& engine) {
  const F& field = o.field();
  const std::size_t n = o.num_vars();
  const unsigned d = o.degree_bound();
  const auto values = default_nodes(field, d);
  Vec<F> prefix;
  prefix.reserve(n);
  if (d == 0) {
    prefix.assign(n, field.zero());
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      bool fixed = false;
      for (const auto& v : values) {
        prefix.push_back(v);
        if (!engine.is_zero(restricted(o, std::span<const typename F::Element>(prefix)))) {
          fixed = true;
          break;
        }
        prefix.pop_back();
      }
      if (!fixed) throw Error(Errc::kNotFound, "no value of x" + std::to_string(i + 1) + " keeps the oracle nonzero");
    }
  }
  if (field.is_zero(o(prefix))) throw Error(Errc::kNotFound, "oracle vanishes at the constructed point");
  return prefix;
}

}  // namespace shifteq

#endif  // SHIFTEQ_PIT_HPP
