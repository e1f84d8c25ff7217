#ifndef SHIFTEQ_TOOLS_INSTANCE_HPP
#define SHIFTEQ_TOOLS_INSTANCE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shifteq/circuit.hpp"
#include "shifteq/field.hpp"
#include "shifteq/oracle.hpp"
#include "shifteq/polynomial.hpp"

namespace shifteq::tools {

/// A polynomial as written in an instance file: an expression, or a dense
/// term list "c {e1,...,en}; c {e1,...,en}; ...".
struct PolySource {
  std::string text;
  bool dense = false;
};

/// Line-oriented problem description:
///
///   # comment
///   field: p=101        (or: rational)
///   n: 2
///   degree: 4           (optional)
///   f: (x1+x2)^2
///   g: dense: 1 {2,0}; 2 {1,1}; 1 {0,2}
///   h: x1               (repeatable; lindep generators)
struct Instance {
  FieldSpec field = FieldSpec::prime(kDefaultPrime);
  std::size_t n = 0;
  std::optional<unsigned> degree;
  std::optional<PolySource> f;
  std::optional<PolySource> g;
  std::vector<PolySource> h;
};

/// Throws ParseError; the position is the 1-based line number.
Instance parse_instance(std::string_view text);

/// Parses a term list such as "3 {2,0}; -1 {0,1}".
template <Field F>
DensePoly<F> parse_dense_terms(std::string_view text, std::size_t n, const F& field);

/// Oracle for a polynomial source. Expressions use `bound` when given and
/// their syntactic degree otherwise; dense lists use `bound` or their degree.
template <Field F>
Oracle<F> make_oracle(const PolySource& src, std::size_t n, const F& field, std::optional<unsigned> bound) {
  if (src.dense) {
    const auto poly = parse_dense_terms(src.text, n, field);
    const Oracle<F> o = from_dense(poly);
    return bound ? with_degree_bound(o, *bound) : o;
  }
  const auto circuit = parse_expression(src.text, n, field);
  return bound ? from_circuit(circuit, *bound) : from_circuit(circuit);
}

/// Comma-separated field elements, e.g. "1,-2,3/4".
template <Field F>
Vec<F> parse_vector(std::string_view text, const F& field);

}  // namespace shifteq::tools

#endif  // SHIFTEQ_TOOLS_INSTANCE_HPP
