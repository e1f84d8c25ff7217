#include "shifteq_tools/instance.hpp"

#include <charconv>

#include "shifteq/errors.hpp"

namespace shifteq::tools {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

template <class T>
T parse_uint(std::string_view s, std::size_t line, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

PolySource poly_source(std::string_view value) {
  constexpr std::string_view kDense = "dense:";
  if (value.substr(0, kDense.size()) == kDense) return {std::string(trim(value.substr(kDense.size()))), true};
  return {std::string(value), false};
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  bool have_n = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'key: value'");
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view value = trim(line.substr(colon + 1));
    if (key == "field") {
      inst.field = FieldSpec::parse(value);
    } else if (key == "n") {
      inst.n = parse_uint<std::size_t>(value, line_no, "variable count");
      have_n = true;
    } else if (key == "degree") {
      inst.degree = parse_uint<unsigned>(value, line_no, "degree");
    } else if (key == "f") {
      inst.f = poly_source(value);
    } else if (key == "g") {
      inst.g = poly_source(value);
    } else if (key == "h") {
      inst.h.push_back(poly_source(value));
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_n) throw ParseError(line_no, "missing 'n:' line");
  if (!inst.f) throw ParseError(line_no, "missing 'f:' line");
  return inst;
}

template <Field F>
DensePoly<F> parse_dense_terms(std::string_view text, std::size_t n, const F& field) {
  DensePoly<F> poly(field, n);
  for (std::string_view term : split(text, ';')) {
    if (term.empty()) continue;
    const auto open = term.find('{');
    const auto close = term.find('}');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      throw ParseError(0, "dense term '" + std::string(term) + "' must look like 'c {e1,...,en}'");
    }
    const auto coeff = field.parse(trim(term.substr(0, open)));
    const auto exps = split(term.substr(open + 1, close - open - 1), ',');
    if (exps.size() != n) {
      throw Error(Errc::kDimensionMismatch,
                  "dense term has " + std::to_string(exps.size()) + " exponents, expected " + std::to_string(n));
    }
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = parse_uint<std::uint32_t>(exps[i], 0, "exponent");
    poly.add_term(m, coeff);
  }
  return poly;
}

template <Field F>
Vec<F> parse_vector(std::string_view text, const F& field) {
  Vec<F> out;
  if (trim(text).empty()) return out;
  for (std::string_view part : split(text, ',')) out.push_back(field.parse(part));
  return out;
}

template DensePoly<PrimeField> parse_dense_terms(std::string_view, std::size_t, const PrimeField&);
template DensePoly<RationalField> parse_dense_terms(std::string_view, std::size_t, const RationalField&);
template Vec<PrimeField> parse_vector(std::string_view, const PrimeField&);
template Vec<RationalField> parse_vector(std::string_view, const RationalField&);

}  // namespace shifteq::tools
