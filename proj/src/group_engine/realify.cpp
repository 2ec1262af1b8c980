#include "suborb/realify.hpp"

#include <string>

#include "suborb/error.hpp"

namespace suborb {

namespace {

Rational parse_imaginary_coefficient(std::string_view s) {
  // s is the text before the trailing 'i', possibly just a sign.
  if (s.empty() || s == "+") return 1;
  if (s == "-") return -1;
  return Rational::parse(s);
}

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (c != ' ') compact.push_back(c);
  }
  std::string_view s = compact;
  if (s.empty()) fail(ErrorCode::ParseError, "empty complex entry");
  if (s.back() != 'i') return {Rational::parse(s), 0};

  s.remove_suffix(1);
  // Split at the last sign that is not the leading one and not part of "/-".
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0, parse_imaginary_coefficient(s)};
  return {Rational::parse(s.substr(0, split)), parse_imaginary_coefficient(s.substr(split))};
}

RatMatrix realify(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix r(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    require(m[i].size() == n, ErrorCode::DimensionMismatch, "complex matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const GaussianRational& z = m[i][j];
      r(2 * i, 2 * j) = z.re;
      r(2 * i, 2 * j + 1) = -z.im;
      r(2 * i + 1, 2 * j) = z.im;
      r(2 * i + 1, 2 * j + 1) = z.re;
    }
  }
  return r;
}

}  // namespace suborb
