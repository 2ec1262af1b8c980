#pragma once

#include <string_view>
#include <vector>

#include "suborb/matrix.hpp"

namespace suborb {

/// a + b i with rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  /// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" with rational a, b ("1/2+3/4i").
  static GaussianRational parse(std::string_view text);
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

using ComplexMatrix = std::vector<std::vector<GaussianRational>>;

/// n x n complex -> 2n x 2n real; each entry a+bi becomes the block [[a, -b], [b, a]].
RatMatrix realify(const ComplexMatrix& m);

}  // namespace suborb
