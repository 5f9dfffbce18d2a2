#include "lcs/complex.hpp"

#include <algorithm>
#include <cmath>

namespace lcs {

double max_abs_diff(const CMatrix2& a, const CMatrix2& b) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::sqrt((a(i, j) - b(i, j)).norm2()));
  return m;
}

}  // namespace lcs
