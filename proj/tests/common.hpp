#pragma once

#include <cmath>
#include <vector>

#include "skewflow/skewtrans.hpp"
#include "skewflow/trigpoly.hpp"

namespace fixtures {

inline skewflow::IntMatrix t3_matrix()
{
    return skewflow::IntMatrix{{1, 1, 2}, {0, 1, 2}, {0, 0, 1}};
}

// sqrt2 - 1, sqrt3 - 1, sqrt5 - 2
inline std::vector<double> t3_translation() { return {0.41421356237309515, 0.7320508075688772, 0.2360679774997898}; }

inline skewflow::SkewTranslation t3() { return {t3_matrix(), t3_translation()}; }

inline skewflow::SkewTranslation heisenberg2()
{
    return {skewflow::IntMatrix{{1, 1}, {0, 1}}, {0.41421356237309515, 0.57735026918962584}};
}

// cos(2 pi z) + 0.5 sin(2 pi (x + y)) - 0.25 cos(2 pi (x - 2 z))
inline skewflow::TrigPoly f3()
{
    using skewflow::TrigPoly;
    return TrigPoly::cosine({0, 0, 1}) + TrigPoly::sine({1, 1, 0}, 0.5) + TrigPoly::cosine({1, 0, -2}, -0.25);
}

} // namespace fixtures
