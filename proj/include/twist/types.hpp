#pragma once

#include <Eigen/Core>

namespace twist {

using Vec2 = Eigen::Vector2d;

// Phase-plane state: x[0] = position error, x[1] = velocity error.
using State = Vec2;

// sgn with sgn(0) = 0, the discrete-time stand-in for the set-valued sign.
inline double sgn(double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); }

}  // namespace twist
