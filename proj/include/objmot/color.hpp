#pragma once

#include <algorithm>
#include <cmath>

#include "objmot/core.hpp"

namespace objmot {

/// Hue, saturation, value with hue in turns [0, 1).
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

inline Hsv rgb_to_hsv(const Rgb& c) {
  const double mx = c.maxCoeff();
  const double mn = c.minCoeff();
  const double d = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0.0 ? d / mx : 0.0;
  if (d <= 0.0) return out;
  double h;
  if (mx == c[0])
    h = (c[1] - c[2]) / d;
  else if (mx == c[1])
    h = 2.0 + (c[2] - c[0]) / d;
  else
    h = 4.0 + (c[0] - c[1]) / d;
  h /= 6.0;
  out.h = h - std::floor(h);
  return out;
}

inline Rgb hsv_to_rgb(const Hsv& hsv) {
  const double h = (hsv.h - std::floor(hsv.h)) * 6.0;
  const int sector = std::min(static_cast<int>(h), 5);
  const double f = h - sector;
  const double v = hsv.v;
  const double p = v * (1.0 - hsv.s);
  const double q = v * (1.0 - hsv.s * f);
  const double t = v * (1.0 - hsv.s * (1.0 - f));
  switch (sector) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

}  // namespace objmot
