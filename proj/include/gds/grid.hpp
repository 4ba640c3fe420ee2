#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "gds/error.hpp"

namespace gds {

/// Uniform sampling of [t_min, t_max] with `count` points, endpoints included.
struct SampleGrid {
  double t_min = -10.0;
  double t_max = 10.0;
  int count = 2001;

  void validate() const {
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min < t_max)) {
      throw Error(ErrorCode::InvalidGrid, "need finite t_min < t_max");
    }
    if (count < 3) {
      throw Error(ErrorCode::InvalidGrid, "need at least 3 samples, got " + std::to_string(count));
    }
  }

  double step() const { return (t_max - t_min) / static_cast<double>(count - 1); }

  double at(int i) const {
    if (i == count - 1) return t_max;
    return t_min + step() * static_cast<double>(i);
  }
};

inline constexpr SampleGrid kDefaultGrid{-10.0, 10.0, 2001};

}  // namespace gds
