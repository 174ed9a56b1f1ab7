#pragma once

#include "velavg/numerics/vec3.hpp"

namespace velavg {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
  bool empty() const { return !(hi > lo); }
};

struct Box3 {
  Vec3 lo;
  Vec3 hi;

  bool contains(const Vec3& v) const {
    for (int i = 0; i < 3; ++i) {
      if (v[i] < lo[i] || v[i] > hi[i]) return false;
    }
    return true;
  }
  double volume() const {
    return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  }
  Box3 dilated(double r) const {
    return {{lo[0] - r, lo[1] - r, lo[2] - r}, {hi[0] + r, hi[1] + r, hi[2] + r}};
  }
};

struct Ball3 {
  Vec3 center;
  double radius = 0.0;

  bool contains(const Vec3& v) const { return norm2(v - center) <= radius * radius; }
  Box3 bounding_box() const { return Box3{center, center}.dilated(radius); }
};

}  // namespace velavg
