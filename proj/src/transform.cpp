#include "hrkin/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hrkin/kernels.hpp"

namespace hrkin {

HomTransform twist_rotation(double phi) {
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("twist_rotation: phi must be finite");
  }
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  HomTransform t = HomTransform::identity();
  t.at(0, 0) = c;
  t.at(0, 1) = s;
  t.at(1, 0) = -s;
  t.at(1, 1) = c;
  return t;
}

HomTransform bend_translation(double theta, double d) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("bend_translation: theta must be finite");
  }
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument("bend_translation: link length must be > 0");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  HomTransform t = HomTransform::identity();
  t.at(1, 1) = c;
  t.at(1, 2) = s;
  t.at(1, 3) = d * s;
  t.at(2, 1) = -s;
  t.at(2, 2) = c;
  t.at(2, 3) = d * c;
  return t;
}

HomTransform compose(const HomTransform& a, const HomTransform& b) {
  HomTransform out;
  kernels::mat4_mul(out.m.data(), a.m.data(), b.m.data());
  return out;
}

double rigidity_drift(const HomTransform& t) {
  double drift = 0.0;
  // R^T R - I
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += t.at(k, i) * t.at(k, j);
      drift = std::max(drift, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  const double det =
      t.at(0, 0) * (t.at(1, 1) * t.at(2, 2) - t.at(1, 2) * t.at(2, 1)) -
      t.at(0, 1) * (t.at(1, 0) * t.at(2, 2) - t.at(1, 2) * t.at(2, 0)) +
      t.at(0, 2) * (t.at(1, 0) * t.at(2, 1) - t.at(1, 1) * t.at(2, 0));
  drift = std::max(drift, std::abs(det - 1.0));
  // Bottom row must stay exactly (0,0,0,1).
  drift = std::max({drift, std::abs(t.m[12]), std::abs(t.m[13]),
                    std::abs(t.m[14]), std::abs(t.m[15] - 1.0)});
  return drift;
}

bool is_rigid(const HomTransform& t, double tol) {
  return rigidity_drift(t) <= tol;
}

namespace {

// Skew part of R as a vector: (R21 - R12, R02 - R20, R10 - R01) / 2,
// which equals sin(angle) * axis for a rotation matrix.
Vec3 skew_vector(const HomTransform& t) {
  return {0.5 * (t.at(2, 1) - t.at(1, 2)), 0.5 * (t.at(0, 2) - t.at(2, 0)),
          0.5 * (t.at(1, 0) - t.at(0, 1))};
}

}  // namespace

double rotation_angle(const HomTransform& t) {
  const Vec3 w = skew_vector(t);
  const double cos_term =
      0.5 * (t.at(0, 0) + t.at(1, 1) + t.at(2, 2) - 1.0);
  // atan2 of (sin, cos) stays accurate both near 0 and near pi, unlike acos.
  return std::atan2(w.norm(), cos_term);
}

Vec3 rotation_vector(const HomTransform& t) {
  const Vec3 w = skew_vector(t);
  const double sin_a = w.norm();
  const double cos_a = 0.5 * (t.at(0, 0) + t.at(1, 1) + t.at(2, 2) - 1.0);
  const double angle = std::atan2(sin_a, cos_a);
  if (angle < 1e-14) return {0.0, 0.0, 0.0};
  if (sin_a >= 1e-6) {
    const double scale = angle / sin_a;
    return w * scale;
  }
  // Near pi the skew part vanishes; recover the axis from the symmetric part
  // R = 2 v v^T - I (at exactly pi), seeding on the largest diagonal entry.
  const double d0 = t.at(0, 0), d1 = t.at(1, 1), d2 = t.at(2, 2);
  int i = 0;
  if (d1 > d0) i = 1;
  if (d2 > (i == 0 ? d0 : d1)) i = 2;
  const double vi = std::sqrt(std::max(0.0, (t.at(i, i) + 1.0) * 0.5));
  if (vi < 1e-12) return {0.0, 0.0, 0.0};  // not reachable for rotations
  const int j = (i + 1) % 3;
  const int k = (i + 2) % 3;
  double comp[3];
  comp[i] = vi;
  // At pi, the symmetric off-diagonal part is 2 v_i v_j.
  comp[j] = 0.5 * (t.at(i, j) + t.at(j, i)) / (2.0 * vi);
  comp[k] = 0.5 * (t.at(i, k) + t.at(k, i)) / (2.0 * vi);
  Vec3 v{comp[0], comp[1], comp[2]};
  const double n = v.norm();
  v = v * (1.0 / n);
  // Keep the (tiny) skew part's orientation when it is nonzero so the result
  // varies continuously into the sin_a >= 1e-6 branch.
  if (sin_a > 0.0 && w.dot(v) < 0.0) v = v * -1.0;
  return v * angle;
}

HomTransform relative_rotation(const HomTransform& current,
                               const HomTransform& target) {
  HomTransform rel = HomTransform::identity();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += target.at(i, k) * current.at(j, k);
      rel.at(i, j) = dot;
    }
  }
  return rel;
}

Twist pose_error(const HomTransform& current, const HomTransform& target) {
  Twist e;
  e.linear = target.translation() - current.translation();
  e.angular = rotation_vector(relative_rotation(current, target));
  return e;
}

double max_abs_diff(const HomTransform& a, const HomTransform& b) {
  double m = 0.0;
  for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(a.m[i] - b.m[i]));
  return m;
}

}  // namespace hrkin
