#ifndef HRKIN__TRANSFORM_HPP_
#define HRKIN__TRANSFORM_HPP_

#include <array>
#include <cmath>

namespace hrkin {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

// Spatial velocity / pose error: linear part in length units, angular part as
// a rotation vector (angle times unit axis).
struct Twist {
  Vec3 linear;
  Vec3 angular;
};

// 4x4 homogeneous rigid transform, row-major, bottom row fixed at (0,0,0,1).
// The rotation block acts on column vectors: p' = R p + t.
struct HomTransform {
  std::array<double, 16> m{};

  static HomTransform identity() {
    HomTransform t;
    t.m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    return t;
  }

  double& at(int r, int c) { return m[r * 4 + c]; }
  double at(int r, int c) const { return m[r * 4 + c]; }

  Vec3 translation() const { return {m[3], m[7], m[11]}; }
  void set_translation(const Vec3& t) {
    m[3] = t.x;
    m[7] = t.y;
    m[11] = t.z;
  }

  // Column c of the rotation block (a world-frame image of a local axis).
  Vec3 rotation_col(int c) const { return {m[c], m[4 + c], m[8 + c]}; }

  // R * v using the rotation block only.
  Vec3 rotate(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[4] * v.x + m[5] * v.y + m[6] * v.z,
            m[8] * v.x + m[9] * v.y + m[10] * v.z};
  }
};

// Twist joint: rotation about the local z axis by phi, no translation.
// Rotation block rows are [cos, sin, 0], [-sin, cos, 0], [0, 0, 1].
HomTransform twist_rotation(double phi);

// Bend joint plus link of length d: rotation about the local x axis and
// translation (0, d sin(theta), d cos(theta)).  Requires d > 0, theta finite.
HomTransform bend_translation(double theta, double d);

// a * b via the dispatched 4x4 kernel.  Never re-orthonormalizes.
HomTransform compose(const HomTransform& a, const HomTransform& b);

// Max deviation of R^T R from identity and |det R - 1|; pure diagnostics.
double rigidity_drift(const HomTransform& t);
bool is_rigid(const HomTransform& t, double tol = 1e-10);

// Rotation angle in [0, pi] of the rotation block.
double rotation_angle(const HomTransform& t);

// Rotation vector (angle * unit axis) of the rotation block.  Near angle pi
// the axis is recovered from the symmetric part with a deterministic
// largest-component rule.
Vec3 rotation_vector(const HomTransform& t);

// target.R * current.R^T as a transform with zero translation.
HomTransform relative_rotation(const HomTransform& current,
                               const HomTransform& target);

// linear = target translation - current translation,
// angular = rotation vector of target.R * current.R^T.
Twist pose_error(const HomTransform& current, const HomTransform& target);

// Largest absolute entrywise difference over the full 4x4.
double max_abs_diff(const HomTransform& a, const HomTransform& b);

}  // namespace hrkin

#endif  // HRKIN__TRANSFORM_HPP_
