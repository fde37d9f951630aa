#include "hrkin/jacobian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hrkin/errors.hpp"

namespace hrkin {
namespace {

// With the column-vector convention used here, the twist joint's world-frame
// rotation axis is minus the z column of the frame entering the link, and the
// bend joint's axis is minus the x column of that frame after the twist.
// (Verified against central differences; see the Jacobian tests.)
Vec3 twist_axis(const HomTransform& entry) { return entry.rotation_col(2) * -1.0; }
Vec3 bend_axis(const HomTransform& after_twist) {
  return after_twist.rotation_col(0) * -1.0;
}

void write_column(Jacobian& jac, int col, const Vec3& axis, const Vec3& origin,
                  const Vec3& p_e) {
  const Vec3 lin = axis.cross(p_e - origin);
  jac.at(0, col) = lin.x;
  jac.at(1, col) = lin.y;
  jac.at(2, col) = lin.z;
  jac.at(3, col) = axis.x;
  jac.at(4, col) = axis.y;
  jac.at(5, col) = axis.z;
}

}  // namespace

Jacobian classic_jacobian(const ArmLayout& layout, const ClassicCache& cache) {
  if (!cache.valid || cache.num_links != layout.num_links ||
      static_cast<int>(cache.prefix.size()) != layout.num_links + 1) {
    throw InvalidState("classic_jacobian: cache missing or built for a different arm");
  }
  Jacobian jac;
  jac.resize(2 * layout.functional_links());
  const Vec3 p_e = cache.end.translation();
  int col = 0;
  for (int link = 1; link <= layout.num_links; ++link) {
    if (layout.mode(link) == LinkMode::Damaged) continue;
    const HomTransform& entry = cache.prefix[link - 1];
    const HomTransform after_twist =
        compose(entry, twist_rotation(cache.q[2 * (link - 1)]));
    const Vec3 origin = entry.translation();
    write_column(jac, col, twist_axis(entry), origin, p_e);
    jac.labels[col] = {link, VarKind::Phi};
    ++col;
    write_column(jac, col, bend_axis(after_twist), origin, p_e);
    jac.labels[col] = {link, VarKind::Theta};
    ++col;
  }
  return jac;
}

Jacobian classic_jacobian_naive(const ArmLayout& layout,
                                const FullConfiguration& q) {
  layout.validate();
  const FullConfiguration eff = effective_configuration(layout, q);
  const double d = layout.link_length;
  const Vec3 p_e = classic_forward_naive(layout, q).translation();
  Jacobian jac;
  jac.resize(2 * layout.functional_links());
  int col = 0;
  for (int link = 1; link <= layout.num_links; ++link) {
    if (layout.mode(link) == LinkMode::Damaged) continue;
    // Recompute the prefix product from the base every time; this is the
    // O(N^2) formulation the cached version exists to avoid.
    HomTransform entry = HomTransform::identity();
    for (int j = 1; j < link; ++j) {
      entry = compose(entry, compose(twist_rotation(eff.phi(j)),
                                     bend_translation(eff.theta(j), d)));
    }
    const HomTransform after_twist =
        compose(entry, twist_rotation(eff.phi(link)));
    const Vec3 origin = entry.translation();
    write_column(jac, col, twist_axis(entry), origin, p_e);
    jac.labels[col] = {link, VarKind::Phi};
    ++col;
    write_column(jac, col, bend_axis(after_twist), origin, p_e);
    jac.labels[col] = {link, VarKind::Theta};
    ++col;
  }
  return jac;
}

namespace {

// Sum over j = 0..u-1 of the in-plane chord vectors closed by j bend links,
// expressed in the frame where the body starts.  Components are returned in
// the (y, z) plane the bend acts in.  For short or nearly straight bodies the
// explicit recurrence is used; otherwise a closed geometric-series form.
void body_chord_prefix_sum(double theta_b, int u, double d, double* sum_y,
                           double* sum_z) {
  const double s = 0.5 * theta_b;
  const bool use_loop = (u < 5) || (u * std::abs(s) < 1e-2);
  if (use_loop) {
    const double c = std::cos(theta_b);
    const double sn = std::sin(theta_b);
    double wy = 0.0, wz = 0.0;  // chord vector of j links
    double sy = 0.0, sz = 0.0;
    for (int j = 1; j < u; ++j) {
      const double ny = c * wy + sn * wz + d * sn;
      const double nz = -sn * wy + c * wz + d * c;
      wy = ny;
      wz = nz;
      sy += wy;
      sz += wz;
    }
    *sum_y = sy;
    *sum_z = sz;
    return;
  }
  const double sin_s = std::sin(s);
  const double r = std::sin(u * s) / sin_s;
  const double beta = (u - 1) * s;
  const double re = u - r * std::cos(beta);
  const double im = r * std::sin(beta);
  const double cs = std::cos(s);
  const double ss = std::sin(s);
  const double scale = d / (2.0 * sin_s);
  *sum_y = scale * (cs * re + ss * im);
  *sum_z = scale * (cs * im - ss * re);
}

}  // namespace

Jacobian reduced_jacobian(const SectorDecomposition& decomp,
                          const ArmLayout& layout, const ReducedCache& cache,
                          BodyColumnMode mode) {
  if (!cache.valid || cache.num_links != layout.num_links ||
      cache.sector_entry.size() != decomp.sectors.size() ||
      cache.Q.size() != static_cast<size_t>(decomp.q_size())) {
    throw InvalidState("reduced_jacobian: cache missing or built for a different arm");
  }
  const double d = layout.link_length;
  Jacobian jac;
  jac.resize(decomp.q_size());
  const Vec3 p_e = cache.end.translation();
  for (int t = 0; t < static_cast<int>(decomp.sectors.size()); ++t) {
    const Sector& s = decomp.sectors[t];
    const int off = decomp.sector_q_offset[t];
    const double phi_h = cache.Q[off];
    const double theta_h = cache.Q[off + 1];
    const HomTransform& entry = cache.sector_entry[t];
    const HomTransform after_twist = compose(entry, twist_rotation(phi_h));
    const Vec3 origin = entry.translation();
    write_column(jac, off, twist_axis(entry), origin, p_e);
    jac.labels[off] = {t, VarKind::Phi};
    write_column(jac, off + 1, bend_axis(after_twist), origin, p_e);
    jac.labels[off + 1] = {t, VarKind::Theta};
    if (s.body_count == 0) continue;

    const double theta_b = cache.Q[off + 2];
    const int u = s.body_count;
    const HomTransform body_start =
        compose(after_twist, bend_translation(theta_h, d));
    jac.labels[off + 2] = {t, VarKind::BodyTheta};
    switch (mode) {
      case BodyColumnMode::ClosedForm: {
        // Every body joint in the sector shares the same world axis (bend
        // rotations fix their own x axis), so the chain-rule sum of their
        // columns collapses to a single cross product:
        //   sum_j a x (p_e - p_j) = a x (u * p_e - sum_j p_j).
        const Vec3 axis = bend_axis(body_start);
        double sum_y = 0.0, sum_z = 0.0;
        body_chord_prefix_sum(theta_b, u, d, &sum_y, &sum_z);
        const Vec3 p_sum = body_start.translation() * static_cast<double>(u) +
                           body_start.rotate({0.0, sum_y, sum_z});
        const Vec3 lin = axis.cross(p_e * static_cast<double>(u) - p_sum);
        jac.at(0, off + 2) = lin.x;
        jac.at(1, off + 2) = lin.y;
        jac.at(2, off + 2) = lin.z;
        jac.at(3, off + 2) = axis.x * u;
        jac.at(4, off + 2) = axis.y * u;
        jac.at(5, off + 2) = axis.z * u;
        break;
      }
      case BodyColumnMode::PerJointSum: {
        HomTransform frame = body_start;
        for (int j = 1; j <= u; ++j) {
          const Vec3 axis = bend_axis(frame);
          const Vec3 lin = axis.cross(p_e - frame.translation());
          jac.at(0, off + 2) += lin.x;
          jac.at(1, off + 2) += lin.y;
          jac.at(2, off + 2) += lin.z;
          jac.at(3, off + 2) += axis.x;
          jac.at(4, off + 2) += axis.y;
          jac.at(5, off + 2) += axis.z;
          if (j < u) frame = compose(frame, bend_translation(theta_b, d));
        }
        break;
      }
      case BodyColumnMode::LastJointOnly: {
        HomTransform frame = body_start;
        if (u > 1) {
          frame = compose(frame, body_transform_iterative(theta_b, u - 1, d));
        }
        write_column(jac, off + 2, bend_axis(frame), frame.translation(), p_e);
        jac.labels[off + 2] = {t, VarKind::BodyTheta};
        break;
      }
    }
  }
  return jac;
}

Jacobian finite_difference_jacobian(const SectorDecomposition& decomp,
                                    const ArmLayout& layout,
                                    const ReducedConfiguration& Q, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("finite_difference_jacobian: h must be > 0");
  }
  Jacobian jac;
  jac.resize(decomp.q_size());
  ReducedConfiguration probe = Q;
  for (int i = 0; i < decomp.q_size(); ++i) {
    probe.v[i] = Q.v[i] + h;
    const HomTransform plus = reduced_forward(decomp, layout, probe);
    probe.v[i] = Q.v[i] - h;
    const HomTransform minus = reduced_forward(decomp, layout, probe);
    probe.v[i] = Q.v[i];
    const Vec3 dp = (plus.translation() - minus.translation()) * (0.5 / h);
    const Vec3 dw = rotation_vector(relative_rotation(minus, plus)) * (0.5 / h);
    jac.at(0, i) = dp.x;
    jac.at(1, i) = dp.y;
    jac.at(2, i) = dp.z;
    jac.at(3, i) = dw.x;
    jac.at(4, i) = dw.y;
    jac.at(5, i) = dw.z;
    jac.labels[i] = {decomp.vars[i].sector, decomp.vars[i].kind};
  }
  return jac;
}

}  // namespace hrkin
