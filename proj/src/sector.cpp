#include "hrkin/sector.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hrkin/errors.hpp"

namespace hrkin {
namespace {

constexpr double kSectorConstraintTol = 1e-12;

thread_local std::uint64_t g_closed_form_fallbacks = 0;

// Signed chord: d * sin(u*theta/2) / sin(theta/2).  The sign matters for the
// closed-form body transform; chord_length exposes the magnitude.
double signed_chord(double theta_b, int u, double d) {
  const double s = 0.5 * theta_b;
  // The ratio of sines is well conditioned whenever sin(s) is representable;
  // only the exact-zero case needs the limit value u*d.
  if (std::abs(s) < 1e-150) return u * d;
  return d * (std::sin(u * s) / std::sin(s));
}

}  // namespace

SectorDecomposition decompose(const ArmLayout& layout) {
  layout.validate();
  SectorDecomposition decomp;
  decomp.num_links = layout.num_links;
  for (int link = 1; link <= layout.num_links; ++link) {
    switch (layout.mode(link)) {
      case LinkMode::Head:
        decomp.sectors.push_back({link, 0});
        break;
      case LinkMode::Body:
        // validate() guarantees a preceding Head.
        decomp.sectors.back().body_count += 1;
        break;
      case LinkMode::Damaged:
        decomp.damaged.push_back(link);
        break;
    }
  }
  for (int t = 0; t < static_cast<int>(decomp.sectors.size()); ++t) {
    const Sector& s = decomp.sectors[t];
    decomp.sector_q_offset.push_back(decomp.q_size());
    decomp.vars.push_back({t, s.first_link, VarKind::Phi});
    decomp.vars.push_back({t, s.first_link, VarKind::Theta});
    if (s.body_count > 0) {
      decomp.vars.push_back({t, s.first_link, VarKind::BodyTheta});
    }
  }
  return decomp;
}

ReducedConfiguration project_configuration(const SectorDecomposition& decomp,
                                           const ArmLayout& layout,
                                           const FullConfiguration& q) {
  if (q.size() != 2 * layout.num_links) {
    throw std::invalid_argument(
        "project_configuration: configuration has " + std::to_string(q.size()) +
        " entries, expected " + std::to_string(2 * layout.num_links));
  }
  ReducedConfiguration Q;
  Q.v.reserve(static_cast<size_t>(decomp.q_size()));
  for (const Sector& s : decomp.sectors) {
    Q.v.push_back(q.phi(s.first_link));
    Q.v.push_back(q.theta(s.first_link));
    if (s.body_count > 0) {
      const double theta_b = q.theta(s.first_link + 1);
      for (int j = 1; j <= s.body_count; ++j) {
        const int link = s.first_link + j;
        if (std::abs(q.phi(link)) > kSectorConstraintTol) {
          throw InconsistentConfiguration(
              "project_configuration: Body link " + std::to_string(link) +
              " has nonzero twist " + std::to_string(q.phi(link)));
        }
        if (std::abs(q.theta(link) - theta_b) > kSectorConstraintTol) {
          throw InconsistentConfiguration(
              "project_configuration: Body link " + std::to_string(link) +
              " bend differs from its sector's shared bend");
        }
      }
      Q.v.push_back(theta_b);
    }
  }
  return Q;
}

FullConfiguration expand_configuration(const SectorDecomposition& decomp,
                                       const ArmLayout& layout,
                                       const ReducedConfiguration& Q) {
  if (Q.size() != decomp.q_size()) {
    throw std::invalid_argument(
        "expand_configuration: reduced configuration has " +
        std::to_string(Q.size()) + " entries, expected " +
        std::to_string(decomp.q_size()));
  }
  FullConfiguration q = FullConfiguration::zeros(layout.num_links);
  for (int t = 0; t < static_cast<int>(decomp.sectors.size()); ++t) {
    const Sector& s = decomp.sectors[t];
    const int off = decomp.sector_q_offset[t];
    q.phi(s.first_link) = Q.v[off];
    q.theta(s.first_link) = Q.v[off + 1];
    for (int j = 1; j <= s.body_count; ++j) {
      q.phi(s.first_link + j) = 0.0;
      q.theta(s.first_link + j) = Q.v[off + 2];
    }
  }
  for (const auto& [link, angles] : layout.frozen) {
    q.phi(link) = angles.phi;
    q.theta(link) = angles.theta;
  }
  return q;
}

std::pair<int, int> count_dofs(const SectorDecomposition& decomp) {
  int control = 0;
  int mobile = 0;
  for (const Sector& s : decomp.sectors) {
    control += 2 + (s.body_count > 0 ? 1 : 0);
    mobile += 2 + s.body_count;
  }
  return {control, mobile};
}

double chord_length(double theta_b, int u, double d) {
  if (u < 1) throw std::invalid_argument("chord_length: u must be >= 1");
  if (!(d > 0.0) || !std::isfinite(d) || !std::isfinite(theta_b)) {
    throw std::invalid_argument("chord_length: non-finite or non-positive input");
  }
  return std::abs(signed_chord(theta_b, u, d));
}

HomTransform head_transform(double phi_h, double theta_h, double d) {
  return compose(twist_rotation(phi_h), bend_translation(theta_h, d));
}

HomTransform body_transform_iterative(double theta_b, int u, double d) {
  if (u < 1) {
    throw std::invalid_argument("body_transform_iterative: u must be >= 1");
  }
  const HomTransform step = bend_translation(theta_b, d);
  HomTransform t = step;
  for (int j = 1; j < u; ++j) t = compose(t, step);
  return t;
}

HomTransform body_transform_closed(double theta_b, int u, double d) {
  if (u < 1) {
    throw std::invalid_argument("body_transform_closed: u must be >= 1");
  }
  if (!std::isfinite(theta_b) || !(d > 0.0)) {
    throw std::invalid_argument("body_transform_closed: bad inputs");
  }
  if (!((u - 1) * std::abs(theta_b) < 2.0 * std::numbers::pi)) {
    ++g_closed_form_fallbacks;
    return body_transform_iterative(theta_b, u, d);
  }
  const double total = u * theta_b;
  const double c = std::cos(total);
  const double s = std::sin(total);
  HomTransform t = HomTransform::identity();
  t.at(1, 1) = c;
  t.at(1, 2) = s;
  t.at(2, 1) = -s;
  t.at(2, 2) = c;
  const double chord = signed_chord(theta_b, u, d);
  const double dir = 0.5 * (u + 1) * theta_b;
  t.at(1, 3) = chord * std::sin(dir);
  t.at(2, 3) = chord * std::cos(dir);
  return t;
}

HomTransform damaged_transform(double phi, double theta, double d) {
  return compose(twist_rotation(phi), bend_translation(theta, d));
}

std::uint64_t closed_form_fallback_count() { return g_closed_form_fallbacks; }
void reset_closed_form_fallback_count() { g_closed_form_fallbacks = 0; }

namespace {

void check_reduced_inputs(const SectorDecomposition& decomp,
                          const ArmLayout& layout,
                          const ReducedConfiguration& Q) {
  if (decomp.num_links != layout.num_links) {
    throw InvalidState("reduced_forward: decomposition/layout size mismatch");
  }
  if (Q.size() != decomp.q_size()) {
    throw std::invalid_argument(
        "reduced_forward: reduced configuration has " +
        std::to_string(Q.size()) + " entries, expected " +
        std::to_string(decomp.q_size()));
  }
  for (double a : Q.v) {
    if (!std::isfinite(a)) {
      throw std::invalid_argument("reduced_forward: non-finite joint value");
    }
  }
}

}  // namespace

void reduced_forward(const SectorDecomposition& decomp, const ArmLayout& layout,
                     const ReducedConfiguration& Q, ReducedCache& cache) {
  check_reduced_inputs(decomp, layout, Q);
  const double d = layout.link_length;
  const size_t num_sectors = decomp.sectors.size();
  cache.sector_entry.resize(num_sectors);
  cache.sector_local.resize(num_sectors);

  // Local sector products (independent of everything outside the sector).
  for (size_t t = 0; t < num_sectors; ++t) {
    const Sector& s = decomp.sectors[t];
    const int off = decomp.sector_q_offset[t];
    HomTransform local = head_transform(Q.v[off], Q.v[off + 1], d);
    if (s.body_count > 0) {
      local = compose(local,
                      body_transform_closed(Q.v[off + 2], s.body_count, d));
    }
    cache.sector_local[t] = local;
  }

  // Combine damaged links and sector products strictly in link order.
  HomTransform w = HomTransform::identity();
  size_t t = 0;
  size_t di = 0;
  int link = 1;
  while (link <= layout.num_links) {
    if (di < decomp.damaged.size() && decomp.damaged[di] == link) {
      const FrozenAngles& f = layout.frozen.at(link);
      w = compose(w, damaged_transform(f.phi, f.theta, d));
      ++di;
      ++link;
    } else {
      const Sector& s = decomp.sectors[t];
      cache.sector_entry[t] = w;
      w = compose(w, cache.sector_local[t]);
      link = s.first_link + s.body_count + 1;
      ++t;
    }
  }
  cache.end = w;
  cache.Q = Q.v;
  cache.num_links = layout.num_links;
  cache.valid = true;
}

HomTransform reduced_forward(const SectorDecomposition& decomp,
                             const ArmLayout& layout,
                             const ReducedConfiguration& Q) {
  ReducedCache cache;
  reduced_forward(decomp, layout, Q, cache);
  return cache.end;
}

}  // namespace hrkin
