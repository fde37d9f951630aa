#include "hrkin/classic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hrkin/errors.hpp"

namespace hrkin {
namespace {

void check_inputs(const ArmLayout& layout, const FullConfiguration& q) {
  layout.validate();
  if (q.size() != 2 * layout.num_links) {
    throw std::invalid_argument(
        "classic_forward: configuration has " + std::to_string(q.size()) +
        " entries, expected " + std::to_string(2 * layout.num_links));
  }
  for (double a : q.v) {
    if (!std::isfinite(a)) {
      throw std::invalid_argument("classic_forward: non-finite joint angle");
    }
  }
}

}  // namespace

FullConfiguration effective_configuration(const ArmLayout& layout,
                                          const FullConfiguration& q) {
  FullConfiguration eff = q;
  for (const auto& [link, angles] : layout.frozen) {
    eff.phi(link) = angles.phi;
    eff.theta(link) = angles.theta;
  }
  return eff;
}

void classic_forward(const ArmLayout& layout, const FullConfiguration& q,
                     ClassicCache& cache) {
  check_inputs(layout, q);
  const FullConfiguration eff = effective_configuration(layout, q);
  const int n = layout.num_links;
  cache.prefix.resize(static_cast<size_t>(n) + 1);
  cache.prefix[0] = HomTransform::identity();
  for (int i = 1; i <= n; ++i) {
    const HomTransform link = compose(twist_rotation(eff.phi(i)),
                                      bend_translation(eff.theta(i),
                                                       layout.link_length));
    cache.prefix[i] = compose(cache.prefix[i - 1], link);
  }
  cache.end = cache.prefix[n];
  cache.q = eff.v;
  cache.num_links = n;
  cache.valid = true;
}

HomTransform classic_forward(const ArmLayout& layout,
                             const FullConfiguration& q) {
  ClassicCache cache;
  classic_forward(layout, q, cache);
  return cache.end;
}

HomTransform classic_forward_naive(const ArmLayout& layout,
                                   const FullConfiguration& q) {
  check_inputs(layout, q);
  const FullConfiguration eff = effective_configuration(layout, q);
  HomTransform t = HomTransform::identity();
  for (int i = 1; i <= layout.num_links; ++i) {
    const HomTransform link = compose(twist_rotation(eff.phi(i)),
                                      bend_translation(eff.theta(i),
                                                       layout.link_length));
    t = compose(t, link);
  }
  return t;
}

}  // namespace hrkin
