#include "hrkin/arm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hrkin/errors.hpp"

namespace hrkin {

int ArmLayout::functional_links() const {
  int n = 0;
  for (LinkMode m : modes) {
    if (m != LinkMode::Damaged) ++n;
  }
  return n;
}

void ArmLayout::validate() const {
  if (num_links < 1) {
    throw std::invalid_argument("ArmLayout: num_links must be >= 1");
  }
  if (!(link_length > 0.0) || !std::isfinite(link_length)) {
    throw std::invalid_argument("ArmLayout: link_length must be > 0");
  }
  if (static_cast<int>(modes.size()) != num_links) {
    throw MalformedLayout("ArmLayout: mode vector has " +
                          std::to_string(modes.size()) + " entries for " +
                          std::to_string(num_links) + " links");
  }
  bool in_sector = false;  // an open Head..Body run
  for (int link = 1; link <= num_links; ++link) {
    switch (mode(link)) {
      case LinkMode::Head:
        in_sector = true;
        break;
      case LinkMode::Body:
        if (!in_sector) {
          throw MalformedLayout("ArmLayout: link " + std::to_string(link) +
                                " is Body with no preceding Head");
        }
        break;
      case LinkMode::Damaged:
        in_sector = false;
        break;
    }
  }
  for (int link = 1; link <= num_links; ++link) {
    const bool damaged = mode(link) == LinkMode::Damaged;
    const bool has_frozen = frozen.count(link) > 0;
    if (damaged && !has_frozen) {
      throw MalformedLayout("ArmLayout: damaged link " + std::to_string(link) +
                            " has no frozen angles");
    }
    if (!damaged && has_frozen) {
      throw MalformedLayout("ArmLayout: frozen angles given for functional link " +
                            std::to_string(link));
    }
  }
  for (const auto& [link, angles] : frozen) {
    if (!std::isfinite(angles.phi) || !std::isfinite(angles.theta)) {
      throw std::invalid_argument("ArmLayout: frozen angles of link " +
                                  std::to_string(link) + " must be finite");
    }
  }
}

ArmLayout ArmLayout::all_head(int num_links, double link_length) {
  ArmLayout layout;
  layout.num_links = num_links;
  layout.link_length = link_length;
  layout.modes.assign(static_cast<size_t>(num_links), LinkMode::Head);
  layout.validate();
  return layout;
}

}  // namespace hrkin
