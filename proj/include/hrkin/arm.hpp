#ifndef HRKIN__ARM_HPP_
#define HRKIN__ARM_HPP_

#include <map>
#include <vector>

namespace hrkin {

// Role of one link.  The integer values match the layout vector encoding
// used in config files (-1 damaged, 0 body, 1 head).
enum class LinkMode : int { Damaged = -1, Body = 0, Head = 1 };

// Joint values a damaged link is locked at.
struct FrozenAngles {
  double phi = 0.0;
  double theta = 0.0;
};

// Physical arm description: link count, link length, per-link mode vector and
// the frozen angles of every damaged link.  Link indices are 1-based
// throughout the public API.
struct ArmLayout {
  int num_links = 0;
  double link_length = 1.0;
  std::vector<LinkMode> modes;         // modes[i-1] is the mode of link i
  std::map<int, FrozenAngles> frozen;  // keyed by 1-based damaged link index

  LinkMode mode(int link) const { return modes[link - 1]; }
  int functional_links() const;

  // Throws MalformedLayout / std::invalid_argument when the structural rules
  // are violated: the first link must be Head or Damaged, a Body link must be
  // preceded (through Body links) by a Head, and the frozen table must cover
  // exactly the damaged links.
  void validate() const;

  static ArmLayout all_head(int num_links, double link_length);
};

// Full (elementary) configuration: q = [phi_1, theta_1, ..., phi_N, theta_N].
// Entries for damaged links are placeholders; forward kinematics substitutes
// the frozen angles.
struct FullConfiguration {
  std::vector<double> v;

  int size() const { return static_cast<int>(v.size()); }
  double phi(int link) const { return v[2 * (link - 1)]; }
  double theta(int link) const { return v[2 * (link - 1) + 1]; }
  double& phi(int link) { return v[2 * (link - 1)]; }
  double& theta(int link) { return v[2 * (link - 1) + 1]; }

  static FullConfiguration zeros(int num_links) {
    return {std::vector<double>(2 * static_cast<size_t>(num_links), 0.0)};
  }
};

// Reduced configuration Q: per sector [phi_head, theta_head] plus one shared
// theta_body when the sector has body links.  The variable order is defined
// by SectorDecomposition.
struct ReducedConfiguration {
  std::vector<double> v;

  int size() const { return static_cast<int>(v.size()); }
};

}  // namespace hrkin

#endif  // HRKIN__ARM_HPP_
