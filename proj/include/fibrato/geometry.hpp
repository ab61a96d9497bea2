#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fibrato/algebra.hpp"
#include "fibrato/fincat.hpp"
#include "fibrato/grothendieck.hpp"

namespace fibrato {

/// Group with a distinguished subgroup, both concrete permutation groups on
/// the same points; H's elements must form a subset of G's closed under
/// multiplication and inverse.
struct KleinPair {
  PermGroup g;
  PermGroup h;

  friend bool operator==(const KleinPair &, const KleinPair &) = default;
};

/// Partial action of a groupoid on coset points: morphisms act by
/// postcomposition where composable.
struct GroupoidActionTable {
  FinCat groupoid;
  std::map<std::pair<std::string, std::string>, std::string> table;
};

/// Space of a finite geometry: coset labels with the acting structure and
/// the distinguished basepoints.
struct CosetSpace {
  std::vector<std::string> points;
  std::variant<GroupAction, GroupoidActionTable> action;
  std::vector<std::string> basepoints;
};

/// Groupoid with a wide subgroupoid: same objects, a subset of morphisms
/// closed under composition, inverses and identities.
struct GroupoidGeometry {
  FinCat g;
  FinCat b;

  friend bool operator==(const GroupoidGeometry &, const GroupoidGeometry &) =
      default;
};

struct KleinReport {
  bool transitive = false;
  std::size_t components_of_x_mod_g = 0;
  std::size_t vertex_group_order_at_basepoint = 0;
  std::size_t h_order = 0;
  std::pair<std::size_t, std::size_t> completion_counts{0, 0}; // H-side
  std::pair<std::size_t, std::size_t> groupoid_counts{0, 0};   // X//G side
  std::size_t completion_components = 0;
  bool vertex_group_matches_h = false;
  IsoReport iso_probe;
};

/// Row data accompanying a verified groupoid geometry.
struct GroupoidGeometryReport {
  ValidationReport validation;
  std::size_t coset_points = 0;
  std::size_t basepoints = 0;
  std::vector<std::size_t> component_sizes; // coproduct blocks of the space
  bool stabilizers_match_vertex_groups = false;
  std::pair<std::size_t, std::size_t> completion_counts{0, 0};
};

ValidationReport check_klein_pair(const KleinPair &k);

/// Left cosets gH with the left G-action; the representative of each coset
/// is its first element in the group's word order, the basepoint is eH.
CosetSpace klein_space(const KleinPair &k);

/// Builds X//G and the concrete-left completion of H acting on X = G/H by
/// left multiplication, compares the vertex group at eH with H element-wise,
/// and probes the two constructions for isomorphism. Reports; asserts
/// nothing beyond the constructions themselves.
KleinReport check_klein(const KleinPair &k, IsoBudget budget = {});

ValidationReport check_wide_subgroupoid(const GroupoidGeometry &gg);

/// Star cosets: classes of morphisms of g under g ~ g∘b for b in the wide
/// subgroupoid, acted on by postcomposition; basepoints are the identity
/// classes.
CosetSpace groupoid_coset_space(const GroupoidGeometry &gg);

GroupoidGeometryReport check_groupoid_geometry(const GroupoidGeometry &gg);

} // namespace fibrato
