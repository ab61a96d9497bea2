#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fibrato/fincat.hpp"

namespace fibrato {

/// Permutation of {1..degree} in one-line notation (1-based).
class Perm {
public:
  Perm() = default;
  explicit Perm(std::size_t degree); // identity
  explicit Perm(std::vector<std::size_t> images);

  std::size_t degree() const { return images_.size(); }
  std::size_t operator[](std::size_t point) const; // 1-based
  bool is_identity() const;
  Perm inverse() const;

  /// Composition (a * b)(x) = a(b(x)): b acts first.
  friend Perm operator*(const Perm &a, const Perm &b);

  const std::vector<std::size_t> &images() const { return images_; }
  friend auto operator<=>(const Perm &, const Perm &) = default;

private:
  std::vector<std::size_t> images_;
};

struct GroupElement {
  std::string name;
  Perm perm;

  friend bool operator==(const GroupElement &, const GroupElement &) = default;
};

/// Concrete permutation group: generators plus the full element closure in a
/// deterministic order (breadth-first by word length, generators in declared
/// order). The identity is always element 0 and is named "e"; other elements
/// are named by their defining word, generator names joined with '*'.
struct PermGroup {
  std::size_t degree = 0;
  std::vector<std::pair<std::string, Perm>> generators;
  std::vector<GroupElement> elements;

  std::size_t order() const { return elements.size(); }
  const GroupElement &element(const std::string &name) const;
  bool contains(const Perm &p) const;
  const std::string &name_of(const Perm &p) const;
  /// mult(a, b) = name of the element a∘b (b applied first).
  std::string mult(const std::string &a, const std::string &b) const;
  std::string inverse_of(const std::string &a) const;
  bool contains_all(const PermGroup &other) const;

  friend bool operator==(const PermGroup &, const PermGroup &) = default;
};

ValidationReport check_group(const PermGroup &g);

enum class StandardGroupKind { Cyclic, Dihedral, Symmetric };

PermGroup standard_group(StandardGroupKind kind, std::size_t n);

constexpr std::size_t kDefaultClosureBudget = 10'000;

/// Process-wide closure budget, kDefaultClosureBudget unless reconfigured
/// (the CLI honours FIBRATO_BUDGET through this knob).
std::size_t configured_closure_budget();
void configure_closure_budget(std::size_t budget);

/// budget 0 means "use the configured default".
PermGroup close_generators(std::size_t degree,
                           std::vector<std::pair<std::string, Perm>> generators,
                           std::size_t budget = 0);

/// Permutation group plus an explicit action table on a labelled finite set.
struct GroupAction {
  PermGroup group;
  std::vector<std::string> carrier;
  std::map<std::pair<std::string, std::string>, std::string> table;

  const std::string &apply(const std::string &element,
                           const std::string &point) const;

  friend bool operator==(const GroupAction &, const GroupAction &) = default;
};

/// The same action stored arrow-wise: one bijection of the carrier per
/// group element.
struct RepTable {
  PermGroup group;
  std::vector<std::string> carrier;
  std::map<std::string, std::map<std::string, std::string>> phi;

  friend bool operator==(const RepTable &, const RepTable &) = default;
};

ValidationReport check_action(const GroupAction &a);
ValidationReport check_rep(const RepTable &r);

RepTable action_to_rep(const GroupAction &a);
GroupAction rep_to_action(const RepTable &r);

/// The tautological action of a permutation group on points "1".."degree".
GroupAction natural_action(const PermGroup &g);

GroupAction trivial_action(const PermGroup &g,
                           const std::vector<std::string> &carrier);

struct OrbitStabilizer {
  std::vector<std::string> orbit;
  PermGroup stabilizer; // of the first orbit point
};

std::vector<OrbitStabilizer> orbits_stabilizers(const GroupAction &a);

/// One-object category with hom-set the group elements.
FinCat group_as_category(const PermGroup &g);

PermGroup direct_product(const PermGroup &g, const PermGroup &h);

/// Imprimitive wreath product: `top` (on k points) permutes k blocks of size
/// n, a copy of `g` acts inside each block; block b occupies points
/// (b-1)*n+1 .. b*n. Order |g|^k * |top|.
PermGroup wreath_product(const PermGroup &g, const PermGroup &top,
                         std::size_t budget = 0);

/// True iff every element maps each block {(b-1)n+1..bn} onto some block.
bool preserves_blocks(const PermGroup &g, std::size_t block_size);

/// Subgroup-as-PermGroup from an element subset of `g` (must be closed).
PermGroup subgroup_from_elements(const PermGroup &g,
                                 const std::vector<std::string> &element_names);

} // namespace fibrato
