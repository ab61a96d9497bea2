#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fibrato/algebra.hpp"
#include "fibrato/fincat.hpp"
#include "fibrato/grothendieck.hpp"

namespace fibrato {

/// Two-level completion data: an outer base, one inner Set-valued action per
/// outer object (each carrying its own inner base), and a functor between
/// the corresponding inner completions per outer morphism.
struct HierarchySpec {
  FinCat outer_base;
  std::map<std::string, SetValuedAction> inner;
  std::map<std::string, FinFunctor> outer_act;

  friend bool operator==(const HierarchySpec &, const HierarchySpec &) =
      default;
};

/// All three legs of the two-level construction. `outer.projection` is the
/// composite q∘p; `inner` is the one-level completion over the coproduct of
/// the inner bases; `base_fibration` is the total of the descended
/// base-level action, sitting between them.
struct Hierarchy {
  FibredCategory outer;          // total over the outer base
  FibredCategory inner;          // coproduct completion over the inner bases
  FibredCategory base_fibration; // inner bases fibred over the outer base
  FinFunctor p;                  // outer.total -> base_fibration.total
  FinFunctor q;                  // base_fibration.total -> outer base
  FinFunctor inclusion;          // inner.total -> outer.total
  FinFunctor inner_base_projection; // coproduct inner base -> outer base
};

struct PresentationStats {
  std::size_t objects = 0;
  std::size_t morphisms = 0;
  std::size_t composable_pairs = 0;

  friend bool operator==(const PresentationStats &,
                         const PresentationStats &) = default;
};

struct ComparisonReport {
  PresentationStats group_model;
  PresentationStats groupoid_model;
  std::vector<std::string> notes;
};

/// Concrete-left completion of one inner action, as the outer functors must
/// see it when a HierarchySpec is assembled.
FinCat inner_completion(const SetValuedAction &action);

Hierarchy build_hierarchy(const HierarchySpec &spec);

/// The three clauses of the composite-fibration law for p then q:
/// (a) the composite has a cartesian lift for every base morphism at every
/// fiber object, (b) a total morphism is composite-cartesian exactly when it
/// is p-cartesian with q-cartesian image, (c) restricting p to the fibers
/// over each outermost object again gives a fibration. All decided by brute
/// force.
ValidationReport check_composite_fibration(const FinFunctor &p,
                                           const FinFunctor &q);

PresentationStats presentation_stats(const FinCat &c);

/// Builds the single-object wreath model and the groupoid-hierarchy model of
/// the same block-structured symmetry and reports both presentations.
ComparisonReport compare_models(const std::vector<std::vector<std::string>> &blocks,
                                const PermGroup &inner_sym,
                                const PermGroup &outer_sym);

enum class BaseClass { Singleton, Discrete, OneObjectManyArrows, General };
enum class CodomainKind { Set, Cat };

struct BaseClassification {
  BaseClass cls;
  std::string induced_label;
};

/// Object/arrow census of a base together with the structure it induces on
/// the acted object, for Set- or Cat-valued codomains.
BaseClassification classify_base(const FinCat &b, CodomainKind kind);

std::string base_class_name(BaseClass c);

} // namespace fibrato
