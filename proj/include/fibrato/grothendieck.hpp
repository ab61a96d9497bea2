#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fibrato/algebra.hpp"
#include "fibrato/fincat.hpp"

namespace fibrato {

/// The four completion variants. Abstract variants pair each base object
/// with its whole fiber category; concrete variants pair base objects with
/// individual fiber elements. Right variants take a contravariant action,
/// supplied as a covariant action on the opposite of the intended base; the
/// returned base is the opposite of the action's base.
enum class CompletionVariant {
  AbstractLeft,
  AbstractRight,
  ConcreteLeft,
  ConcreteRight
};

bool is_left_variant(CompletionVariant v);
std::string variant_name(CompletionVariant v);

/// Split (op)fibration with a chosen cleavage. The cleavage is keyed by
/// (base morphism, total object); the object sits over the morphism's source
/// for left variants and over its target for right variants.
struct FibredCategory {
  FinCat total;
  FinCat base;
  FinFunctor projection;
  std::map<std::pair<std::string, std::string>, std::string> cleavage;
  CompletionVariant variant = CompletionVariant::ConcreteLeft;
};

struct IsoReport {
  bool isomorphic = false;
  std::optional<std::pair<FinFunctor, FinFunctor>> witness;
  std::pair<std::size_t, std::size_t> left_counts{0, 0};  // (objects, morphisms)
  std::pair<std::size_t, std::size_t> right_counts{0, 0};
};

/// Groupoid X//G: objects the carrier points, morphisms the pairs (g,x)
/// from x to g·x, composed by (g',g·x)∘(g,x) = (g'g,x).
FinCat transformation_groupoid(const GroupAction &a);

FibredCategory grothendieck_complete(const SetValuedAction &action,
                                     CompletionVariant variant);
FibredCategory grothendieck_complete(const CatValuedAction &action,
                                     CompletionVariant variant);

/// (base morphism, source fiber object, fiber morphism) -> total morphism.
using TotalNameIndex =
    std::map<std::tuple<std::string, std::string, std::string>, std::string>;

/// Classic construction for a Cat-valued action: objects (I,e) with e an
/// object of the fiber over I, morphisms (m,k) with k: act(m)(e) -> e'.
/// This is the engine behind multi-level totals; the completion variants
/// above treat fibers as single objects instead. `names`, when given, is
/// filled with the morphism naming index.
FibredCategory grothendieck_total(const CatValuedAction &action,
                                  TotalNameIndex *names = nullptr);

/// Universal-property test, decided by full enumeration: m is cartesian iff
/// for every total g into tgt(m) and every base factorization
/// proj(g) = proj(m)∘w there is exactly one h over w with m∘h = g.
bool is_cartesian(const FinCat &total, const FinCat &base,
                  const FinFunctor &projection, const std::string &m);
bool is_cartesian(const FibredCategory &fc, const std::string &m);

/// Dual test: for every total g out of src(m) and every factorization
/// proj(g) = w∘proj(m) there is exactly one h over w with h∘m = g.
bool is_opcartesian(const FinCat &total, const FinCat &base,
                    const FinFunctor &projection, const std::string &m);

/// Verifies the split-fibration structure of a completion: every base
/// morphism has a chosen lift at every fiber object and that lift has the
/// universal property (cartesian for right variants, opcartesian for left),
/// the cleavage is strict on identities and composites, and the fibers are
/// disjoint subcategories.
ValidationReport check_split_fibration(const FibredCategory &fc);

/// check_category + check_functor + check_split_fibration in one report.
ValidationReport check_fibred_category(const FibredCategory &fc);

/// Preimage subcategory over one base object (morphisms over its identity).
FinCat fiber_category(const FinCat &total, const FinFunctor &projection,
                      const std::string &base_object);

/// Builds X//G and the right-variant completion of the induced set-valued
/// action on the one-object base, then probes them with find_isomorphism
/// seeded by the relabeling (*,x) -> x.
IsoReport check_transformation_equals_completion(const GroupAction &a,
                                                 IsoBudget budget = {});

} // namespace fibrato
