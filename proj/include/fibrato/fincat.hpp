#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fibrato {

/// One arrow of an explicit finite category presentation.
struct MorphismDecl {
  std::string name;
  std::string src;
  std::string tgt;

  friend bool operator==(const MorphismDecl &, const MorphismDecl &) = default;
};

/// Explicit finite category: ordered object and morphism lists, an identity
/// assignment per object, and a composition table defined exactly on the
/// composable pairs (tgt f = src g). The table stores `compose[{g,f}] = g∘f`
/// including identity compositions; values are immutable once built.
struct FinCat {
  std::vector<std::string> objects;
  std::vector<MorphismDecl> morphisms;
  std::map<std::string, std::string> identity;
  std::map<std::pair<std::string, std::string>, std::string> compose;

  bool has_object(const std::string &name) const;
  const MorphismDecl *morphism(const std::string &name) const;
  std::optional<std::string> composed(const std::string &g,
                                      const std::string &f) const;
  bool is_identity(const std::string &morphism_name) const;
  /// Morphism names from X to Y, in declaration order.
  std::vector<std::string> hom(const std::string &x, const std::string &y) const;
  /// Two-sided inverse of a morphism, if one exists.
  std::optional<std::string> inverse(const std::string &morphism_name) const;

  friend bool operator==(const FinCat &, const FinCat &) = default;
};

struct Violation {
  std::string law;
  std::vector<std::string> witness;

  friend bool operator==(const Violation &, const Violation &) = default;
};

/// Outcome of an exhaustive law check; `ok` iff `violations` is empty.
struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string law, std::vector<std::string> witness);
  std::string summary() const;
};

/// Map between finite category presentations, stored with its endpoints.
struct FinFunctor {
  FinCat dom;
  FinCat cod;
  std::map<std::string, std::string> object_map;
  std::map<std::string, std::string> morphism_map;

  std::string on_object(const std::string &name) const;
  std::string on_morphism(const std::string &name) const;

  friend bool operator==(const FinFunctor &, const FinFunctor &) = default;
};

/// Strict Cat-valued action: a fiber category per base object and a functor
/// per base morphism, functorial on the nose.
struct CatValuedAction {
  FinCat base;
  std::map<std::string, FinCat> fiber;
  std::map<std::string, FinFunctor> act;

  friend bool operator==(const CatValuedAction &, const CatValuedAction &) =
      default;
};

/// Strict Set-valued action: a fiber set per base object and a function per
/// base morphism (stored pointwise).
struct SetValuedAction {
  FinCat base;
  std::map<std::string, std::vector<std::string>> fiber;
  std::map<std::string, std::map<std::string, std::string>> act;

  friend bool operator==(const SetValuedAction &, const SetValuedAction &) =
      default;
};

ValidationReport check_category(const FinCat &c);
ValidationReport check_functor(const FinFunctor &f);
ValidationReport check_cat_valued_action(const CatValuedAction &a);
ValidationReport check_set_valued_action(const SetValuedAction &a);

FinCat discrete_category(const std::vector<std::string> &elements);

/// Groupoid with objects s1..sn and exactly one morphism per ordered pair;
/// the non-identity morphism si -> sj is named t_i_j.
FinCat codiscrete_groupoid(std::size_t n);

FinCat opposite(const FinCat &c);
FinCat product(const FinCat &c, const FinCat &d);
FinCat coproduct(const FinCat &c, const FinCat &d);

bool is_groupoid(const FinCat &c);
std::vector<std::vector<std::string>> connected_components(const FinCat &c);

struct IsoBudget {
  std::size_t max_nodes = 2'000'000;
};

/// Exhaustive isomorphism search: object bijections filtered by degree
/// profiles, then hom-set bijections with composition pruning. Returns a
/// mutually inverse functor pair, or nullopt when none exists. A `seed`
/// candidate, when given, is verified before any search. Throws
/// Error("BudgetExceeded") when the node limit runs out, which is distinct
/// from a definite "no isomorphism".
std::optional<std::pair<FinFunctor, FinFunctor>>
find_isomorphism(const FinCat &c, const FinCat &d, IsoBudget budget = {},
                 const std::optional<FinFunctor> &seed = std::nullopt);

/// Category of pairs (X, FX) / (f, Ff); isomorphic to dom(F) by projection.
FinCat functor_graph_category(const FinFunctor &f);

/// One-object category on C(X,X); requires C to be a groupoid.
FinCat vertex_group(const FinCat &c, const std::string &object);

FinFunctor identity_functor(const FinCat &c);
FinFunctor compose_functors(const FinFunctor &g, const FinFunctor &f);

/// Rebuilds a presentation with objects renamed; morphism names are kept.
FinCat relabel_objects(const FinCat &c,
                       const std::map<std::string, std::string> &renaming);

/// Lifts a Set-valued action along the inclusion of sets into categories:
/// fibers become discrete categories, functions become functors.
CatValuedAction cat_valued_from_set(const SetValuedAction &a);

} // namespace fibrato
