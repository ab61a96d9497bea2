#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fibrato/algebra.hpp"
#include "fibrato/fincat.hpp"
#include "fibrato/grothendieck.hpp"
#include "fibrato/hierarchy.hpp"

namespace fibrato::test {

/// splitmix64: platform-stable deterministic stream for property tests.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }
};

inline PermGroup c3() {
  return standard_group(StandardGroupKind::Cyclic, 3);
}

inline PermGroup d3() {
  return standard_group(StandardGroupKind::Dihedral, 3);
}

inline PermGroup z2() {
  return standard_group(StandardGroupKind::Cyclic, 2);
}

inline GroupAction rotation_action(const PermGroup &g) {
  return natural_action(g);
}

/// Two objects, one non-invertible arrow between them.
inline FinCat free_arrow() {
  FinCat c;
  c.objects = {"A", "B"};
  c.morphisms = {{"id_A", "A", "A"}, {"id_B", "B", "B"}, {"f", "A", "B"}};
  c.identity = {{"A", "id_A"}, {"B", "id_B"}};
  c.compose[{"id_A", "id_A"}] = "id_A";
  c.compose[{"id_B", "id_B"}] = "id_B";
  c.compose[{"f", "id_A"}] = "f";
  c.compose[{"id_B", "f"}] = "f";
  return c;
}

/// One object with a single non-identity idempotent loop.
inline FinCat walking_idempotent() {
  FinCat c;
  c.objects = {"A"};
  c.morphisms = {{"id_A", "A", "A"}, {"p", "A", "A"}};
  c.identity = {{"A", "id_A"}};
  c.compose[{"id_A", "id_A"}] = "id_A";
  c.compose[{"id_A", "p"}] = "p";
  c.compose[{"p", "id_A"}] = "p";
  c.compose[{"p", "p"}] = "p";
  return c;
}

/// Total order c1 < c2 < ... < cn as a category (unique arrows downstream).
inline FinCat chain_category(std::size_t n) {
  FinCat c;
  auto obj = [](std::size_t i) { return "c" + std::to_string(i); };
  auto mor = [&](std::size_t i, std::size_t j) {
    if (i == j)
      return "id_" + obj(i);
    return "le_" + std::to_string(i) + "_" + std::to_string(j);
  };
  for (std::size_t i = 1; i <= n; ++i) {
    c.objects.push_back(obj(i));
    c.identity[obj(i)] = mor(i, i);
  }
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      c.morphisms.push_back({mor(i, j), obj(i), obj(j)});
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      for (std::size_t k = j; k <= n; ++k)
        c.compose[{mor(j, k), mor(i, j)}] = mor(i, k);
  return c;
}

/// Functor mapping the i-th object/morphism of `from` to the i-th of `to`;
/// only meaningful when the two presentations are built identically.
inline FinFunctor positional_functor(const FinCat &from, const FinCat &to) {
  FinFunctor f;
  f.dom = from;
  f.cod = to;
  for (std::size_t i = 0; i < from.objects.size(); ++i)
    f.object_map[from.objects[i]] = to.objects[i];
  for (std::size_t i = 0; i < from.morphisms.size(); ++i)
    f.morphism_map[from.morphisms[i].name] = to.morphisms[i].name;
  return f;
}

/// The two-level groupoid fixture: codiscrete outer base on o1, o2; inner
/// codiscrete-3 bases with singleton fibers x1..x3 and x4..x6; the outer
/// morphisms translate block a onto block b positionally.
inline HierarchySpec groupoid_hierarchy_spec() {
  HierarchySpec spec;
  FinCat outer = codiscrete_groupoid(2);
  spec.outer_base = relabel_objects(outer, {{"s1", "o1"}, {"s2", "o2"}});

  FinCat inner_a = codiscrete_groupoid(3);
  FinCat inner_b =
      relabel_objects(inner_a, {{"s1", "s4"}, {"s2", "s5"}, {"s3", "s6"}});

  SetValuedAction act_a;
  act_a.base = inner_a;
  for (std::size_t i = 1; i <= 3; ++i)
    act_a.fiber["s" + std::to_string(i)] = {"x" + std::to_string(i)};
  for (const auto &m : inner_a.morphisms) {
    std::string src_x = "x" + m.src.substr(1);
    std::string tgt_x = "x" + m.tgt.substr(1);
    act_a.act[m.name] = {{src_x, tgt_x}};
  }

  SetValuedAction act_b;
  act_b.base = inner_b;
  for (std::size_t i = 4; i <= 6; ++i)
    act_b.fiber["s" + std::to_string(i)] = {"x" + std::to_string(i)};
  for (const auto &m : inner_b.morphisms) {
    std::string src_x = "x" + m.src.substr(1);
    std::string tgt_x = "x" + m.tgt.substr(1);
    act_b.act[m.name] = {{src_x, tgt_x}};
  }

  spec.inner["o1"] = act_a;
  spec.inner["o2"] = act_b;

  FinCat ea = inner_completion(act_a);
  FinCat eb = inner_completion(act_b);
  spec.outer_act["id_s1"] = identity_functor(ea);
  spec.outer_act["id_s2"] = identity_functor(eb);
  spec.outer_act["t_1_2"] = positional_functor(ea, eb);
  spec.outer_act["t_2_1"] = positional_functor(eb, ea);
  return spec;
}

/// The two-level group fixture: Z2 over C3 x C3, the whole six-point set
/// treated as one opaque fiber object; the outer generator swaps the two
/// direct factors.
inline HierarchySpec group_hierarchy_spec() {
  HierarchySpec spec;
  PermGroup dp = direct_product(c3(), c3());
  spec.outer_base = group_as_category(z2());

  SetValuedAction inner;
  inner.base = group_as_category(dp);
  inner.fiber["*"] = {"Y"};
  for (const auto &e : dp.elements)
    inner.act[e.name] = {{"Y", "Y"}};
  spec.inner["*"] = inner;

  // Element (a,b) of the product sits at index |H|*i + j; its swap (b,a)
  // sits at |H|*j + i. The identity occupies index 0 either way.
  PermGroup base = c3();
  std::size_t n = base.order();
  std::map<std::string, std::string> swap_name;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      swap_name[dp.elements[n * i + j].name] = dp.elements[n * j + i].name;

  FinCat e = inner_completion(inner);
  FinFunctor swap;
  swap.dom = e;
  swap.cod = e;
  swap.object_map[e.objects[0]] = e.objects[0];
  for (const auto &g : dp.elements)
    swap.morphism_map["(" + g.name + ",Y)"] = "(" + swap_name.at(g.name) + ",Y)";
  spec.outer_act["e"] = identity_functor(e);
  spec.outer_act["r"] = swap;
  return spec;
}

/// Random valid Set-valued action drawn from constructions that are
/// functorial by design; bases stay within 4 objects / 12 morphisms and
/// cover groupoid and non-groupoid shapes as well as non-injective fiber
/// maps.
SetValuedAction random_set_valued_action(Rng &rng);

/// Random group action assembled from coset actions of random cyclic
/// subgroups (every finite G-set is a disjoint union of such orbits).
GroupAction random_group_action(Rng &rng, std::size_t max_degree = 6,
                                std::size_t max_order = 24);

} // namespace fibrato::test
