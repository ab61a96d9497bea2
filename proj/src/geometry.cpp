#include "fibrato/geometry.hpp"

#include <algorithm>
#include <set>

#include "fibrato/errors.hpp"

namespace fibrato {

ValidationReport check_klein_pair(const KleinPair &k) {
  ValidationReport report;
  if (k.h.degree != k.g.degree) {
    report.add("subgroup-degree", {});
    return report;
  }
  for (const auto &e : k.h.elements) {
    if (!k.g.contains(e.perm))
      report.add("subgroup-subset", {e.name});
  }
  bool has_id = false;
  for (const auto &e : k.h.elements) {
    if (e.perm.is_identity())
      has_id = true;
    if (!k.h.contains(e.perm.inverse()))
      report.add("subgroup-inverse", {e.name});
  }
  if (!has_id)
    report.add("subgroup-identity", {});
  for (const auto &a : k.h.elements)
    for (const auto &b : k.h.elements)
      if (!k.h.contains(a.perm * b.perm))
        report.add("subgroup-closed", {a.name, b.name});
  return report;
}

namespace {

void require_klein(const KleinPair &k) {
  auto report = check_klein_pair(k);
  if (!report.ok)
    throw Error("NotASubgroup", report.summary());
}

/// Left cosets of H in G; each coset is named after its first element in
/// G's element order.
struct Cosets {
  std::vector<std::string> labels;
  std::map<std::string, std::string> coset_of; // element -> label
};

Cosets left_cosets(const KleinPair &k) {
  Cosets out;
  std::set<std::string> assigned;
  for (const auto &rep : k.g.elements) {
    if (assigned.count(rep.name))
      continue;
    std::string label = rep.name + "H";
    out.labels.push_back(label);
    for (const auto &h : k.h.elements) {
      const std::string member = k.g.name_of(rep.perm * h.perm);
      out.coset_of[member] = label;
      assigned.insert(member);
    }
  }
  return out;
}

} // namespace

CosetSpace klein_space(const KleinPair &k) {
  require_klein(k);
  Cosets cosets = left_cosets(k);
  GroupAction action;
  action.group = k.g;
  action.carrier = cosets.labels;
  for (const auto &g : k.g.elements) {
    for (const auto &x : k.g.elements) {
      // g · (xH) = (gx)H; every coset is already keyed by all its members.
      action.table[{g.name, cosets.coset_of.at(x.name)}] =
          cosets.coset_of.at(k.g.mult(g.name, x.name));
    }
  }
  CosetSpace space;
  space.points = cosets.labels;
  space.basepoints = {cosets.coset_of.at("e")};
  space.action = std::move(action);
  return space;
}

KleinReport check_klein(const KleinPair &k, IsoBudget budget) {
  require_klein(k);
  CosetSpace space = klein_space(k);
  const GroupAction &action = std::get<GroupAction>(space.action);
  const std::string basepoint = space.basepoints.at(0);

  KleinReport report;
  report.h_order = k.h.order();

  FinCat xg = transformation_groupoid(action);
  report.groupoid_counts = {xg.objects.size(), xg.morphisms.size()};
  report.components_of_x_mod_g = connected_components(xg).size();
  report.transitive = report.components_of_x_mod_g == 1;

  // Vertex group at eH: loops (g, eH); compare with H element-wise.
  std::set<std::string> loop_elements;
  for (const auto &g : k.g.elements) {
    if (action.apply(g.name, basepoint) == basepoint)
      loop_elements.insert(g.name);
  }
  report.vertex_group_order_at_basepoint = loop_elements.size();
  std::set<std::string> h_names;
  for (const auto &e : k.h.elements)
    h_names.insert(k.g.name_of(e.perm));
  report.vertex_group_matches_h = loop_elements == h_names;

  // H acting on G/H by left multiplication, completed concrete-left.
  SetValuedAction restricted;
  restricted.base = group_as_category(k.h);
  restricted.fiber["*"] = space.points;
  for (const auto &h : k.h.elements) {
    std::map<std::string, std::string> f;
    const std::string in_g = k.g.name_of(h.perm);
    for (const auto &p : space.points)
      f[p] = action.apply(in_g, p);
    restricted.act[h.name] = std::move(f);
  }
  FibredCategory completion =
      grothendieck_complete(restricted, CompletionVariant::ConcreteLeft);
  report.completion_counts = {completion.total.objects.size(),
                              completion.total.morphisms.size()};
  report.completion_components = connected_components(completion.total).size();

  report.iso_probe.left_counts = report.completion_counts;
  report.iso_probe.right_counts = report.groupoid_counts;
  std::optional<FinFunctor> seed;
  if (completion.total.objects.size() == xg.objects.size() &&
      completion.total.morphisms.size() == xg.morphisms.size()) {
    // Seed with the relabeling (*,x) -> x where the names allow it.
    FinFunctor s;
    s.dom = completion.total;
    s.cod = xg;
    bool plausible = true;
    for (const auto &p : space.points) {
      if (!completion.total.has_object("(*," + p + ")"))
        plausible = false;
      s.object_map["(*," + p + ")"] = p;
    }
    for (const auto &m : completion.total.morphisms)
      if (xg.morphism(m.name) != nullptr)
        s.morphism_map[m.name] = m.name;
    if (plausible)
      seed = std::move(s);
    auto witness = find_isomorphism(completion.total, xg, budget, seed);
    report.iso_probe.isomorphic = witness.has_value();
    report.iso_probe.witness = witness;
  } else {
    report.iso_probe.isomorphic = false;
  }
  return report;
}

ValidationReport check_wide_subgroupoid(const GroupoidGeometry &gg) {
  ValidationReport report;
  if (!is_groupoid(gg.g))
    throw Error("NotAGroupoid", "principal category is not a groupoid");
  if (gg.b.objects != gg.g.objects)
    report.add("wide-objects", {});
  std::set<std::string> sub;
  for (const auto &m : gg.b.morphisms) {
    const MorphismDecl *orig = gg.g.morphism(m.name);
    if (orig == nullptr || orig->src != m.src || orig->tgt != m.tgt) {
      report.add("subgroupoid-member", {m.name});
      continue;
    }
    sub.insert(m.name);
  }
  for (const auto &[x, id] : gg.g.identity) {
    if (sub.count(id) == 0)
      report.add("subgroupoid-identities", {x, id});
  }
  for (const auto &name : sub) {
    auto inv = gg.g.inverse(name);
    if (!inv || sub.count(*inv) == 0)
      report.add("subgroupoid-inverse", {name});
  }
  for (const auto &gname : sub) {
    for (const auto &fname : sub) {
      auto gf = gg.g.composed(gname, fname);
      if (gf && sub.count(*gf) == 0)
        report.add("subgroupoid-closed", {gname, fname});
    }
  }
  // The subgroupoid must also be a well-formed category on its own.
  if (report.ok) {
    auto own = check_category(gg.b);
    for (const auto &v : own.violations)
      report.add("subgroupoid-" + v.law, v.witness);
  }
  return report;
}

namespace {

void require_wide(const GroupoidGeometry &gg) {
  auto report = check_wide_subgroupoid(gg);
  if (!report.ok)
    throw Error("NotWideSubgroupoid", report.summary());
}

} // namespace

CosetSpace groupoid_coset_space(const GroupoidGeometry &gg) {
  require_wide(gg);
  std::set<std::string> sub;
  for (const auto &m : gg.b.morphisms)
    sub.insert(m.name);

  // Star cosets [g] = {g∘b : b in B, tgt b = src g}; the label carries the
  // first member in declaration order.
  std::map<std::string, std::string> class_of;
  std::vector<std::string> labels;
  for (const auto &g : gg.g.morphisms) {
    if (class_of.count(g.name))
      continue;
    std::string label = "[" + g.name + "]";
    labels.push_back(label);
    for (const auto &b : gg.b.morphisms) {
      if (b.tgt != g.src)
        continue;
      class_of[*gg.g.composed(g.name, b.name)] = label;
    }
    class_of[g.name] = label;
  }

  GroupoidActionTable table;
  table.groupoid = gg.g;
  std::map<std::string, std::string> tgt_of_label;
  for (const auto &g : gg.g.morphisms)
    tgt_of_label[class_of.at(g.name)] = g.tgt;
  for (const auto &g : gg.g.morphisms) {
    for (const auto &h : gg.g.morphisms) {
      if (h.src != g.tgt)
        continue;
      table.table[{h.name, class_of.at(g.name)}] =
          class_of.at(*gg.g.composed(h.name, g.name));
    }
  }

  CosetSpace space;
  space.points = labels;
  for (const auto &[x, id] : gg.g.identity)
    space.basepoints.push_back(class_of.at(id));
  std::sort(space.basepoints.begin(), space.basepoints.end());
  space.basepoints.erase(
      std::unique(space.basepoints.begin(), space.basepoints.end()),
      space.basepoints.end());
  space.action = std::move(table);
  return space;
}

GroupoidGeometryReport check_groupoid_geometry(const GroupoidGeometry &gg) {
  GroupoidGeometryReport report;
  report.validation = check_wide_subgroupoid(gg);
  if (!report.validation.ok)
    return report;

  CosetSpace space = groupoid_coset_space(gg);
  const auto &table = std::get<GroupoidActionTable>(space.action);
  report.coset_points = space.points.size();
  report.basepoints = space.basepoints.size();

  // Rebuild the class map the same deterministic way as the space itself.
  std::map<std::string, std::string> class_of;
  std::map<std::string, std::string> target_of;
  for (const auto &g : gg.g.morphisms) {
    if (class_of.count(g.name))
      continue;
    std::string label = "[" + g.name + "]";
    target_of[label] = g.tgt;
    for (const auto &b : gg.b.morphisms) {
      if (b.tgt != g.src)
        continue;
      class_of[*gg.g.composed(g.name, b.name)] = label;
    }
    class_of[g.name] = label;
  }

  // The space splits into one coproduct block per component of g.
  auto components = connected_components(gg.g);
  std::map<std::string, std::size_t> component_of_object;
  for (std::size_t i = 0; i < components.size(); ++i)
    for (const auto &o : components[i])
      component_of_object[o] = i;
  report.component_sizes.assign(components.size(), 0);
  for (const auto &label : space.points)
    ++report.component_sizes[component_of_object.at(target_of.at(label))];

  // Stabilizer of each identity class must be exactly the vertex group of
  // the wide subgroupoid at that object.
  report.stabilizers_match_vertex_groups = true;
  for (const auto &[x, id] : gg.g.identity) {
    const std::string identity_class = class_of.at(id);
    std::set<std::string> stabilizer;
    for (const auto &h : gg.g.morphisms) {
      if (h.src != x)
        continue;
      if (class_of.at(*gg.g.composed(h.name, id)) == identity_class)
        stabilizer.insert(h.name);
    }
    std::set<std::string> vertex;
    for (const auto &b : gg.b.morphisms) {
      if (b.src == x && b.tgt == x)
        vertex.insert(b.name);
    }
    if (stabilizer != vertex)
      report.stabilizers_match_vertex_groups = false;
  }

  // Concrete-left completion of B acting on the space: the fiber over an
  // object collects the classes targeting it.
  SetValuedAction act;
  act.base = gg.b;
  for (const auto &x : gg.b.objects)
    act.fiber[x] = {};
  for (const auto &label : space.points)
    act.fiber[target_of.at(label)].push_back(label);
  for (const auto &b : gg.b.morphisms) {
    std::map<std::string, std::string> f;
    for (const auto &label : act.fiber.at(b.src))
      f[label] = table.table.at({b.name, label});
    act.act[b.name] = std::move(f);
  }
  FibredCategory completion =
      grothendieck_complete(act, CompletionVariant::ConcreteLeft);
  report.completion_counts = {completion.total.objects.size(),
                              completion.total.morphisms.size()};
  return report;
}

} // namespace fibrato
