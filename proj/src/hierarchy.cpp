#include "fibrato/hierarchy.hpp"

#include <algorithm>
#include <set>

#include "fibrato/errors.hpp"

namespace fibrato {

namespace {

std::string pair_name(const std::string &a, const std::string &b) {
  return "(" + a + "," + b + ")";
}

Error tagged(const char *level, const Error &e) {
  return Error(e.kind(), std::string(level) + " level: " + e.what());
}

} // namespace

FinCat inner_completion(const SetValuedAction &action) {
  return grothendieck_complete(action, CompletionVariant::ConcreteLeft).total;
}

Hierarchy build_hierarchy(const HierarchySpec &spec) {
  auto base_report = check_category(spec.outer_base);
  if (!base_report.ok)
    throw Error("ValidationError", "outer base: " + base_report.summary());

  std::map<std::string, FibredCategory> inner_fcs;
  for (const auto &i : spec.outer_base.objects) {
    auto it = spec.inner.find(i);
    if (it == spec.inner.end())
      throw Error("IncompleteTable", "no inner action for outer object " + i);
    try {
      inner_fcs[i] =
          grothendieck_complete(it->second, CompletionVariant::ConcreteLeft);
    } catch (const Error &e) {
      throw tagged("inner", e);
    }
  }

  CatValuedAction outer_action;
  outer_action.base = spec.outer_base;
  for (const auto &i : spec.outer_base.objects)
    outer_action.fiber[i] = inner_fcs.at(i).total;
  for (const auto &m : spec.outer_base.morphisms) {
    auto it = spec.outer_act.find(m.name);
    if (it == spec.outer_act.end())
      throw Error("IncompleteTable", "no outer action for morphism " + m.name);
    FinFunctor f = it->second;
    f.dom = inner_fcs.at(m.src).total;
    f.cod = inner_fcs.at(m.tgt).total;
    outer_action.act[m.name] = std::move(f);
  }

  Hierarchy h;
  TotalNameIndex outer_names;
  try {
    h.outer = grothendieck_total(outer_action, &outer_names);
  } catch (const Error &e) {
    throw tagged("outer", e);
  }

  // One-level completion over the coproduct of the inner bases; blocks are
  // tagged with their outer object.
  SetValuedAction coprod;
  for (const auto &i : spec.outer_base.objects) {
    const SetValuedAction &part = spec.inner.at(i);
    const std::string tag = i + ".";
    for (const auto &x : part.base.objects)
      coprod.base.objects.push_back(tag + x);
    for (const auto &m : part.base.morphisms)
      coprod.base.morphisms.push_back({tag + m.name, tag + m.src, tag + m.tgt});
    for (const auto &[x, id] : part.base.identity)
      coprod.base.identity[tag + x] = tag + id;
    for (const auto &[pr, gf] : part.base.compose)
      coprod.base.compose[{tag + pr.first, tag + pr.second}] = tag + gf;
    for (const auto &[x, elems] : part.fiber)
      coprod.fiber[tag + x] = elems;
    for (const auto &[m, f] : part.act)
      coprod.act[tag + m] = f;
  }
  try {
    h.inner = grothendieck_complete(coprod, CompletionVariant::ConcreteLeft);
  } catch (const Error &e) {
    throw tagged("inner", e);
  }

  // Descend the outer action to the inner bases.
  CatValuedAction base_action;
  base_action.base = spec.outer_base;
  for (const auto &i : spec.outer_base.objects)
    base_action.fiber[i] = spec.inner.at(i).base;
  for (const auto &m : spec.outer_base.morphisms) {
    const FibredCategory &src_fc = inner_fcs.at(m.src);
    const FibredCategory &tgt_fc = inner_fcs.at(m.tgt);
    const FinFunctor &act = outer_action.act.at(m.name);
    FinFunctor descended;
    descended.dom = spec.inner.at(m.src).base;
    descended.cod = spec.inner.at(m.tgt).base;
    for (const auto &o : src_fc.total.objects) {
      const std::string s = src_fc.projection.on_object(o);
      const std::string image = tgt_fc.projection.on_object(act.on_object(o));
      auto [it, fresh] = descended.object_map.insert({s, image});
      if (!fresh && it->second != image)
        throw Error("NonFunctorialAction",
                    "outer level: action of " + m.name +
                        " does not descend to the inner base at object " + s);
    }
    for (const auto &k : src_fc.total.morphisms) {
      const std::string w = src_fc.projection.on_morphism(k.name);
      const std::string image =
          tgt_fc.projection.on_morphism(act.on_morphism(k.name));
      auto [it, fresh] = descended.morphism_map.insert({w, image});
      if (!fresh && it->second != image)
        throw Error("NonFunctorialAction",
                    "outer level: action of " + m.name +
                        " does not descend to the inner base at morphism " + w);
    }
    for (const auto &s : descended.dom.objects) {
      if (descended.object_map.find(s) == descended.object_map.end())
        throw Error("IncompleteTable",
                    "empty fiber over " + s + " leaves the descent of " +
                        m.name + " undetermined");
    }
    base_action.act[m.name] = std::move(descended);
  }
  TotalNameIndex base_names;
  try {
    h.base_fibration = grothendieck_total(base_action, &base_names);
  } catch (const Error &e) {
    throw tagged("outer", e);
  }

  // p sends (I,e) to (I, proj e) and (m,k) to (m, proj k).
  h.p.dom = h.outer.total;
  h.p.cod = h.base_fibration.total;
  for (const auto &i : spec.outer_base.objects) {
    const FibredCategory &fc = inner_fcs.at(i);
    for (const auto &e : fc.total.objects)
      h.p.object_map[pair_name(i, e)] =
          pair_name(i, fc.projection.on_object(e));
  }
  for (const auto &[key, name] : outer_names) {
    const auto &[m, e, k] = key;
    const FibredCategory &src_fc =
        inner_fcs.at(spec.outer_base.morphism(m)->src);
    const FibredCategory &tgt_fc =
        inner_fcs.at(spec.outer_base.morphism(m)->tgt);
    h.p.morphism_map[name] =
        base_names.at({m, src_fc.projection.on_object(e),
                       tgt_fc.projection.on_morphism(k)});
  }

  h.q = h.base_fibration.projection;

  h.inclusion.dom = h.inner.total;
  h.inclusion.cod = h.outer.total;
  for (const auto &i : spec.outer_base.objects) {
    const SetValuedAction &part = spec.inner.at(i);
    const FibredCategory &fc = inner_fcs.at(i);
    const std::string tag = i + ".";
    const std::string id_i = spec.outer_base.identity.at(i);
    for (const auto &x : part.base.objects) {
      for (const auto &elem : part.fiber.at(x)) {
        h.inclusion.object_map[pair_name(tag + x, elem)] =
            pair_name(i, pair_name(x, elem));
      }
    }
    for (const auto &m : part.base.morphisms) {
      for (const auto &elem : part.fiber.at(m.src)) {
        const std::string inner_name =
            h.inner.cleavage.at({tag + m.name, pair_name(tag + m.src, elem)});
        const std::string fiber_mor =
            fc.cleavage.at({m.name, pair_name(m.src, elem)});
        h.inclusion.morphism_map[inner_name] =
            outer_names.at({id_i, pair_name(m.src, elem), fiber_mor});
      }
    }
  }

  h.inner_base_projection.dom = coprod.base;
  h.inner_base_projection.cod = spec.outer_base;
  for (const auto &i : spec.outer_base.objects) {
    const SetValuedAction &part = spec.inner.at(i);
    const std::string tag = i + ".";
    for (const auto &x : part.base.objects)
      h.inner_base_projection.object_map[tag + x] = i;
    for (const auto &m : part.base.morphisms)
      h.inner_base_projection.morphism_map[tag + m.name] =
          spec.outer_base.identity.at(i);
  }
  return h;
}

namespace {

bool has_cartesian_lift(const FinCat &total, const FinCat &base,
                        const FinFunctor &proj, const std::string &base_mor,
                        const std::string &target_obj) {
  for (const auto &m : total.morphisms) {
    if (m.tgt != target_obj || proj.on_morphism(m.name) != base_mor)
      continue;
    if (is_cartesian(total, base, proj, m.name))
      return true;
  }
  return false;
}

} // namespace

ValidationReport check_composite_fibration(const FinFunctor &p,
                                           const FinFunctor &q) {
  if (p.cod != q.dom)
    throw Error("DomainMismatch", "cod(p) must equal dom(q)");
  const FinCat &total = p.dom;
  const FinCat &mid = q.dom;
  const FinCat &outer = q.cod;
  FinFunctor qp = compose_functors(q, p);

  ValidationReport report;

  // (a) every outer morphism has a composite-cartesian lift at every fiber
  // object over its target.
  for (const auto &u : outer.morphisms) {
    for (const auto &o : total.objects) {
      if (qp.on_object(o) != u.tgt)
        continue;
      if (!has_cartesian_lift(total, outer, qp, u.name, o))
        report.add("composite-lift", {u.name, o});
    }
  }

  // (b) composite-cartesian == p-cartesian with q-cartesian image.
  for (const auto &f : total.morphisms) {
    bool whole = is_cartesian(total, outer, qp, f.name);
    bool parts = is_cartesian(total, mid, p, f.name) &&
                 is_cartesian(mid, outer, q, p.on_morphism(f.name));
    if (whole != parts)
      report.add("cartesian-factorisation",
                 {f.name, whole ? "composite-only" : "parts-only"});
  }

  // (c) the restriction of p over each outermost object is a fibration.
  for (const auto &i : outer.objects) {
    FinCat total_i = fiber_category(total, qp, i);
    FinCat mid_i = fiber_category(mid, q, i);
    FinFunctor p_i;
    p_i.dom = total_i;
    p_i.cod = mid_i;
    for (const auto &o : total_i.objects)
      p_i.object_map[o] = p.on_object(o);
    for (const auto &m : total_i.morphisms)
      p_i.morphism_map[m.name] = p.on_morphism(m.name);
    for (const auto &w : mid_i.morphisms) {
      for (const auto &o : total_i.objects) {
        if (p_i.on_object(o) != w.tgt)
          continue;
        if (!has_cartesian_lift(total_i, mid_i, p_i, w.name, o))
          report.add("restriction-fibration", {i, w.name, o});
      }
    }
  }
  return report;
}

PresentationStats presentation_stats(const FinCat &c) {
  PresentationStats s;
  s.objects = c.objects.size();
  s.morphisms = c.morphisms.size();
  for (const auto &g : c.morphisms)
    for (const auto &f : c.morphisms)
      if (f.tgt == g.src)
        ++s.composable_pairs;
  return s;
}

ComparisonReport compare_models(
    const std::vector<std::vector<std::string>> &blocks,
    const PermGroup &inner_sym, const PermGroup &outer_sym) {
  if (blocks.empty())
    throw Error("BlockSizeMismatch", "no blocks");
  const std::size_t n = blocks[0].size();
  for (const auto &b : blocks) {
    if (b.size() != n)
      throw Error("BlockSizeMismatch", "blocks must have equal size");
  }
  if (inner_sym.degree != n)
    throw Error("BlockSizeMismatch", "inner symmetry degree != block size");
  if (outer_sym.degree != blocks.size())
    throw Error("BlockSizeMismatch", "outer symmetry degree != block count");

  ComparisonReport report;

  // Single-object model: the wreath group as a one-object category, with
  // the whole point set as one opaque fiber.
  PermGroup wreath = wreath_product(inner_sym, outer_sym);
  SetValuedAction whole;
  whole.base = group_as_category(wreath);
  whole.fiber["*"] = {"Y"};
  for (const auto &e : wreath.elements)
    whole.act[e.name] = {{"Y", "Y"}};
  FibredCategory wreath_model =
      grothendieck_complete(whole, CompletionVariant::ConcreteLeft);
  report.group_model = presentation_stats(wreath_model.total);

  // Multi-object model: transformation groupoids inside each block, glued
  // over the transformation groupoid of the block labels.
  GroupAction on_blocks;
  on_blocks.group = outer_sym;
  for (std::size_t b = 1; b <= blocks.size(); ++b)
    on_blocks.carrier.push_back("b" + std::to_string(b));
  for (const auto &e : outer_sym.elements)
    for (std::size_t b = 1; b <= blocks.size(); ++b)
      on_blocks.table[{e.name, "b" + std::to_string(b)}] =
          "b" + std::to_string(e.perm[b]);

  HierarchySpec spec;
  spec.outer_base = transformation_groupoid(on_blocks);

  std::map<std::string, std::size_t> block_index;
  std::map<std::string, FibredCategory> block_fc;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    GroupAction a;
    a.group = inner_sym;
    a.carrier = blocks[b];
    for (const auto &e : inner_sym.elements)
      for (std::size_t qq = 1; qq <= n; ++qq)
        a.table[{e.name, blocks[b][qq - 1]}] = blocks[b][e.perm[qq] - 1];
    SetValuedAction inner;
    inner.base = transformation_groupoid(a);
    for (const auto &x : blocks[b])
      inner.fiber[x] = {x};
    for (const auto &m : inner.base.morphisms)
      inner.act[m.name] = {{m.src, m.tgt}};
    const std::string label = "b" + std::to_string(b + 1);
    block_index[label] = b;
    block_fc[label] =
        grothendieck_complete(inner, CompletionVariant::ConcreteLeft);
    spec.inner[label] = std::move(inner);
  }

  for (const auto &m : spec.outer_base.morphisms) {
    // m = (t, b_i): translate block i to block t(i) position-wise.
    const auto &src_block = blocks[block_index.at(m.src)];
    const auto &tgt_block = blocks[block_index.at(m.tgt)];
    std::map<std::string, std::string> translate;
    for (std::size_t qq = 0; qq < n; ++qq)
      translate[src_block[qq]] = tgt_block[qq];

    FinFunctor f;
    for (const auto &x : src_block)
      f.object_map[pair_name(x, x)] =
          pair_name(translate.at(x), translate.at(x));
    const FibredCategory &src_fc = block_fc.at(m.src);
    const FibredCategory &tgt_fc = block_fc.at(m.tgt);
    for (const auto &k : src_fc.total.morphisms) {
      const std::string base_mor = src_fc.projection.on_morphism(k.name);
      const MorphismDecl *bm = src_fc.base.morphism(base_mor);
      // Base morphisms of a transformation groupoid are pairs (g, point).
      std::string g;
      for (const auto &e : inner_sym.elements) {
        if (pair_name(e.name, bm->src) == base_mor) {
          g = e.name;
          break;
        }
      }
      const std::string image_base = pair_name(g, translate.at(bm->src));
      f.morphism_map[k.name] = tgt_fc.cleavage.at(
          {image_base, pair_name(translate.at(bm->src), translate.at(bm->src))});
    }
    spec.outer_act[m.name] = std::move(f);
  }

  Hierarchy h = build_hierarchy(spec);
  report.groupoid_model = presentation_stats(h.outer.total);

  report.notes.push_back("wreath order " + std::to_string(wreath.order()) +
                         " on " + std::to_string(wreath.degree) + " points");
  report.notes.push_back(
      "morphism counts coincide: " +
      std::string(report.group_model.morphisms == report.groupoid_model.morphisms
                      ? "yes"
                      : "no"));
  return report;
}

BaseClassification classify_base(const FinCat &b, CodomainKind kind) {
  auto report = check_category(b);
  if (!report.ok)
    throw Error("ValidationError", report.summary());
  bool trivial_arrows = b.morphisms.size() == b.objects.size();
  BaseClass cls;
  if (b.objects.size() == 1)
    cls = trivial_arrows ? BaseClass::Singleton : BaseClass::OneObjectManyArrows;
  else
    cls = trivial_arrows ? BaseClass::Discrete : BaseClass::General;

  static const std::map<std::pair<CodomainKind, BaseClass>, std::string>
      labels = {
          {{CodomainKind::Set, BaseClass::Singleton},
           "X modeled as single whole set"},
          {{CodomainKind::Set, BaseClass::Discrete},
           "X a set partitioned into subsets"},
          {{CodomainKind::Set, BaseClass::OneObjectManyArrows},
           "X as endoset on some set"},
          {{CodomainKind::Set, BaseClass::General}, "X as small category"},
          {{CodomainKind::Cat, BaseClass::Singleton}, "X as small 1-category"},
          {{CodomainKind::Cat, BaseClass::Discrete},
           "X as coproduct category"},
          {{CodomainKind::Cat, BaseClass::OneObjectManyArrows},
           "X as endofunctor category,(strict)Monoidal category"},
          {{CodomainKind::Cat, BaseClass::General}, "X as 2-category"},
      };
  return {cls, labels.at({kind, cls})};
}

std::string base_class_name(BaseClass c) {
  switch (c) {
  case BaseClass::Singleton:
    return "singleton";
  case BaseClass::Discrete:
    return "discrete";
  case BaseClass::OneObjectManyArrows:
    return "one-object-many-arrows";
  case BaseClass::General:
    return "general";
  }
  return "?";
}

} // namespace fibrato
