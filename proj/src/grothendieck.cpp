#include "fibrato/grothendieck.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fibrato/errors.hpp"

namespace fibrato {

bool is_left_variant(CompletionVariant v) {
  return v == CompletionVariant::AbstractLeft ||
         v == CompletionVariant::ConcreteLeft;
}

std::string variant_name(CompletionVariant v) {
  switch (v) {
  case CompletionVariant::AbstractLeft:
    return "abs-left";
  case CompletionVariant::AbstractRight:
    return "abs-right";
  case CompletionVariant::ConcreteLeft:
    return "con-left";
  case CompletionVariant::ConcreteRight:
    return "con-right";
  }
  return "?";
}

namespace {

std::string pair_name(const std::string &a, const std::string &b) {
  return "(" + a + "," + b + ")";
}

void require_valid_action(const SetValuedAction &a) {
  auto report = check_set_valued_action(a);
  if (!report.ok)
    throw Error("NonFunctorialAction", report.summary());
}

void require_valid_action(const CatValuedAction &a) {
  auto report = check_cat_valued_action(a);
  if (!report.ok)
    throw Error("NonFunctorialAction", report.summary());
}

/// Record kept while assembling a concrete completion.
struct TotalMorphism {
  std::string base;   // base morphism (named in the output base)
  std::string anchor; // determining fiber element: source for left, target for right
  std::string src_obj, tgt_obj;
  std::string display; // second component per the variant's naming rule
  std::string name;
};

/// Names morphisms "(f,display)", widening to "(f,anchor->display)" whenever
/// the short form would collide (non-injective fiber maps).
void assign_names(std::vector<TotalMorphism> &morphisms, bool left) {
  std::map<std::string, int> uses;
  for (auto &m : morphisms) {
    m.name = pair_name(m.base, m.display);
    ++uses[m.name];
  }
  std::map<std::string, int> still;
  for (auto &m : morphisms) {
    if (uses[m.name] > 1) {
      std::string wide = left ? m.anchor + "->" + m.display
                              : m.display + "->" + m.anchor;
      m.name = pair_name(m.base, wide);
    }
    ++still[m.name];
  }
  for (auto &m : morphisms) {
    if (still[m.name] > 1)
      m.name += "#" + m.anchor;
  }
}

FibredCategory assemble_concrete(const SetValuedAction &action,
                                 CompletionVariant variant) {
  bool left = is_left_variant(variant);
  FibredCategory fc;
  fc.variant = variant;
  fc.base = left ? action.base : opposite(action.base);

  for (const auto &x : fc.base.objects)
    for (const auto &e : action.fiber.at(x))
      fc.total.objects.push_back(pair_name(x, e));

  std::vector<TotalMorphism> mors;
  for (const auto &f : fc.base.morphisms) {
    if (left) {
      // (f,y): (X,x) -> (Y,y) with y = act(f)(x).
      for (const auto &x : action.fiber.at(f.src)) {
        const std::string &y = action.act.at(f.name).at(x);
        mors.push_back({f.name, x, pair_name(f.src, x), pair_name(f.tgt, y), y,
                        ""});
      }
    } else {
      // f runs X -> Y in the output base; in the action's base it runs
      // Y -> X, so act(f) carries target fibers to source fibers.
      for (const auto &y : action.fiber.at(f.tgt)) {
        const std::string &x = action.act.at(f.name).at(y);
        mors.push_back({f.name, y, pair_name(f.src, x), pair_name(f.tgt, y), x,
                        ""});
      }
    }
  }
  assign_names(mors, left);

  std::map<std::pair<std::string, std::string>, std::string> by_anchor;
  for (const auto &m : mors) {
    fc.total.morphisms.push_back({m.name, m.src_obj, m.tgt_obj});
    fc.projection.morphism_map[m.name] = m.base;
    by_anchor[{m.base, m.anchor}] = m.name;
    fc.cleavage[{m.base, left ? m.src_obj : m.tgt_obj}] = m.name;
  }
  for (const auto &x : fc.base.objects) {
    for (const auto &e : action.fiber.at(x)) {
      std::string o = pair_name(x, e);
      fc.total.identity[o] = by_anchor.at({fc.base.identity.at(x), e});
      fc.projection.object_map[o] = x;
    }
  }
  // Composite of two total morphisms: base parts compose, the anchor of the
  // earlier (left) / later (right) morphism is preserved.
  for (const auto &g : mors) {
    for (const auto &f : mors) {
      if (f.tgt_obj != g.src_obj)
        continue;
      const std::string &base_gf = *fc.base.composed(g.base, f.base);
      const std::string &anchor = left ? f.anchor : g.anchor;
      fc.total.compose[{g.name, f.name}] = by_anchor.at({base_gf, anchor});
    }
  }
  fc.projection.dom = fc.total;
  fc.projection.cod = fc.base;
  return fc;
}

FibredCategory assemble_abstract(const CatValuedAction &action,
                                 CompletionVariant variant) {
  bool left = is_left_variant(variant);
  FibredCategory fc;
  fc.variant = variant;
  fc.base = left ? action.base : opposite(action.base);

  // The whole fiber category is one object; a one-object fiber lends its
  // name, larger fibers are labelled F(X).
  auto fiber_label = [&](const std::string &x) {
    const FinCat &fib = action.fiber.at(x);
    return fib.objects.size() == 1 ? fib.objects[0] : "F(" + x + ")";
  };

  std::map<std::string, std::string> obj_of_base;
  for (const auto &x : fc.base.objects) {
    std::string o = pair_name(x, fiber_label(x));
    obj_of_base[x] = o;
    fc.total.objects.push_back(o);
    fc.projection.object_map[o] = x;
  }
  std::map<std::string, std::string> mor_of_base;
  for (const auto &f : fc.base.morphisms) {
    std::string name = pair_name(f.name, "id");
    mor_of_base[f.name] = name;
    fc.total.morphisms.push_back(
        {name, obj_of_base.at(f.src), obj_of_base.at(f.tgt)});
    fc.projection.morphism_map[name] = f.name;
    fc.cleavage[{f.name, left ? obj_of_base.at(f.src) : obj_of_base.at(f.tgt)}] =
        name;
  }
  for (const auto &[x, id] : fc.base.identity)
    fc.total.identity[obj_of_base.at(x)] = mor_of_base.at(id);
  for (const auto &[pair, gf] : fc.base.compose)
    fc.total.compose[{mor_of_base.at(pair.first), mor_of_base.at(pair.second)}] =
        mor_of_base.at(gf);
  fc.projection.dom = fc.total;
  fc.projection.cod = fc.base;
  return fc;
}

} // namespace

FinCat transformation_groupoid(const GroupAction &a) {
  auto report = check_action(a);
  if (!report.ok)
    throw Error("NonFunctorialAction", report.summary());
  FinCat c;
  c.objects = a.carrier;
  std::map<std::pair<std::string, std::string>, std::string> name_of;
  for (const auto &g : a.group.elements) {
    for (const auto &x : a.carrier) {
      std::string name = pair_name(g.name, x);
      name_of[{g.name, x}] = name;
      c.morphisms.push_back({name, x, a.apply(g.name, x)});
    }
  }
  for (const auto &x : a.carrier)
    c.identity[x] = name_of.at({"e", x});
  for (const auto &g2 : a.group.elements) {
    for (const auto &g1 : a.group.elements) {
      std::string prod = a.group.mult(g2.name, g1.name);
      for (const auto &x : a.carrier) {
        // (g2, g1·x) ∘ (g1, x) = (g2 g1, x)
        c.compose[{name_of.at({g2.name, a.apply(g1.name, x)}),
                   name_of.at({g1.name, x})}] = name_of.at({prod, x});
      }
    }
  }
  return c;
}

FibredCategory grothendieck_complete(const SetValuedAction &action,
                                     CompletionVariant variant) {
  require_valid_action(action);
  if (variant == CompletionVariant::ConcreteLeft ||
      variant == CompletionVariant::ConcreteRight)
    return assemble_concrete(action, variant);
  return assemble_abstract(cat_valued_from_set(action), variant);
}

FibredCategory grothendieck_complete(const CatValuedAction &action,
                                     CompletionVariant variant) {
  require_valid_action(action);
  if (variant == CompletionVariant::AbstractLeft ||
      variant == CompletionVariant::AbstractRight)
    return assemble_abstract(action, variant);
  throw Error("InvalidArgument",
              "concrete variants take a Set-valued action");
}

FibredCategory grothendieck_total(const CatValuedAction &action,
                                  TotalNameIndex *names) {
  require_valid_action(action);
  FibredCategory fc;
  fc.variant = CompletionVariant::AbstractLeft;
  fc.base = action.base;

  for (const auto &i : fc.base.objects) {
    for (const auto &e : action.fiber.at(i).objects) {
      std::string o = pair_name(i, e);
      fc.total.objects.push_back(o);
      fc.projection.object_map[o] = i;
    }
  }

  struct Piece {
    std::string base, src_fib, fib_mor;
    std::string src_obj, tgt_obj, name;
  };
  std::vector<Piece> pieces;
  std::map<std::string, int> uses;
  for (const auto &m : fc.base.morphisms) {
    const FinCat &fib_tgt = action.fiber.at(m.tgt);
    const FinFunctor &act = action.act.at(m.name);
    for (const auto &e : action.fiber.at(m.src).objects) {
      const std::string &image = act.on_object(e);
      for (const auto &k : fib_tgt.morphisms) {
        if (k.src != image)
          continue;
        Piece p{m.name, e, k.name, pair_name(m.src, e), pair_name(m.tgt, k.tgt),
                pair_name(m.name, k.name)};
        ++uses[p.name];
        pieces.push_back(std::move(p));
      }
    }
  }
  std::map<std::tuple<std::string, std::string, std::string>, std::string> key;
  for (auto &p : pieces) {
    if (uses[p.name] > 1)
      p.name = pair_name(p.base, p.fib_mor + "@" + p.src_fib);
    fc.total.morphisms.push_back({p.name, p.src_obj, p.tgt_obj});
    fc.projection.morphism_map[p.name] = p.base;
    key[{p.base, p.src_fib, p.fib_mor}] = p.name;
  }
  for (const auto &i : fc.base.objects) {
    const FinCat &fib = action.fiber.at(i);
    for (const auto &e : fib.objects)
      fc.total.identity[pair_name(i, e)] =
          key.at({fc.base.identity.at(i), e, fib.identity.at(e)});
  }
  for (const auto &pg : pieces) {
    for (const auto &pf : pieces) {
      if (pf.tgt_obj != pg.src_obj)
        continue;
      // (n,k') ∘ (m,k) = (n∘m, k' ∘ act(n)(k)) from the same source fiber.
      const std::string &base_gf = *fc.base.composed(pg.base, pf.base);
      const MorphismDecl *bg = fc.base.morphism(pg.base);
      const FinCat &fib = action.fiber.at(bg->tgt);
      const std::string &moved =
          action.act.at(pg.base).on_morphism(pf.fib_mor);
      const std::string &fibred = *fib.composed(pg.fib_mor, moved);
      fc.total.compose[{pg.name, pf.name}] =
          key.at({base_gf, pf.src_fib, fibred});
    }
  }
  for (const auto &m : fc.base.morphisms) {
    const FinFunctor &act = action.act.at(m.name);
    const FinCat &fib_tgt = action.fiber.at(m.tgt);
    for (const auto &e : action.fiber.at(m.src).objects) {
      fc.cleavage[{m.name, pair_name(m.src, e)}] =
          key.at({m.name, e, fib_tgt.identity.at(act.on_object(e))});
    }
  }
  if (names != nullptr)
    *names = key;
  fc.projection.dom = fc.total;
  fc.projection.cod = fc.base;
  return fc;
}

bool is_cartesian(const FinCat &total, const FinCat &base,
                  const FinFunctor &projection, const std::string &m) {
  const MorphismDecl *md = total.morphism(m);
  if (md == nullptr)
    throw Error("DanglingReference", "unknown total morphism " + m);
  const std::string pm = projection.on_morphism(m);
  for (const auto &g : total.morphisms) {
    if (g.tgt != md->tgt)
      continue;
    const std::string pg = projection.on_morphism(g.name);
    for (const auto &w : base.morphisms) {
      if (w.src != projection.on_object(g.src) ||
          w.tgt != projection.on_object(md->src))
        continue;
      if (base.composed(pm, w.name) != std::optional<std::string>(pg))
        continue;
      std::size_t count = 0;
      for (const auto &h : total.morphisms) {
        if (h.src == g.src && h.tgt == md->src &&
            projection.on_morphism(h.name) == w.name &&
            total.composed(m, h.name) == std::optional<std::string>(g.name))
          ++count;
      }
      if (count != 1)
        return false;
    }
  }
  return true;
}

bool is_cartesian(const FibredCategory &fc, const std::string &m) {
  return is_cartesian(fc.total, fc.base, fc.projection, m);
}

bool is_opcartesian(const FinCat &total, const FinCat &base,
                    const FinFunctor &projection, const std::string &m) {
  const MorphismDecl *md = total.morphism(m);
  if (md == nullptr)
    throw Error("DanglingReference", "unknown total morphism " + m);
  const std::string pm = projection.on_morphism(m);
  for (const auto &g : total.morphisms) {
    if (g.src != md->src)
      continue;
    const std::string pg = projection.on_morphism(g.name);
    for (const auto &w : base.morphisms) {
      if (w.src != projection.on_object(md->tgt) ||
          w.tgt != projection.on_object(g.tgt))
        continue;
      if (base.composed(w.name, pm) != std::optional<std::string>(pg))
        continue;
      std::size_t count = 0;
      for (const auto &h : total.morphisms) {
        if (h.src == md->tgt && h.tgt == g.tgt &&
            projection.on_morphism(h.name) == w.name &&
            total.composed(h.name, m) == std::optional<std::string>(g.name))
          ++count;
      }
      if (count != 1)
        return false;
    }
  }
  return true;
}

ValidationReport check_split_fibration(const FibredCategory &fc) {
  ValidationReport report;
  bool left = is_left_variant(fc.variant);

  for (const auto &f : fc.base.morphisms) {
    const std::string &indexing = left ? f.src : f.tgt;
    for (const auto &o : fc.total.objects) {
      if (fc.projection.on_object(o) != indexing)
        continue;
      auto it = fc.cleavage.find({f.name, o});
      if (it == fc.cleavage.end()) {
        report.add("cleavage-totality", {f.name, o});
        continue;
      }
      const MorphismDecl *lift = fc.total.morphism(it->second);
      if (lift == nullptr ||
          fc.projection.on_morphism(it->second) != f.name ||
          (left ? lift->src : lift->tgt) != o) {
        report.add("cleavage-lift", {f.name, o, it->second});
        continue;
      }
      bool universal =
          left ? is_opcartesian(fc.total, fc.base, fc.projection, it->second)
               : is_cartesian(fc.total, fc.base, fc.projection, it->second);
      if (!universal)
        report.add("cartesian-lift", {f.name, o, it->second});
    }
  }

  for (const auto &[x, id] : fc.base.identity) {
    for (const auto &o : fc.total.objects) {
      if (fc.projection.on_object(o) != x)
        continue;
      auto it = fc.cleavage.find({id, o});
      if (it != fc.cleavage.end() && it->second != fc.total.identity.at(o))
        report.add("split-identity", {o, it->second});
    }
  }

  for (const auto &[pair, gf] : fc.base.compose) {
    const std::string &g = pair.first;
    const std::string &f = pair.second;
    const std::string &indexing = left ? f : g;
    for (const auto &o : fc.total.objects) {
      auto first = fc.cleavage.find({indexing, o});
      if (first == fc.cleavage.end())
        continue;
      const MorphismDecl *fm = fc.total.morphism(first->second);
      auto second = left ? fc.cleavage.find({g, fm->tgt})
                         : fc.cleavage.find({f, fm->src});
      auto whole = fc.cleavage.find({gf, o});
      if (second == fc.cleavage.end() || whole == fc.cleavage.end())
        continue;
      auto composite = left ? fc.total.composed(second->second, first->second)
                            : fc.total.composed(first->second, second->second);
      if (composite != std::optional<std::string>(whole->second))
        report.add("split-composite",
                   {g, f, o, composite.value_or("<missing>")});
    }
  }

  for (const auto &b : fc.base.objects) {
    const std::string &id_b = fc.base.identity.at(b);
    std::set<std::string> fiber_objs;
    for (const auto &o : fc.total.objects) {
      if (fc.projection.on_object(o) == b)
        fiber_objs.insert(o);
    }
    for (const auto &u : fc.total.morphisms) {
      if (fc.projection.on_morphism(u.name) != id_b)
        continue;
      if (fiber_objs.count(u.src) == 0 || fiber_objs.count(u.tgt) == 0)
        report.add("fiber-endpoints", {b, u.name});
      for (const auto &v : fc.total.morphisms) {
        if (fc.projection.on_morphism(v.name) != id_b || v.src != u.tgt)
          continue;
        auto vu = fc.total.composed(v.name, u.name);
        if (vu && fc.projection.on_morphism(*vu) != id_b)
          report.add("fiber-closure", {b, v.name, u.name});
      }
    }
  }

  bool all_nonempty = true;
  std::set<std::string> hit_objects, hit_morphisms;
  for (const auto &o : fc.total.objects)
    hit_objects.insert(fc.projection.on_object(o));
  for (const auto &m : fc.total.morphisms)
    hit_morphisms.insert(fc.projection.on_morphism(m.name));
  for (const auto &b : fc.base.objects)
    if (hit_objects.count(b) == 0)
      all_nonempty = false;
  if (all_nonempty) {
    for (const auto &m : fc.base.morphisms) {
      if (hit_morphisms.count(m.name) == 0)
        report.add("projection-surjective", {m.name});
    }
  }
  return report;
}

ValidationReport check_fibred_category(const FibredCategory &fc) {
  ValidationReport merged = check_category(fc.total);
  for (auto &v : check_functor(fc.projection).violations)
    merged.add("projection-" + v.law, v.witness);
  for (auto &v : check_split_fibration(fc).violations)
    merged.add(v.law, v.witness);
  return merged;
}

FinCat fiber_category(const FinCat &total, const FinFunctor &projection,
                      const std::string &base_object) {
  FinCat fib;
  const std::string id_b = [&] {
    for (const auto &[o, id] : projection.cod.identity)
      if (o == base_object)
        return id;
    throw Error("DanglingReference", "unknown base object " + base_object);
  }();
  for (const auto &o : total.objects) {
    if (projection.on_object(o) == base_object)
      fib.objects.push_back(o);
  }
  std::set<std::string> keep;
  for (const auto &m : total.morphisms) {
    if (projection.on_morphism(m.name) == id_b) {
      fib.morphisms.push_back(m);
      keep.insert(m.name);
    }
  }
  for (const auto &o : fib.objects)
    fib.identity[o] = total.identity.at(o);
  for (const auto &[pair, gf] : total.compose) {
    if (keep.count(pair.first) && keep.count(pair.second) && keep.count(gf))
      fib.compose[pair] = gf;
  }
  return fib;
}

IsoReport check_transformation_equals_completion(const GroupAction &a,
                                                 IsoBudget budget) {
  FinCat xg = transformation_groupoid(a);

  // The left action, read as a contravariant functor on the one-object
  // base, acts by inverses; its right completion is fibred over the
  // original group category again.
  SetValuedAction mirrored;
  mirrored.base = opposite(group_as_category(a.group));
  mirrored.fiber["*"] = a.carrier;
  for (const auto &g : a.group.elements) {
    std::map<std::string, std::string> f;
    const std::string inv = a.group.inverse_of(g.name);
    for (const auto &x : a.carrier)
      f[x] = a.apply(inv, x);
    mirrored.act[g.name] = std::move(f);
  }
  FibredCategory completion =
      grothendieck_complete(mirrored, CompletionVariant::ConcreteRight);

  IsoReport report;
  report.left_counts = {xg.objects.size(), xg.morphisms.size()};
  report.right_counts = {completion.total.objects.size(),
                         completion.total.morphisms.size()};

  FinFunctor seed;
  seed.dom = xg;
  seed.cod = completion.total;
  for (const auto &x : xg.objects)
    seed.object_map[x] = "(*," + x + ")";
  for (const auto &m : xg.morphisms)
    seed.morphism_map[m.name] = m.name;

  auto witness = find_isomorphism(xg, completion.total, budget, seed);
  report.isomorphic = witness.has_value();
  report.witness = witness;
  return report;
}

} // namespace fibrato
