#include "fibrato/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "fibrato/errors.hpp"

namespace fibrato {

bool FinCat::has_object(const std::string &name) const {
  return std::find(objects.begin(), objects.end(), name) != objects.end();
}

const MorphismDecl *FinCat::morphism(const std::string &name) const {
  for (const auto &m : morphisms) {
    if (m.name == name)
      return &m;
  }
  return nullptr;
}

std::optional<std::string> FinCat::composed(const std::string &g,
                                            const std::string &f) const {
  auto it = compose.find({g, f});
  if (it == compose.end())
    return std::nullopt;
  return it->second;
}

bool FinCat::is_identity(const std::string &morphism_name) const {
  for (const auto &[obj, id] : identity) {
    if (id == morphism_name)
      return true;
  }
  return false;
}

std::vector<std::string> FinCat::hom(const std::string &x,
                                     const std::string &y) const {
  std::vector<std::string> out;
  for (const auto &m : morphisms) {
    if (m.src == x && m.tgt == y)
      out.push_back(m.name);
  }
  return out;
}

std::optional<std::string> FinCat::inverse(const std::string &name) const {
  const MorphismDecl *f = morphism(name);
  if (f == nullptr)
    return std::nullopt;
  auto id_src = identity.find(f->src);
  auto id_tgt = identity.find(f->tgt);
  if (id_src == identity.end() || id_tgt == identity.end())
    return std::nullopt;
  for (const auto &g : morphisms) {
    if (g.src != f->tgt || g.tgt != f->src)
      continue;
    if (composed(g.name, name) == id_src->second &&
        composed(name, g.name) == id_tgt->second)
      return g.name;
  }
  return std::nullopt;
}

void ValidationReport::add(std::string law, std::vector<std::string> witness) {
  ok = false;
  violations.push_back({std::move(law), std::move(witness)});
}

std::string ValidationReport::summary() const {
  if (ok)
    return "ok";
  std::ostringstream os;
  os << violations.size() << " violation(s):";
  for (const auto &v : violations) {
    os << "\n  " << v.law << " (";
    for (std::size_t i = 0; i < v.witness.size(); ++i)
      os << (i ? ", " : "") << v.witness[i];
    os << ")";
  }
  return os.str();
}

std::string FinFunctor::on_object(const std::string &name) const {
  auto it = object_map.find(name);
  if (it == object_map.end())
    throw Error("DanglingReference", "functor has no image for object " + name);
  return it->second;
}

std::string FinFunctor::on_morphism(const std::string &name) const {
  auto it = morphism_map.find(name);
  if (it == morphism_map.end())
    throw Error("DanglingReference",
                "functor has no image for morphism " + name);
  return it->second;
}

namespace {

void check_declarations(const FinCat &c) {
  std::set<std::string> objs(c.objects.begin(), c.objects.end());
  if (objs.size() != c.objects.size())
    throw Error("DuplicateName", "duplicate object name");
  std::set<std::string> mors;
  for (const auto &m : c.morphisms) {
    if (!mors.insert(m.name).second)
      throw Error("DuplicateName", "duplicate morphism name " + m.name);
    if (objs.count(m.src) == 0)
      throw Error("DanglingReference",
                  "morphism " + m.name + " has unknown src " + m.src);
    if (objs.count(m.tgt) == 0)
      throw Error("DanglingReference",
                  "morphism " + m.name + " has unknown tgt " + m.tgt);
  }
  for (const auto &[obj, id] : c.identity) {
    if (objs.count(obj) == 0)
      throw Error("DanglingReference", "identity entry for unknown object " + obj);
    if (mors.count(id) == 0)
      throw Error("DanglingReference",
                  "identity of " + obj + " names unknown morphism " + id);
  }
  for (const auto &[pair, value] : c.compose) {
    if (mors.count(pair.first) == 0 || mors.count(pair.second) == 0 ||
        mors.count(value) == 0)
      throw Error("DanglingReference", "compose entry (" + pair.first + ", " +
                                           pair.second + ") -> " + value +
                                           " names an unknown morphism");
  }
}

} // namespace

ValidationReport check_category(const FinCat &c) {
  check_declarations(c);
  ValidationReport report;

  for (const auto &x : c.objects) {
    auto it = c.identity.find(x);
    if (it == c.identity.end()) {
      report.add("identity", {x, "<missing>"});
      continue;
    }
    const MorphismDecl *id = c.morphism(it->second);
    if (id->src != x || id->tgt != x)
      report.add("identity", {x, it->second});
  }

  // Totality on composable pairs, and nothing defined off them.
  for (const auto &g : c.morphisms) {
    for (const auto &f : c.morphisms) {
      bool composable = (f.tgt == g.src);
      auto gf = c.composed(g.name, f.name);
      if (composable && !gf.has_value())
        report.add("compose-totality", {g.name, f.name});
      if (!composable && gf.has_value())
        report.add("compose-domain", {g.name, f.name});
      if (composable && gf.has_value()) {
        const MorphismDecl *v = c.morphism(*gf);
        if (v->src != f.src || v->tgt != g.tgt)
          report.add("compose-endpoints", {g.name, f.name, *gf});
      }
    }
  }

  for (const auto &f : c.morphisms) {
    auto id_src = c.identity.find(f.src);
    auto id_tgt = c.identity.find(f.tgt);
    if (id_src == c.identity.end() || id_tgt == c.identity.end())
      continue; // already reported
    auto left = c.composed(id_tgt->second, f.name);
    auto right = c.composed(f.name, id_src->second);
    if (left != std::optional<std::string>(f.name))
      report.add("unit-left", {f.name, left.value_or("<missing>")});
    if (right != std::optional<std::string>(f.name))
      report.add("unit-right", {f.name, right.value_or("<missing>")});
  }

  for (const auto &h : c.morphisms) {
    for (const auto &g : c.morphisms) {
      if (g.tgt != h.src)
        continue;
      auto hg = c.composed(h.name, g.name);
      for (const auto &f : c.morphisms) {
        if (f.tgt != g.src)
          continue;
        auto gf = c.composed(g.name, f.name);
        if (!hg || !gf)
          continue;
        auto left = c.composed(h.name, *gf);
        auto right = c.composed(*hg, f.name);
        if (left != right)
          report.add("associativity", {h.name, g.name, f.name});
      }
    }
  }
  return report;
}

ValidationReport check_functor(const FinFunctor &fun) {
  ValidationReport report;
  const FinCat &dom = fun.dom;
  const FinCat &cod = fun.cod;

  for (const auto &x : dom.objects) {
    auto it = fun.object_map.find(x);
    if (it == fun.object_map.end()) {
      report.add("object-totality", {x});
      continue;
    }
    if (!cod.has_object(it->second))
      throw Error("DanglingReference",
                  "object image " + it->second + " not in codomain");
  }
  for (const auto &m : dom.morphisms) {
    auto it = fun.morphism_map.find(m.name);
    if (it == fun.morphism_map.end()) {
      report.add("morphism-totality", {m.name});
      continue;
    }
    const MorphismDecl *img = cod.morphism(it->second);
    if (img == nullptr)
      throw Error("DanglingReference",
                  "morphism image " + it->second + " not in codomain");
    auto src_it = fun.object_map.find(m.src);
    auto tgt_it = fun.object_map.find(m.tgt);
    if (src_it != fun.object_map.end() && img->src != src_it->second)
      report.add("preserves-src", {m.name, img->name});
    if (tgt_it != fun.object_map.end() && img->tgt != tgt_it->second)
      report.add("preserves-tgt", {m.name, img->name});
  }
  for (const auto &[x, id] : dom.identity) {
    auto xo = fun.object_map.find(x);
    auto mi = fun.morphism_map.find(id);
    if (xo == fun.object_map.end() || mi == fun.morphism_map.end())
      continue;
    auto cod_id = cod.identity.find(xo->second);
    if (cod_id == cod.identity.end() || cod_id->second != mi->second)
      report.add("preserves-identity", {x, id, mi->second});
  }
  for (const auto &[pair, gf] : dom.compose) {
    auto g = fun.morphism_map.find(pair.first);
    auto f = fun.morphism_map.find(pair.second);
    auto v = fun.morphism_map.find(gf);
    if (g == fun.morphism_map.end() || f == fun.morphism_map.end() ||
        v == fun.morphism_map.end())
      continue;
    auto img = cod.composed(g->second, f->second);
    if (img != std::optional<std::string>(v->second))
      report.add("preserves-composition",
                 {pair.first, pair.second, img.value_or("<missing>")});
  }
  return report;
}

ValidationReport check_cat_valued_action(const CatValuedAction &a) {
  ValidationReport report;
  for (const auto &x : a.base.objects) {
    if (a.fiber.find(x) == a.fiber.end())
      throw Error("DanglingReference", "no fiber for base object " + x);
  }
  for (const auto &m : a.base.morphisms) {
    auto it = a.act.find(m.name);
    if (it == a.act.end())
      throw Error("DanglingReference", "no action for base morphism " + m.name);
    auto fr = check_functor(it->second);
    if (!fr.ok)
      report.add("act-functor", {m.name});
    if (it->second.dom != a.fiber.at(m.src) ||
        it->second.cod != a.fiber.at(m.tgt))
      report.add("act-endpoints", {m.name});
  }
  for (const auto &[x, id] : a.base.identity) {
    auto it = a.act.find(id);
    if (it == a.act.end())
      continue;
    if (it->second.object_map != identity_functor(a.fiber.at(x)).object_map ||
        it->second.morphism_map != identity_functor(a.fiber.at(x)).morphism_map)
      report.add("act-identity", {x, id});
  }
  for (const auto &[pair, gf] : a.base.compose) {
    auto g = a.act.find(pair.first);
    auto f = a.act.find(pair.second);
    auto v = a.act.find(gf);
    if (g == a.act.end() || f == a.act.end() || v == a.act.end())
      continue;
    FinFunctor composite = compose_functors(g->second, f->second);
    if (composite.object_map != v->second.object_map ||
        composite.morphism_map != v->second.morphism_map)
      report.add("act-composition", {pair.first, pair.second});
  }
  return report;
}

ValidationReport check_set_valued_action(const SetValuedAction &a) {
  ValidationReport report;
  for (const auto &x : a.base.objects) {
    if (a.fiber.find(x) == a.fiber.end())
      throw Error("DanglingReference", "no fiber for base object " + x);
  }
  auto in_fiber = [&](const std::string &obj, const std::string &elem) {
    const auto &f = a.fiber.at(obj);
    return std::find(f.begin(), f.end(), elem) != f.end();
  };
  for (const auto &m : a.base.morphisms) {
    auto it = a.act.find(m.name);
    if (it == a.act.end())
      throw Error("DanglingReference", "no action for base morphism " + m.name);
    for (const auto &x : a.fiber.at(m.src)) {
      auto y = it->second.find(x);
      if (y == it->second.end()) {
        report.add("act-totality", {m.name, x});
      } else if (!in_fiber(m.tgt, y->second)) {
        report.add("act-codomain", {m.name, x, y->second});
      }
    }
  }
  for (const auto &[x, id] : a.base.identity) {
    auto it = a.act.find(id);
    if (it == a.act.end())
      continue;
    for (const auto &e : a.fiber.at(x)) {
      auto img = it->second.find(e);
      if (img != it->second.end() && img->second != e)
        report.add("act-identity", {id, e, img->second});
    }
  }
  for (const auto &[pair, gf] : a.base.compose) {
    auto g = a.act.find(pair.first);
    auto f = a.act.find(pair.second);
    auto v = a.act.find(gf);
    if (g == a.act.end() || f == a.act.end() || v == a.act.end())
      continue;
    const MorphismDecl *fm = a.base.morphism(pair.second);
    for (const auto &x : a.fiber.at(fm->src)) {
      auto fx = f->second.find(x);
      if (fx == f->second.end())
        continue;
      auto gfx = g->second.find(fx->second);
      auto direct = v->second.find(x);
      if (gfx == g->second.end() || direct == v->second.end())
        continue;
      if (gfx->second != direct->second)
        report.add("act-composition", {pair.first, pair.second, x});
    }
  }
  return report;
}

FinCat discrete_category(const std::vector<std::string> &elements) {
  FinCat c;
  c.objects = elements;
  for (const auto &x : elements) {
    std::string id = "id_" + x;
    c.morphisms.push_back({id, x, x});
    c.identity[x] = id;
    c.compose[{id, id}] = id;
  }
  return c;
}

FinCat codiscrete_groupoid(std::size_t n) {
  FinCat c;
  auto obj = [](std::size_t i) { return "s" + std::to_string(i); };
  auto mor = [&](std::size_t i, std::size_t j) {
    if (i == j)
      return "id_" + obj(i);
    return "t_" + std::to_string(i) + "_" + std::to_string(j);
  };
  for (std::size_t i = 1; i <= n; ++i) {
    c.objects.push_back(obj(i));
    c.identity[obj(i)] = mor(i, i);
  }
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      c.morphisms.push_back({mor(i, j), obj(i), obj(j)});
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k)
        c.compose[{mor(j, k), mor(i, j)}] = mor(i, k);
  return c;
}

FinCat opposite(const FinCat &c) {
  FinCat o;
  o.objects = c.objects;
  o.identity = c.identity;
  for (const auto &m : c.morphisms)
    o.morphisms.push_back({m.name, m.tgt, m.src});
  for (const auto &[pair, gf] : c.compose)
    o.compose[{pair.second, pair.first}] = gf;
  return o;
}

namespace {
std::string pair_name(const std::string &a, const std::string &b) {
  return "(" + a + "," + b + ")";
}
} // namespace

FinCat product(const FinCat &c, const FinCat &d) {
  FinCat p;
  for (const auto &x : c.objects)
    for (const auto &y : d.objects)
      p.objects.push_back(pair_name(x, y));
  for (const auto &f : c.morphisms)
    for (const auto &g : d.morphisms)
      p.morphisms.push_back(
          {pair_name(f.name, g.name), pair_name(f.src, g.src),
           pair_name(f.tgt, g.tgt)});
  for (const auto &x : c.objects)
    for (const auto &y : d.objects)
      p.identity[pair_name(x, y)] =
          pair_name(c.identity.at(x), d.identity.at(y));
  for (const auto &[cp, cv] : c.compose)
    for (const auto &[dp, dv] : d.compose)
      p.compose[{pair_name(cp.first, dp.first),
                 pair_name(cp.second, dp.second)}] = pair_name(cv, dv);
  return p;
}

FinCat coproduct(const FinCat &c, const FinCat &d) {
  FinCat s;
  auto add = [&](const FinCat &part, const std::string &tag) {
    for (const auto &x : part.objects)
      s.objects.push_back(tag + x);
    for (const auto &m : part.morphisms)
      s.morphisms.push_back({tag + m.name, tag + m.src, tag + m.tgt});
    for (const auto &[x, id] : part.identity)
      s.identity[tag + x] = tag + id;
    for (const auto &[pair, gf] : part.compose)
      s.compose[{tag + pair.first, tag + pair.second}] = tag + gf;
  };
  add(c, "inl.");
  add(d, "inr.");
  return s;
}

bool is_groupoid(const FinCat &c) {
  for (const auto &m : c.morphisms) {
    if (!c.inverse(m.name).has_value())
      return false;
  }
  return true;
}

std::vector<std::vector<std::string>> connected_components(const FinCat &c) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < c.objects.size(); ++i)
    index[c.objects[i]] = i;
  std::vector<std::size_t> parent(c.objects.size());
  for (std::size_t i = 0; i < parent.size(); ++i)
    parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i)
      i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto &m : c.morphisms) {
    std::size_t a = find(index.at(m.src));
    std::size_t b = find(index.at(m.tgt));
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < c.objects.size(); ++i)
    groups[find(i)].push_back(c.objects[i]);
  std::vector<std::vector<std::string>> out;
  for (auto &[root, members] : groups)
    out.push_back(std::move(members));
  return out;
}

FinFunctor identity_functor(const FinCat &c) {
  FinFunctor f;
  f.dom = c;
  f.cod = c;
  for (const auto &x : c.objects)
    f.object_map[x] = x;
  for (const auto &m : c.morphisms)
    f.morphism_map[m.name] = m.name;
  return f;
}

FinFunctor compose_functors(const FinFunctor &g, const FinFunctor &f) {
  FinFunctor h;
  h.dom = f.dom;
  h.cod = g.cod;
  for (const auto &[x, y] : f.object_map)
    h.object_map[x] = g.on_object(y);
  for (const auto &[m, n] : f.morphism_map)
    h.morphism_map[m] = g.on_morphism(n);
  return h;
}

FinCat relabel_objects(const FinCat &c,
                       const std::map<std::string, std::string> &renaming) {
  auto ren = [&](const std::string &x) {
    auto it = renaming.find(x);
    return it == renaming.end() ? x : it->second;
  };
  FinCat out;
  for (const auto &x : c.objects)
    out.objects.push_back(ren(x));
  for (const auto &m : c.morphisms)
    out.morphisms.push_back({m.name, ren(m.src), ren(m.tgt)});
  for (const auto &[x, id] : c.identity)
    out.identity[ren(x)] = id;
  out.compose = c.compose;
  return out;
}

CatValuedAction cat_valued_from_set(const SetValuedAction &a) {
  CatValuedAction out;
  out.base = a.base;
  for (const auto &[x, elems] : a.fiber)
    out.fiber[x] = discrete_category(elems);
  for (const auto &m : a.base.morphisms) {
    FinFunctor f;
    f.dom = out.fiber.at(m.src);
    f.cod = out.fiber.at(m.tgt);
    for (const auto &[x, y] : a.act.at(m.name)) {
      f.object_map[x] = y;
      f.morphism_map["id_" + x] = "id_" + y;
    }
    out.act[m.name] = f;
  }
  return out;
}

namespace {

/// Per-object fingerprint used to prune the object-bijection search.
struct DegreeProfile {
  std::size_t out_deg = 0;
  std::size_t in_deg = 0;
  std::size_t loops = 0;
  std::multiset<std::size_t> hom_out;
  std::multiset<std::size_t> hom_in;

  friend bool operator==(const DegreeProfile &, const DegreeProfile &) = default;
};

DegreeProfile profile_of(const FinCat &c, const std::string &x) {
  DegreeProfile p;
  for (const auto &m : c.morphisms) {
    if (m.src == x)
      ++p.out_deg;
    if (m.tgt == x)
      ++p.in_deg;
    if (m.src == x && m.tgt == x)
      ++p.loops;
  }
  for (const auto &y : c.objects) {
    p.hom_out.insert(c.hom(x, y).size());
    p.hom_in.insert(c.hom(y, x).size());
  }
  return p;
}

struct IsoSearch {
  const FinCat &c;
  const FinCat &d;
  std::size_t max_nodes;
  std::size_t nodes = 0;

  std::map<std::string, std::string> obj_map;
  std::map<std::string, std::string> obj_used; // d-object -> c-object
  std::map<std::string, std::string> mor_map;
  std::map<std::string, std::string> mor_used;

  bool assign_morphisms(std::size_t k);
  bool assign_objects(std::size_t k,
                      const std::vector<std::vector<std::string>> &candidates);

  void tick() {
    if (++nodes > max_nodes)
      throw Error("BudgetExceeded", "isomorphism search exceeded " +
                                        std::to_string(max_nodes) + " nodes");
  }

  /// Checks every composition constraint whose three participants are mapped.
  bool consistent_after(const std::string &fresh) {
    for (const auto &[pair, gf] : c.compose) {
      if (pair.first != fresh && pair.second != fresh && gf != fresh)
        continue;
      auto g = mor_map.find(pair.first);
      auto f = mor_map.find(pair.second);
      auto v = mor_map.find(gf);
      if (g == mor_map.end() || f == mor_map.end() || v == mor_map.end())
        continue;
      if (d.composed(g->second, f->second) !=
          std::optional<std::string>(v->second))
        return false;
    }
    return true;
  }
};

bool IsoSearch::assign_morphisms(std::size_t k) {
  if (k == c.morphisms.size())
    return true;
  const MorphismDecl &m = c.morphisms[k];
  if (mor_map.count(m.name))
    return assign_morphisms(k + 1); // identities are pre-assigned
  for (const auto &cand : d.hom(obj_map.at(m.src), obj_map.at(m.tgt))) {
    if (mor_used.count(cand))
      continue;
    tick();
    mor_map[m.name] = cand;
    mor_used[cand] = m.name;
    if (consistent_after(m.name) && assign_morphisms(k + 1))
      return true;
    mor_map.erase(m.name);
    mor_used.erase(cand);
  }
  return false;
}

bool IsoSearch::assign_objects(
    std::size_t k, const std::vector<std::vector<std::string>> &candidates) {
  if (k == c.objects.size()) {
    // Identities are forced; seed them before the morphism backtracking.
    mor_map.clear();
    mor_used.clear();
    for (const auto &[x, id] : c.identity) {
      const std::string &img = d.identity.at(obj_map.at(x));
      if (mor_used.count(img))
        return false;
      mor_map[id] = img;
      mor_used[img] = id;
    }
    if (assign_morphisms(0))
      return true;
    return false;
  }
  const std::string &x = c.objects[k];
  for (const auto &cand : candidates[k]) {
    if (obj_used.count(cand))
      continue;
    tick();
    obj_map[x] = cand;
    obj_used[cand] = x;
    if (assign_objects(k + 1, candidates))
      return true;
    obj_map.erase(x);
    obj_used.erase(cand);
  }
  return false;
}

bool is_valid_iso(const FinCat &c, const FinCat &d, const FinFunctor &fwd) {
  if (fwd.object_map.size() != c.objects.size() ||
      fwd.morphism_map.size() != c.morphisms.size())
    return false;
  std::set<std::string> obj_images, mor_images;
  for (const auto &[x, y] : fwd.object_map) {
    if (!c.has_object(x) || !d.has_object(y))
      return false;
    obj_images.insert(y);
  }
  for (const auto &[m, n] : fwd.morphism_map) {
    if (c.morphism(m) == nullptr || d.morphism(n) == nullptr)
      return false;
    mor_images.insert(n);
  }
  if (obj_images.size() != d.objects.size() ||
      mor_images.size() != d.morphisms.size())
    return false;
  return check_functor(fwd).ok;
}

FinFunctor invert_functor(const FinFunctor &fwd) {
  FinFunctor inv;
  inv.dom = fwd.cod;
  inv.cod = fwd.dom;
  for (const auto &[x, y] : fwd.object_map)
    inv.object_map[y] = x;
  for (const auto &[m, n] : fwd.morphism_map)
    inv.morphism_map[n] = m;
  return inv;
}

} // namespace

std::optional<std::pair<FinFunctor, FinFunctor>>
find_isomorphism(const FinCat &c, const FinCat &d, IsoBudget budget,
                 const std::optional<FinFunctor> &seed) {
  if (c.objects.size() != d.objects.size() ||
      c.morphisms.size() != d.morphisms.size())
    return std::nullopt;

  if (seed.has_value() && is_valid_iso(c, d, *seed)) {
    FinFunctor fwd = *seed;
    fwd.dom = c;
    fwd.cod = d;
    FinFunctor inv = invert_functor(fwd);
    if (check_functor(inv).ok)
      return std::make_pair(fwd, inv);
  }

  std::map<std::string, DegreeProfile> d_profiles;
  for (const auto &y : d.objects)
    d_profiles[y] = profile_of(d, y);
  std::vector<std::vector<std::string>> candidates;
  for (const auto &x : c.objects) {
    DegreeProfile px = profile_of(c, x);
    std::vector<std::string> cands;
    for (const auto &y : d.objects) {
      if (d_profiles.at(y) == px)
        cands.push_back(y);
    }
    if (cands.empty())
      return std::nullopt;
    candidates.push_back(std::move(cands));
  }

  IsoSearch search{.c = c, .d = d, .max_nodes = budget.max_nodes};
  if (!search.assign_objects(0, candidates))
    return std::nullopt;

  FinFunctor fwd;
  fwd.dom = c;
  fwd.cod = d;
  fwd.object_map = search.obj_map;
  fwd.morphism_map = search.mor_map;
  FinFunctor inv = invert_functor(fwd);
  return std::make_pair(fwd, inv);
}

FinCat functor_graph_category(const FinFunctor &fun) {
  FinCat g;
  for (const auto &x : fun.dom.objects)
    g.objects.push_back(pair_name(x, fun.on_object(x)));
  for (const auto &m : fun.dom.morphisms) {
    g.morphisms.push_back({pair_name(m.name, fun.on_morphism(m.name)),
                           pair_name(m.src, fun.on_object(m.src)),
                           pair_name(m.tgt, fun.on_object(m.tgt))});
  }
  for (const auto &[x, id] : fun.dom.identity)
    g.identity[pair_name(x, fun.on_object(x))] =
        pair_name(id, fun.on_morphism(id));
  for (const auto &[pair, gf] : fun.dom.compose)
    g.compose[{pair_name(pair.first, fun.on_morphism(pair.first)),
               pair_name(pair.second, fun.on_morphism(pair.second))}] =
        pair_name(gf, fun.on_morphism(gf));
  return g;
}

FinCat vertex_group(const FinCat &c, const std::string &object) {
  if (!is_groupoid(c))
    throw Error("NotAGroupoid", "vertex group requires a groupoid");
  if (!c.has_object(object))
    throw Error("DanglingReference", "unknown object " + object);
  FinCat v;
  v.objects.push_back(object);
  for (const auto &m : c.morphisms) {
    if (m.src == object && m.tgt == object)
      v.morphisms.push_back(m);
  }
  v.identity[object] = c.identity.at(object);
  for (const auto &g : v.morphisms)
    for (const auto &f : v.morphisms)
      v.compose[{g.name, f.name}] = *c.composed(g.name, f.name);
  return v;
}

} // namespace fibrato
