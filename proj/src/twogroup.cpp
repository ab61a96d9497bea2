#include "fibrato/twogroup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "fibrato/errors.hpp"

namespace fibrato {

namespace {

struct AutSearch {
  const FinCat &c;
  std::size_t max_nodes;
  std::size_t nodes = 0;
  std::map<std::string, std::string> obj_map;
  std::map<std::string, std::string> mor_map;
  std::map<std::string, std::string> mor_used;
  std::vector<FinFunctor> found;

  void tick() {
    if (++nodes > max_nodes)
      throw Error("BudgetExceeded", "automorphism search exceeded " +
                                        std::to_string(max_nodes) + " nodes");
  }

  bool consistent_after(const std::string &fresh) {
    for (const auto &[pair, gf] : c.compose) {
      if (pair.first != fresh && pair.second != fresh && gf != fresh)
        continue;
      auto g = mor_map.find(pair.first);
      auto f = mor_map.find(pair.second);
      auto v = mor_map.find(gf);
      if (g == mor_map.end() || f == mor_map.end() || v == mor_map.end())
        continue;
      if (c.composed(g->second, f->second) !=
          std::optional<std::string>(v->second))
        return false;
    }
    return true;
  }

  void assign_morphisms(std::size_t k) {
    if (k == c.morphisms.size()) {
      FinFunctor f;
      f.dom = c;
      f.cod = c;
      f.object_map = obj_map;
      f.morphism_map = mor_map;
      found.push_back(std::move(f));
      return;
    }
    const MorphismDecl &m = c.morphisms[k];
    if (mor_map.count(m.name)) {
      assign_morphisms(k + 1);
      return;
    }
    for (const auto &cand : c.hom(obj_map.at(m.src), obj_map.at(m.tgt))) {
      if (mor_used.count(cand))
        continue;
      tick();
      mor_map[m.name] = cand;
      mor_used[cand] = m.name;
      if (consistent_after(m.name))
        assign_morphisms(k + 1);
      mor_map.erase(m.name);
      mor_used.erase(cand);
    }
  }
};

/// All strict isomorphisms c -> c, in a deterministic order.
std::vector<FinFunctor> all_automorphisms(const FinCat &c,
                                          std::size_t max_nodes,
                                          std::size_t &nodes_used) {
  std::vector<std::size_t> perm(c.objects.size());
  std::iota(perm.begin(), perm.end(), 0);
  AutSearch search{.c = c, .max_nodes = max_nodes};
  do {
    // Hom-set cardinalities must match pointwise or no extension exists.
    bool plausible = true;
    for (std::size_t i = 0; i < perm.size() && plausible; ++i) {
      for (std::size_t j = 0; j < perm.size() && plausible; ++j) {
        if (c.hom(c.objects[i], c.objects[j]).size() !=
            c.hom(c.objects[perm[i]], c.objects[perm[j]]).size())
          plausible = false;
      }
    }
    if (!plausible)
      continue;
    search.obj_map.clear();
    for (std::size_t i = 0; i < perm.size(); ++i)
      search.obj_map[c.objects[i]] = c.objects[perm[i]];
    search.mor_map.clear();
    search.mor_used.clear();
    bool id_clash = false;
    for (const auto &[x, id] : c.identity) {
      const std::string &img = c.identity.at(search.obj_map.at(x));
      if (search.mor_used.count(img)) {
        id_clash = true;
        break;
      }
      search.mor_map[id] = img;
      search.mor_used[img] = id;
    }
    if (!id_clash)
      search.assign_morphisms(0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  nodes_used = search.nodes;
  return std::move(search.found);
}

/// All natural isomorphisms gamma => gamma', by component backtracking with
/// naturality checked as soon as both endpoints of a morphism are chosen.
void enumerate_cells(const FinCat &c, const FinFunctor &gamma,
                     const FinFunctor &gamma_primed, std::size_t from,
                     std::size_t to, std::vector<TwoCell> &out,
                     std::size_t max_nodes, std::size_t &nodes) {
  std::map<std::string, std::string> component;
  std::vector<std::string> order = c.objects;

  auto natural_so_far = [&](const std::string &fresh) {
    for (const auto &m : c.morphisms) {
      if (m.src != fresh && m.tgt != fresh)
        continue;
      auto cx = component.find(m.src);
      auto cy = component.find(m.tgt);
      if (cx == component.end() || cy == component.end())
        continue;
      auto lhs = c.composed(gamma_primed.on_morphism(m.name), cx->second);
      auto rhs = c.composed(cy->second, gamma.on_morphism(m.name));
      if (!lhs || lhs != rhs)
        return false;
    }
    return true;
  };

  std::function<void(std::size_t)> place = [&](std::size_t k) {
    if (k == order.size()) {
      out.push_back({from, to, component});
      return;
    }
    const std::string &x = order[k];
    for (const auto &cand :
         c.hom(gamma.on_object(x), gamma_primed.on_object(x))) {
      if (!c.inverse(cand).has_value())
        continue;
      if (++nodes > max_nodes)
        throw Error("BudgetExceeded", "2-cell search exceeded " +
                                          std::to_string(max_nodes) + " nodes");
      component[x] = cand;
      if (natural_so_far(x))
        place(k + 1);
      component.erase(x);
    }
  };
  place(0);
}

} // namespace

FinFunctor compose_one_cells_value(const TwoGroup &t, std::size_t g_after,
                                   std::size_t f) {
  return compose_functors(t.one_cells.at(g_after), t.one_cells.at(f));
}

TwoGroup aut_2group(const FinCat &c, AutBudget budget) {
  if (c.objects.size() > budget.max_objects ||
      c.morphisms.size() > budget.max_morphisms)
    throw Error("BudgetExceeded",
                "category exceeds the aut budget (" +
                    std::to_string(c.objects.size()) + " objects, " +
                    std::to_string(c.morphisms.size()) + " morphisms)");
  auto report = check_category(c);
  if (!report.ok)
    throw Error("ValidationError", report.summary());

  TwoGroup t;
  t.base_object = c;
  std::size_t nodes = 0;
  t.one_cells = all_automorphisms(c, budget.max_nodes, nodes);

  for (std::size_t i = 0; i < t.one_cells.size(); ++i) {
    for (std::size_t j = 0; j < t.one_cells.size(); ++j) {
      std::vector<TwoCell> cells;
      enumerate_cells(c, t.one_cells[i], t.one_cells[j], i, j, cells,
                      budget.max_nodes, nodes);
      std::vector<std::size_t> ids;
      for (auto &cell : cells) {
        ids.push_back(t.cells.size());
        t.cells.push_back(std::move(cell));
      }
      if (!ids.empty())
        t.two_cells[{i, j}] = std::move(ids);
    }
  }

  t.tables_stored = t.cells.size() <= 1500;
  if (t.tables_stored) {
    for (std::size_t i = 0; i < t.one_cells.size(); ++i)
      for (std::size_t j = 0; j < t.one_cells.size(); ++j)
        t.one_cell_compose[{i, j}] =
            one_cell_index(t, compose_one_cells_value(t, i, j));
    for (std::size_t a = 0; a < t.cells.size(); ++a) {
      for (std::size_t b = 0; b < t.cells.size(); ++b) {
        auto v = vertical_compose(t, a, b);
        if (v)
          t.vertical[{a, b}] = *v;
        auto h = horizontal_compose(t, a, b);
        if (h)
          t.horizontal[{a, b}] = *h;
      }
    }
  }
  return t;
}

std::size_t one_cell_index(const TwoGroup &t, const FinFunctor &f) {
  for (std::size_t i = 0; i < t.one_cells.size(); ++i) {
    if (t.one_cells[i].object_map == f.object_map &&
        t.one_cells[i].morphism_map == f.morphism_map)
      return i;
  }
  throw Error("DanglingReference", "functor is not a 1-cell of this 2-group");
}

std::size_t compose_one_cells(const TwoGroup &t, std::size_t g_after,
                              std::size_t f) {
  auto it = t.one_cell_compose.find({g_after, f});
  if (it != t.one_cell_compose.end())
    return it->second;
  return one_cell_index(t, compose_one_cells_value(t, g_after, f));
}

std::size_t inverse_one_cell(const TwoGroup &t, std::size_t i) {
  const FinFunctor &f = t.one_cells.at(i);
  for (std::size_t j = 0; j < t.one_cells.size(); ++j) {
    FinFunctor composite = compose_functors(t.one_cells[j], f);
    if (composite.object_map == identity_functor(t.base_object).object_map &&
        composite.morphism_map == identity_functor(t.base_object).morphism_map)
      return j;
  }
  throw Error("DanglingReference", "1-cell has no inverse in the 2-group");
}

std::optional<std::size_t> find_cell(const TwoGroup &t, const TwoCell &cell) {
  auto it = t.two_cells.find({cell.from, cell.to});
  if (it == t.two_cells.end())
    return std::nullopt;
  for (std::size_t id : it->second) {
    if (t.cells[id].component == cell.component)
      return id;
  }
  return std::nullopt;
}

std::optional<std::size_t> vertical_compose(const TwoGroup &t,
                                            std::size_t second,
                                            std::size_t first) {
  const TwoCell &a = t.cells.at(first);
  const TwoCell &b = t.cells.at(second);
  if (a.to != b.from)
    return std::nullopt;
  TwoCell out;
  out.from = a.from;
  out.to = b.to;
  for (const auto &[x, ax] : a.component)
    out.component[x] = *t.base_object.composed(b.component.at(x), ax);
  return find_cell(t, out);
}

std::optional<std::size_t> horizontal_compose(const TwoGroup &t,
                                              std::size_t left,
                                              std::size_t right) {
  // left: delta => delta', right: gamma => gamma'; composite
  // delta∘gamma => delta'∘gamma' with component delta'(chi_x) ∘ chi'_{gamma x}.
  const TwoCell &chi_prime = t.cells.at(left);
  const TwoCell &chi = t.cells.at(right);
  const FinFunctor &gamma = t.one_cells.at(chi.from);
  const FinFunctor &delta_primed = t.one_cells.at(chi_prime.to);
  TwoCell out;
  out.from = compose_one_cells(t, chi_prime.from, chi.from);
  out.to = compose_one_cells(t, chi_prime.to, chi.to);
  for (const auto &x : t.base_object.objects) {
    const std::string &moved = delta_primed.on_morphism(chi.component.at(x));
    const std::string &step = chi_prime.component.at(gamma.on_object(x));
    out.component[x] = *t.base_object.composed(moved, step);
  }
  return find_cell(t, out);
}

ValidationReport check_two_group(const TwoGroup &t) {
  ValidationReport report;
  const FinCat &c = t.base_object;
  FinFunctor id = identity_functor(c);

  bool has_identity = false;
  for (const auto &f : t.one_cells) {
    if (f.object_map == id.object_map && f.morphism_map == id.morphism_map)
      has_identity = true;
  }
  if (!has_identity)
    report.add("one-cells-identity", {});
  for (std::size_t i = 0; i < t.one_cells.size(); ++i) {
    auto fr = check_functor(t.one_cells[i]);
    if (!fr.ok)
      report.add("one-cell-functor", {std::to_string(i)});
    try {
      inverse_one_cell(t, i);
    } catch (const Error &) {
      report.add("one-cell-inverse", {std::to_string(i)});
    }
    for (std::size_t j = 0; j < t.one_cells.size(); ++j) {
      try {
        compose_one_cells(t, i, j);
      } catch (const Error &) {
        report.add("one-cell-closure", {std::to_string(i), std::to_string(j)});
      }
    }
  }

  for (std::size_t a = 0; a < t.cells.size(); ++a) {
    const TwoCell &cell = t.cells[a];
    const FinFunctor &gamma = t.one_cells.at(cell.from);
    const FinFunctor &gamma_primed = t.one_cells.at(cell.to);
    for (const auto &[x, comp] : cell.component) {
      if (!c.inverse(comp).has_value())
        report.add("two-cell-invertible", {std::to_string(a), x});
    }
    for (const auto &m : c.morphisms) {
      auto sq = naturality_square(c, gamma, gamma_primed, cell.component, m.name);
      if (!sq.commutes)
        report.add("two-cell-naturality", {std::to_string(a), m.name});
    }
    // Vertical inverse: invert every component.
    TwoCell inv;
    inv.from = cell.to;
    inv.to = cell.from;
    for (const auto &[x, comp] : cell.component)
      inv.component[x] = *c.inverse(comp);
    if (!find_cell(t, inv))
      report.add("two-cell-inverse", {std::to_string(a)});
  }

  // Interchange: (xi2 ∘v xi1) ∘h (chi2 ∘v chi1) must equal
  // (xi2 ∘h chi2) ∘v (xi1 ∘h chi1) for every composable quadruple.
  std::vector<std::pair<std::size_t, std::size_t>> vertical_pairs;
  for (std::size_t first = 0; first < t.cells.size(); ++first)
    for (std::size_t second = 0; second < t.cells.size(); ++second)
      if (t.cells[first].to == t.cells[second].from)
        vertical_pairs.push_back({first, second});
  for (const auto &[chi1, chi2] : vertical_pairs) {
    for (const auto &[xi1, xi2] : vertical_pairs) {
      auto chi = vertical_compose(t, chi2, chi1);
      auto xi = vertical_compose(t, xi2, xi1);
      auto bottom = horizontal_compose(t, xi1, chi1);
      auto top = horizontal_compose(t, xi2, chi2);
      if (!chi || !xi || !bottom || !top) {
        report.add("interchange-closure",
                   {std::to_string(chi1), std::to_string(chi2),
                    std::to_string(xi1), std::to_string(xi2)});
        continue;
      }
      auto lhs = horizontal_compose(t, *xi, *chi);
      auto rhs = vertical_compose(t, *top, *bottom);
      if (!lhs || !rhs || *lhs != *rhs)
        report.add("interchange",
                   {std::to_string(chi1), std::to_string(chi2),
                    std::to_string(xi1), std::to_string(xi2)});
    }
  }
  return report;
}

NaturalitySquare naturality_square(const FinCat &c, const FinFunctor &gamma,
                                   const FinFunctor &gamma_primed,
                                   const std::map<std::string, std::string> &component,
                                   const std::string &f) {
  const MorphismDecl *m = c.morphism(f);
  if (m == nullptr)
    throw Error("DanglingReference", "unknown morphism " + f);
  NaturalitySquare sq;
  sq.gamma_x = gamma.on_object(m->src);
  sq.gamma_y = gamma.on_object(m->tgt);
  sq.gamma_primed_x = gamma_primed.on_object(m->src);
  sq.gamma_primed_y = gamma_primed.on_object(m->tgt);
  sq.top = gamma.on_morphism(f);
  sq.bottom = gamma_primed.on_morphism(f);
  sq.left = component.at(m->src);
  sq.right = component.at(m->tgt);
  auto around_top = c.composed(sq.right, sq.top);
  auto around_bottom = c.composed(sq.bottom, sq.left);
  sq.cell = {sq.left, sq.right};
  sq.commutes = around_top.has_value() && around_top == around_bottom;
  return sq;
}

NaturalitySquare naturality_square(const TwoGroup &t, std::size_t cell_index,
                                   const std::string &f) {
  const TwoCell &cell = t.cells.at(cell_index);
  return naturality_square(t.base_object, t.one_cells.at(cell.from),
                           t.one_cells.at(cell.to), cell.component, f);
}

NaturalitySquare embed_square_at_node(const NaturalitySquare &sq,
                                      const FibredCategory &total,
                                      const std::string &node) {
  if (!total.base.has_object(node))
    throw Error("DanglingReference", "unknown base object " + node);
  const std::string id_node = total.base.identity.at(node);
  auto obj = [&](const std::string &o) {
    std::string name = "(" + node + "," + o + ")";
    if (!total.total.has_object(name))
      throw Error("FiberMismatch",
                  o + " does not lie in the fiber over " + node);
    return name;
  };
  auto mor = [&](const std::string &k) {
    std::string name = "(" + id_node + "," + k + ")";
    if (total.total.morphism(name) == nullptr)
      throw Error("FiberMismatch",
                  k + " does not lie in the fiber over " + node);
    return name;
  };
  NaturalitySquare out;
  out.gamma_x = obj(sq.gamma_x);
  out.gamma_y = obj(sq.gamma_y);
  out.gamma_primed_x = obj(sq.gamma_primed_x);
  out.gamma_primed_y = obj(sq.gamma_primed_y);
  out.top = mor(sq.top);
  out.bottom = mor(sq.bottom);
  out.left = mor(sq.left);
  out.right = mor(sq.right);
  out.cell = {out.left, out.right};
  auto around_top = total.total.composed(out.right, out.top);
  auto around_bottom = total.total.composed(out.bottom, out.left);
  out.commutes = around_top.has_value() && around_top == around_bottom;
  return out;
}

NaturalitySquare outer_square(const TwoGroup &t_outer, std::size_t cell_index,
                              const std::string &total_morphism) {
  if (t_outer.base_object.morphism(total_morphism) == nullptr)
    throw Error("DanglingReference",
                "morphism " + total_morphism + " is not in the acted category");
  return naturality_square(t_outer, cell_index, total_morphism);
}

} // namespace fibrato
