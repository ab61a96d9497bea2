#include "fibrato/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fibrato/errors.hpp"

namespace fibrato {

Perm::Perm(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), 1);
}

Perm::Perm(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t v : images_) {
    if (v < 1 || v > images_.size() || seen[v - 1])
      throw Error("InvalidPermutation", "not a bijection of {1..n}");
    seen[v - 1] = true;
  }
}

std::size_t Perm::operator[](std::size_t point) const {
  return images_.at(point - 1);
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i + 1)
      return false;
  }
  return true;
}

Perm Perm::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[images_[i] - 1] = i + 1;
  return Perm(std::move(inv));
}

Perm operator*(const Perm &a, const Perm &b) {
  if (a.degree() != b.degree())
    throw Error("DegreeMismatch", "permutation degrees differ");
  std::vector<std::size_t> out(a.degree());
  for (std::size_t x = 1; x <= a.degree(); ++x)
    out[x - 1] = a[b[x]];
  return Perm(std::move(out));
}

const GroupElement &PermGroup::element(const std::string &name) const {
  for (const auto &e : elements) {
    if (e.name == name)
      return e;
  }
  throw Error("DanglingReference", "unknown group element " + name);
}

bool PermGroup::contains(const Perm &p) const {
  for (const auto &e : elements) {
    if (e.perm == p)
      return true;
  }
  return false;
}

const std::string &PermGroup::name_of(const Perm &p) const {
  for (const auto &e : elements) {
    if (e.perm == p)
      return e.name;
  }
  throw Error("DanglingReference", "permutation not in group");
}

std::string PermGroup::mult(const std::string &a, const std::string &b) const {
  return name_of(element(a).perm * element(b).perm);
}

std::string PermGroup::inverse_of(const std::string &a) const {
  return name_of(element(a).perm.inverse());
}

bool PermGroup::contains_all(const PermGroup &other) const {
  for (const auto &e : other.elements) {
    if (!contains(e.perm))
      return false;
  }
  return true;
}

ValidationReport check_group(const PermGroup &g) {
  ValidationReport report;
  if (g.elements.empty() || !g.elements[0].perm.is_identity() ||
      g.elements[0].name != "e")
    report.add("identity-element", {});
  std::set<std::vector<std::size_t>> seen;
  for (const auto &e : g.elements) {
    if (e.perm.degree() != g.degree)
      report.add("degree", {e.name});
    if (!seen.insert(e.perm.images()).second)
      report.add("duplicate-element", {e.name});
    if (!g.contains(e.perm.inverse()))
      report.add("inverse-closure", {e.name});
  }
  for (const auto &a : g.elements) {
    for (const auto &b : g.elements) {
      if (!g.contains(a.perm * b.perm))
        report.add("mult-closure", {a.name, b.name});
    }
  }
  return report;
}

namespace {
std::size_t g_closure_budget = kDefaultClosureBudget;
} // namespace

std::size_t configured_closure_budget() { return g_closure_budget; }

void configure_closure_budget(std::size_t budget) {
  g_closure_budget = budget == 0 ? kDefaultClosureBudget : budget;
}

PermGroup close_generators(std::size_t degree,
                           std::vector<std::pair<std::string, Perm>> generators,
                           std::size_t budget) {
  if (budget == 0)
    budget = g_closure_budget;
  for (const auto &[name, p] : generators) {
    if (p.degree() != degree)
      throw Error("DegreeMismatch", "generator " + name + " has wrong degree");
  }
  PermGroup g;
  g.degree = degree;
  g.generators = generators;
  g.elements.push_back({"e", Perm(degree)});
  std::set<std::vector<std::size_t>> seen{Perm(degree).images()};
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    // Breadth-first: shortest words first, generator order breaks ties.
    GroupElement current = g.elements[i];
    for (const auto &[gname, gperm] : generators) {
      Perm next = current.perm * gperm;
      if (seen.insert(next.images()).second) {
        std::string word =
            current.name == "e" ? gname : current.name + "*" + gname;
        g.elements.push_back({word, next});
        if (g.elements.size() > budget)
          throw Error("ClosureBudgetExceeded",
                      "closure exceeded " + std::to_string(budget) +
                          " elements");
      }
    }
  }
  return g;
}

PermGroup standard_group(StandardGroupKind kind, std::size_t n) {
  if (n < 1)
    throw Error("InvalidArgument", "n must be at least 1");
  switch (kind) {
  case StandardGroupKind::Cyclic: {
    std::vector<std::size_t> rot(n);
    for (std::size_t i = 0; i < n; ++i)
      rot[i] = (i + 1) % n + 1;
    if (n == 1)
      return close_generators(1, {});
    return close_generators(n, {{"r", Perm(rot)}});
  }
  case StandardGroupKind::Dihedral: {
    // Faithful on n points for n >= 3; the degenerate n = 1, 2 cases fall
    // back to the regular representation on 2n points.
    if (n == 1)
      return close_generators(2, {{"s", Perm({2, 1})}});
    if (n == 2)
      return close_generators(
          4, {{"r", Perm({2, 1, 3, 4})}, {"s", Perm({1, 2, 4, 3})}});
    std::vector<std::size_t> rot(n), refl(n);
    for (std::size_t i = 0; i < n; ++i) {
      rot[i] = (i + 1) % n + 1;
      refl[i] = i == 0 ? 1 : n + 1 - i; // fixes 1, swaps p and n+2-p
    }
    return close_generators(n, {{"r", Perm(rot)}, {"s", Perm(refl)}});
  }
  case StandardGroupKind::Symmetric: {
    if (n == 1)
      return close_generators(1, {});
    std::vector<std::size_t> cyc(n), swap(n);
    for (std::size_t i = 0; i < n; ++i) {
      cyc[i] = (i + 1) % n + 1;
      swap[i] = i + 1;
    }
    swap[0] = 2;
    swap[1] = 1;
    if (n == 2)
      return close_generators(2, {{"s", Perm(swap)}});
    return close_generators(n, {{"s", Perm(swap)}, {"c", Perm(cyc)}});
  }
  }
  throw Error("InvalidArgument", "unknown group kind");
}

const std::string &GroupAction::apply(const std::string &element,
                                      const std::string &point) const {
  auto it = table.find({element, point});
  if (it == table.end())
    throw Error("IncompleteTable",
                "no entry for (" + element + ", " + point + ")");
  return it->second;
}

ValidationReport check_action(const GroupAction &a) {
  for (const auto &e : a.group.elements) {
    for (const auto &x : a.carrier) {
      if (a.table.find({e.name, x}) == a.table.end())
        throw Error("IncompleteTable",
                    "no entry for (" + e.name + ", " + x + ")");
    }
  }
  ValidationReport report;
  for (const auto &x : a.carrier) {
    if (a.apply("e", x) != x)
      report.add("unit", {x, a.apply("e", x)});
  }
  for (const auto &g2 : a.group.elements) {
    for (const auto &g1 : a.group.elements) {
      std::string prod = a.group.mult(g2.name, g1.name);
      for (const auto &x : a.carrier) {
        if (a.apply(g2.name, a.apply(g1.name, x)) != a.apply(prod, x))
          report.add("compatibility", {g2.name, g1.name, x});
      }
    }
  }
  return report;
}

ValidationReport check_rep(const RepTable &r) {
  ValidationReport report;
  auto is_bijection = [&](const std::map<std::string, std::string> &f) {
    std::set<std::string> image;
    for (const auto &x : r.carrier) {
      auto it = f.find(x);
      if (it == f.end())
        return false;
      image.insert(it->second);
    }
    return image.size() == r.carrier.size();
  };
  for (const auto &e : r.group.elements) {
    auto it = r.phi.find(e.name);
    if (it == r.phi.end()) {
      report.add("phi-totality", {e.name});
      continue;
    }
    if (!is_bijection(it->second))
      report.add("phi-bijection", {e.name});
  }
  for (const auto &a : r.group.elements) {
    for (const auto &b : r.group.elements) {
      auto pa = r.phi.find(a.name);
      auto pb = r.phi.find(b.name);
      auto pab = r.phi.find(r.group.mult(a.name, b.name));
      if (pa == r.phi.end() || pb == r.phi.end() || pab == r.phi.end())
        continue;
      for (const auto &x : r.carrier) {
        if (pa->second.at(pb->second.at(x)) != pab->second.at(x))
          report.add("homomorphism", {a.name, b.name, x});
      }
    }
  }
  return report;
}

RepTable action_to_rep(const GroupAction &a) {
  RepTable r;
  r.group = a.group;
  r.carrier = a.carrier;
  for (const auto &e : a.group.elements) {
    std::map<std::string, std::string> f;
    for (const auto &x : a.carrier)
      f[x] = a.apply(e.name, x);
    r.phi[e.name] = std::move(f);
  }
  return r;
}

GroupAction rep_to_action(const RepTable &r) {
  GroupAction a;
  a.group = r.group;
  a.carrier = r.carrier;
  for (const auto &[e, f] : r.phi) {
    for (const auto &[x, y] : f)
      a.table[{e, x}] = y;
  }
  return a;
}

GroupAction natural_action(const PermGroup &g) {
  GroupAction a;
  a.group = g;
  for (std::size_t i = 1; i <= g.degree; ++i)
    a.carrier.push_back(std::to_string(i));
  for (const auto &e : g.elements) {
    for (std::size_t i = 1; i <= g.degree; ++i)
      a.table[{e.name, std::to_string(i)}] = std::to_string(e.perm[i]);
  }
  return a;
}

GroupAction trivial_action(const PermGroup &g,
                           const std::vector<std::string> &carrier) {
  GroupAction a;
  a.group = g;
  a.carrier = carrier;
  for (const auto &e : g.elements)
    for (const auto &x : carrier)
      a.table[{e.name, x}] = x;
  return a;
}

std::vector<OrbitStabilizer> orbits_stabilizers(const GroupAction &a) {
  std::vector<OrbitStabilizer> out;
  std::set<std::string> seen;
  for (const auto &x : a.carrier) {
    if (seen.count(x))
      continue;
    OrbitStabilizer os;
    std::set<std::string> orbit;
    for (const auto &e : a.group.elements)
      orbit.insert(a.apply(e.name, x));
    for (const auto &p : a.carrier) {
      if (orbit.count(p)) {
        os.orbit.push_back(p);
        seen.insert(p);
      }
    }
    std::vector<std::string> stab;
    for (const auto &e : a.group.elements) {
      if (a.apply(e.name, x) == x)
        stab.push_back(e.name);
    }
    os.stabilizer = subgroup_from_elements(a.group, stab);
    out.push_back(std::move(os));
  }
  return out;
}

PermGroup subgroup_from_elements(const PermGroup &g,
                                 const std::vector<std::string> &names) {
  PermGroup sub;
  sub.degree = g.degree;
  std::set<std::string> wanted(names.begin(), names.end());
  for (const auto &e : g.elements) {
    if (wanted.count(e.name))
      sub.elements.push_back(e);
  }
  if (sub.elements.size() != wanted.size())
    throw Error("DanglingReference", "subgroup names not all in group");
  for (const auto &e : sub.elements) {
    if (e.name != "e")
      sub.generators.push_back({e.name, e.perm});
    if (!sub.contains(e.perm.inverse()))
      throw Error("NotASubgroup", e.name + " has no inverse in subset");
  }
  for (const auto &x : sub.elements)
    for (const auto &y : sub.elements)
      if (!sub.contains(x.perm * y.perm))
        throw Error("NotASubgroup",
                    "subset not closed under " + x.name + "*" + y.name);
  return sub;
}

FinCat group_as_category(const PermGroup &g) {
  FinCat c;
  c.objects.push_back("*");
  c.identity["*"] = "e";
  for (const auto &e : g.elements)
    c.morphisms.push_back({e.name, "*", "*"});
  for (const auto &a : g.elements)
    for (const auto &b : g.elements)
      c.compose[{a.name, b.name}] = g.mult(a.name, b.name);
  return c;
}

PermGroup direct_product(const PermGroup &g, const PermGroup &h) {
  PermGroup p;
  p.degree = g.degree + h.degree;
  auto pair_perm = [&](const Perm &a, const Perm &b) {
    std::vector<std::size_t> images(p.degree);
    for (std::size_t i = 1; i <= g.degree; ++i)
      images[i - 1] = a[i];
    for (std::size_t i = 1; i <= h.degree; ++i)
      images[g.degree + i - 1] = g.degree + b[i];
    return Perm(images);
  };
  for (const auto &a : g.elements)
    for (const auto &b : h.elements)
      p.elements.push_back(
          {"(" + a.name + "," + b.name + ")", pair_perm(a.perm, b.perm)});
  // Normalize the identity to the front with its canonical name.
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    if (p.elements[i].perm.is_identity()) {
      std::swap(p.elements[0], p.elements[i]);
      break;
    }
  }
  p.elements[0].name = "e";
  for (const auto &[name, perm] : g.generators)
    p.generators.push_back({"(" + name + ",e)", pair_perm(perm, Perm(h.degree))});
  for (const auto &[name, perm] : h.generators)
    p.generators.push_back({"(e," + name + ")", pair_perm(Perm(g.degree), perm)});
  return p;
}

PermGroup wreath_product(const PermGroup &g, const PermGroup &top,
                         std::size_t budget) {
  std::size_t n = g.degree;
  std::size_t k = top.degree;
  if (k == 1 && top.order() == 1)
    return g;
  std::vector<std::pair<std::string, Perm>> gens;
  for (const auto &[name, perm] : g.generators) {
    for (std::size_t b = 1; b <= k; ++b) {
      std::vector<std::size_t> images(n * k);
      std::iota(images.begin(), images.end(), 1);
      for (std::size_t q = 1; q <= n; ++q)
        images[(b - 1) * n + q - 1] = (b - 1) * n + perm[q];
      gens.push_back({name + "@" + std::to_string(b), Perm(images)});
    }
  }
  for (const auto &[name, perm] : top.generators) {
    std::vector<std::size_t> images(n * k);
    for (std::size_t b = 1; b <= k; ++b)
      for (std::size_t q = 1; q <= n; ++q)
        images[(b - 1) * n + q - 1] = (perm[b] - 1) * n + q;
    gens.push_back({name, Perm(images)});
  }
  return close_generators(n * k, gens, budget);
}

bool preserves_blocks(const PermGroup &g, std::size_t block_size) {
  if (block_size == 0 || g.degree % block_size != 0)
    return false;
  for (const auto &e : g.elements) {
    for (std::size_t b = 0; b < g.degree / block_size; ++b) {
      std::size_t first_image = (e.perm[b * block_size + 1] - 1) / block_size;
      for (std::size_t q = 2; q <= block_size; ++q) {
        if ((e.perm[b * block_size + q] - 1) / block_size != first_image)
          return false;
      }
    }
  }
  return true;
}

} // namespace fibrato
