#include "fibrato/internal.hpp"

#include <algorithm>
#include <set>

#include "fibrato/errors.hpp"

namespace fibrato {

namespace {

const std::string &lookup(const std::map<std::string, std::string> &f,
                          const std::string &x, const char *what) {
  auto it = f.find(x);
  if (it == f.end())
    throw Error("IncompleteTable", std::string(what) + " missing at " + x);
  return it->second;
}

} // namespace

ValidationReport check_internal_groupoid(const InternalGroupoidData &t) {
  std::set<std::string> objs(t.g0.begin(), t.g0.end());
  std::set<std::string> arrs(t.g1.begin(), t.g1.end());
  if (objs.size() != t.g0.size() || arrs.size() != t.g1.size())
    throw Error("DuplicateName", "objects or arrows repeat");

  auto check_into = [&](const std::map<std::string, std::string> &f,
                        const std::set<std::string> &codomain,
                        const char *what) {
    for (const auto &[x, y] : f) {
      if (codomain.count(y) == 0)
        throw Error("DanglingReference",
                    std::string(what) + " maps " + x + " to unknown " + y);
    }
  };
  check_into(t.d0, objs, "d0");
  check_into(t.d1, objs, "d1");
  check_into(t.e, arrs, "e");
  check_into(t.i, arrs, "i");

  for (const auto &g : t.g1) {
    lookup(t.d0, g, "d0");
    lookup(t.d1, g, "d1");
    lookup(t.i, g, "i");
  }
  for (const auto &x : t.g0)
    lookup(t.e, x, "e");

  for (const auto &[pair, v] : t.m) {
    if (arrs.count(pair.first) == 0 || arrs.count(pair.second) == 0 ||
        arrs.count(v) == 0)
      throw Error("DanglingReference", "m entry names unknown arrow");
    if (t.d0.at(pair.first) != t.d1.at(pair.second))
      throw Error("DomainMismatch", "m defined on non-composable (" +
                                        pair.first + ", " + pair.second + ")");
  }
  for (const auto &g : t.g1) {
    for (const auto &f : t.g1) {
      if (t.d0.at(g) == t.d1.at(f) && t.m.find({g, f}) == t.m.end())
        throw Error("IncompleteTable",
                    "m missing at (" + g + ", " + f + ")");
    }
  }

  ValidationReport report;
  for (const auto &x : t.g0) {
    const std::string &ex = t.e.at(x);
    if (t.d0.at(ex) != x || t.d1.at(ex) != x)
      report.add("identity-section", {x, ex});
  }
  for (const auto &[pair, v] : t.m) {
    if (t.d0.at(v) != t.d0.at(pair.second) || t.d1.at(v) != t.d1.at(pair.first))
      report.add("m-compatibility", {pair.first, pair.second, v});
  }
  for (const auto &g : t.g1) {
    auto left = t.m.find({t.e.at(t.d1.at(g)), g});
    auto right = t.m.find({g, t.e.at(t.d0.at(g))});
    if (left == t.m.end() || left->second != g)
      report.add("unit-left", {g});
    if (right == t.m.end() || right->second != g)
      report.add("unit-right", {g});
  }
  for (const auto &h : t.g1) {
    for (const auto &g : t.g1) {
      if (t.d0.at(h) != t.d1.at(g))
        continue;
      for (const auto &f : t.g1) {
        if (t.d0.at(g) != t.d1.at(f))
          continue;
        auto gf = t.m.find({g, f});
        auto hg = t.m.find({h, g});
        if (gf == t.m.end() || hg == t.m.end())
          continue;
        auto outer_left = t.m.find({h, gf->second});
        auto outer_right = t.m.find({hg->second, f});
        if (outer_left == t.m.end() || outer_right == t.m.end() ||
            outer_left->second != outer_right->second)
          report.add("associativity", {h, g, f});
      }
    }
  }
  for (const auto &g : t.g1) {
    const std::string &ig = t.i.at(g);
    if (t.d0.at(ig) != t.d1.at(g) || t.d1.at(ig) != t.d0.at(g)) {
      report.add("inverse-endpoints", {g, ig});
      continue;
    }
    auto left = t.m.find({ig, g});
    auto right = t.m.find({g, ig});
    if (left == t.m.end() || left->second != t.e.at(t.d0.at(g)))
      report.add("inverse-left", {g, ig});
    if (right == t.m.end() || right->second != t.e.at(t.d1.at(g)))
      report.add("inverse-right", {g, ig});
    if (t.i.at(ig) != g)
      report.add("inverse-involution", {g, ig});
  }
  return report;
}

InternalGroupoidData category_to_internal(const FinCat &c) {
  if (!is_groupoid(c))
    throw Error("NotAGroupoid", "internal form requires a groupoid");
  InternalGroupoidData t;
  t.g0 = c.objects;
  for (const auto &m : c.morphisms) {
    t.g1.push_back(m.name);
    t.d0[m.name] = m.src;
    t.d1[m.name] = m.tgt;
    t.i[m.name] = *c.inverse(m.name);
  }
  for (const auto &[x, id] : c.identity)
    t.e[x] = id;
  t.m = c.compose;
  return t;
}

std::size_t fibered_product_size(const InternalGroupoidData &t) {
  std::size_t count = 0;
  for (const auto &g : t.g1)
    for (const auto &f : t.g1)
      if (t.d0.at(g) == t.d1.at(f))
        ++count;
  return count;
}

} // namespace fibrato
