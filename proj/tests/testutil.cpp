#include "testutil.hpp"

#include <algorithm>

namespace fibrato::test {

namespace {

std::vector<std::string> random_points(Rng &rng, const std::string &prefix,
                                       std::size_t min_size,
                                       std::size_t max_size) {
  std::size_t n = min_size + rng.below(max_size - min_size + 1);
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<std::size_t> random_permutation(Rng &rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i)
    p[i] = i;
  for (std::size_t i = n; i > 1; --i)
    std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

SetValuedAction on_discrete(Rng &rng) {
  std::size_t k = 1 + rng.below(4);
  std::vector<std::string> objs;
  for (std::size_t i = 1; i <= k; ++i)
    objs.push_back("A" + std::to_string(i));
  SetValuedAction a;
  a.base = discrete_category(objs);
  for (std::size_t i = 0; i < k; ++i) {
    a.fiber[objs[i]] = random_points(rng, "p" + std::to_string(i) + "_", 0, 3);
    std::map<std::string, std::string> id;
    for (const auto &x : a.fiber[objs[i]])
      id[x] = x;
    a.act["id_" + objs[i]] = std::move(id);
  }
  return a;
}

SetValuedAction on_codiscrete(Rng &rng) {
  std::size_t k = 1 + rng.below(3);
  std::size_t m = 1 + rng.below(3);
  SetValuedAction a;
  a.base = codiscrete_groupoid(k);
  // Coherent system of bijections: position q of fiber i maps to position
  // perm_j(perm_i^{-1}(q)) of fiber j.
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t i = 0; i < k; ++i)
    perms.push_back(random_permutation(rng, m));
  auto point = [&](std::size_t i, std::size_t q) {
    return "x" + std::to_string(i + 1) + "_" + std::to_string(q + 1);
  };
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::string> fiber;
    for (std::size_t q = 0; q < m; ++q)
      fiber.push_back(point(i, q));
    a.fiber["s" + std::to_string(i + 1)] = std::move(fiber);
  }
  for (const auto &mor : a.base.morphisms) {
    std::size_t i = std::stoul(mor.src.substr(1)) - 1;
    std::size_t j = std::stoul(mor.tgt.substr(1)) - 1;
    std::map<std::string, std::string> f;
    std::vector<std::size_t> inv(m);
    for (std::size_t q = 0; q < m; ++q)
      inv[perms[i][q]] = q;
    for (std::size_t q = 0; q < m; ++q)
      f[point(i, q)] = point(j, perms[j][inv[q]]);
    a.act[mor.name] = std::move(f);
  }
  return a;
}

SetValuedAction on_group(Rng &rng) {
  PermGroup g;
  switch (rng.below(3)) {
  case 0:
    g = standard_group(StandardGroupKind::Cyclic, 2 + rng.below(3));
    break;
  case 1:
    g = standard_group(StandardGroupKind::Dihedral, 3);
    break;
  default:
    g = standard_group(StandardGroupKind::Symmetric, 3);
    break;
  }
  // Carrier: cosets of the cyclic subgroup of a random element, acted on by
  // left multiplication.
  const std::string seed = g.elements[rng.below(g.order())].name;
  std::vector<std::string> subgroup;
  std::string power = "e";
  do {
    subgroup.push_back(power);
    power = g.mult(seed, power);
  } while (power != "e");

  std::map<std::string, std::string> coset_of;
  std::vector<std::string> labels;
  for (const auto &rep : g.elements) {
    if (coset_of.count(rep.name))
      continue;
    std::string label = "c" + std::to_string(labels.size() + 1);
    labels.push_back(label);
    for (const auto &h : subgroup)
      coset_of[g.mult(rep.name, h)] = label;
  }

  SetValuedAction a;
  a.base = group_as_category(g);
  a.fiber["*"] = labels;
  for (const auto &e : g.elements) {
    std::map<std::string, std::string> f;
    for (const auto &x : g.elements)
      f[coset_of.at(x.name)] = coset_of.at(g.mult(e.name, x.name));
    a.act[e.name] = std::move(f);
  }
  return a;
}

SetValuedAction on_chain(Rng &rng) {
  std::size_t k = 2 + rng.below(3);
  SetValuedAction a;
  a.base = chain_category(k);
  std::vector<std::vector<std::string>> fibers;
  for (std::size_t i = 1; i <= k; ++i)
    fibers.push_back(random_points(rng, "y" + std::to_string(i) + "_", 1, 3));
  for (std::size_t i = 1; i <= k; ++i)
    a.fiber["c" + std::to_string(i)] = fibers[i - 1];
  // Random step functions; longer arrows compose the steps, so the action
  // is functorial by construction.
  std::vector<std::map<std::string, std::string>> steps(k - 1);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    for (const auto &x : fibers[i])
      steps[i][x] = fibers[i + 1][rng.below(fibers[i + 1].size())];
  }
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = i; j <= k; ++j) {
      std::map<std::string, std::string> f;
      for (const auto &x : fibers[i - 1]) {
        std::string y = x;
        for (std::size_t s = i; s < j; ++s)
          y = steps[s - 1].at(y);
        f[x] = y;
      }
      std::string name = i == j ? "id_c" + std::to_string(i)
                                : "le_" + std::to_string(i) + "_" +
                                      std::to_string(j);
      a.act[name] = std::move(f);
    }
  }
  return a;
}

SetValuedAction on_idempotent(Rng &rng) {
  SetValuedAction a;
  a.base = walking_idempotent();
  auto points = random_points(rng, "q", 1, 4);
  a.fiber["A"] = points;
  std::map<std::string, std::string> id, proj;
  // A random retraction: pick the image of each point among the points at
  // or before a chosen cut, then force idempotence.
  std::size_t image_size = 1 + rng.below(points.size());
  for (const auto &x : points)
    id[x] = x;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i < image_size)
      proj[points[i]] = points[i];
    else
      proj[points[i]] = points[rng.below(image_size)];
  }
  a.act["id_A"] = std::move(id);
  a.act["p"] = std::move(proj);
  return a;
}

SetValuedAction on_arrow(Rng &rng) {
  SetValuedAction a;
  a.base = free_arrow();
  a.fiber["A"] = random_points(rng, "u", 0, 3);
  a.fiber["B"] = random_points(rng, "v", 1, 3);
  std::map<std::string, std::string> ida, idb, f;
  for (const auto &x : a.fiber["A"]) {
    ida[x] = x;
    f[x] = a.fiber["B"][rng.below(a.fiber["B"].size())];
  }
  for (const auto &x : a.fiber["B"])
    idb[x] = x;
  a.act["id_A"] = std::move(ida);
  a.act["id_B"] = std::move(idb);
  a.act["f"] = std::move(f);
  return a;
}

} // namespace

SetValuedAction random_set_valued_action(Rng &rng) {
  switch (rng.below(6)) {
  case 0:
    return on_discrete(rng);
  case 1:
    return on_codiscrete(rng);
  case 2:
    return on_group(rng);
  case 3:
    return on_chain(rng);
  case 4:
    return on_idempotent(rng);
  default:
    return on_arrow(rng);
  }
}

GroupAction random_group_action(Rng &rng, std::size_t max_degree,
                                std::size_t max_order) {
  PermGroup g;
  for (;;) {
    switch (rng.below(4)) {
    case 0:
      g = standard_group(StandardGroupKind::Cyclic, 1 + rng.below(max_degree));
      break;
    case 1:
      g = standard_group(StandardGroupKind::Dihedral, 3);
      break;
    case 2:
      g = standard_group(StandardGroupKind::Symmetric, 1 + rng.below(4));
      break;
    default: {
      std::size_t degree = 2 + rng.below(max_degree - 1);
      std::vector<std::size_t> images(random_permutation(rng, degree));
      for (auto &v : images)
        ++v;
      g = close_generators(degree, {{"a", Perm(images)}});
      break;
    }
    }
    if (g.degree <= max_degree && g.order() <= max_order)
      break;
  }

  GroupAction a;
  a.group = g;
  std::size_t orbits = 1 + rng.below(2);
  for (std::size_t o = 0; o < orbits; ++o) {
    const std::string seed = g.elements[rng.below(g.order())].name;
    std::vector<std::string> subgroup;
    std::string power = "e";
    do {
      subgroup.push_back(power);
      power = g.mult(seed, power);
    } while (power != "e");
    std::map<std::string, std::string> coset_of;
    for (const auto &rep : g.elements) {
      if (coset_of.count(rep.name))
        continue;
      std::string label =
          "o" + std::to_string(o + 1) + "_" + std::to_string(coset_of.size());
      a.carrier.push_back(label);
      for (const auto &h : subgroup)
        coset_of[g.mult(rep.name, h)] = label;
    }
    for (const auto &e : g.elements)
      for (const auto &x : g.elements)
        a.table[{e.name, coset_of.at(x.name)}] =
            coset_of.at(g.mult(e.name, x.name));
  }
  return a;
}

} // namespace fibrato::test
