#include <doctest.h>

#include <set>

#include "fibrato/algebra.hpp"
#include "fibrato/errors.hpp"
#include "fibrato/grothendieck.hpp"
#include "fibrato/internal.hpp"
#include "testutil.hpp"

using namespace fibrato;
using namespace fibrato::test;

TEST_CASE("standard groups have the expected orders") {
  CHECK(c3().order() == 3);
  CHECK(c3().degree == 3);
  CHECK(d3().order() == 6);
  CHECK(d3().degree == 3);
  CHECK(standard_group(StandardGroupKind::Symmetric, 1).order() == 1);
  CHECK(standard_group(StandardGroupKind::Symmetric, 4).order() == 24);
  CHECK(check_group(d3()).ok);
}

TEST_CASE("close_generators is a breadth-first closure") {
  PermGroup r_only = close_generators(3, {{"r", Perm({2, 3, 1})}});
  CHECK(r_only.order() == 3);
  CHECK(r_only.elements[0].name == "e");
  CHECK(r_only.elements[1].name == "r");
  CHECK(r_only.elements[2].name == "r*r");

  PermGroup s3 =
      close_generators(3, {{"r", Perm({2, 3, 1})}, {"s", Perm({1, 3, 2})}});
  CHECK(s3.order() == 6);

  PermGroup trivial = close_generators(2, {});
  CHECK(trivial.order() == 1);
}

TEST_CASE("closure budget is enforced") {
  CHECK_THROWS_AS(
      close_generators(4, {{"c", Perm({2, 3, 4, 1})}, {"s", Perm({2, 1, 3, 4})}},
                       5),
      Error);
}

TEST_CASE("check_action validates the axioms") {
  GroupAction rot = natural_action(c3());
  CHECK(check_action(rot).ok);

  GroupAction broken = rot;
  broken.table[{"r", "1"}] = "1";
  broken.table[{"r", "2"}] = "1";
  auto report = check_action(broken);
  CHECK_FALSE(report.ok);
  bool compat = false;
  for (const auto &v : report.violations)
    if (v.law == "compatibility")
      compat = true;
  CHECK(compat);

  GroupAction trivial = trivial_action(
      standard_group(StandardGroupKind::Cyclic, 1), {"a", "b"});
  CHECK(check_action(trivial).ok);

  GroupAction incomplete = rot;
  incomplete.table.erase({"r", "1"});
  CHECK_THROWS_AS(check_action(incomplete), Error);
}

TEST_CASE("action/representation roundtrip") {
  GroupAction rot = natural_action(c3());
  RepTable rep = action_to_rep(rot);
  CHECK(check_rep(rep).ok);
  // phi(r) read pointwise is the rotation.
  CHECK(rep.phi.at("r").at("1") == "2");
  CHECK(rep.phi.at("r").at("2") == "3");
  CHECK(rep.phi.at("r").at("3") == "1");

  CHECK(rep_to_action(rep) == rot);
  CHECK(action_to_rep(rep_to_action(rep)) == rep);

  GroupAction trivial = trivial_action(c3(), {"a"});
  RepTable trep = action_to_rep(trivial);
  for (const auto &e : trivial.group.elements)
    CHECK(trep.phi.at(e.name).at("a") == "a");
}

TEST_CASE("roundtrip and orbit-stabilizer hold on random actions") {
  Rng rng(0);
  for (int i = 0; i < 40; ++i) {
    GroupAction a = random_group_action(rng);
    REQUIRE(check_action(a).ok);
    RepTable rep = action_to_rep(a);
    CHECK(check_rep(rep).ok);
    CHECK(rep_to_action(rep) == a);
    for (const auto &os : orbits_stabilizers(a))
      CHECK(os.orbit.size() * os.stabilizer.order() == a.group.order());
  }
}

TEST_CASE("orbit and stabilizer sizes on the point actions") {
  auto d3_orbits = orbits_stabilizers(natural_action(d3()));
  REQUIRE(d3_orbits.size() == 1);
  CHECK(d3_orbits[0].orbit.size() == 3);
  CHECK(d3_orbits[0].stabilizer.order() == 2);

  auto c3_orbits = orbits_stabilizers(natural_action(c3()));
  REQUIRE(c3_orbits.size() == 1);
  CHECK(c3_orbits[0].stabilizer.order() == 1);

  auto trivial = orbits_stabilizers(
      trivial_action(standard_group(StandardGroupKind::Cyclic, 1), {"1", "2"}));
  CHECK(trivial.size() == 2);
}

TEST_CASE("group_as_category is a one-object groupoid") {
  FinCat c = group_as_category(c3());
  CHECK(c.objects.size() == 1);
  CHECK(c.morphisms.size() == 3);
  CHECK(check_category(c).ok);
  CHECK(is_groupoid(c));

  FinCat d = group_as_category(d3());
  CHECK(d.morphisms.size() == 6);
  CHECK(check_category(d).ok);

  FinCat t = group_as_category(standard_group(StandardGroupKind::Cyclic, 1));
  CHECK(t.morphisms.size() == 1);

  CHECK(vertex_group(c, "*") == c);
}

TEST_CASE("direct products multiply orders") {
  PermGroup p = direct_product(c3(), z2());
  CHECK(p.order() == 6);
  CHECK(p.degree == 5);
  CHECK(check_group(p).ok);
}

TEST_CASE("wreath products: order, degree, blocks") {
  PermGroup w = wreath_product(d3(), z2());
  CHECK(w.order() == 72);
  CHECK(w.degree == 6);
  CHECK(preserves_blocks(w, 3));

  PermGroup wc = wreath_product(c3(), z2());
  CHECK(wc.order() == 18);
  CHECK(wc.degree == 6);
  CHECK(preserves_blocks(wc, 3));

  PermGroup same = wreath_product(
      d3(), standard_group(StandardGroupKind::Cyclic, 1));
  CHECK(same == d3());
}

TEST_CASE("subgroup_from_elements rejects non-subgroups") {
  PermGroup g = d3();
  CHECK_THROWS_AS(subgroup_from_elements(g, {"e", "r"}), Error);
  PermGroup h = subgroup_from_elements(g, {"e", "s"});
  CHECK(h.order() == 2);
}

TEST_CASE("internal groupoid data of codiscrete 3 passes all diagrams") {
  InternalGroupoidData t = category_to_internal(codiscrete_groupoid(3));
  CHECK(t.g0.size() == 3);
  CHECK(t.g1.size() == 9);
  CHECK(fibered_product_size(t) == 27);
  CHECK(check_internal_groupoid(t).ok);
}

TEST_CASE("one-object internal groupoid collapses to the group form") {
  InternalGroupoidData t = category_to_internal(group_as_category(c3()));
  CHECK(t.g0.size() == 1);
  CHECK(fibered_product_size(t) == t.g1.size() * t.g1.size());
  CHECK(check_internal_groupoid(t).ok);
}

TEST_CASE("discrete internal groupoid has identity pairs only") {
  InternalGroupoidData t =
      category_to_internal(discrete_category({"1", "2"}));
  CHECK(fibered_product_size(t) == 2);
  CHECK(check_internal_groupoid(t).ok);
}

TEST_CASE("category_to_internal requires a groupoid") {
  CHECK_THROWS_AS(category_to_internal(free_arrow()), Error);
}

TEST_CASE("mutating i is caught with a witness") {
  InternalGroupoidData t = category_to_internal(codiscrete_groupoid(3));
  t.i["t_1_2"] = "t_1_3";
  auto report = check_internal_groupoid(t);
  CHECK_FALSE(report.ok);
  bool inverse_law = false;
  for (const auto &v : report.violations)
    if (v.law.rfind("inverse", 0) == 0)
      inverse_law = true;
  CHECK(inverse_law);
}

TEST_CASE("random single-entry mutations of m, e, i are caught") {
  FinCat g3 = codiscrete_groupoid(3);
  Rng rng(1);
  int caught = 0;
  const int trials = 30;
  for (int trial = 0; trial < trials; ++trial) {
    InternalGroupoidData t = category_to_internal(g3);
    switch (rng.below(3)) {
    case 0: { // redirect one multiplication entry
      std::size_t idx = rng.below(t.m.size());
      auto it = t.m.begin();
      std::advance(it, idx);
      std::string other;
      do {
        other = t.g1[rng.below(t.g1.size())];
      } while (other == it->second);
      it->second = other;
      break;
    }
    case 1: { // redirect one identity
      const std::string &obj = t.g0[rng.below(t.g0.size())];
      std::string other;
      do {
        other = t.g1[rng.below(t.g1.size())];
      } while (other == t.e.at(obj));
      t.e[obj] = other;
      break;
    }
    default: { // redirect one inverse
      const std::string &arr = t.g1[rng.below(t.g1.size())];
      std::string other;
      do {
        other = t.g1[rng.below(t.g1.size())];
      } while (other == t.i.at(arr));
      t.i[arr] = other;
      break;
    }
    }
    bool detected;
    try {
      detected = !check_internal_groupoid(t).ok;
    } catch (const Error &) {
      detected = true; // e.g. the mutation moved m off the fibered product
    }
    if (detected)
      ++caught;
  }
  CHECK(caught == trials);
}

TEST_CASE("perm arithmetic sanity") {
  Perm r({2, 3, 1});
  Perm s({1, 3, 2});
  CHECK((r * r * r).is_identity());
  CHECK(r.inverse() * r == Perm(3));
  CHECK((r * s)[1] == 2); // s first: 1 -> 1 -> 2
  CHECK_THROWS_AS(Perm({1, 1, 2}), Error);
}
