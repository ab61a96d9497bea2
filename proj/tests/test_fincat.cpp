#include <doctest.h>

#include "fibrato/algebra.hpp"
#include "fibrato/errors.hpp"
#include "fibrato/fincat.hpp"
#include "testutil.hpp"

using namespace fibrato;
using namespace fibrato::test;

namespace {

FinCat c3_cat() { return group_as_category(c3()); }

/// Recomputes the associativity comparison directly from the tables,
/// independently of check_category's sweep.
bool associativity_holds_by_oracle(const FinCat &c) {
  for (const auto &h : c.morphisms)
    for (const auto &g : c.morphisms)
      for (const auto &f : c.morphisms) {
        if (f.tgt != g.src || g.tgt != h.src)
          continue;
        auto gf = c.compose.find({g.name, f.name});
        auto hg = c.compose.find({h.name, g.name});
        if (gf == c.compose.end() || hg == c.compose.end())
          return false;
        auto left = c.compose.find({h.name, gf->second});
        auto right = c.compose.find({hg->second, f.name});
        if (left == c.compose.end() || right == c.compose.end() ||
            left->second != right->second)
          return false;
      }
  return true;
}

} // namespace

TEST_CASE("check_category accepts the empty category") {
  FinCat empty;
  CHECK(check_category(empty).ok);
}

TEST_CASE("check_category accepts the one-object cyclic group") {
  CHECK(check_category(c3_cat()).ok);
}

TEST_CASE("check_category flags a redirected composition") {
  FinCat broken = c3_cat();
  broken.compose[{"r", "r"}] = "e";
  CHECK_FALSE(associativity_holds_by_oracle(broken));
  auto report = check_category(broken);
  CHECK_FALSE(report.ok);
  bool found_associativity = false;
  for (const auto &v : report.violations)
    if (v.law == "associativity")
      found_associativity = true;
  CHECK(found_associativity);
}

TEST_CASE("check_category throws on dangling references") {
  FinCat c = discrete_category({"A"});
  c.morphisms.push_back({"f", "A", "Q"});
  CHECK_THROWS_WITH_AS(check_category(c),
                       doctest::Contains("unknown tgt"), Error);
}

TEST_CASE("check_category throws on duplicate names") {
  FinCat c = discrete_category({"A"});
  c.morphisms.push_back({"id_A", "A", "A"});
  CHECK_THROWS_AS(check_category(c), Error);
}

TEST_CASE("check_functor accepts identities and constants") {
  FinCat c = c3_cat();
  CHECK(check_functor(identity_functor(c)).ok);

  FinCat trivial = group_as_category(standard_group(StandardGroupKind::Cyclic, 1));
  FinFunctor constant;
  constant.dom = c;
  constant.cod = trivial;
  constant.object_map["*"] = "*";
  for (const auto &m : c.morphisms)
    constant.morphism_map[m.name] = "e";
  CHECK(check_functor(constant).ok);
}

TEST_CASE("check_functor flags a non-multiplicative map") {
  FinCat c = c3_cat();
  FinFunctor f;
  f.dom = c;
  f.cod = c;
  f.object_map["*"] = "*";
  f.morphism_map["e"] = "e";
  f.morphism_map["r"] = "r";
  f.morphism_map["r*r"] = "e";
  auto report = check_functor(f);
  CHECK_FALSE(report.ok);
  bool composition = false;
  for (const auto &v : report.violations)
    if (v.law == "preserves-composition" && v.witness[0] == "r" &&
        v.witness[1] == "r")
      composition = true;
  CHECK(composition);
}

TEST_CASE("functor validity is compositional") {
  FinCat c = c3_cat();
  FinCat trivial = group_as_category(standard_group(StandardGroupKind::Cyclic, 1));
  FinFunctor constant;
  constant.dom = c;
  constant.cod = trivial;
  constant.object_map["*"] = "*";
  for (const auto &m : c.morphisms)
    constant.morphism_map[m.name] = "e";
  FinFunctor gf = compose_functors(identity_functor(trivial), constant);
  CHECK(check_functor(gf).ok);
}

TEST_CASE("discrete categories have identities only") {
  FinCat c = discrete_category({"1", "2", "3"});
  CHECK(c.objects.size() == 3);
  CHECK(c.morphisms.size() == 3);
  CHECK(check_category(c).ok);

  CHECK(discrete_category({}).objects.empty());
  FinCat one = discrete_category({"x"});
  CHECK(one.objects.size() == 1);
  CHECK(one.morphisms.size() == 1);
}

TEST_CASE("codiscrete groupoids have one morphism per ordered pair") {
  FinCat g2 = codiscrete_groupoid(2);
  CHECK(g2.objects.size() == 2);
  CHECK(g2.morphisms.size() == 4);
  CHECK(check_category(g2).ok);
  CHECK(is_groupoid(g2));

  FinCat g3 = codiscrete_groupoid(3);
  CHECK(g3.objects.size() == 3);
  CHECK(g3.morphisms.size() == 9);
  CHECK(check_category(g3).ok);

  FinCat g1 = codiscrete_groupoid(1);
  CHECK(g1.objects.size() == 1);
  CHECK(g1.morphisms.size() == 1);
}

TEST_CASE("opposite is an involution, name-identical") {
  FinCat c = c3_cat();
  CHECK(opposite(opposite(c)) == c);
  FinCat chain = chain_category(3);
  CHECK(opposite(opposite(chain)) == chain);
  CHECK(check_category(opposite(chain)).ok);
}

TEST_CASE("product and coproduct counts multiply and add") {
  FinCat d3_cat = group_as_category(d3());
  FinCat p = product(d3_cat, d3_cat);
  CHECK(p.objects.size() == 1);
  CHECK(p.morphisms.size() == 36);
  CHECK(check_category(p).ok);

  FinCat s = coproduct(codiscrete_groupoid(3), codiscrete_groupoid(3));
  CHECK(s.objects.size() == 6);
  CHECK(s.morphisms.size() == 18);
  CHECK(check_category(s).ok);
  CHECK(connected_components(s).size() == 2);
}

TEST_CASE("product and coproduct counting laws hold on samples") {
  std::vector<FinCat> cats = {discrete_category({"1", "2"}),
                              codiscrete_groupoid(2), c3_cat(),
                              chain_category(2)};
  for (const auto &a : cats) {
    for (const auto &b : cats) {
      FinCat p = product(a, b);
      CHECK(p.objects.size() == a.objects.size() * b.objects.size());
      CHECK(p.morphisms.size() == a.morphisms.size() * b.morphisms.size());
      CHECK(check_category(p).ok);
      FinCat s = coproduct(a, b);
      CHECK(s.objects.size() == a.objects.size() + b.objects.size());
      CHECK(s.morphisms.size() == a.morphisms.size() + b.morphisms.size());
      CHECK(check_category(s).ok);
    }
  }
}

TEST_CASE("is_groupoid and components behave on the named examples") {
  CHECK(is_groupoid(codiscrete_groupoid(3)));
  CHECK(connected_components(codiscrete_groupoid(3)).size() == 1);

  FinCat disc = discrete_category({"1", "2", "3"});
  CHECK(is_groupoid(disc));
  CHECK(connected_components(disc).size() == 3);

  CHECK_FALSE(is_groupoid(free_arrow()));
  CHECK(connected_components(free_arrow()).size() == 1);
}

TEST_CASE("groupoids stay groupoids under opposite, components agree") {
  for (const auto &c : {codiscrete_groupoid(3), discrete_category({"a", "b"}),
                        group_as_category(d3())}) {
    CHECK(is_groupoid(c));
    CHECK(is_groupoid(opposite(c)));
    CHECK(connected_components(c).size() ==
          connected_components(opposite(c)).size());
  }
  CHECK_FALSE(is_groupoid(opposite(free_arrow())));
}

TEST_CASE("find_isomorphism: relabeling, different generators, obstruction") {
  FinCat c = c3_cat();
  FinCat relabeled = relabel_objects(c, {{"*", "o"}});
  auto found = find_isomorphism(c, relabeled);
  REQUIRE(found.has_value());
  CHECK(check_functor(found->first).ok);
  CHECK(check_functor(found->second).ok);

  PermGroup z3 = close_generators(3, {{"a", Perm({3, 1, 2})}});
  auto other = find_isomorphism(c, group_as_category(z3));
  REQUIRE(other.has_value());
  // Mutually inverse witness pair.
  FinFunctor round = compose_functors(other->second, other->first);
  CHECK(round.object_map == identity_functor(c).object_map);
  CHECK(round.morphism_map == identity_functor(c).morphism_map);

  CHECK_FALSE(find_isomorphism(codiscrete_groupoid(3),
                               discrete_category({"1", "2", "3"}))
                  .has_value());
}

TEST_CASE("find_isomorphism is symmetric") {
  FinCat a = codiscrete_groupoid(2);
  FinCat b = relabel_objects(a, {{"s1", "u"}, {"s2", "v"}});
  auto fwd = find_isomorphism(a, b);
  auto bwd = find_isomorphism(b, a);
  REQUIRE(fwd.has_value());
  REQUIRE(bwd.has_value());
  CHECK(check_functor(fwd->second).ok);
  CHECK(fwd->second.object_map.size() == bwd->first.object_map.size());
}

TEST_CASE("find_isomorphism reports budget exhaustion distinctly") {
  CHECK_THROWS_AS(find_isomorphism(codiscrete_groupoid(3),
                                   codiscrete_groupoid(3), IsoBudget{1}),
                  Error);
  try {
    find_isomorphism(codiscrete_groupoid(3), codiscrete_groupoid(3),
                     IsoBudget{1});
  } catch (const Error &e) {
    CHECK(e.kind() == "BudgetExceeded");
  }
}

TEST_CASE("functor graph categories mirror their domain") {
  FinCat c = c3_cat();
  FinCat graph = functor_graph_category(identity_functor(c));
  CHECK(check_category(graph).ok);
  CHECK(find_isomorphism(graph, c).has_value());

  FinCat trivial = group_as_category(standard_group(StandardGroupKind::Cyclic, 1));
  FinFunctor constant;
  constant.dom = c;
  constant.cod = trivial;
  constant.object_map["*"] = "*";
  for (const auto &m : c.morphisms)
    constant.morphism_map[m.name] = "e";
  FinCat graph2 = functor_graph_category(constant);
  CHECK(check_category(graph2).ok);
  CHECK(find_isomorphism(graph2, c).has_value());

  FinCat empty;
  FinCat graph3 = functor_graph_category(identity_functor(empty));
  CHECK(graph3.objects.empty());
  CHECK(graph3.morphisms.empty());
}

TEST_CASE("vertex groups") {
  FinCat g3 = codiscrete_groupoid(3);
  FinCat v = vertex_group(g3, "s2");
  CHECK(v.objects.size() == 1);
  CHECK(v.morphisms.size() == 1);

  FinCat c = c3_cat();
  CHECK(vertex_group(c, "*") == c);

  CHECK_THROWS_AS(vertex_group(free_arrow(), "A"), Error);
}

TEST_CASE("vertex group of a transformation groupoid is the stabilizer") {
  // Acceptance-adjacent: X//D3 has vertex groups of order 2.
  GroupAction a = natural_action(d3());
  FinCat xg = transformation_groupoid(a);
  FinCat v = vertex_group(xg, "1");
  CHECK(v.morphisms.size() == 2);
}

TEST_CASE("generated categories always validate") {
  Rng rng(0);
  for (int i = 0; i < 25; ++i) {
    SetValuedAction a = random_set_valued_action(rng);
    CHECK(check_category(a.base).ok);
    CHECK(check_set_valued_action(a).ok);
    CHECK(check_category(opposite(a.base)).ok);
  }
}
