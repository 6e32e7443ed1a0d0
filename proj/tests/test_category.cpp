#include "doctest.h"

#include <set>

#include "sixff/category.hpp"

using namespace sixff;

namespace {

FiniteGroup s3() { return FiniteGroup::symmetric(3); }

}  // namespace

TEST_CASE("validate_category on small inputs") {
  auto pt = point_groupoid();
  CHECK(validate_category(*pt).empty());
  auto bs3 = delooping(s3());
  CHECK(bs3->num_morphisms() == 6);
  CHECK(validate_category(*bs3).empty());

  CategoryBuilder b;
  int a = b.add_object("a");
  int c = b.add_object("b");
  int ia = b.add_identity(a);
  b.add_identity(c);
  int f = b.add_morphism("f", a, c);
  int e = b.add_morphism("e", a, a);
  b.set_compose(e, e, ia);
  b.set_compose(f, e, f);
  auto good = b.build("ok", false);
  CHECK(validate_category(*good).empty());

  CategoryBuilder bad;
  int x = bad.add_object("x");
  int ix = bad.add_identity(x);
  int u = bad.add_morphism("u", x, x);
  int v = bad.add_morphism("v", x, x);
  bad.set_compose(u, u, v);
  bad.set_compose(u, v, ix);
  bad.set_compose(v, u, u);
  bad.set_compose(v, v, ix);
  auto cat = bad.build("bad", false);
  auto rep = validate_category(*cat);
  REQUIRE(!rep.empty());
  bool named = false;
  for (const auto& r : rep) named = named || (r.code == "associativity" && r.detail.find("u") != std::string::npos);
  CHECK(named);
}

TEST_CASE("structural errors are distinct from axiom violations") {
  CategoryBuilder b;
  b.add_object("a");
  b.add_morphism("f", 0, 3);
  CHECK_THROWS_AS(b.build("x", false), StructuralError);
}

TEST_CASE("groups") {
  CHECK(FiniteGroup::symmetric(3).order() == 6);
  CHECK(FiniteGroup::symmetric(4).order() == 24);
  CHECK(FiniteGroup::dihedral(4).order() == 8);
  CHECK(FiniteGroup::quaternion().order() == 8);
  CHECK(FiniteGroup::symmetric(4).all_subgroups().size() == 30);
  CHECK(FiniteGroup::symmetric(4).subgroups_up_to_conjugacy().size() == 11);
  CHECK(FiniteGroup::dihedral(4).subgroups_up_to_conjugacy().size() == 8);
  CHECK(FiniteGroup::quaternion().subgroups_up_to_conjugacy().size() == 6);
  CHECK(group_isomorphism(FiniteGroup::cyclic(4), FiniteGroup::cyclic(4)).has_value());
  CHECK(!group_isomorphism(FiniteGroup::dihedral(4), FiniteGroup::quaternion()).has_value());
  CHECK(group_isomorphism(FiniteGroup::symmetric(3), FiniteGroup::dihedral(3)).has_value());
  auto g = s3();
  CHECK(g.element_by_name("(1 2)") == g.element_by_name("(12)"));
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("sign functor and functor validation") {
  auto g = s3();
  auto c2 = FiniteGroup::cyclic(2);
  auto bs3 = delooping(g), bc2 = delooping(c2);
  std::vector<int> sign;
  for (int x = 0; x < g.order(); ++x) {
    const auto& p = g.permutations()[x];
    int inv = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) inv += p[i] > p[j];
    sign.push_back(inv % 2 ? 1 - c2.identity() : c2.identity());
  }
  auto f = delooping_map(bs3, bc2, sign);
  CHECK(validate_functor(*f).empty());
  CHECK(validate_functor(*identity_functor(bs3)).empty());
  CHECK(validate_functor(*constant_functor(bs3, bc2, 0)).empty());
  std::vector<int> broken = sign;
  broken[g.element_by_name("(1 2)")] = c2.identity();
  CHECK(!validate_functor(*delooping_map(bs3, bc2, broken)).empty());
}

TEST_CASE("iso-comma fiber products of classifying groupoids") {
  auto g = s3();
  int t = g.element_by_name("(1 2)");
  auto c2 = g.subgroup(g.closure({t}));
  auto bs3 = delooping(g), bc2 = delooping(c2);
  std::vector<int> incl;
  for (int i = 0; i < c2.order(); ++i) incl.push_back(g.element_by_name(c2.name(i)));
  auto f = delooping_map(bc2, bs3, incl);
  auto ic = iso_comma_pullback(f, f);
  CHECK(validate_category(*ic.groupoid).empty());
  CHECK(validate_nat_trans(ic.alpha).empty());
  auto comps = pi0_and_aut(*ic.groupoid);
  REQUIRE(comps.size() == 2);
  std::multiset<int> orders{comps[0].aut.order(), comps[1].aut.order()};
  CHECK(orders == std::multiset<int>{1, 2});

  auto pt = point_groupoid();
  auto p = make_functor(pt, bs3, {0}, {g.identity()});
  auto ic2 = iso_comma_pullback(f, p);
  CHECK(ic2.groupoid->num_objects() == 6);
  CHECK(groupoids_equivalent(*ic2.groupoid, *discrete_groupoid(3)).equivalent);

  auto id = identity_functor(bs3);
  auto ic3 = iso_comma_pullback(f, id);
  CHECK(groupoids_equivalent(*ic3.groupoid, *bc2).equivalent);
}

TEST_CASE("pi0 and skeleta") {
  auto d3 = discrete_groupoid(3);
  CHECK(pi0_and_aut(*d3).size() == 3);
  auto bs3 = delooping(s3());
  auto c = pi0_and_aut(*bs3);
  REQUIRE(c.size() == 1);
  CHECK(c[0].aut.order() == 6);
  auto u = disjoint_union({delooping(FiniteGroup::cyclic(2)), point_groupoid()});
  auto cu = pi0_and_aut(*u);
  REQUIRE(cu.size() == 2);
  CHECK(cu[0].aut.order() == 2);
  CHECK(cu[1].aut.order() == 1);
  for (const auto& x : {d3, bs3, u}) {
    auto sk = skeletalize(x);
    CHECK(sk.verified);
    CHECK(sk.skeleton->num_objects() == x->num_components());
  }
  CHECK(skeletalize(u).skeleton->num_morphisms() == 3);
}

TEST_CASE("action groupoids") {
  auto g = s3();
  std::vector<std::vector<int>> left(6, std::vector<int>(6));
  std::vector<std::string> pts;
  for (int a = 0; a < 6; ++a) {
    pts.push_back(g.name(a));
    for (int x = 0; x < 6; ++x) left[a][x] = g.mul(a, x);
  }
  auto torsor = action_groupoid(g, left, pts);
  CHECK(validate_category(*torsor.groupoid).empty());
  CHECK(validate_functor(*torsor.to_bg).empty());
  CHECK(groupoids_equivalent(*torsor.groupoid, *point_groupoid()).equivalent);
  auto sk = skeletalize(torsor.groupoid);
  CHECK(sk.verified);
  CHECK(sk.skeleton->num_morphisms() == 1);

  auto c2 = FiniteGroup::cyclic(2);
  int s = 1 - c2.identity();
  std::vector<std::vector<int>> swap(2, std::vector<int>(2));
  swap[c2.identity()] = {0, 1};
  swap[s] = {1, 0};
  auto sw = action_groupoid(c2, swap, {"p", "q"});
  CHECK(sw.groupoid->num_morphisms() == 4);
  CHECK(sw.groupoid->num_components() == 1);
  CHECK(automorphism_order(*sw.groupoid, 0) == 1);

  auto triv = action_groupoid(FiniteGroup::cyclic(1), {{0, 1, 2}}, {"a", "b", "c"});
  CHECK(groupoids_equivalent(*triv.groupoid, *discrete_groupoid(3)).equivalent);

  std::vector<std::vector<int>> bad(2, std::vector<int>(2, 0));
  CHECK_THROWS_AS(action_groupoid(c2, bad, {"p", "q"}), std::invalid_argument);
}

TEST_CASE("iso-comma symmetry") {
  auto g = FiniteGroup::dihedral(4);
  auto bg = delooping(g);
  auto subs = g.subgroups_up_to_conjugacy();
  for (size_t i = 0; i < subs.size(); ++i)
    for (size_t j = 0; j < subs.size(); ++j) {
      auto h = g.subgroup(subs[i]), k = g.subgroup(subs[j]);
      auto fh = delooping_map(delooping(h), bg, subs[i]);
      auto fk = delooping_map(delooping(k), bg, subs[j]);
      auto a = iso_comma_pullback(fh, fk), b = iso_comma_pullback(fk, fh);
      CHECK(groupoids_equivalent(*a.groupoid, *b.groupoid).equivalent);
    }
}

TEST_CASE("empty iso-comma is a groupoid") {
  auto two = discrete_groupoid(2);
  auto a = constant_functor(point_groupoid(), two, 0);
  auto b = constant_functor(point_groupoid(), two, 1);
  auto ic = iso_comma_pullback(a, b);
  CHECK(ic.groupoid->num_objects() == 0);
  CHECK(ic.groupoid->is_groupoid());
}

TEST_CASE("cech nerves") {
  auto pt = point_groupoid();
  auto c2 = FiniteGroup::cyclic(2);
  auto bc2 = delooping(c2);
  auto f = make_functor(pt, bc2, {0}, {c2.identity()});
  auto nerve = cech_nerve(f, 2);
  REQUIRE(nerve.levels.size() == 3);
  int expect[] = {1, 2, 4};
  for (int n = 0; n <= 2; ++n) {
    CHECK(nerve.levels[n]->num_objects() == expect[n]);
    CHECK(groupoids_equivalent(*nerve.levels[n], *discrete_groupoid(expect[n])).equivalent);
  }
  CHECK(nerve.check_identities().empty());

  auto deep = cech_nerve(f, 3);
  CHECK(deep.check_identities().empty());

  auto bs3 = delooping(s3());
  auto id = identity_functor(bs3);
  auto triv = cech_nerve(id, 3);
  for (const auto& lvl : triv.levels) CHECK(groupoids_equivalent(*lvl, *bs3).equivalent);
  CHECK(triv.check_identities().empty());

  int s = 1 - c2.identity();
  std::vector<std::vector<int>> swap(2);
  swap[c2.identity()] = {0, 1};
  swap[s] = {1, 0};
  auto act = action_groupoid(c2, swap, {"p", "q"});
  auto x = discrete_groupoid(std::vector<std::string>{"p", "q"});
  auto q = make_functor(x, act.groupoid, {0, 1}, {act.groupoid->identity(0), act.groupoid->identity(1)});
  auto cn = cech_nerve(q, 1);
  CHECK(cn.levels[1]->num_objects() == 4);
  CHECK(groupoids_equivalent(*cn.levels[1], *discrete_groupoid(4)).equivalent);
  CHECK_THROWS_AS(cech_nerve(q, -1), std::invalid_argument);
}
