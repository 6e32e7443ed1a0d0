#include "doctest.h"

#include "sixff/presets.hpp"
#include "sixff/sheaf.hpp"

using namespace sixff;

namespace {

const Field Q = Field::rationals();

struct S3Setup {
  GroupContext G{FiniteGroup::symmetric(3)};
  int t = G.group.element_by_name("(1 2)");
  std::vector<int> c2 = G.group.closure({t});
  FunctorPtr inc = G.include(c2);
};

}  // namespace

TEST_CASE("unit sheaves") {
  auto pt = point_groupoid();
  CHECK(unit_sheaf(pt, Q).dim[0] == 1);
  auto bc2 = delooping(FiniteGroup::cyclic(2));
  auto u = unit_sheaf(bc2, Q);
  CHECK(u.mat[1].is_identity());
  CHECK(unit_sheaf(finite_set(3), Q).total_dim() == 3);
  CHECK_THROWS_AS(unit_sheaf(bc2, Field::prime(2)), GateViolation);
}

TEST_CASE("pullback of the standard representation of S3 to C2") {
  S3Setup s;
  auto std2 = standard_rep(s.G.bg, s.G.group, Q);
  CHECK(validate_sheaf(std2).empty());
  auto r = pullback_star(s.inc, std2);
  CHECK(r.dim[0] == 2);
  int tw = 1 - r.base->identity(0);
  CHECK(r.mat[tw] == std2.mat[s.t]);
  CHECK(r.mat[tw].trace() == Q.zero());
  CHECK((r.mat[tw] * r.mat[tw]).is_identity());
}

TEST_CASE("lower shriek and lower star dimensions") {
  auto x3 = finite_set(3);
  auto p = to_point(x3);
  CHECK(lower_shriek(p, unit_sheaf(x3, Q)).dim[0] == 3);

  S3Setup s;
  auto bc2 = s.inc->src;
  auto ind = lower_shriek(s.inc, unit_sheaf(bc2, Q));
  CHECK(ind.dim[0] == 3);
  CHECK(validate_sheaf(ind).empty());
  // k[S3/C2] is the permutation representation on three points.
  CHECK(is_isomorphic(ind, permutation_rep(s.G.bg, s.G.group, Q)));

  GroupContext c2(FiniteGroup::cyclic(2));
  auto pt = c2.point();
  auto reg = lower_shriek(pt, unit_sheaf(pt->src, Q));
  CHECK(reg.dim[0] == 2);
  CHECK(is_isomorphic(reg, regular_rep(c2.bg, c2.group, Q)));

  auto to_pt = to_point(c2.bg);
  auto sign = sign_rep(c2.bg, FiniteGroup::symmetric(2), Q);
  CHECK(lower_star(to_pt, sign).dim[0] == 0);
  CHECK(lower_star(to_pt, regular_rep(c2.bg, c2.group, Q)).dim[0] == 1);
  CHECK(lower_star(identity_functor(c2.bg), sign).dim[0] == 1);
}

TEST_CASE("norm map") {
  GroupContext c2(FiniteGroup::cyclic(2));
  auto nm = norm_map(to_point(c2.bg), unit_sheaf(c2.bg, Q));
  REQUIRE(nm.comp[0].rows() == 1);
  CHECK(nm.comp[0].at(0, 0) == Q.from_int(2));
  auto x2 = finite_set(2);
  CHECK(norm_map(to_point(x2), unit_sheaf(x2, Q)).comp[0].is_identity());
  auto id = identity_functor(c2.bg);
  CHECK(norm_map(id, regular_rep(c2.bg, c2.group, Q)).comp[0].is_identity());
}

TEST_CASE("upper shriek is the stalk along a point inclusion") {
  auto x3 = finite_set(3);
  std::mt19937_64 rng(7);
  auto m = random_sheaf(x3, Q, rng, 3);
  auto i = object_inclusion(x3, 1);
  CHECK(upper_shriek(i, m).dim[0] == m.dim[1]);
}

TEST_CASE("tensor and internal hom") {
  GroupContext c2(FiniteGroup::cyclic(2));
  auto sign = sign_rep(c2.bg, FiniteGroup::symmetric(2), Q);
  auto ss = tensor(sign, sign);
  CHECK(sheaves_equal(ss, unit_sheaf(c2.bg, Q)));
  std::mt19937_64 rng(3);
  S3Setup s;
  for (int i = 0; i < 5; ++i) {
    auto m = random_sheaf(s.G.bg, Q, rng, 3);
    CHECK(sheaves_equal(tensor(m, unit_sheaf(s.G.bg, Q)), m));
    CHECK(is_isomorphic(dual(dual(m)), m));
    auto a = random_sheaf(s.G.bg, Q, rng, 2), n = random_sheaf(s.G.bg, Q, rng, 2);
    auto w = tensor_witness(m, a, n);
    CHECK(w.ok());
  }
}

TEST_CASE("adjunction witnesses on random data") {
  std::mt19937_64 rng(11);
  S3Setup s;
  auto x3 = finite_set(3);
  auto x2 = finite_set(2);
  std::vector<FunctorPtr> maps = {s.inc, to_point(s.G.bg), s.G.point(), to_point(x3), set_map(x3, x2, {0, 1, 1}),
                                  identity_functor(s.G.bg), to_point(s.inc->src)};
  for (const auto& f : maps)
    for (int trial = 0; trial < 3; ++trial) {
      auto m = random_sheaf(f->src, Q, rng, 3);
      auto n = random_sheaf(f->tgt, Q, rng, 3);
      CHECK(validate_sheaf(m).empty());
      auto lw = lan_witness(f, m, n);
      CHECK(lw.ok());
      CHECK(is_morphism(m, pullback_star(f, lower_shriek(f, m)), lw.unit));
      CHECK(is_morphism(lower_shriek(f, pullback_star(f, n)), n, lw.counit));
      auto rw = ran_witness(f, n, m);
      CHECK(rw.ok());
      CHECK(shriek_witness(f, m, n).ok());
      CHECK(ambidextrous_witness(f, m, n).ok());
      auto nm = norm_map(f, m);
      CHECK(is_morphism(lower_shriek(f, m), lower_star(f, m), nm));
      CHECK(is_iso(nm));
      CHECK(hom_dim(lower_shriek(f, m), n) == hom_dim(m, pullback_star(f, n)));
      CHECK(hom_dim(pullback_star(f, n), m) == hom_dim(n, lower_star(f, m)));
    }
}

TEST_CASE("norm is natural in the sheaf") {
  std::mt19937_64 rng(5);
  S3Setup s;
  for (int trial = 0; trial < 4; ++trial) {
    auto a = random_sheaf(s.inc->src, Q, rng, 3), b = random_sheaf(s.inc->src, Q, rng, 3);
    auto phi = random_map(a, b, rng);
    auto lhs = compose(norm_map(s.inc, b), lower_shriek_map(s.inc, a, b, phi));
    auto rhs = compose(lower_star_map(s.inc, a, b, phi), norm_map(s.inc, a));
    CHECK(maps_equal(lhs, rhs));
  }
}

TEST_CASE("base change and projection formula") {
  S3Setup s;
  auto pt = s.G.point();
  auto sq = iso_comma_pullback(s.inc, pt);
  auto m = unit_sheaf(s.inc->src, Q);
  auto bc = base_change_map(sq, s.inc, pt, m);
  CHECK(bc.comp[0].rows() == 3);
  CHECK(is_iso(bc));
  CHECK(verify_base_change(sq, s.inc, pt, m).ok);

  auto id = identity_functor(s.G.bg);
  auto sq_id = iso_comma_pullback(s.inc, id);
  CHECK(verify_base_change(sq_id, s.inc, id, m).ok);

  GroupContext c2(FiniteGroup::cyclic(2));
  auto f = to_point(c2.bg);
  auto sign = sign_rep(c2.bg, FiniteGroup::symmetric(2), Q);
  Sheaf k2 = unit_sheaf(point_groupoid(), Q);
  k2 = Sheaf{f->tgt, Q, {2}, {Matrix::identity(2, Q)}};
  auto pm = projection_map(f, k2, sign);
  CHECK(pm.comp[0].rows() == 0);
  CHECK(verify_projection_formula(f, k2, sign).ok);

  std::mt19937_64 rng(9);
  auto x2 = finite_set(2);
  auto g = to_point(x2);
  auto mm = random_sheaf(g->tgt, Q, rng, 3);
  auto nn = random_sheaf(x2, Q, rng, 3);
  CHECK(verify_projection_formula(g, mm, nn).ok);
  CHECK(projection_map(g, unit_sheaf(g->tgt, Q), nn).comp[0].is_identity());
}

TEST_CASE("functoriality of lower shriek") {
  std::mt19937_64 rng(21);
  S3Setup s;
  auto f = s.G.point();
  auto fake = iso_comma_pullback(s.inc, f);
  auto g = to_point(s.G.bg);
  for (int trial = 0; trial < 3; ++trial) {
    auto m = random_sheaf(s.inc->src, Q, rng, 3);
    auto c = composition_map(s.inc, g, m);
    CHECK(is_iso(c));
    auto m2 = random_sheaf(fake.groupoid, Q, rng, 2);
    CHECK(is_iso(composition_map(fake.pY, s.inc, m2)));
  }
}

TEST_CASE("global sections") {
  S3Setup s;
  auto gs = global_sections(unit_sheaf(s.G.bg, Q));
  CHECK(gs.gamma_dim == 1);
  CHECK(gs.gamma_c_dim == 1);
  auto x3 = finite_set(3), y2 = finite_set(2, "q");
  CHECK(global_sections(unit_sheaf(x3, Q)).gamma_dim == 3);
  CHECK(global_sections(unit_sheaf(x3, Q)).gamma_c_dim == 3);
  auto prod = product_groupoid(x3, y2);
  CHECK(global_sections(unit_sheaf(prod.groupoid, Q)).gamma_c_dim == 6);
}

TEST_CASE("gate and finite fields") {
  auto f5 = Field::prime(5);
  S3Setup s;
  std::mt19937_64 rng(2);
  auto m = random_sheaf(s.inc->src, f5, rng, 3);
  CHECK(lan_witness(s.inc, m, random_sheaf(s.G.bg, f5, rng, 3)).ok());
  CHECK_THROWS_AS(lower_shriek(to_point(s.G.bg), trivial_rep(s.G.bg, Field::prime(3))), GateViolation);
}

TEST_CASE("simple summands of the regular representation of S3") {
  S3Setup s;
  auto reg = regular_rep(s.G.bg, s.G.group, Q);
  auto parts = simple_summands(reg);
  std::vector<int> dims;
  for (const auto& p : parts) {
    dims.push_back(p.dim[0]);
    CHECK(hom_dim(p, p) == 1);
  }
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{1, 1, 2, 2});
}
