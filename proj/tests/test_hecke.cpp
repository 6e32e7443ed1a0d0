#include "doctest.h"

#include "sixff/hecke.hpp"
#include "sixff/presets.hpp"

using namespace sixff;

namespace {

const Field Q = Field::rationals();

std::vector<int> generated(const FiniteGroup& g, const std::vector<std::string>& names) {
  std::vector<int> gens;
  for (const auto& n : names) gens.push_back(g.element_by_name(n));
  return g.closure(gens);
}

std::vector<int> whole(const FiniteGroup& g) {
  std::vector<int> all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return all;
}

Matrix coords(const HeckeAlgebra& h, std::vector<long> c) {
  Matrix m(h.dim, 1, h.ind.v.k);
  for (int i = 0; i < h.dim; ++i) m.at(i, 0) = h.ind.v.k.from_int(c[i]);
  return m;
}

// Index of the basis element supported on the double coset of w.
int basis_of(const HeckeAlgebra& h, int w) {
  for (int i = 0; i < h.dim; ++i)
    if (!h.functions[i].at(w, 0).is_zero()) return i;
  return -1;
}

}  // namespace

TEST_CASE("double cosets") {
  auto g = group_preset("s3");
  auto c2 = generated(g, {"(1 2)"});
  auto t = double_cosets(g, c2, c2);
  REQUIRE(t.cosets.size() == 2);
  CHECK(t.cosets[0].size + t.cosets[1].size == 6);
  std::vector<int> sizes = {t.cosets[0].size, t.cosets[1].size};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{2, 4});
  CHECK(t.oracle_agrees);

  auto all = double_cosets(g, whole(g), whole(g));
  CHECK(all.cosets.size() == 1);
  CHECK(all.cosets[0].size == 6);
  auto right = double_cosets(g, {g.identity()}, c2);
  CHECK(right.cosets.size() == 3);
  CHECK_THROWS_AS(double_cosets(g, {g.element_by_name("(1 2)")}, c2), std::invalid_argument);
}

TEST_CASE("double cosets agree with the fiber-product oracle on the battery") {
  for (const auto* name : {"s3", "s4", "d4", "q8", "c2xc4"}) {
    auto g = group_preset(name);
    auto subs = g.subgroups_up_to_conjugacy();
    for (const auto& h : subs)
      for (const auto& k : subs) {
        auto t = double_cosets(g, h, k);
        int total = 0;
        for (const auto& dc : t.cosets) {
          total += dc.size;
          CHECK(dc.size * dc.intersection_order == static_cast<int>(h.size() * k.size()));
          CHECK(t.index_of[dc.rep] >= 0);
          for (int x = 0; x < dc.rep; ++x) CHECK(t.index_of[x] != t.index_of[dc.rep]);
        }
        CHECK(total == g.order());
        CHECK_MESSAGE(t.oracle_agrees, name << ": " << t.detail);
      }
  }
}

TEST_CASE("compact induction") {
  GroupContext ctx(group_preset("s3"));
  auto c2 = generated(ctx.group, {"(1 2)"});
  auto inc = ctx.include(c2);
  auto ind = compact_induction(inc, unit_sheaf(inc->src, Q));
  CHECK(ind.sheaf.dim[0] == 3);
  CHECK(ind.coset_reps.size() == 3);
  CHECK(is_isomorphic(ind.sheaf, lower_shriek(inc, unit_sheaf(inc->src, Q))));

  auto all = ctx.include(whole(ctx.group));
  auto v = sign_rep(all->src, ctx.subgroup(whole(ctx.group)), Q);
  auto same = compact_induction(all, v);
  CHECK(same.sheaf.dim[0] == 1);
  CHECK(is_isomorphic(same.sheaf, pullback_star(identity_functor(ctx.bg), sign_rep(ctx.bg, ctx.group, Q))));

  auto reg = compact_induction(inc, regular_rep(inc->src, ctx.subgroup(c2), Q));
  CHECK(reg.sheaf.dim[0] == 6);
  CHECK(is_isomorphic(reg.sheaf, regular_rep(ctx.bg, ctx.group, Q)));

  GroupContext c3(group_preset("c3"));
  auto bad = c3.include(whole(c3.group));
  CHECK_THROWS_AS(compact_induction(bad, unit_sheaf(bad->src, Field::prime(3))), GateViolation);
}

TEST_CASE("Hecke algebra of S3 relative to C2") {
  for (Field k : {Q, Field::prime(5)}) {
    GroupContext ctx(group_preset("s3"));
    auto inc = ctx.include(generated(ctx.group, {"(1 2)"}));
    auto h = hecke_algebra(inc, unit_sheaf(inc->src, k));
    REQUIRE(h.dim == 2);
    CHECK(h.associative);
    CHECK(h.unital);
    CHECK(h.bi_equivariant);
    CHECK(h.models_isomorphic);
    int e = h.identity;
    int w = 1 - e;
    CHECK(h.basis_coset[e] == ctx.group.identity());
    std::vector<long> expect(2);
    expect[e] = 2;
    expect[w] = 1;
    CHECK(h.structure[w][w] == coords(h, expect));

    auto cert = involution_certificate(h);
    CHECK(cert.ok());
    CHECK(cert.images[w] == basis_vector(h, w));
  }
}

TEST_CASE("Hecke algebra dimensions") {
  GroupContext ctx(group_preset("s3"));
  auto all = ctx.include(whole(ctx.group));
  CHECK(hecke_algebra(all, unit_sheaf(all->src, Q)).dim == 1);
  auto triv = ctx.include({ctx.group.identity()});
  auto h = hecke_algebra(triv, unit_sheaf(triv->src, Q));
  CHECK(h.dim == 6);
  CHECK(h.models_isomorphic);
  CHECK(h.associative);
  CHECK(involution_certificate(h).ok());

  // Two-dimensional weight: End_G(Ind_{C3}^{S3} W) for a 2-dimensional W of C3 over Q.
  auto c3 = generated(ctx.group, {"(1 2 3)"});
  auto inc3 = ctx.include(c3);
  auto sub = ctx.subgroup(c3);
  Matrix r = Matrix::from_ints({{0, -1}, {1, -1}}, Q);
  std::vector<Matrix> mats(sub.order());
  // Element i of C3 acts by r^i where i is read off the generator's powers.
  int gen = -1;
  for (int x = 0; x < sub.order(); ++x)
    if (sub.name(x) == "(1 2 3)") gen = x;
  REQUIRE(gen >= 0);
  int cur = sub.identity();
  Matrix pw = Matrix::identity(2, Q);
  for (int i = 0; i < 3; ++i) {
    mats[cur] = pw;
    cur = sub.mul(gen, cur);
    pw = r * pw;
  }
  auto w = representation(inc3->src, Q, mats);
  auto hw = hecke_algebra(inc3, w);
  CHECK(hw.dim == hom_dim(hw.ind.sheaf, hw.ind.sheaf));
  CHECK(hw.associative);
  CHECK(hw.unital);
  CHECK(hw.bi_equivariant);
  CHECK(hw.models_isomorphic);
  CHECK_THROWS_AS(anti_involution(hw, basis_vector(hw, 0)), HeckePrecondition);
}

TEST_CASE("anti-involution on an abelian group permutes cosets by inversion") {
  GroupContext ctx(group_preset("c4"));
  auto inc = ctx.include({ctx.group.identity()});
  auto h = hecke_algebra(inc, unit_sheaf(inc->src, Q));
  REQUIRE(h.dim == 4);
  auto cert = involution_certificate(h);
  CHECK(cert.ok());
  for (int i = 0; i < h.dim; ++i)
    CHECK(cert.images[i] == basis_vector(h, basis_of(h, ctx.group.inv(h.basis_coset[i]))));
}

TEST_CASE("prim duality induces the anti-involution") {
  struct Case {
    const char* group;
    std::vector<std::string> gens;
  };
  for (const auto& c : std::vector<Case>{{"s3", {"(1 2)"}}, {"c4", {}}, {"s3", {}}, {"s3", {"(1 2)", "(1 2 3)"}}}) {
    GroupContext ctx(group_preset(c.group));
    std::vector<int> sub = c.gens.empty() ? std::vector<int>{ctx.group.identity()} : generated(ctx.group, c.gens);
    if (std::string(c.group) == "c4") {
      for (int x = 0; x < ctx.group.order(); ++x)
        if (ctx.group.element_order(x) == 2) sub = ctx.group.closure({x});
    }
    auto cmp = prim_duality_on_hecke(ctx.include(sub), Q);
    CHECK_MESSAGE(cmp.agrees, c.group << " / " << sub.size());
  }
}

TEST_CASE("Frobenius reciprocity") {
  GroupContext ctx(group_preset("s3"));
  auto c2 = generated(ctx.group, {"(1 2)"});
  auto inc = ctx.include(c2);
  auto one = unit_sheaf(inc->src, Q);
  auto f1 = frobenius_check(inc, one, unit_sheaf(ctx.bg, Q));
  CHECK(f1.ok());
  CHECK(f1.lhs == 1);
  auto f2 = frobenius_check(inc, one, standard_rep(ctx.bg, ctx.group, Q));
  CHECK(f2.ok());
  CHECK(f2.lhs == 1);
  auto ind = compact_induction(inc, one);
  auto f3 = frobenius_check(inc, one, ind.sheaf);
  CHECK(f3.ok());
  CHECK(f3.lhs == hecke_algebra(inc, one).dim);
  auto f4 = frobenius_check(inc, sign_rep(inc->src, ctx.subgroup(c2), Q), regular_rep(ctx.bg, ctx.group, Q));
  CHECK(f4.ok());
  CHECK(f4.lhs == 3);
}
