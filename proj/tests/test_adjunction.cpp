#include "doctest.h"

#include <random>

#include "sixff/adjunction.hpp"
#include "sixff/corr.hpp"

using namespace sixff;

namespace {

CategoryPtr pool(const std::string& label) {
  for (auto& c : small_category_pool())
    if (c->label == label) return c;
  throw std::runtime_error("no pool category " + label);
}

int cell1(const StrictTwoCat& c, const std::string& name) {
  for (int f = 0; f < static_cast<int>(c.cells1.size()); ++f)
    if (c.cells1[f].name == name) return f;
  throw std::runtime_error("no 1-cell " + name);
}

// The non-identity 2-cell id_BZ2 ⇒ id_BZ2.
int twist(const StrictTwoCat& c) {
  int id = c.id1[0];
  for (int a : c.hom2(id, id))
    if (a != c.id2[id]) return a;
  throw std::runtime_error("no twist");
}

}  // namespace

TEST_CASE("functor 2-categories are strict 2-categories") {
  auto tc = functor_two_category({pool("pt"), pool("[1]"), pool("BZ2")});
  CHECK(tc.validate().empty());
  // Fun([1], [1]) has three functors; End(id_BZ2) = Z/2.
  int arrow = 1;
  CHECK(tc.hom1(arrow, arrow).size() == 3);
  CHECK(tc.hom2(tc.id1[2], tc.id1[2]).size() == 2);
  CHECK(tc.hom1(0, 2).size() == 1);
}

TEST_CASE("random 2-categories respect the size bound and validate") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    auto tc = random_two_category(rng);
    CHECK(tc.objects.size() == 3);
    for (size_t f = 0; f < tc.cells1.size(); ++f)
      for (size_t g = 0; g < tc.cells1.size(); ++g)
        CHECK(tc.hom2(static_cast<int>(f), static_cast<int>(g)).size() <= 4);
    CHECK(tc.validate().empty());
  }
}

TEST_CASE("identity adjunction and twisted counit") {
  auto tc = functor_two_category({pool("BZ2")});
  int id = tc.id1[0];
  AdjunctionQuadruple q{id, id, tc.id2[id], tc.id2[id]};
  CHECK(verify_adjunction(tc, q).ok);
  q.eps = twist(tc);
  auto r = verify_adjunction(tc, q);
  CHECK_FALSE(r.ok);
  CHECK(r.failing == "first triangle");
  AdjunctionQuadruple bad{id, id, tc.id2[id], tc.id2[tc.compose1(id, id)] + 1000};
  CHECK_THROWS(verify_adjunction(tc, bad));
}

TEST_CASE("upgrade_weak repairs a twisted unit") {
  auto tc = functor_two_category({pool("BZ2")});
  int id = tc.id1[0];
  AdjunctionQuadruple q{id, id, twist(tc), tc.id2[id]};
  CHECK_FALSE(verify_adjunction(tc, q).ok);
  auto up = upgrade_weak(tc, q);
  CHECK(verify_adjunction(tc, up).ok);
  CHECK(up.eta == tc.id2[id]);
}

TEST_CASE("upgrade_weak requires invertible triangle composites") {
  // One object, one 1-cell, 2-cells {1, e} with e∘e = e.
  StrictTwoCat tc;
  tc.objects = {"o"};
  tc.cells1 = {{0, 0, "id"}};
  tc.cells2 = {{0, 0, "1"}, {0, 0, "e"}};
  tc.id1 = {0};
  tc.id2 = {0};
  tc.comp1[pair_key(0, 0)] = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) tc.vcomp[pair_key(x, y)] = tc.hcomp[pair_key(x, y)] = x | y;
  tc.finalize();
  CHECK(tc.validate().empty());
  CHECK_FALSE(tc.inverse2(1).has_value());
  AdjunctionQuadruple q{0, 0, 1, 0};
  CHECK(verify_adjunction(tc, q).failing == "first triangle");
  CHECK_THROWS_AS(upgrade_weak(tc, q), PreconditionFailure);
}

TEST_CASE("mates are mutually inverse on a generated 2-category") {
  std::mt19937_64 rng(2024);
  auto tc = random_two_category(rng);
  auto rep = mate_bijection_exhaustive(tc);
  CHECK(rep.squares > 0);
  CHECK(rep.rho_lambda_checked > 0);
  CHECK(rep.lambda_rho_checked > 0);
  CHECK(rep.ok());
  auto full = functor_two_category({pool("pt"), pool("[1]"), pool("BZ2")});
  CHECK(mate_bijection_exhaustive(full).ok());
}

TEST_CASE("right adjoints are unique up to invertible 2-cells") {
  auto tc = functor_two_category({pool("pt"), pool("[1]"), pool("BZ2")});
  auto adjs = all_adjunctions(tc);
  int pairs = 0;
  for (const auto& q1 : adjs)
    for (const auto& q2 : adjs)
      if (q1.f == q2.f) {
        auto u = adjoint_uniqueness(tc, q1, q2);
        CHECK(u.invertible);
        CHECK(tc.cells2[u.cell].src == q1.g);
        CHECK(tc.cells2[u.cell].tgt == q2.g);
        ++pairs;
      }
  CHECK(pairs > static_cast<int>(adjs.size()));
}

TEST_CASE("pointwise audit") {
  auto tc = functor_two_category({pool("pt"), pool("[1]"), pool("BZ2")});
  std::vector<int> zs = {0, 1, 2};
  SUBCASE("inclusion of an initial object has a right adjoint") {
    auto a = pointwise_audit(tc, cell1(tc, "pt->[1][0]"), zs);
    CHECK(a.condition_a);
    CHECK(a.condition_b);
    CHECK(a.direct_search_found);
    CHECK(a.agrees);
    CHECK(tc.cells1[*a.right_adjoint].tgt == 0);
  }
  SUBCASE("inclusion of a terminal object has none") {
    auto a = pointwise_audit(tc, cell1(tc, "pt->[1][1]"), zs);
    CHECK_FALSE((a.condition_a && a.condition_b));
    CHECK_FALSE(a.direct_search_found);
    CHECK(a.agrees);
  }
  SUBCASE("the point of BZ2 has no right adjoint") {
    auto a = pointwise_audit(tc, tc.hom1(0, 2).front(), zs);
    CHECK_FALSE(a.condition_a);
    CHECK_FALSE(a.direct_search_found);
    CHECK(a.agrees);
  }
  SUBCASE("every 1-cell") {
    for (int f = 0; f < static_cast<int>(tc.cells1.size()); ++f) CHECK(pointwise_audit(tc, f, zs).agrees);
  }
  SUBCASE("budget") { CHECK_THROWS_AS(pointwise_audit(tc, cell1(tc, "pt->[1][0]"), zs, 1), BudgetExceeded); }
}

TEST_CASE("projection from a product 2-category preserves mates") {
  auto a = functor_two_category({pool("pt"), pool("[1]")});
  auto b = functor_two_category({pool("BZ2")});
  auto p = product_two_category(a, b);
  const auto& c = p.cat;
  CHECK(c.validate().empty());
  auto proj = [&](const AdjunctionQuadruple& q) {
    return AdjunctionQuadruple{p.proj1_cell1[q.f], p.proj1_cell1[q.g], p.proj1_cell2[q.eta], p.proj1_cell2[q.eps]};
  };
  auto adjs = all_adjunctions(c);
  REQUIRE_FALSE(adjs.empty());
  long checked = 0;
  for (const auto& q : adjs) {
    CHECK(verify_adjunction(a, proj(q)).ok);
    for (const auto& q2 : adjs) {
      int A = c.cells1[q.f].src, B = c.cells1[q.f].tgt;
      int A2 = c.cells1[q2.f].src, B2 = c.cells1[q2.f].tgt;
      for (int x : c.hom1(A, A2))
        for (int y : c.hom1(B, B2))
          for (int phi : c.hom2(c.compose1(q2.f, x), c.compose1(y, q.f))) {
            int lhs = p.proj1_cell2[mate_rho(c, q, q2, x, y, phi)];
            int rhs = mate_rho(a, proj(q), proj(q2), p.proj1_cell1[x], p.proj1_cell1[y], p.proj1_cell2[phi]);
            CHECK(lhs == rhs);
            ++checked;
          }
    }
  }
  CHECK(checked > 0);
  CHECK(mate_bijection_exhaustive(c).ok());
}
