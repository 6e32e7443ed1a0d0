#include "doctest.h"

#include <random>

#include "sixff/corr.hpp"

using namespace sixff;

namespace {

int obj(const FiniteCategory& c, const std::string& name) {
  for (int o = 0; o < c.num_objects(); ++o)
    if (c.object_name(o) == name) return o;
  throw std::invalid_argument(name);
}

int arrow(const FiniteCategory& c, int a, int b) { return c.hom(a, b).at(0); }

CategoryPtr cospan_poset() {
  return poset_category({"a", "b", "c"}, {{true, false, true}, {false, true, true}, {false, false, true}}, "cospan");
}

FinMap random_map(std::mt19937_64& rng, int src, int tgt) {
  std::vector<int> img(src);
  for (auto& v : img) v = static_cast<int>(rng() % tgt);
  return FinSetBackend::from_vector(tgt, img);
}

Span<FinSetBackend> random_span(std::mt19937_64& rng, int x, int y) {
  int z = static_cast<int>(rng() % 4);
  return {x, z, y, random_map(rng, z, x), random_map(rng, z, y)};
}

}  // namespace

TEST_CASE("divisor poset pullback is the gcd") {
  auto c = divisor_poset(12);
  EnumeratedBackend s(c, all_morphisms(*c));
  auto pb = s.pullback(arrow(*c, obj(*c, "4"), obj(*c, "12")), arrow(*c, obj(*c, "6"), obj(*c, "12")));
  REQUIRE(pb);
  CHECK(c->object_name(pb->apex) == "2");
  CHECK(validate_setup(s).valid());
}

TEST_CASE("missing pullbacks are reported") {
  auto c = finset_category({1, 2});
  EnumeratedBackend s(c, all_morphisms(*c));
  int one = obj(*c, "[1]"), two = obj(*c, "[2]");
  const auto& h = c->hom(one, two);
  REQUIRE(h.size() == 2);
  CHECK_FALSE(s.pullback(h[0], h[1]));
  CHECK(s.pullback(h[0], h[0]));
  auto rep = validate_setup(s);
  CHECK_FALSE(rep.base_change_closed);
  CHECK_FALSE(rep.valid());
}

TEST_CASE("chain with a -> b excluded: both checkers agree") {
  auto c = chain_poset(3);
  auto e = all_morphisms(*c);
  e[arrow(*c, 0, 1)] = false;
  auto rep = validate_setup(EnumeratedBackend(c, e));
  CHECK(rep.cross_check);
  CHECK_FALSE(rep.right_cancellative);
  CHECK_FALSE(rep.valid());
}

TEST_CASE("diagonal and right-cancellativity verdicts agree on every subset") {
  for (const auto& c : {chain_poset(3), finset_category({1, 2}), cospan_poset()}) {
    const int n = c->num_morphisms();
    REQUIRE(n <= 8);
    int valid = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<bool> e(n);
      for (int i = 0; i < n; ++i) e[i] = (mask >> i) & 1;
      auto rep = validate_setup(EnumeratedBackend(c, e));
      CHECK(rep.cross_check);
      valid += rep.valid();
    }
    CHECK(valid > 0);
  }
}

TEST_CASE("isomorphisms and all morphisms form setups") {
  for (const auto& c : {chain_poset(3), divisor_poset(12), cospan_poset()})
    CHECK(validate_setup(EnumeratedBackend(c, isomorphisms_only(*c))).valid());
  CHECK(validate_setup(EnumeratedBackend(chain_poset(3), all_morphisms(*chain_poset(3)))).valid());
  // a and b have no common lower bound.
  auto cs = cospan_poset();
  CHECK_FALSE(validate_setup(EnumeratedBackend(cs, all_morphisms(*cs))).valid());
  auto bg = delooping(FiniteGroup::cyclic(2));
  CHECK(validate_setup(EnumeratedBackend(bg, isomorphisms_only(*bg))).valid());
}

TEST_CASE("span composition in finite sets") {
  FinSetBackend fs;
  Span<FinSetBackend> s{1, 2, 1, FinSetBackend::to_terminal(2), FinSetBackend::to_terminal(2)};
  auto ss = compose_spans(fs, s, s);
  CHECK(ss.z == 4);
  CHECK(finset_pullback_certified(fs, s.right, s.left));

  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    auto a = random_span(rng, 2, 3);
    auto b = random_span(rng, 3, 2);
    auto c = random_span(rng, 2, 3);
    auto l = compose_spans(fs, compose_spans(fs, a, b), c);
    auto r = compose_spans(fs, a, compose_spans(fs, b, c));
    CHECK(span_iso(fs, l, r));
    CHECK(span_iso(fs, compose_spans(fs, identity_span(fs, 2), a), a));
    CHECK(span_iso(fs, compose_spans(fs, a, identity_span(fs, 3)), a));
    // Swapping legs reverses composition.
    CHECK(span_iso(fs, swap_span(compose_spans(fs, a, b)), compose_spans(fs, swap_span(b), swap_span(a))));
  }
}

TEST_CASE("span isomorphism detects fiber counts") {
  FinSetBackend fs;
  Span<FinSetBackend> a{2, 2, 2, FinSetBackend::from_vector(2, {0, 1}), FinSetBackend::from_vector(2, {1, 0})};
  Span<FinSetBackend> b{2, 2, 2, FinSetBackend::from_vector(2, {1, 0}), FinSetBackend::from_vector(2, {0, 1})};
  Span<FinSetBackend> c{2, 2, 2, FinSetBackend::from_vector(2, {0, 1}), FinSetBackend::from_vector(2, {0, 1})};
  auto u = span_iso(fs, a, b);
  REQUIRE(u);
  CHECK(u->img == std::vector<int>{1, 0});
  CHECK_FALSE(span_iso(fs, a, c));
}

TEST_CASE("restricted E rejects composition") {
  FinSetBackend iso_only(false);
  Span<FinSetBackend> s{1, 2, 1, FinSetBackend::to_terminal(2), FinSetBackend::to_terminal(2)};
  CHECK_THROWS_AS(compose_spans(iso_only, s, s), SetupViolation);
}

TEST_CASE("dual data for finite sets") {
  FinSetBackend fs;
  for (int x = 0; x <= 3; ++x) {
    auto d = dual_data(fs, x);
    CHECK(d.ok());
    CHECK(d.triangle1.z == x);
    CHECK(d.triangle2.z == x);
  }
  CHECK_THROWS_AS(dual_data(FinSetBackend(false), 2), SetupViolation);
}

TEST_CASE("correspondence hom-sets") {
  auto c = finset_category({0, 1, 2});
  EnumeratedBackend all(c, all_morphisms(*c));
  int one = obj(*c, "[1]");
  auto classes = corr_hom(all, one, one, 1000);
  REQUIRE(classes.size() == 3);
  std::vector<std::string> apexes;
  for (const auto& s : classes) apexes.push_back(c->object_name(s.z));
  CHECK(apexes == std::vector<std::string>{"[0]", "[1]", "[2]"});
  CHECK_THROWS_AS(corr_hom(all, one, one, 2), PartialEnumeration);

  // With E the isomorphisms, X ⇒ Y classes match Hom(Y, X).
  EnumeratedBackend isos(c, isomorphisms_only(*c));
  for (int x = 0; x < c->num_objects(); ++x)
    for (int y = 0; y < c->num_objects(); ++y)
      CHECK(corr_hom(isos, x, y, 1000).size() == c->hom(y, x).size());
}
