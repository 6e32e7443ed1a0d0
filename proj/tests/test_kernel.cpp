#include "doctest.h"

#include <random>

#include "sixff/kernel.hpp"
#include "sixff/presets.hpp"

using namespace sixff;

namespace {

const Field Q = Field::rationals();

// The point shared by every to_point map.
GroupoidPtr the_point() { return to_point(point_groupoid())->tgt; }

int total(const Sheaf& s) {
  int t = 0;
  for (int d : s.dim) t += d;
  return t;
}

// Objects over a common base used by the randomized checks.
struct Battery {
  GroupoidPtr s;
  std::vector<KernelObject> objs;
};

Battery c2_battery() {
  static GroupContext c2(group_preset("c2"));
  static auto pt = c2.point();
  static auto two = set_map(finite_set(2), c2.bg, {0, 0});
  return {c2.bg, {base_object(c2.bg), kernel_object(pt), kernel_object(two)}};
}

Battery point_battery() {
  static auto pt = the_point();
  static auto b = delooping(FiniteGroup::cyclic(2));
  static auto f1 = to_point(finite_set(2));
  static auto f2 = to_point(b);
  return {pt, {base_object(pt), kernel_object(f1), kernel_object(f2)}};
}

Kernel random_kernel(const KernelObject& x, const KernelObject& y, std::mt19937_64& rng) {
  auto h = kernel_hom(x, y, Q);
  return make_kernel(x, y, random_sheaf(h.groupoid(), Q, rng, 2));
}

}  // namespace

TEST_CASE("kernel hom over the point and inside a group") {
  auto pt = the_point();
  auto s = base_object(pt);
  CHECK(kernel_hom(s, s, Q).groupoid()->num_objects() == 1);

  // */H ×_{*/G} */K has one component per double coset.
  GroupContext s3(group_preset("s3"));
  auto h = s3.group.closure({s3.group.element_by_name("(1 2)")});
  auto kh = kernel_object(s3.include(h));
  auto hom = kernel_hom(kh, kh, Q);
  CHECK(hom.groupoid()->num_components() == 2);
}

TEST_CASE("identity kernels") {
  auto pt = the_point();
  CHECK(total(kernel_identity(base_object(pt), Q).payload) == 1);
  auto s3 = delooping(group_preset("s3"));
  auto id = kernel_identity(kernel_object(to_point(s3)), Q);
  CHECK(total(id.payload) == 6);
  auto three = kernel_object(to_point(finite_set(3)));
  auto id3 = kernel_identity(three, Q);
  auto c = chain_product({three.map, three.map});
  for (int o = 0; o < c->groupoid->num_objects(); ++o)
    CHECK(id3.payload.dim[o] == (c->obj_x[o][0] == c->obj_x[o][1] ? 1 : 0));
}

TEST_CASE("finite-set kernels compose as matrix products") {
  std::mt19937_64 rng(3);
  auto pt = the_point();
  std::vector<KernelObject> sets;
  for (int n : {2, 3, 2}) sets.push_back(kernel_object(to_point(finite_set(n))));
  auto dims = [](const Kernel& m) {
    auto c = chain_product({m.tgt.map, m.src.map});
    std::vector<std::vector<int>> d(m.tgt.groupoid()->num_objects(),
                                    std::vector<int>(m.src.groupoid()->num_objects()));
    for (int o = 0; o < c->groupoid->num_objects(); ++o) d[c->obj_x[o][0]][c->obj_x[o][1]] = m.payload.dim[o];
    return d;
  };
  for (int t = 0; t < 10; ++t) {
    auto m = random_kernel(sets[0], sets[1], rng);
    auto n = random_kernel(sets[1], sets[2], rng);
    auto a = dims(m), b = dims(n), c = dims(kernel_compose(m, n));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        int e = 0;
        for (int k = 0; k < 3; ++k) e += a[i][k] * b[k][j];
        CHECK(c[i][j] == e);
      }
  }
  // Over the point, kernels between points are vector spaces and compose by tensor product.
  auto s = base_object(pt);
  Sheaf v{pt, Q, {2}, {Matrix::identity(2, Q)}};
  Sheaf w{pt, Q, {3}, {Matrix::identity(3, Q)}};
  auto hom = kernel_hom(s, s, Q);
  auto vv = make_kernel(s, s, pullback_star(hom.to_tgt(), v));
  auto ww = make_kernel(s, s, pullback_star(hom.to_tgt(), w));
  CHECK(total(kernel_compose(vv, ww).payload) == 6);
}

TEST_CASE("associator and unitors are invertible on random triples") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (const auto& bat : {c2_battery(), point_battery()}) {
    const int n = static_cast<int>(bat.objs.size());
    for (int t = 0; t < 50; ++t) {
      const auto& x = bat.objs[rng() % n];
      const auto& y = bat.objs[rng() % n];
      const auto& z = bat.objs[rng() % n];
      const auto& w = bat.objs[rng() % n];
      auto m = random_kernel(x, y, rng);
      auto nn = random_kernel(y, z, rng);
      auto l = random_kernel(z, w, rng);
      auto a = associator(m, nn, l);
      CHECK(is_morphism(kernel_compose(kernel_compose(m, nn), l).payload,
                        kernel_compose(m, kernel_compose(nn, l)).payload, a));
      CHECK(is_iso(a));
      CHECK(is_iso(left_unitor(m)));
      CHECK(is_iso(right_unitor(m)));
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("unitors and associator satisfy the triangle and pentagon") {
  std::mt19937_64 rng(5);
  auto bat = c2_battery();
  const auto& o = bat.objs;
  for (int t = 0; t < 5; ++t) {
    auto m = random_kernel(o[1], o[2], rng);
    auto n = random_kernel(o[2], o[0], rng);
    auto l = random_kernel(o[0], o[1], rng);
    auto p = random_kernel(o[1], o[1], rng);
    auto id = kernel_identity(o[2], Q);
    // (m∘id)∘n -> m∘(id∘n) -> m∘n equals ρ∘n.
    auto lhs = compose(whisker_left(m, kernel_compose(id, n), n, left_unitor(n)), associator(m, id, n));
    auto rhs = whisker_right(kernel_compose(m, id), m, right_unitor(m), n);
    CHECK(maps_equal(lhs, rhs));
    // Pentagon for ((m∘n)∘l)∘p.
    auto mn = kernel_compose(m, n), nl = kernel_compose(n, l), lp = kernel_compose(l, p);
    auto path1 = compose(associator(m, n, lp), associator(mn, l, p));
    auto a_nlp = associator(n, l, p);
    auto path2 = compose(whisker_left(m, kernel_compose(nl, p), kernel_compose(n, lp), a_nlp),
                         compose(associator(m, nl, p),
                                 whisker_right(kernel_compose(mn, l), kernel_compose(m, nl), associator(m, n, l), p)));
    CHECK(maps_equal(path1, path2));
  }
}

TEST_CASE("psi respects composition and psi of phi is pull-push") {
  std::mt19937_64 rng(17);
  auto bat = c2_battery();
  const auto& o = bat.objs;
  for (int t = 0; t < 10; ++t) {
    auto m = random_kernel(o[t % 3], o[(t + 1) % 3], rng);
    auto n = random_kernel(o[(t + 1) % 3], o[(t + 2) % 3], rng);
    std::vector<Sheaf> probes{unit_sheaf(n.src.groupoid(), Q), random_sheaf(n.src.groupoid(), Q, rng, 2)};
    CHECK(psi_coherent(m, n, probes));
  }
  // Identity kernel acts as the identity.
  for (const auto& x : o) {
    auto id = kernel_identity(x, Q);
    auto p = random_sheaf(x.groupoid(), Q, rng, 3);
    CHECK(is_isomorphic(psi_apply(id, p), p));
  }

  // Spans of groupoids over */C2: the apex maps to both legs over the base.
  GroupContext c2(group_preset("c2"));
  auto two = finite_set(2);
  auto pt_map = c2.point();
  auto two_map = set_map(two, c2.bg, {0, 0});
  auto a = kernel_object(pt_map), b = kernel_object(two_map);
  auto left = make_functor(two, pt_map->src, {0, 0}, {0, 0});
  KernelSpan s{a, b, left, identity_functor(two)};
  // Legs must commute over the base: two -> * -> */C2 and two -> two -> */C2.
  auto k = phi(s, Q);
  for (int t = 0; t < 5; ++t) {
    auto nsh = random_sheaf(a.groupoid(), Q, rng, 3);
    auto cmp = psi_phi_comparison(s, k, nsh);
    CHECK(is_iso(cmp));
    CHECK(is_morphism(psi_apply(k, nsh), lower_shriek(s.right, pullback_star(s.left, nsh)), cmp));
  }
  // The identity span gives the identity kernel.
  KernelSpan ids{b, b, identity_functor(two), identity_functor(two)};
  CHECK(is_isomorphic(phi(ids, Q).payload, kernel_identity(b, Q).payload));

  // Finite sets over the point: the graph of f as a 0/1 kernel.
  auto pt = the_point();
  auto three = finite_set(3);
  auto f = set_map(three, two, {1, 0, 1});
  auto x3 = kernel_object(to_point(three)), x2 = kernel_object(to_point(two));
  auto g = phi({x3, x2, identity_functor(three), f}, Q);
  auto c = chain_product({x2.map, x3.map});
  for (int o2 = 0; o2 < c->groupoid->num_objects(); ++o2)
    CHECK(g.payload.dim[o2] == (f->obj[c->obj_x[o2][1]] == c->obj_x[o2][0] ? 1 : 0));
}

TEST_CASE("leg swap reverses composition") {
  std::mt19937_64 rng(23);
  for (const auto& bat : {c2_battery(), point_battery()}) {
    const auto& o = bat.objs;
    for (int t = 0; t < 10; ++t) {
      auto m = random_kernel(o[t % 3], o[(t + 2) % 3], rng);
      auto n = random_kernel(o[(t + 2) % 3], o[(t + 1) % 3], rng);
      auto lhs = kernel_swap(kernel_compose(m, n));
      auto rhs = kernel_compose(kernel_swap(n), kernel_swap(m));
      CHECK(is_isomorphic(lhs.payload, rhs.payload));
      CHECK(sheaves_equal(kernel_swap(kernel_swap(m)).payload, m.payload));
    }
  }
}

TEST_CASE("suave and prim duals") {
  std::mt19937_64 rng(29);
  GroupContext c2(group_preset("c2"));
  GroupContext s3(group_preset("s3"));
  auto sub = s3.group.closure({s3.group.element_by_name("(1 2)")});
  std::vector<FunctorPtr> maps{
      identity_functor(c2.bg), to_point(c2.bg), to_point(finite_set(3)), s3.include(sub), s3.point(),
      set_map(finite_set(3), finite_set(2), {0, 1, 1}),
  };
  for (const auto& f : maps) {
    // Over */S3 the fourfold fiber products are large; simple probes suffice since both properties
    // are additive.
    int max_dim = f->tgt.get() == s3.bg.get() && f->src.get() != f->tgt.get() ? 1 : 3;
    auto probes = default_probes(f->src, Q, rng, max_dim);
    probes.push_back(zero_sheaf(f->src, Q));
    for (const auto& p : probes) {
      auto sv = suave_test(f, p);
      CHECK_MESSAGE(sv.ok(), sv.adjunction.failure);
      auto pr = prim_test(f, p);
      CHECK_MESSAGE(pr.ok(), pr.adjunction.failure);
      // Dualizable P: DSuave(P) ≅ P∨ ⊗ ω.
      CHECK(is_isomorphic(sv.dual, tensor(dual(p), upper_shriek(f, unit_sheaf(f->tgt, Q)))));
    }
  }
  // The trivial sheaf on */C2 over the point is suave with trivial dual.
  auto sv = suave_test(to_point(c2.bg), unit_sheaf(c2.bg, Q));
  CHECK(sv.ok());
  CHECK(sheaves_equal(sv.dual, unit_sheaf(c2.bg, Q)));
  auto pr = prim_test(identity_functor(c2.bg), unit_sheaf(c2.bg, Q));
  CHECK(pr.ok());
  CHECK(is_isomorphic(pr.dual, unit_sheaf(c2.bg, Q)));
}

TEST_CASE("a broken counit is diagnosed") {
  GroupContext c2(group_preset("c2"));
  auto f = to_point(c2.bg);
  auto p = unit_sheaf(c2.bg, Q);
  auto cert = suave_test(f, p);
  REQUIRE(cert.ok());
  auto bad = complete_adjunction(cert.adjunction.left, cert.adjunction.right,
                                 zero_map(kernel_compose(cert.adjunction.left, cert.adjunction.right).payload,
                                          kernel_identity(base_object(the_point()), Q).payload));
  CHECK_FALSE(bad.ok());
  CHECK(bad.failure.find("first triangle") != std::string::npos);
}

TEST_CASE("etale and proper certificates") {
  std::mt19937_64 rng(31);
  GroupContext c2(group_preset("c2"));
  GroupContext s3(group_preset("s3"));
  auto sub = s3.group.closure({s3.group.element_by_name("(1 2)")});
  std::vector<FunctorPtr> maps{identity_functor(c2.bg), s3.include(sub), to_point(finite_set(3)), to_point(c2.bg),
                               s3.point()};
  for (const auto& f : maps) {
    auto rep = etale_proper_test(f, default_probes(f->src, Q, rng), default_probes(f->tgt, Q, rng));
    CHECK_MESSAGE(rep.ok(), rep.detail);
    CHECK(sheaves_equal(rep.omega, unit_sheaf(f->src, Q)));
    CHECK(is_isomorphic(rep.delta, unit_sheaf(f->src, Q)));
  }
}

TEST_CASE("eight base-change comparisons") {
  std::mt19937_64 rng(37);
  GroupContext s3(group_preset("s3"));
  auto sub = s3.group.closure({s3.group.element_by_name("(1 2)")});
  auto f = s3.point();
  auto g = s3.include(sub);
  auto sq = iso_comma_pullback(f, g);
  auto cmp = base_change_suave_prim(f, g, default_probes(s3.bg, Q, rng), default_probes(f->src, Q, rng),
                                    default_probes(g->src, Q, rng));
  CHECK(cmp.size() == 8);
  for (const auto& c : cmp) CHECK_MESSAGE(c.invertible, c.name);

  // Products of finite sets.
  auto pt = the_point();
  auto a = to_point(finite_set(2)), b = to_point(finite_set(3));
  auto cmp2 = base_change_suave_prim(a, b, {unit_sheaf(pt, Q)}, default_probes(a->src, Q, rng),
                                     default_probes(b->src, Q, rng));
  for (const auto& c : cmp2) CHECK_MESSAGE(c.invertible, c.name);
}
