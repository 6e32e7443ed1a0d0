#include "doctest.h"

#include <functional>
#include <random>
#include <set>

#include "sixff/presets.hpp"
#include "sixff/simplicial.hpp"

using namespace sixff;

namespace {

using PosetPyramid = PyramidFunctor<EnumeratedBackend>;

// All functors Σⁿ -> C into a poset, assigned diagonal by diagonal.
std::vector<PosetPyramid> all_sigma_functors(const EnumeratedBackend& b, int n) {
  const auto& C = b.cat();
  std::vector<PosetPyramid> out;
  auto f = empty_pyramid<EnumeratedBackend>(n);
  std::vector<std::pair<int, int>> order;
  for (int d = 0; d <= n; ++d)
    for (int i = 0; i + d <= n; ++i) order.emplace_back(i, i + d);
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == order.size()) {
      out.push_back(f);
      return;
    }
    auto [i, j] = order[k];
    for (int o = 0; o < C.num_objects(); ++o) {
      f.obj[i][j] = o;
      if (i < j) {
        const auto& r = C.hom(o, f.obj[i + 1][j]);
        const auto& l = C.hom(o, f.obj[i][j - 1]);
        if (r.empty() || l.empty()) continue;
        f.to_right[i][j] = r[0];
        f.to_left[i][j] = l[0];
      }
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

bool same_objects(const PosetPyramid& a, const PosetPyramid& b) { return a.obj == b.obj; }

}  // namespace

TEST_CASE("pyramid poset sizes") {
  CHECK(build_pyramid(0, PyramidVariant::Sigma).elements.size() == 1);
  for (int n = 0; n <= 8; ++n) {
    CHECK(static_cast<int>(build_pyramid(n, PyramidVariant::Sigma).elements.size()) == (n + 1) * (n + 2) / 2);
    CHECK(static_cast<int>(build_pyramid(n, PyramidVariant::Lambda).elements.size()) == 2 * n + 1);
  }
  auto l3 = build_pyramid(3, PyramidVariant::Lambda);
  auto covers = l3.covers();
  CHECK(covers.size() == 6);
  for (auto [a, b] : covers) {
    auto [i, j] = l3.elements[a];
    CHECK(j == i + 1);
    CHECK((l3.elements[b] == std::make_pair(i, i) || l3.elements[b] == std::make_pair(j, j)));
  }
  auto s3 = build_pyramid(3, PyramidVariant::Sigma);
  CHECK(s3.covers().size() == 12);
  auto s2 = build_pyramid(3, PyramidVariant::Sigma2);
  for (auto [a, b] : s2.covers()) CHECK(s2.elements[a].second == s2.elements[b].second);
  CHECK(s2.covers().size() == 6);
  CHECK(validate_category(*s3.category()).empty());
}

TEST_CASE("pyramid sections") {
  auto p2 = pyramid_sections(2);
  const auto& sh = p2.t.shape;
  std::vector<std::pair<std::pair<int, int>, int>> expected{{{0, 0}, 0}, {{0, 1}, 1}, {{0, 2}, 1},
                                                            {{1, 1}, 2}, {{1, 2}, 3}, {{2, 2}, 4}};
  for (auto [e, v] : expected) {
    int a = sh.index(e.first, e.second);
    CHECK(p2.t.value[a] == v);
    CHECK(p2.s.value[a] == e.first);
  }
  // [3] -> [1] in Δ^op misses the middle two elements.
  CHECK(p2.t.transition.at({sh.index(0, 2), sh.index(1, 2)}).img == std::vector<int>{0, 3});
  // [2] -> [1] misses the middle element; [2] -> [3] collapses the middle pair.
  CHECK(p2.t.transition.at({sh.index(0, 1), sh.index(1, 1)}).img == std::vector<int>{0, 2});
  CHECK(p2.t.transition.at({sh.index(1, 2), sh.index(1, 1)}).img == std::vector<int>{0, 1, 1, 2});

  auto p0 = pyramid_sections(0);
  CHECK(p0.s.value == std::vector<int>{0});
  CHECK(p0.t.value == std::vector<int>{0});

  for (int n = 0; n <= 5; ++n) {
    auto p = pyramid_sections(n);
    CHECK(p.s.is_functor());
    CHECK(p.t.is_functor());
    CHECK(p.t_to_s_natural);
    CHECK(p.symmetry_natural);
    CHECK(p.symmetry_involutive);
  }
}

TEST_CASE("cartesian pyramids in finite sets") {
  FinSetBackend fs;
  Span<FinSetBackend> a{2, 3, 2, FinSetBackend::from_vector(2, {0, 1, 1}), FinSetBackend::from_vector(2, {0, 0, 1})};
  Span<FinSetBackend> b{2, 2, 1, FinSetBackend::from_vector(2, {1, 1}), FinSetBackend::to_terminal(2)};
  auto f = lambda_to_sigma(fs, 2, {a, b});
  CHECK(pyramid_functor_valid(fs, f));
  CHECK(is_cartesian(fs, f).cartesian);
  auto composite = compose_spans(fs, a, b);
  CHECK(f.obj[0][2] == composite.z);
  CHECK(span_iso(fs, Span<FinSetBackend>{2, f.obj[0][2], 1, fs.compose(f.to_left[0][1], f.to_left[0][2]),
                                         fs.compose(f.to_right[1][2], f.to_right[0][2])},
                 composite));
  auto back = restrict_to_lambda(f);
  REQUIRE(back.size() == 2);
  CHECK(back[0].left == a.left);
  CHECK(back[1].right == b.right);

  // Enlarge the apex by a duplicate point.
  auto g = f;
  g.obj[0][2] = f.obj[0][2] + 1;
  auto dup = [](FinMap m) {
    m.img.push_back(m.img.back());
    m.src += 1;
    return m;
  };
  g.to_left[0][2] = dup(f.to_left[0][2]);
  g.to_right[0][2] = dup(f.to_right[0][2]);
  CHECK(pyramid_functor_valid(fs, g));
  auto rep = is_cartesian(fs, g);
  CHECK_FALSE(rep.cartesian);
  REQUIRE(rep.failing);
  CHECK(*rep.failing == std::make_pair(0, 2));

  auto one = lambda_to_sigma(fs, 2, {a});
  CHECK(is_cartesian(fs, one).cartesian);
  CHECK(one.obj[0][1] == a.z);
}

TEST_CASE("restricted E blocks the extension") {
  FinSetBackend iso_only(false);
  Span<FinSetBackend> a{1, 2, 1, FinSetBackend::to_terminal(2), FinSetBackend::to_terminal(2)};
  CHECK_THROWS_AS(lambda_to_sigma(iso_only, 1, {a}), SetupViolation);
}

TEST_CASE("cartesian extension is a bijection on small posets") {
  for (const auto& c : {chain_poset(4), divisor_poset(6)}) {
    REQUIRE(c->num_objects() <= 4);
    for (bool isos : {false, true}) {
      EnumeratedBackend b(c, isos ? isomorphisms_only(*c) : all_morphisms(*c));
      REQUIRE(validate_setup(b).valid());
      for (int n = 0; n <= 3; ++n) {
        auto sigma = all_sigma_functors(b, n);
        int cartesian = 0;
        std::set<std::vector<std::vector<int>>> lambda_images;
        for (const auto& f : sigma) {
          bool vertical = true;
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j <= n; ++j) vertical = vertical && b.in_e(f.to_right[i][j]);
          if (!vertical || !is_cartesian(b, f).cartesian) continue;
          ++cartesian;
          auto spans = restrict_to_lambda(f);
          auto ext = lambda_to_sigma(b, f.obj[0][0], spans);
          CHECK(same_objects(ext, f));
          std::vector<std::vector<int>> key;
          for (const auto& s : spans) key.push_back({s.x, s.z, s.y});
          lambda_images.insert(key);
        }
        // Count Λⁿ data with right legs in E directly.
        long lambda_count = 0;
        std::function<void(int, int)> rec = [&](int i, int prev) {
          if (i == n) {
            ++lambda_count;
            return;
          }
          for (int z = 0; z < c->num_objects(); ++z)
            for (int y = 0; y < c->num_objects(); ++y) {
              if (c->hom(z, prev).empty() || c->hom(z, y).empty()) continue;
              if (!b.in_e(c->hom(z, y)[0])) continue;
              rec(i + 1, y);
            }
        };
        for (int x = 0; x < c->num_objects(); ++x) rec(0, x);
        CHECK(cartesian == lambda_count);
        CHECK(static_cast<long>(lambda_images.size()) == (n == 0 ? 1 : lambda_count));
      }
    }
  }
}

TEST_CASE("descent index categories") {
  auto d = descent_index(2, DescentKind::DeltaI, 1);
  int l0 = 0, l1 = 0;
  for (int lv : d.level) (lv == 0 ? l0 : l1)++;
  CHECK(l0 == 2);
  CHECK(l1 == 4);
  CHECK(validate_category(*d.category).empty());
  auto p = descent_index(3, DescentKind::PI, 0);
  CHECK(p.category->num_objects() == 7);
  CHECK(validate_category(*p.category).empty());
  auto one = descent_index(1, DescentKind::DeltaI, 3);
  CHECK(one.category->num_objects() == 4);

  GroupContext s3(FiniteGroup::symmetric(3));
  auto c2 = s3.include(s3.group.closure({s3.group.element_by_name("(1 2)")}));
  std::vector<FunctorPtr> cover{s3.point(), c2};
  auto dd = descent_index(2, DescentKind::DeltaI, 2);
  auto powers = attach_cover(dd, cover);
  CHECK(check_cover_powers(dd, powers).empty());
  // U_(0,1) = * ×_{*/S3} */C2 has 3 components.
  int o01 = -1;
  for (size_t o = 0; o < dd.labels.size(); ++o)
    if (dd.labels[o] == std::vector<int>{0, 1}) o01 = static_cast<int>(o);
  REQUIRE(o01 >= 0);
  CHECK(powers.powers[o01]->groupoid->num_components() == 3);

  auto pp = descent_index(2, DescentKind::PI, 0);
  auto ppow = attach_cover(pp, cover);
  CHECK(check_cover_powers(pp, ppow).empty());
}

TEST_CASE("descent along two points over a point") {
  auto pt = finite_set(1);
  auto two = finite_set(2);
  auto f = set_map(two, pt, {0, 0});
  Field q = Field::rationals();
  DescentCategory D(f, q);
  CHECK(D.nerve().levels[1]->num_objects() == 4);
  auto w = trivial_rep(pt, q, 2);
  auto datum = D.comparison(w);
  CHECK(D.validate(datum).empty());
  for (const auto& a : datum.alpha.comp) CHECK(a.is_identity());

  // A datum with α(0,1) = A and α(1,0) = A⁻¹ descends to k^2.
  auto A = Matrix::from_ints({{1, 2}, {0, 1}}, q);
  DescentDatum d2 = datum;
  const auto& faces = D.nerve().faces;
  for (int v = 0; v < 4; ++v) {
    int y0 = faces[1][1]->obj[v], y1 = faces[1][0]->obj[v];
    if (y0 == 0 && y1 == 1) d2.alpha.comp[v] = A;
    if (y0 == 1 && y1 == 0) d2.alpha.comp[v] = A.inverse_or_throw("A");
  }
  CHECK(D.validate(d2).empty());
  auto desc = D.descend(d2);
  CHECK(desc.n.dim[0] == 2);
  CHECK(D.is_morphism(D.comparison(desc.n), d2, desc.iso));
  CHECK(D.hom_space(d2, d2).size() == 4);

  DescentDatum bad = d2;
  for (int v = 0; v < 4; ++v)
    if (faces[1][1]->obj[v] == 1 && faces[1][0]->obj[v] == 0) bad.alpha.comp[v] = A;
  auto rep = D.validate(bad);
  REQUIRE_FALSE(rep.empty());
  CHECK(rep[0].code == "cocycle");

  std::mt19937_64 rng(3);
  CHECK(descent_comparison(f, q, rng).ok());
}

TEST_CASE("descent along a point into a classifying groupoid") {
  Field q = Field::rationals();
  GroupContext c2(FiniteGroup::cyclic(2));
  auto pt = c2.point();
  DescentCategory D(pt, q);
  CHECK(D.nerve().levels[1]->num_objects() == 2);
  // α_g = -1 for the generator encodes the sign character.
  DescentDatum d{unit_sheaf(pt->src, q), {}};
  const auto& chain = *D.nerve().chains[1];
  for (int v = 0; v < 2; ++v)
    d.alpha.comp.push_back(Matrix::from_ints({{c2.bg->is_identity(chain.obj_phi[v][0]) ? 1L : -1L}}, q));
  CHECK(D.validate(d).empty());
  auto desc = D.descend(d);
  CHECK(is_isomorphic(desc.n, sign_rep(c2.bg, c2.group, q)));
  CHECK_FALSE(is_isomorphic(desc.n, trivial_rep(c2.bg, q)));

  std::mt19937_64 rng(5);
  CHECK(descent_comparison(c2.point(), q, rng).ok());
  GroupContext s3(FiniteGroup::symmetric(3));
  auto cert = descent_comparison(s3.point(), q, rng);
  CHECK(cert.ok());
  CHECK(cert.objects_checked >= 4);

  CHECK_THROWS_AS(DescentCategory(c2.point(), Field::prime(2)), GateViolation);
  CHECK_THROWS_AS(DescentCategory(object_inclusion(finite_set(2), 0), q), std::invalid_argument);
}

TEST_CASE("descent along a random surjection") {
  std::mt19937_64 rng(11);
  Field q = Field::rationals();
  for (int t = 0; t < 3; ++t) {
    int m = 1 + static_cast<int>(rng() % 3);
    int n = m + static_cast<int>(rng() % 3);
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i < m ? i : static_cast<int>(rng() % m);
    std::shuffle(img.begin(), img.end(), rng);
    auto f = set_map(finite_set(n), finite_set(m), img);
    CHECK(descent_comparison(f, q, rng).ok());
  }
  GroupContext s3(FiniteGroup::symmetric(3));
  auto c3 = s3.include(s3.group.closure({s3.group.element_by_name("(1 2 3)")}));
  CHECK(descent_comparison(c3, q, rng).ok());
}
