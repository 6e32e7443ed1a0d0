#include "sixff/simplicial.hpp"

#include <algorithm>
#include <functional>

#include "sixff/presets.hpp"

namespace sixff {

// ---------------------------------------------------------------------------------------------
// Pyramid posets

int PyramidPoset::index(int i, int j) const {
  for (size_t a = 0; a < elements.size(); ++a)
    if (elements[a] == std::make_pair(i, j)) return static_cast<int>(a);
  return -1;
}

bool PyramidPoset::leq(int a, int b) const {
  auto [i, j] = elements[a];
  auto [k, l] = elements[b];
  if (variant == PyramidVariant::Sigma2) return i <= k && j == l;
  return i <= k && l <= j;
}

std::vector<std::pair<int, int>> PyramidPoset::covers() const {
  std::vector<std::pair<int, int>> out;
  const int m = static_cast<int>(elements.size());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < m && direct; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

CategoryPtr PyramidPoset::category() const {
  std::vector<std::string> names;
  for (auto [i, j] : elements) names.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  const int m = static_cast<int>(elements.size());
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) rel[a][b] = leq(a, b);
  return poset_category(names, rel, variant_name(variant) + std::to_string(n));
}

std::string variant_name(PyramidVariant v) {
  switch (v) {
    case PyramidVariant::Sigma: return "Sigma";
    case PyramidVariant::Sigma2: return "Sigma2";
    case PyramidVariant::Lambda: return "Lambda";
  }
  return "?";
}

PyramidPoset build_pyramid(int n, PyramidVariant variant) {
  if (n < 0) throw std::invalid_argument("build_pyramid: n must be nonnegative");
  PyramidPoset p;
  p.n = n;
  p.variant = variant;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      if (variant != PyramidVariant::Lambda || j - i <= 1) p.elements.emplace_back(i, j);
  return p;
}

bool MonotoneMap::monotone() const {
  if (static_cast<int>(img.size()) != src + 1) return false;
  for (int a = 0; a <= src; ++a) {
    if (img[a] < 0 || img[a] > tgt) return false;
    if (a > 0 && img[a] < img[a - 1]) return false;
  }
  return true;
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (f.tgt != g.src) throw std::invalid_argument("monotone compose: not composable");
  MonotoneMap r{f.src, g.tgt, std::vector<int>(f.src + 1)};
  for (int a = 0; a <= f.src; ++a) r.img[a] = g.img[f.img[a]];
  return r;
}

MonotoneMap identity_monotone(int n) {
  MonotoneMap r{n, n, std::vector<int>(n + 1)};
  for (int a = 0; a <= n; ++a) r.img[a] = a;
  return r;
}

MonotoneMap reverse_conjugate(const MonotoneMap& m) {
  MonotoneMap r{m.src, m.tgt, std::vector<int>(m.src + 1)};
  for (int a = 0; a <= m.src; ++a) r.img[a] = m.tgt - m.img[m.src - a];
  return r;
}

bool PyramidSection::is_functor() const {
  const int m = static_cast<int>(shape.elements.size());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!shape.leq(a, b)) continue;
      const auto& t = transition.at({a, b});
      if (t.src != value[a] || t.tgt != value[b] || !t.monotone()) return false;
      if (a == b && !(t == identity_monotone(value[a]))) return false;
      for (int c = 0; c < m; ++c)
        if (shape.leq(b, c) && !(compose(transition.at({b, c}), t) == transition.at({a, c}))) return false;
    }
  return true;
}

PyramidSections pyramid_sections(int n) {
  PyramidSections out;
  auto shape = build_pyramid(n, PyramidVariant::Sigma);
  const int m = static_cast<int>(shape.elements.size());
  out.s.shape = out.t.shape = shape;
  for (auto [i, j] : shape.elements) {
    out.s.value.push_back(i);
    out.t.value.push_back(2 * i + 1 - (i == j ? 1 : 0));
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!shape.leq(a, b)) continue;
      int i = shape.elements[a].first;
      MonotoneMap s{out.s.value[a], out.s.value[b], {}};
      for (int x = 0; x <= s.src; ++x) s.img.push_back(x);
      out.s.transition[{a, b}] = s;
      // First i+1 elements fixed, the rest aligned at the top.
      MonotoneMap t{out.t.value[a], out.t.value[b], {}};
      for (int x = 0; x <= t.src; ++x) t.img.push_back(x <= i ? x : t.tgt - (t.src - x));
      out.t.transition[{a, b}] = t;
    }
  for (int a = 0; a < m; ++a) {
    MonotoneMap c{out.s.value[a], out.t.value[a], {}};
    for (int x = 0; x <= c.src; ++x) c.img.push_back(x);
    out.t_to_s.push_back(c);
  }
  out.t_to_s_natural = out.symmetry_natural = out.symmetry_involutive = true;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!shape.leq(a, b)) continue;
      const auto& t = out.t.transition.at({a, b});
      if (!(compose(t, out.t_to_s[a]) == compose(out.t_to_s[b], out.s.transition.at({a, b}))))
        out.t_to_s_natural = false;
      if (!(reverse_conjugate(t) == t)) out.symmetry_natural = false;
      if (!(reverse_conjugate(reverse_conjugate(t)) == t)) out.symmetry_involutive = false;
    }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Descent index categories

namespace {

void monotone_maps(int n, int m, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> a;
  std::function<void(int, int)> rec = [&](int k, int lo) {
    if (k > n) {
      fn(a);
      return;
    }
    for (int v = lo; v <= m; ++v) {
      a.push_back(v);
      rec(k + 1, v);
      a.pop_back();
    }
  };
  rec(0, 0);
}

std::string list_str(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

DescentIndex descent_index(int index_size, DescentKind kind, int truncation) {
  if (index_size < 1) throw std::invalid_argument("descent_index: the index set must be nonempty");
  DescentIndex d;
  d.kind = kind;
  d.index_size = index_size;
  d.truncation = truncation;
  CategoryBuilder b;
  std::map<std::vector<int>, int> obj_of;
  std::vector<int> src_of, tgt_of;
  std::map<std::tuple<int, int, std::vector<int>>, int> mor_of;

  if (kind == DescentKind::DeltaI) {
    for (int n = 0; n <= truncation; ++n) {
      std::vector<int> is(n + 1, 0);
      while (true) {
        obj_of[is] = b.add_object("[" + std::to_string(n) + "]" + list_str(is));
        d.labels.push_back(is);
        d.level.push_back(n);
        int k = n;
        while (k >= 0 && ++is[k] == index_size) is[k--] = 0;
        if (k < 0) break;
      }
    }
    const int no = static_cast<int>(d.labels.size());
    for (int s = 0; s < no; ++s)
      for (int t = 0; t < no; ++t) {
        const auto& is = d.labels[s];
        const auto& js = d.labels[t];
        monotone_maps(d.level[s], d.level[t], [&](const std::vector<int>& alpha) {
          for (int k = 0; k <= d.level[s]; ++k)
            if (is[k] != js[alpha[k]]) return;
          bool id = s == t;
          for (int k = 0; id && k <= d.level[s]; ++k) id = alpha[k] == k;
          int m = id ? b.add_identity(s) : b.add_morphism(list_str(alpha) + ":" + std::to_string(s) + "->" + std::to_string(t), s, t);
          mor_of[{s, t, alpha}] = m;
          d.morphism_map.push_back(alpha);
          src_of.push_back(s);
          tgt_of.push_back(t);
        });
      }
    const int nm = static_cast<int>(d.morphism_map.size());
    for (int f = 0; f < nm; ++f)
      for (int g = 0; g < nm; ++g) {
        if (tgt_of[f] != src_of[g]) continue;
        std::vector<int> comp;
        for (int v : d.morphism_map[f]) comp.push_back(d.morphism_map[g][v]);
        b.set_compose(g, f, mor_of.at({src_of[f], tgt_of[g], comp}));
      }
    d.category = b.build("Delta_I(" + std::to_string(index_size) + "," + std::to_string(truncation) + ")", false);
    return d;
  }

  for (int mask = 1; mask < (1 << index_size); ++mask) {
    std::vector<int> j;
    for (int i = 0; i < index_size; ++i)
      if ((mask >> i) & 1) j.push_back(i);
    b.add_object("U" + list_str(j));
    d.labels.push_back(j);
    d.level.push_back(static_cast<int>(j.size()) - 1);
  }
  const int no = static_cast<int>(d.labels.size());
  std::vector<std::vector<int>> idx(no, std::vector<int>(no, -1));
  for (int s = 0; s < no; ++s)
    for (int t = 0; t < no; ++t) {
      std::vector<int> pos;
      for (int v : d.labels[s]) {
        auto it = std::find(d.labels[t].begin(), d.labels[t].end(), v);
        if (it == d.labels[t].end()) break;
        pos.push_back(static_cast<int>(it - d.labels[t].begin()));
      }
      if (pos.size() != d.labels[s].size()) continue;
      idx[s][t] = s == t ? b.add_identity(s) : b.add_morphism(list_str(d.labels[s]) + "<" + list_str(d.labels[t]), s, t);
      d.morphism_map.push_back(pos);
    }
  for (int a = 0; a < no; ++a)
    for (int c = 0; c < no; ++c)
      for (int e = 0; e < no; ++e)
        if (idx[a][c] >= 0 && idx[c][e] >= 0) b.set_compose(idx[c][e], idx[a][c], idx[a][e]);
  d.category = b.build("P_I(" + std::to_string(index_size) + ")", false);
  return d;
}

CoverPowers attach_cover(const DescentIndex& idx, const std::vector<FunctorPtr>& cover) {
  if (static_cast<int>(cover.size()) != idx.index_size) throw std::invalid_argument("attach_cover: wrong family size");
  CoverPowers cp;
  for (const auto& lab : idx.labels) {
    std::vector<FunctorPtr> maps;
    for (int i : lab) maps.push_back(cover.at(i));
    cp.powers.push_back(chain_product(maps));
  }
  const auto& C = *idx.category;
  for (int m = 0; m < C.num_morphisms(); ++m)
    cp.maps.push_back(cp.powers[C.tgt(m)]->projection(idx.morphism_map[m], cp.powers[C.src(m)]));
  return cp;
}

ValidationReport check_cover_powers(const DescentIndex& idx, const CoverPowers& cp) {
  ValidationReport rep;
  const auto& C = *idx.category;
  for (int o = 0; o < C.num_objects(); ++o)
    if (!functors_equal(*cp.maps[C.identity(o)], *identity_functor(cp.powers[o]->groupoid)))
      rep.push_back({"identity", C.object_name(o)});
  for (int f = 0; f < C.num_morphisms(); ++f)
    for (int g : C.out(C.tgt(f)))
      if (!functors_equal(*cp.maps[C.compose_or_throw(g, f)], *compose_functors(cp.maps[f], cp.maps[g])))
        rep.push_back({"composition", C.morphism_name(g) + " o " + C.morphism_name(f)});
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Descent

DescentCategory::DescentCategory(const FunctorPtr& f, Field k) : f_(f), k_(k) {
  require_gate(*f->tgt, k);
  require_gate(*f->src, k);
  nerve_ = cech_nerve(f, 2);
  auto rep = nerve_.check_identities();
  if (!rep.empty()) throw std::logic_error("Cech nerve identities fail: " + rep[0].detail);
  const auto& X = *f->tgt;
  cover_object_.assign(X.num_components(), -1);
  for (int y = f->src->num_objects() - 1; y >= 0; --y) cover_object_[X.component_of(f->obj[y])] = y;
  for (int c = 0; c < X.num_components(); ++c)
    if (cover_object_[c] < 0)
      throw std::invalid_argument("not a cover: nothing over " + X.object_name(X.component_rep(c)));
}

ValidationReport DescentCategory::validate(const DescentDatum& d) const {
  ValidationReport rep = validate_sheaf(d.m);
  if (!rep.empty()) return rep;
  const auto& faces = nerve_.faces;
  const int n1 = nerve_.levels[1]->num_objects();
  if (static_cast<int>(d.alpha.comp.size()) != n1) {
    rep.push_back({"alpha_shape", "alpha needs one component per level-1 object"});
    return rep;
  }
  auto d0 = pullback_star(faces[1][0], d.m);
  auto d1 = pullback_star(faces[1][1], d.m);
  if (!sixff::is_morphism(d0, d1, d.alpha)) {
    rep.push_back({"alpha_not_natural", "alpha is not a map d0*M -> d1*M"});
    return rep;
  }
  if (!sixff::is_iso(d.alpha)) rep.push_back({"alpha_not_iso", "alpha is not invertible"});
  const int n2 = nerve_.levels[2]->num_objects();
  for (int w = 0; w < n2; ++w) {
    const auto& a0 = d.alpha.comp[faces[2][0]->obj[w]];
    const auto& a1 = d.alpha.comp[faces[2][1]->obj[w]];
    const auto& a2 = d.alpha.comp[faces[2][2]->obj[w]];
    if (a1 != a2 * a0) {
      rep.push_back({"cocycle", "fails at " + nerve_.levels[2]->object_name(w)});
      break;
    }
  }
  return rep;
}

bool DescentCategory::is_morphism(const DescentDatum& a, const DescentDatum& b, const SheafMap& phi) const {
  if (!sixff::is_morphism(a.m, b.m, phi)) return false;
  const auto& faces = nerve_.faces;
  for (int v = 0; v < nerve_.levels[1]->num_objects(); ++v) {
    int y0 = faces[1][1]->obj[v], y1 = faces[1][0]->obj[v];
    if (phi.comp[y0] * a.alpha.comp[v] != b.alpha.comp[v] * phi.comp[y1]) return false;
  }
  return true;
}

std::vector<SheafMap> DescentCategory::hom_space(const DescentDatum& a, const DescentDatum& b) const {
  auto basis = sixff::hom_space(a.m, b.m);
  if (basis.empty()) return {};
  const auto& faces = nerve_.faces;
  const int nb = static_cast<int>(basis.size());
  std::vector<std::vector<Scalar>> cols(nb);
  for (int v = 0; v < nerve_.levels[1]->num_objects(); ++v) {
    int y0 = faces[1][1]->obj[v], y1 = faces[1][0]->obj[v];
    for (int t = 0; t < nb; ++t) {
      Matrix c = basis[t].comp[y0] * a.alpha.comp[v] - b.alpha.comp[v] * basis[t].comp[y1];
      for (int r = 0; r < c.rows(); ++r)
        for (int s = 0; s < c.cols(); ++s) cols[t].push_back(c.at(r, s));
    }
  }
  const int rows = static_cast<int>(cols[0].size());
  Matrix sys(rows, nb, k_);
  for (int t = 0; t < nb; ++t)
    for (int r = 0; r < rows; ++r) sys.at(r, t) = cols[t][r];
  Matrix ns = sys.nullspace();
  std::vector<SheafMap> out;
  for (int c = 0; c < ns.cols(); ++c) {
    SheafMap acc = zero_map(a.m, b.m);
    for (int t = 0; t < nb; ++t)
      if (!ns.at(t, c).is_zero()) acc = add(acc, scale(basis[t], ns.at(t, c)));
    out.push_back(acc);
  }
  return out;
}

DescentDatum DescentCategory::comparison(const Sheaf& n) const {
  DescentDatum d{pullback_star(f_, n), {}};
  const auto& X = *f_->tgt;
  const auto& chain = *nerve_.chains[1];
  for (int v = 0; v < nerve_.levels[1]->num_objects(); ++v) d.alpha.comp.push_back(n.mat[X.inverse(chain.obj_phi[v][0])]);
  return d;
}

DescentCategory::Descended DescentCategory::descend(const DescentDatum& d) const {
  const auto& X = *f_->tgt;
  const auto& Y = *f_->src;
  const auto& chain = *nerve_.chains[1];
  // ψ_x: f(y_c) -> x
  auto psi = [&](int x) {
    int yc = cover_object_[X.component_of(x)];
    return X.compose_or_throw(X.tree(x), X.inverse(X.tree(f_->obj[yc])));
  };
  auto alpha_at = [&](int y0, int y1, int phi) {
    int v = chain.find_object({y0, y1}, {phi});
    if (v < 0) throw std::logic_error("descend: missing level-1 object");
    return d.alpha.comp[v];
  };
  Descended out;
  out.n.base = f_->tgt;
  out.n.k = k_;
  for (int x = 0; x < X.num_objects(); ++x) out.n.dim.push_back(d.m.dim[cover_object_[X.component_of(x)]]);
  for (int g = 0; g < X.num_morphisms(); ++g) {
    int x = X.src(g), x2 = X.tgt(g);
    int yc = cover_object_[X.component_of(x)];
    int phi = X.compose_or_throw(X.inverse(psi(x)), X.compose_or_throw(X.inverse(g), psi(x2)));
    out.n.mat.push_back(alpha_at(yc, yc, phi));
  }
  for (int y = 0; y < Y.num_objects(); ++y) {
    int fy = f_->obj[y];
    int yc = cover_object_[X.component_of(fy)];
    out.iso.comp.push_back(alpha_at(y, yc, X.inverse(psi(fy))));
  }
  return out;
}

DescentDatum DescentCategory::twist(const DescentDatum& d, const std::vector<Matrix>& g) const {
  DescentDatum r = d;
  const auto& Y = *f_->src;
  for (int a = 0; a < Y.num_morphisms(); ++a)
    r.m.mat[a] = g[Y.tgt(a)] * d.m.mat[a] * g[Y.src(a)].inverse_or_throw("twist");
  const auto& faces = nerve_.faces;
  for (int v = 0; v < nerve_.levels[1]->num_objects(); ++v) {
    int y0 = faces[1][1]->obj[v], y1 = faces[1][0]->obj[v];
    r.alpha.comp[v] = g[y0] * d.alpha.comp[v] * g[y1].inverse_or_throw("twist");
  }
  return r;
}

DescentCertificate descent_comparison(const FunctorPtr& f, Field k, std::mt19937_64& rng, int samples) {
  DescentCertificate cert;
  DescentCategory D(f, k);
  const auto& X = f->tgt;
  std::vector<Sheaf> objects;
  for (int c = 0; c < X->num_components(); ++c) {
    auto inc = object_inclusion(X, X->component_rep(c));
    objects.push_back(lower_shriek(inc, unit_sheaf(inc->src, k)));
  }
  if (X->num_components() == 1) {
    auto simples = simple_summands(objects[0]);
    objects.insert(objects.end(), simples.begin(), simples.end());
  }
  for (int s = 0; s < samples; ++s) objects.push_back(random_sheaf(X, k, rng, 3));
  cert.objects_checked = static_cast<int>(objects.size());

  cert.fully_faithful = true;
  std::vector<DescentDatum> images;
  for (const auto& o : objects) images.push_back(D.comparison(o));
  for (size_t a = 0; a < objects.size() && cert.fully_faithful; ++a)
    for (size_t b = 0; b < objects.size(); ++b) {
      auto hx = sixff::hom_space(objects[a], objects[b]);
      auto hd = D.hom_space(images[a], images[b]);
      bool ok = hx.size() == hd.size();
      if (ok && !hx.empty()) {
        std::vector<std::vector<Scalar>> cols;
        for (const auto& h : hx) {
          auto img = D.comparison_map(h);
          if (!D.is_morphism(images[a], images[b], img)) ok = false;
          std::vector<Scalar> col;
          for (const auto& m : img.comp)
            for (int r = 0; r < m.rows(); ++r)
              for (int s = 0; s < m.cols(); ++s) col.push_back(m.at(r, s));
          cols.push_back(col);
        }
        if (!cols[0].empty()) {
          Matrix mat(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()), k);
          for (size_t t = 0; t < cols.size(); ++t)
            for (size_t r = 0; r < cols[t].size(); ++r) mat.at(static_cast<int>(r), static_cast<int>(t)) = cols[t][r];
          ok = ok && mat.rank() == static_cast<int>(hx.size());
        }
      }
      if (!ok) {
        cert.fully_faithful = false;
        cert.detail = "hom mismatch between test objects " + std::to_string(a) + " and " + std::to_string(b);
        break;
      }
    }

  cert.essentially_surjective = true;
  const auto& Y = *f->src;
  for (size_t a = 0; a < images.size(); ++a) {
    std::vector<Matrix> g;
    for (int y = 0; y < Y.num_objects(); ++y) g.push_back(random_invertible(images[a].m.dim[y], k, rng));
    auto datum = D.twist(images[a], g);
    ++cert.data_checked;
    if (!D.validate(datum).empty()) {
      cert.essentially_surjective = false;
      cert.detail = "twisted datum invalid";
      break;
    }
    auto desc = D.descend(datum);
    auto back = D.comparison(desc.n);
    if (!validate_sheaf(desc.n).empty() || !D.is_morphism(back, datum, desc.iso) || !sixff::is_iso(desc.iso)) {
      cert.essentially_surjective = false;
      cert.detail = "datum " + std::to_string(a) + " does not glue";
      break;
    }
  }
  if (cert.ok()) cert.detail = "equivalence";
  return cert;
}

}  // namespace sixff
