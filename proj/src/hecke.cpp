#include "sixff/hecke.hpp"

#include <algorithm>
#include <set>

#include "sixff/kernel.hpp"
#include "sixff/presets.hpp"

namespace sixff {

DoubleCosetTable double_cosets(const FiniteGroup& g, const std::vector<int>& h, const std::vector<int>& k) {
  if (!g.is_subgroup(h) || !g.is_subgroup(k)) throw std::invalid_argument("double_cosets: not a subgroup");
  DoubleCosetTable t;
  t.index_of.assign(g.order(), -1);
  std::set<int> kset(k.begin(), k.end());
  for (int w = 0; w < g.order(); ++w) {
    if (t.index_of[w] >= 0) continue;
    DoubleCoset dc{w, 0, 0};
    for (int a : h)
      for (int b : k) {
        int x = g.mul(g.mul(a, w), b);
        if (t.index_of[x] < 0) {
          t.index_of[x] = static_cast<int>(t.cosets.size());
          ++dc.size;
        }
      }
    for (int a : h)
      if (kset.count(g.mul(g.mul(g.inv(w), a), w))) ++dc.intersection_order;
    t.cosets.push_back(dc);
  }

  // Oracle: objects (y, x, φ) of */H ×_{*/G} */K with φ = w⁻¹ lie in the component of HwK.
  GroupContext ctx(g);
  auto sq = iso_comma_pullback(ctx.include(h), ctx.include(k));
  const auto& gp = *sq.groupoid;
  t.oracle_agrees = gp.num_components() == static_cast<int>(t.cosets.size());
  std::set<int> seen;
  for (const auto& dc : t.cosets) {
    int obj = sq.chain->find_object({0, 0}, {g.inv(dc.rep)});
    seen.insert(gp.component_of(obj));
    if (automorphism_order(gp, obj) != dc.intersection_order) {
      t.oracle_agrees = false;
      t.detail = "stabilizer order differs at " + g.name(dc.rep);
    }
  }
  if (seen.size() != t.cosets.size()) t.oracle_agrees = false;
  if (!t.oracle_agrees && t.detail.empty()) t.detail = "component count differs";
  return t;
}

namespace {

GroupView view_of(const FunctorPtr& inc) { return GroupView{inc->tgt}; }

int weight_dim(const Sheaf& v) { return v.dim.at(0); }

// Block d×d of a function vector at g.
Matrix value_at(const Matrix& f, int g, int d, Field k) {
  Matrix m(d, d, k);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m.at(r, c) = f.at((g * d + r) * d + c, 0);
  return m;
}

void set_value(Matrix& f, int g, const Matrix& m) {
  const int d = m.rows();
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) f.at((g * d + r) * d + c, 0) = m.at(r, c);
}

Matrix stack_columns(const std::vector<Matrix>& cols, int rows, Field k) {
  Matrix m(rows, static_cast<int>(cols.size()), k);
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j].at(i, 0);
  return m;
}

Matrix unit_column(int n, int i, Field k) {
  Matrix m(n, 1, k);
  m.at(i, 0) = k.one();
  return m;
}

// Coordinates of f in the columns of basis, or an exception if f is outside their span.
Matrix coordinates(const Matrix& basis, const Matrix& left_inv, const Matrix& f, const char* what) {
  Matrix c = left_inv * f;
  if (basis * c != f) throw TheoremViolation(std::string(what) + ": vector outside the span");
  return c;
}

// Φ(T)(g)(v) = T([1,v])(g).
Matrix phi_function(const HeckeAlgebra& h, const Matrix& t) {
  const auto& ind = h.ind;
  const Field k = ind.v.k;
  const int d = weight_dim(ind.v), n = view_of(ind.inc).order();
  Matrix out(n * d * d, 1, k);
  for (int j = 0; j < d; ++j) {
    Matrix img = ind.functions * (t * (ind.coords * ind.delta(unit_column(d, j, k))));
    for (int g = 0; g < n; ++g)
      for (int r = 0; r < d; ++r) out.at((g * d + r) * d + j, 0) = img.at(g * d + r, 0);
  }
  return out;
}

}  // namespace

Matrix CompactInduction::delta(const Matrix& vec) const {
  const int d = weight_dim(v), n = view_of(inc).order();
  Matrix out(n * d, 1, v.k);
  for (int i = 0; i < static_cast<int>(inc->mor.size()); ++i) {
    Matrix val = v.mat[i] * vec;
    for (int r = 0; r < d; ++r) out.at(inc->mor[i] * d + r, 0) = val.at(r, 0);
  }
  return out;
}

CompactInduction compact_induction(const FunctorPtr& inc, const Sheaf& v) {
  if (v.base != inc->src) throw std::invalid_argument("compact_induction: weight not on the subgroup");
  require_gate(*inc->tgt, v.k);
  const Field k = v.k;
  const auto G = view_of(inc);
  const int n = G.order(), d = weight_dim(v), nk = static_cast<int>(inc->mor.size());
  CompactInduction ind;
  ind.inc = inc;
  ind.v = v;

  std::vector<int> assigned(n, 0);
  std::vector<std::vector<std::pair<int, int>>> members;  // (k index, element) per coset
  for (int x = 0; x < n; ++x) {
    if (assigned[x]) continue;
    ind.coset_reps.push_back(x);
    members.emplace_back();
    for (int i = 0; i < nk; ++i) {
      int y = G.mul(inc->mor[i], x);
      assigned[y] = 1;
      members.back().push_back({i, y});
    }
  }
  const int nc = static_cast<int>(ind.coset_reps.size());
  ind.functions = Matrix(n * d, nc * d, k);
  for (int c = 0; c < nc; ++c)
    for (auto [i, y] : members[c])
      for (int r = 0; r < d; ++r)
        for (int j = 0; j < d; ++j) ind.functions.at(y * d + r, c * d + j) = v.mat[i].at(r, j);
  ind.coords = ind.functions.left_inverse();

  // (g·F)(y) = F(yg).
  std::vector<Matrix> mats;
  for (int g = 0; g < n; ++g) {
    Matrix moved(n * d, nc * d, k);
    for (int y = 0; y < n; ++y) moved.set_block(y * d, 0, ind.functions.block(G.mul(y, g) * d, 0, d, nc * d));
    mats.push_back(coordinates(ind.functions, ind.coords, moved, "compact_induction"));
  }
  ind.sheaf = Sheaf{inc->tgt, k, {nc * d}, mats};
  if (!validate_sheaf(ind.sheaf).empty()) throw TheoremViolation("compact_induction: not a representation");

  std::vector<Matrix> cols;
  for (int j = 0; j < d; ++j) cols.push_back(ind.coords * ind.delta(unit_column(d, j, k)));
  SheafMap psi{{stack_columns(cols, nc * d, k)}};
  if (!is_morphism(v, pullback_star(inc, ind.sheaf), psi))
    throw TheoremViolation("compact_induction: v -> [1, v] is not K-equivariant");
  ind.from_shriek = lan_adjunct(inc, v, ind.sheaf, psi);
  if (!is_iso(ind.from_shriek)) throw TheoremViolation("compact_induction: comparison with inc_! is not invertible");
  return ind;
}

Matrix convolve(const HeckeAlgebra& h, const Matrix& f1, const Matrix& f2) {
  const auto G = view_of(h.ind.inc);
  const Field k = h.ind.v.k;
  const int n = G.order(), d = weight_dim(h.ind.v);
  Matrix out(n * d * d, 1, k);
  for (int g = 0; g < n; ++g) {
    Matrix acc(d, d, k);
    for (int x : h.ind.coset_reps) acc = acc + value_at(f1, G.mul(g, G.inv(x)), d, k) * value_at(f2, x, d, k);
    set_value(out, g, acc);
  }
  return out;
}

Matrix basis_vector(const HeckeAlgebra& h, int i) { return unit_column(h.dim, i, h.ind.v.k); }

Matrix hecke_multiply(const HeckeAlgebra& h, const Matrix& a, const Matrix& b) {
  Matrix out(h.dim, 1, h.ind.v.k);
  for (int i = 0; i < h.dim; ++i) {
    if (a.at(i, 0).is_zero()) continue;
    for (int j = 0; j < h.dim; ++j)
      if (!b.at(j, 0).is_zero()) out = out + h.structure[i][j].scaled(a.at(i, 0) * b.at(j, 0));
  }
  return out;
}

Matrix to_endomorphism(const HeckeAlgebra& h, const Matrix& a) {
  Matrix c = *h.a_to_b.solve(a);
  const int m = h.ind.sheaf.dim[0];
  Matrix t(m, m, h.ind.v.k);
  for (int i = 0; i < static_cast<int>(h.endomorphisms.size()); ++i) t = t + h.endomorphisms[i].scaled(c.at(i, 0));
  return t;
}

Matrix from_endomorphism(const HeckeAlgebra& h, const Matrix& t) {
  Matrix basis = stack_columns(h.functions, h.function_coords.cols(), h.ind.v.k);
  return coordinates(basis, h.function_coords, phi_function(h, t), "from_endomorphism");
}

HeckeAlgebra hecke_algebra(const FunctorPtr& inc, const Sheaf& v) {
  HeckeAlgebra h;
  h.ind = compact_induction(inc, v);
  const Field k = v.k;
  const auto G = view_of(inc);
  const int n = G.order(), d = weight_dim(v), nk = static_cast<int>(inc->mor.size());
  const int len = n * d * d;

  // Model B: solve the bi-equivariance constraints on each double coset KwK.
  std::vector<int> coset(n, -1);
  Matrix te(len, 1, k);
  for (int i = 0; i < nk; ++i) set_value(te, inc->mor[i], v.mat[i]);
  for (int w = 0; w < n; ++w) {
    if (coset[w] >= 0) continue;
    std::vector<int> elems;
    for (int i = 0; i < nk; ++i)
      for (int j = 0; j < nk; ++j) {
        int x = G.mul(G.mul(inc->mor[i], w), inc->mor[j]);
        if (coset[x] < 0) {
          coset[x] = w;
          elems.push_back(x);
        }
      }
    std::sort(elems.begin(), elems.end());
    std::vector<int> pos(n, -1);
    for (size_t e = 0; e < elems.size(); ++e) pos[elems[e]] = static_cast<int>(e);
    const int nv = static_cast<int>(elems.size()) * d * d;
    auto var = [&](int e, int r, int c) { return (pos[e] * d + r) * d + c; };
    std::vector<std::vector<Scalar>> rows;
    for (int y : elems)
      for (int i = 0; i < nk; ++i) {
        const Matrix& rho = v.mat[i];
        int left = G.mul(inc->mor[i], y), right = G.mul(y, inc->mor[i]);
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) {
            // f(ky)[r][c] - Σ_s ρ(k)[r][s] f(y)[s][c] = 0
            std::vector<Scalar> row(nv, k.zero());
            row[var(left, r, c)] += k.one();
            for (int s = 0; s < d; ++s) row[var(y, s, c)] -= rho.at(r, s);
            rows.push_back(row);
            // f(yk)[r][c] - Σ_s f(y)[r][s] ρ(k)[s][c] = 0
            std::vector<Scalar> row2(nv, k.zero());
            row2[var(right, r, c)] += k.one();
            for (int s = 0; s < d; ++s) row2[var(y, r, s)] -= rho.at(s, c);
            rows.push_back(row2);
          }
      }
    Matrix cm(static_cast<int>(rows.size()), nv, k);
    for (size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < nv; ++c) cm.at(static_cast<int>(r), c) = rows[r][c];
    Matrix ns = cm.nullspace();
    std::vector<Matrix> cands;
    if (w == G.identity()) cands.push_back(te);
    for (int c = 0; c < ns.cols(); ++c) {
      Matrix f(len, 1, k);
      for (int y : elems)
        for (int r = 0; r < d; ++r)
          for (int cc = 0; cc < d; ++cc) f.at((y * d + r) * d + cc, 0) = ns.at(var(y, r, cc), c);
      cands.push_back(f);
    }
    if (cands.empty()) continue;
    Matrix cm2 = stack_columns(cands, len, k);
    for (int c : cm2.pivot_columns()) {
      Matrix f = cands[c];
      if (d == 1 && !(w == G.identity() && c == 0)) f = f.scaled(f.at(w, 0).inverse());
      if (w == G.identity() && c == 0) h.identity = static_cast<int>(h.functions.size());
      h.functions.push_back(f);
      h.basis_coset.push_back(w);
    }
  }
  h.dim = static_cast<int>(h.functions.size());
  Matrix basis = stack_columns(h.functions, len, k);
  h.function_coords = basis.left_inverse();

  h.bi_equivariant = true;
  for (const auto& f : h.functions)
    for (int g = 0; g < n && h.bi_equivariant; ++g)
      for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nk; ++j) {
          int x = G.mul(G.mul(inc->mor[i], g), inc->mor[j]);
          if (value_at(f, x, d, k) != v.mat[i] * value_at(f, g, d, k) * v.mat[j]) h.bi_equivariant = false;
        }

  h.structure.assign(h.dim, std::vector<Matrix>(h.dim));
  for (int i = 0; i < h.dim; ++i)
    for (int j = 0; j < h.dim; ++j)
      h.structure[i][j] = coordinates(basis, h.function_coords, convolve(h, h.functions[i], h.functions[j]),
                                      "hecke_algebra: convolution");

  h.unital = true;
  for (int i = 0; i < h.dim; ++i)
    h.unital = h.unital && h.structure[h.identity][i] == basis_vector(h, i) &&
               h.structure[i][h.identity] == basis_vector(h, i);
  h.associative = true;
  for (int i = 0; i < h.dim && h.associative; ++i)
    for (int j = 0; j < h.dim && h.associative; ++j)
      for (int l = 0; l < h.dim; ++l)
        if (hecke_multiply(h, h.structure[i][j], basis_vector(h, l)) !=
            hecke_multiply(h, basis_vector(h, i), h.structure[j][l])) {
          h.associative = false;
          h.detail = "structure constants not associative";
          break;
        }

  // Model A and the explicit isomorphism.
  for (const auto& m : hom_space(h.ind.sheaf, h.ind.sheaf)) h.endomorphisms.push_back(m.comp[0]);
  std::vector<Matrix> images;
  for (const auto& t : h.endomorphisms)
    images.push_back(coordinates(basis, h.function_coords, phi_function(h, t), "hecke_algebra: isomorphism"));
  h.a_to_b = stack_columns(images, h.dim, k);
  h.models_isomorphic = static_cast<int>(h.endomorphisms.size()) == h.dim && h.a_to_b.rank() == h.dim;
  if (h.models_isomorphic) {
    const int m = h.ind.sheaf.dim[0];
    h.models_isomorphic = phi_function(h, Matrix::identity(m, k)) == h.functions[h.identity];
    for (size_t a = 0; a < images.size() && h.models_isomorphic; ++a)
      for (size_t b = 0; b < images.size(); ++b)
        if (coordinates(basis, h.function_coords, phi_function(h, h.endomorphisms[a] * h.endomorphisms[b]),
                        "hecke_algebra: isomorphism") != hecke_multiply(h, images[a], images[b])) {
          h.models_isomorphic = false;
          h.detail = "the map from intertwiners is not multiplicative";
          break;
        }
  } else {
    h.detail = "model dimensions differ";
  }
  return h;
}

Matrix dual_weight_function(const HeckeAlgebra& h, const Matrix& f) {
  const auto G = view_of(h.ind.inc);
  const int d = weight_dim(h.ind.v);
  Matrix out(f.rows(), 1, h.ind.v.k);
  for (int g = 0; g < G.order(); ++g) set_value(out, g, value_at(f, G.inv(g), d, h.ind.v.k).transpose());
  return out;
}

Matrix anti_involution(const HeckeAlgebra& h, const Matrix& a) {
  const auto& v = h.ind.v;
  for (int i = 0; i < static_cast<int>(v.mat.size()); ++i)
    if (v.mat[i].transpose() != v.mat[v.base->inverse(i)])
      throw HeckePrecondition("anti_involution: weight is not orthogonal, ι lands in the dual-weight algebra");
  Matrix basis = stack_columns(h.functions, h.function_coords.cols(), v.k);
  return coordinates(basis, h.function_coords, dual_weight_function(h, basis * a), "anti_involution");
}

InvolutionCertificate involution_certificate(const HeckeAlgebra& h) {
  InvolutionCertificate c;
  for (int i = 0; i < h.dim; ++i) c.images.push_back(anti_involution(h, basis_vector(h, i)));
  c.involutive = true;
  for (int i = 0; i < h.dim; ++i) c.involutive = c.involutive && anti_involution(h, c.images[i]) == basis_vector(h, i);
  c.fixes_identity = c.images[h.identity] == basis_vector(h, h.identity);
  c.anti_multiplicative = true;
  for (int i = 0; i < h.dim; ++i)
    for (int j = 0; j < h.dim; ++j)
      c.anti_multiplicative = c.anti_multiplicative &&
                              anti_involution(h, h.structure[i][j]) == hecke_multiply(h, c.images[j], c.images[i]);
  // On the indicator basis of a trivial weight, ι(T_w) = T_{w⁻¹}; vacuous for other weights.
  c.coset_rule = true;
  const auto& v = h.ind.v;
  bool trivial = weight_dim(v) == 1;
  for (const auto& m : v.mat) trivial = trivial && m.is_identity();
  if (trivial) {
    const auto G = view_of(h.ind.inc);
    for (int i = 0; i < h.dim; ++i) {
      int winv = G.inv(h.basis_coset[i]);
      int target = -1;
      for (int j = 0; j < h.dim; ++j)
        if (!h.functions[j].at(winv, 0).is_zero()) target = j;
      c.coset_rule = c.coset_rule && target >= 0 && c.images[i] == basis_vector(h, target);
    }
  }
  return c;
}

PrimHeckeComparison prim_duality_on_hecke(const FunctorPtr& inc, Field k) {
  auto h = hecke_algebra(inc, unit_sheaf(inc->src, k));
  if (!h.models_isomorphic || !h.associative || !h.unital) throw HeckeAlarm("hecke algebra", h.detail);
  const Sheaf& p = h.ind.sheaf;
  auto f = to_point(inc->tgt);
  auto cert = prim_test(f, p);
  if (!cert.adjunction.ok()) throw HeckeAlarm("prim adjunction", cert.adjunction.failure);
  if (!cert.double_dual) throw HeckeAlarm("prim double dual", "DPrim(DPrim(P)) is not isomorphic to P");
  const auto& L = cert.adjunction.left;   // * -> */G
  const auto& R = cert.adjunction.right;  // */G -> *
  if (R.payload.dim.size() != 1) throw HeckeAlarm("prim adjunction", "unexpected kernel shape");

  // P∨ -> DP, adjunct of pr2*P∨ ⊗ pr1*P -> Δ_*(P∨ ⊗ P) -> Δ_*1 ≅ Δ_!1.
  const Sheaf pd = dual(p);
  if (!sheaves_equal(pd, p)) throw HeckeAlarm("self-duality", "cInd 1 is not literally self-dual");
  auto x = kernel_object(f);
  auto hom = kernel_hom(x, x, k);
  auto pr1 = hom.to_tgt(), pr2 = hom.to_src();
  auto diag = kernel_diagonal(x);
  auto one = unit_sheaf(f->src, k);
  auto d1 = lower_shriek(diag, one);
  auto a = pullback_star(pr2, pd);
  auto b = pullback_star(pr1, p);
  auto ab = tensor(a, b);
  auto ev = evaluation(p, one);
  if (!sheaves_equal(pullback_star(diag, ab), tensor(pd, p)))
    throw HeckeAlarm("dual identification", "diagonal pullback is not strict");
  auto chi = compose(inverse_map(norm_map(diag, one)),
                     compose(lower_star_map(diag, tensor(pd, p), one, ev), ran_unit(diag, ab)));
  auto ih = internal_hom(b, d1);
  auto c = ran_adjunct(pr2, pd, ih, curry(chi, a, b, d1));
  if (!is_iso(c)) throw HeckeAlarm("dual identification", "P∨ -> DPrim(P) is not invertible");
  const Matrix theta = c.comp[0].inverse_or_throw("dual identification");
  const Matrix theta_inv = c.comp[0];

  auto id_s = kernel_identity(R.tgt, k);
  auto id_x = kernel_identity(R.src, k);
  auto rl = kernel_compose(R, L);
  auto lr = kernel_compose(L, R);
  auto lhom = kernel_hom(L.tgt, L.src, k);
  // Mate of φ: R -> id∘R -> (RL)R -> (RL)R -> R(LR) -> R∘id -> R; only the middle step depends on φ.
  auto pre = compose(whisker_right(id_s, rl, cert.adjunction.unit, R), inverse_map(left_unitor(R)));
  auto post = compose(right_unitor(R),
                      compose(whisker_left(R, lr, id_x, cert.adjunction.counit), associator(R, L, R)));
  PrimHeckeComparison out;
  out.agrees = true;
  for (int i = 0; i < h.dim; ++i) {
    Matrix t = to_endomorphism(h, basis_vector(h, i));
    auto phi = pullback_map(lhom.to_tgt(), SheafMap{{t}});
    if (!is_morphism(L.payload, L.payload, phi)) throw HeckeAlarm("mate", "T does not act on the kernel");
    auto m = compose(post, compose(whisker_right(rl, rl, whisker_left(R, L, L, phi), R), pre));
    Matrix dual_t = theta * m.comp[0] * theta_inv;
    out.prim_images.push_back(from_endomorphism(h, dual_t));
    out.iota_images.push_back(anti_involution(h, basis_vector(h, i)));
    out.agrees = out.agrees && out.prim_images.back() == out.iota_images.back();
  }
  return out;
}

FrobeniusCheck frobenius_check(const FunctorPtr& inc, const Sheaf& v, const Sheaf& w) {
  auto ind = compact_induction(inc, v);
  return {hom_dim(ind.sheaf, w), hom_dim(v, pullback_star(inc, w))};
}

}  // namespace sixff
