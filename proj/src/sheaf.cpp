#include "sixff/sheaf.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace sixff {

int Sheaf::total_dim() const { return std::accumulate(dim.begin(), dim.end(), 0); }

bool gate_holds(const FiniteCategory& x, Field k) {
  if (k.p == 0) return true;
  for (int o = 0; o < x.num_objects(); ++o)
    if (x.hom(o, o).size() % k.p == 0) return false;
  return true;
}

void require_gate(const FiniteCategory& x, Field k) {
  if (!gate_holds(x, k))
    throw GateViolation("characteristic " + std::to_string(k.p) + " divides an automorphism order in " + x.label);
}

namespace {

void same_base(const Sheaf& a, const Sheaf& b) {
  if (a.base.get() != b.base.get()) throw std::invalid_argument("sheaves live on different groupoids");
  if (!(a.k == b.k)) throw FieldMismatch("sheaves over different fields");
}

Matrix zero(int r, int c, Field k) { return Matrix(r, c, k); }

}  // namespace

Sheaf unit_sheaf(const GroupoidPtr& x, Field k) {
  require_gate(*x, k);
  Sheaf s{x, k, std::vector<int>(x->num_objects(), 1), {}};
  s.mat.assign(x->num_morphisms(), Matrix::identity(1, k));
  return s;
}

Sheaf zero_sheaf(const GroupoidPtr& x, Field k) {
  Sheaf s{x, k, std::vector<int>(x->num_objects(), 0), {}};
  s.mat.assign(x->num_morphisms(), Matrix(0, 0, k));
  return s;
}

Sheaf sheaf_from_aut_action(const GroupoidPtr& xp, Field k, const std::vector<int>& rep_dims,
                            const std::vector<std::vector<Matrix>>& aut_mats, const std::vector<Matrix>& tree_mats) {
  const auto& X = *xp;
  if (static_cast<int>(rep_dims.size()) != X.num_components() ||
      static_cast<int>(aut_mats.size()) != X.num_components() ||
      static_cast<int>(tree_mats.size()) != X.num_objects())
    throw StructuralError("sheaf data does not match the components of " + X.label);
  Sheaf s{xp, k, std::vector<int>(X.num_objects()), std::vector<Matrix>(X.num_morphisms())};
  std::vector<std::vector<Matrix>> aut_values(X.num_components());
  for (int c = 0; c < X.num_components(); ++c) {
    int rep = X.component_rep(c);
    int d = rep_dims[c];
    const auto& gens = X.aut_generators(c);
    if (aut_mats[c].size() != gens.size()) throw StructuralError("one matrix per automorphism generator expected");
    for (const auto& g : aut_mats[c])
      if (g.rows() != d || g.cols() != d) throw StructuralError("generator matrix of wrong size");
    const auto& aut = X.hom(rep, rep);
    std::vector<std::optional<Matrix>> val(aut.size());
    int e = X.identity(rep);
    val[X.hom_position(e)] = Matrix::identity(d, k);
    std::deque<int> q{e};
    while (!q.empty()) {
      int h = q.front();
      q.pop_front();
      for (size_t i = 0; i < gens.size(); ++i) {
        int gh = X.compose_or_throw(gens[i], h);
        Matrix m = aut_mats[c][i] * *val[X.hom_position(h)];
        auto& slot = val[X.hom_position(gh)];
        if (!slot) {
          slot = m;
          q.push_back(gh);
        } else if (*slot != m) {
          throw std::invalid_argument("generator matrices violate a relation of Aut(" + X.object_name(rep) + ")");
        }
      }
    }
    for (auto& v : val) aut_values[c].push_back(*v);
  }
  std::vector<Matrix> tree_inv;
  for (int o = 0; o < X.num_objects(); ++o) {
    int c = X.component_of(o);
    s.dim[o] = rep_dims[c];
    const Matrix& t = tree_mats[o];
    if (t.rows() != s.dim[o] || t.cols() != s.dim[o]) throw StructuralError("tree matrix of wrong size");
    if (o == X.component_rep(c) && !t.is_identity()) throw StructuralError("tree matrix at a representative must be 1");
    tree_inv.push_back(t.inverse_or_throw("tree transport"));
  }
  for (int a = 0; a < X.num_morphisms(); ++a) {
    int y = X.src(a), z = X.tgt(a);
    int c = X.component_of(y);
    int h = X.compose_or_throw(X.inverse(X.tree(z)), X.compose_or_throw(a, X.tree(y)));
    s.mat[a] = tree_mats[z] * aut_values[c][X.hom_position(h)] * tree_inv[y];
  }
  return s;
}

Sheaf sheaf_from_generators(const GroupoidPtr& x, Field k, const std::vector<int>& rep_dims,
                            const std::vector<std::vector<Matrix>>& gen_mats) {
  std::vector<Matrix> tree;
  for (int o = 0; o < x->num_objects(); ++o) {
    int c = x->component_of(o);
    if (c >= static_cast<int>(rep_dims.size())) throw StructuralError("missing component dimension");
    tree.push_back(Matrix::identity(rep_dims[c], k));
  }
  return sheaf_from_aut_action(x, k, rep_dims, gen_mats, tree);
}

ValidationReport validate_sheaf(const Sheaf& m) {
  ValidationReport rep;
  const auto& X = *m.base;
  if (static_cast<int>(m.dim.size()) != X.num_objects() || static_cast<int>(m.mat.size()) != X.num_morphisms())
    throw StructuralError("sheaf data is not total");
  for (int a = 0; a < X.num_morphisms(); ++a)
    if (m.mat[a].rows() != m.dim[X.tgt(a)] || m.mat[a].cols() != m.dim[X.src(a)])
      rep.push_back({"sheaf_shape", X.morphism_name(a)});
  if (!rep.empty()) return rep;
  for (int o = 0; o < X.num_objects(); ++o)
    if (!m.mat[X.identity(o)].is_identity()) rep.push_back({"sheaf_identity", X.object_name(o)});
  // Generators from every object generate all morphisms, so this is the full functoriality check.
  for (int a = 0; a < X.num_morphisms(); ++a)
    for (int g : X.out_generators(X.tgt(a)))
      if (m.mat[X.compose_or_throw(g, a)] != m.mat[g] * m.mat[a])
        rep.push_back({"sheaf_composition", "(" + X.morphism_name(g) + ", " + X.morphism_name(a) + ")"});
  return rep;
}

SheafMap identity_map(const Sheaf& m) {
  SheafMap r;
  for (int d : m.dim) r.comp.push_back(Matrix::identity(d, m.k));
  return r;
}

SheafMap zero_map(const Sheaf& m, const Sheaf& n) {
  SheafMap r;
  for (size_t o = 0; o < m.dim.size(); ++o) r.comp.push_back(zero(n.dim[o], m.dim[o], m.k));
  return r;
}

SheafMap compose(const SheafMap& b, const SheafMap& a) {
  if (a.comp.size() != b.comp.size()) throw std::invalid_argument("compose: maps over different groupoids");
  SheafMap r;
  for (size_t o = 0; o < a.comp.size(); ++o) r.comp.push_back(b.comp[o] * a.comp[o]);
  return r;
}

SheafMap add(const SheafMap& a, const SheafMap& b) {
  SheafMap r;
  for (size_t o = 0; o < a.comp.size(); ++o) r.comp.push_back(a.comp[o] + b.comp[o]);
  return r;
}

SheafMap scale(const SheafMap& a, const Scalar& s) {
  SheafMap r;
  for (const auto& c : a.comp) r.comp.push_back(c.scaled(s));
  return r;
}

bool maps_equal(const SheafMap& a, const SheafMap& b) {
  if (a.comp.size() != b.comp.size()) return false;
  for (size_t o = 0; o < a.comp.size(); ++o)
    if (a.comp[o] != b.comp[o]) return false;
  return true;
}

bool is_morphism(const Sheaf& m, const Sheaf& n, const SheafMap& phi) {
  same_base(m, n);
  const auto& X = *m.base;
  if (static_cast<int>(phi.comp.size()) != X.num_objects()) return false;
  for (int o = 0; o < X.num_objects(); ++o)
    if (phi.comp[o].rows() != n.dim[o] || phi.comp[o].cols() != m.dim[o]) return false;
  for (int o = 0; o < X.num_objects(); ++o)
    for (int g : X.out_generators(o))
      if (n.mat[g] * phi.comp[o] != phi.comp[X.tgt(g)] * m.mat[g]) return false;
  return true;
}

bool is_iso(const SheafMap& phi) {
  for (const auto& c : phi.comp)
    if (!c.is_square() || c.rank() != c.rows()) return false;
  return true;
}

SheafMap inverse_map(const SheafMap& phi) {
  SheafMap r;
  for (const auto& c : phi.comp) r.comp.push_back(c.inverse_or_throw("sheaf map is not invertible"));
  return r;
}

bool sheaves_equal(const Sheaf& a, const Sheaf& b) {
  if (a.base.get() != b.base.get() || a.dim != b.dim) return false;
  for (size_t i = 0; i < a.mat.size(); ++i)
    if (a.mat[i] != b.mat[i]) return false;
  return true;
}

Sheaf pullback_star(const FunctorPtr& f, const Sheaf& m) {
  if (f->tgt.get() != m.base.get()) throw std::invalid_argument("pullback: sheaf not on the target of the map");
  Sheaf s{f->src, m.k, {}, {}};
  for (int o : f->obj) s.dim.push_back(m.dim[o]);
  for (int a : f->mor) s.mat.push_back(m.mat[a]);
  return s;
}

SheafMap pullback_map(const FunctorPtr& f, const SheafMap& phi) {
  SheafMap r;
  for (int o : f->obj) r.comp.push_back(phi.comp[o]);
  return r;
}

SheafMap transport(const Sheaf& m, const NatTrans& alpha) {
  if (alpha.F->tgt.get() != m.base.get()) throw std::invalid_argument("transport: sheaf not on the target");
  SheafMap r;
  for (int c : alpha.comp) r.comp.push_back(m.mat[c]);
  return r;
}

// ---------------------------------------------------------------------------------------------
// Fibers

int Fiber::locate(int y, int phi, int* kappa) const {
  const auto& X = *f->tgt;
  int p = X.hom_position(phi);
  int c = node_comp[y][p];
  if (kappa) *kappa = node_kappa[y][p];
  return c;
}

std::shared_ptr<const Fiber> fiber_of(const FunctorPtr& fp) {
  static std::mutex mu;
  static std::map<const Functor*, std::shared_ptr<const Fiber>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(fp.get());
    if (it != cache.end()) return it->second;
  }
  const auto& Y = *fp->src;
  const auto& X = *fp->tgt;
  if (!Y.is_groupoid() || !X.is_groupoid()) throw std::invalid_argument("pushforward defined only for groupoids");
  auto fib = std::make_shared<Fiber>();
  fib->f = fp;
  fib->comps.resize(X.num_components());
  fib->node_comp.resize(Y.num_objects());
  fib->node_kappa.resize(Y.num_objects());
  for (int y = 0; y < Y.num_objects(); ++y) {
    int fy = fp->obj[y];
    size_t n = X.hom(fy, X.component_rep(X.component_of(fy))).size();
    fib->node_comp[y].assign(n, -1);
    fib->node_kappa[y].assign(n, -1);
  }
  for (int y = 0; y < Y.num_objects(); ++y) {
    int fy = fp->obj[y];
    int cx = X.component_of(fy);
    int x0 = X.component_rep(cx);
    const auto& phis = X.hom(fy, x0);
    for (size_t p = 0; p < phis.size(); ++p) {
      if (fib->node_comp[y][p] >= 0) continue;
      int c = static_cast<int>(fib->comps[cx].size());
      FiberComponent fc{y, phis[p], {}};
      for (int h : Y.hom(y, y))
        if (X.is_identity(fp->mor[h])) fc.stabilizer.push_back(h);
      fib->comps[cx].push_back(fc);
      fib->node_comp[y][p] = c;
      fib->node_kappa[y][p] = Y.identity(y);
      std::deque<std::pair<int, int>> q{{y, phis[p]}};
      while (!q.empty()) {
        auto [z, phi] = q.front();
        q.pop_front();
        int kappa = fib->node_kappa[z][X.hom_position(phi)];
        for (int a : Y.out_generators(z)) {
          int z2 = Y.tgt(a);
          int phi2 = X.compose_or_throw(phi, X.inverse(fp->mor[a]));
          int pos = X.hom_position(phi2);
          if (fib->node_comp[z2][pos] >= 0) continue;
          fib->node_comp[z2][pos] = c;
          fib->node_kappa[z2][pos] = Y.compose_or_throw(kappa, Y.inverse(a));
          q.push_back({z2, phi2});
        }
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > 4096) cache.clear();
  return cache.emplace(fp.get(), fib).first->second;
}

namespace {

Pushforward push(const FunctorPtr& fp, const Sheaf& m, bool shriek) {
  if (fp->src.get() != m.base.get()) throw std::invalid_argument("pushforward: sheaf not on the source of the map");
  const auto& Y = *fp->src;
  const auto& X = *fp->tgt;
  auto fib = fiber_of(fp);
  const Field k = m.k;
  Pushforward P;
  P.f = fp;
  P.shriek = shriek;
  P.blocks.resize(X.num_components());
  std::vector<int> comp_dim(X.num_components(), 0);
  for (int cx = 0; cx < X.num_components(); ++cx) {
    int off = 0;
    for (const auto& fc : fib->comps[cx]) {
      int d = m.dim[fc.y];
      int h = static_cast<int>(fc.stabilizer.size());
      if (k.p != 0 && h % static_cast<int>(k.p) == 0)
        throw GateViolation("stabilizer order " + std::to_string(h) + " not invertible in " + k.name());
      Matrix e(d, d, k);
      for (int s : fc.stabilizer) e = e + m.mat[s];
      e = e.scaled(k.from_int(h).inverse());
      Pushforward::Block b;
      b.B = e.columns(e.pivot_columns());
      b.L = b.B.left_inverse();
      b.e = e;
      b.offset = off;
      off += b.B.cols();
      P.blocks[cx].push_back(b);
    }
    comp_dim[cx] = off;
  }
  Sheaf& v = P.value;
  v.base = fp->tgt;
  v.k = k;
  for (int x = 0; x < X.num_objects(); ++x) v.dim.push_back(comp_dim[X.component_of(x)]);
  std::map<std::pair<int, int>, Matrix> cache;  // (component, twisted automorphism) -> matrix
  v.mat.reserve(X.num_morphisms());
  for (int chi = 0; chi < X.num_morphisms(); ++chi) {
    int x = X.src(chi), x2 = X.tgt(chi);
    int cx = X.component_of(x);
    int tw = X.compose_or_throw(X.inverse(X.tree(x2)), X.compose_or_throw(chi, X.tree(x)));
    auto key = std::make_pair(cx, tw);
    auto it = cache.find(key);
    if (it != cache.end()) {
      v.mat.push_back(it->second);
      continue;
    }
    const auto& comps = fib->comps[cx];
    const auto& blocks = P.blocks[cx];
    Matrix mat(comp_dim[cx], comp_dim[cx], k);
    for (size_t c = 0; c < comps.size(); ++c) {
      if (shriek) {
        int kappa;
        int c2 = fib->locate(comps[c].y, X.compose_or_throw(tw, comps[c].phi), &kappa);
        const auto& b2 = blocks[c2];
        mat.set_block(b2.offset, blocks[c].offset, b2.L * b2.e * m.mat[kappa] * blocks[c].B);
      } else {
        int kappa;
        int c1 = fib->locate(comps[c].y, X.compose_or_throw(X.inverse(tw), comps[c].phi), &kappa);
        const auto& b1 = blocks[c1];
        mat.set_block(blocks[c].offset, b1.offset, blocks[c].L * m.mat[Y.inverse(kappa)] * b1.B);
      }
    }
    cache.emplace(key, mat);
    v.mat.push_back(std::move(mat));
  }
  return P;
}

SheafMap push_map(const Pushforward& a, const Pushforward& b, const SheafMap& phi, bool shriek) {
  if (a.f.get() != b.f.get()) throw std::invalid_argument("pushforward maps along different functors");
  const auto& X = *a.f->tgt;
  auto fib = fiber_of(a.f);
  const Field k = a.value.k;
  std::vector<Matrix> per_comp;
  for (int cx = 0; cx < X.num_components(); ++cx) {
    int x0 = X.component_rep(cx);
    Matrix mat(b.value.dim[x0], a.value.dim[x0], k);
    for (size_t c = 0; c < fib->comps[cx].size(); ++c) {
      const auto& ba = a.blocks[cx][c];
      const auto& bb = b.blocks[cx][c];
      const Matrix& p = phi.comp[fib->comps[cx][c].y];
      mat.set_block(bb.offset, ba.offset, shriek ? bb.L * bb.e * p * ba.B : bb.L * p * ba.B);
    }
    per_comp.push_back(mat);
  }
  SheafMap r;
  for (int x = 0; x < X.num_objects(); ++x) r.comp.push_back(per_comp[X.component_of(x)]);
  return r;
}

}  // namespace

Pushforward lan_shriek(const FunctorPtr& f, const Sheaf& m) { return push(f, m, true); }
Pushforward ran_star(const FunctorPtr& f, const Sheaf& m) { return push(f, m, false); }

SheafMap lan_map(const Pushforward& src, const Pushforward& tgt, const SheafMap& phi) {
  return push_map(src, tgt, phi, true);
}
SheafMap ran_map(const Pushforward& src, const Pushforward& tgt, const SheafMap& phi) {
  return push_map(src, tgt, phi, false);
}

Sheaf lower_shriek(const FunctorPtr& f, const Sheaf& m) { return lan_shriek(f, m).value; }
Sheaf lower_star(const FunctorPtr& f, const Sheaf& m) { return ran_star(f, m).value; }

SheafMap lower_shriek_map(const FunctorPtr& f, const Sheaf& a, const Sheaf& b, const SheafMap& phi) {
  return lan_map(lan_shriek(f, a), lan_shriek(f, b), phi);
}
SheafMap lower_star_map(const FunctorPtr& f, const Sheaf& a, const Sheaf& b, const SheafMap& phi) {
  return ran_map(ran_star(f, a), ran_star(f, b), phi);
}

SheafMap lan_unit(const FunctorPtr& f, const Sheaf& m) {
  auto P = lan_shriek(f, m);
  auto fib = fiber_of(f);
  const auto& Y = *f->src;
  const auto& X = *f->tgt;
  SheafMap r;
  for (int y = 0; y < Y.num_objects(); ++y) {
    int x = f->obj[y];
    int cx = X.component_of(x);
    int kappa;
    int c = fib->locate(y, X.inverse(X.tree(x)), &kappa);
    const auto& b = P.blocks[cx][c];
    Matrix mat(P.value.dim[x], m.dim[y], m.k);
    mat.set_block(b.offset, 0, b.L * b.e * m.mat[kappa]);
    r.comp.push_back(mat);
  }
  return r;
}

SheafMap lan_counit(const FunctorPtr& f, const Sheaf& n) {
  auto fn = pullback_star(f, n);
  auto P = lan_shriek(f, fn);
  auto fib = fiber_of(f);
  const auto& X = *f->tgt;
  SheafMap r;
  for (int x = 0; x < X.num_objects(); ++x) {
    int cx = X.component_of(x);
    Matrix mat(n.dim[x], P.value.dim[x], n.k);
    for (size_t c = 0; c < fib->comps[cx].size(); ++c) {
      const auto& fc = fib->comps[cx][c];
      const auto& b = P.blocks[cx][c];
      mat.set_block(0, b.offset, n.mat[X.compose_or_throw(X.tree(x), fc.phi)] * b.B);
    }
    r.comp.push_back(mat);
  }
  return r;
}

SheafMap ran_unit(const FunctorPtr& f, const Sheaf& n) {
  auto fn = pullback_star(f, n);
  auto P = ran_star(f, fn);
  auto fib = fiber_of(f);
  const auto& X = *f->tgt;
  SheafMap r;
  for (int x = 0; x < X.num_objects(); ++x) {
    int cx = X.component_of(x);
    Matrix mat(P.value.dim[x], n.dim[x], n.k);
    Matrix back = n.mat[X.inverse(X.tree(x))];
    for (size_t c = 0; c < fib->comps[cx].size(); ++c) {
      const auto& fc = fib->comps[cx][c];
      const auto& b = P.blocks[cx][c];
      mat.set_block(b.offset, 0, b.L * n.mat[X.inverse(fc.phi)] * back);
    }
    r.comp.push_back(mat);
  }
  return r;
}

SheafMap ran_counit(const FunctorPtr& f, const Sheaf& m) {
  auto P = ran_star(f, m);
  auto fib = fiber_of(f);
  const auto& Y = *f->src;
  const auto& X = *f->tgt;
  SheafMap r;
  for (int y = 0; y < Y.num_objects(); ++y) {
    int x = f->obj[y];
    int cx = X.component_of(x);
    int kappa;
    int c = fib->locate(y, X.inverse(X.tree(x)), &kappa);
    const auto& b = P.blocks[cx][c];
    Matrix mat(m.dim[y], P.value.dim[x], m.k);
    mat.set_block(0, b.offset, m.mat[Y.inverse(kappa)] * b.B);
    r.comp.push_back(mat);
  }
  return r;
}

SheafMap lan_adjunct(const FunctorPtr& f, const Sheaf& a, const Sheaf& b, const SheafMap& psi) {
  auto fb = pullback_star(f, b);
  return compose(lan_counit(f, b), lan_map(lan_shriek(f, a), lan_shriek(f, fb), psi));
}

SheafMap ran_adjunct(const FunctorPtr& f, const Sheaf& a, const Sheaf& b, const SheafMap& psi) {
  auto fa = pullback_star(f, a);
  return compose(ran_map(ran_star(f, fa), ran_star(f, b), psi), ran_unit(f, a));
}

AdjunctionWitness lan_witness(const FunctorPtr& f, const Sheaf& m, const Sheaf& n) {
  AdjunctionWitness w{"f_!", "f*", lan_unit(f, m), lan_counit(f, n)};
  auto P = lan_shriek(f, m);
  auto fP = pullback_star(f, P.value);
  // (ε f_!)∘(f_! η) at M
  auto left = compose(lan_counit(f, P.value), lan_map(P, lan_shriek(f, fP), w.unit));
  w.triangle_left = maps_equal(left, identity_map(P.value));
  // (f* ε)∘(η f*) at N
  auto fn = pullback_star(f, n);
  auto right = compose(pullback_map(f, w.counit), lan_unit(f, fn));
  w.triangle_right = maps_equal(right, identity_map(fn));
  return w;
}

AdjunctionWitness ran_witness(const FunctorPtr& f, const Sheaf& n, const Sheaf& m) {
  AdjunctionWitness w{"f*", "f_*", ran_unit(f, n), ran_counit(f, m)};
  auto fn = pullback_star(f, n);
  // (ε f*)∘(f* η) at N
  auto left = compose(ran_counit(f, fn), pullback_map(f, w.unit));
  w.triangle_left = maps_equal(left, identity_map(fn));
  // (f_* ε)∘(η f_*) at M
  auto P = ran_star(f, m);
  auto fP = pullback_star(f, P.value);
  auto right = compose(ran_map(ran_star(f, fP), P, w.counit), ran_unit(f, P.value));
  w.triangle_right = maps_equal(right, identity_map(P.value));
  return w;
}

SheafMap norm_map(const FunctorPtr& f, const Sheaf& m) {
  auto L = lan_shriek(f, m);
  auto fib = fiber_of(f);
  const auto& X = *f->tgt;
  std::vector<Matrix> per_comp;
  for (int cx = 0; cx < X.num_components(); ++cx) {
    int d = L.value.dim[X.component_rep(cx)];
    Matrix mat(d, d, m.k);
    for (size_t c = 0; c < fib->comps[cx].size(); ++c) {
      const auto& b = L.blocks[cx][c];
      Scalar h = m.k.from_int(static_cast<long>(fib->comps[cx][c].stabilizer.size()));
      for (int i = 0; i < b.B.cols(); ++i) mat.at(b.offset + i, b.offset + i) = h;
    }
    per_comp.push_back(mat);
  }
  SheafMap r;
  for (int x = 0; x < X.num_objects(); ++x) r.comp.push_back(per_comp[X.component_of(x)]);
  return r;
}

Sheaf upper_shriek(const FunctorPtr& f, const Sheaf& m) { return pullback_star(f, m); }

AdjunctionWitness shriek_witness(const FunctorPtr& f, const Sheaf& m, const Sheaf& n) {
  auto w = lan_witness(f, m, n);
  w.right = "f^!";
  return w;
}

AdjunctionWitness ambidextrous_witness(const FunctorPtr& f, const Sheaf& m, const Sheaf& n) {
  AdjunctionWitness w{"f_*", "f*", {}, {}};
  auto unit_at = [&](const Sheaf& a) { return compose(pullback_map(f, norm_map(f, a)), lan_unit(f, a)); };
  auto counit_at = [&](const Sheaf& b) {
    return compose(lan_counit(f, b), inverse_map(norm_map(f, pullback_star(f, b))));
  };
  w.unit = unit_at(m);
  w.counit = counit_at(n);
  auto P = ran_star(f, m);
  auto fP = pullback_star(f, P.value);
  auto left = compose(counit_at(P.value), ran_map(P, ran_star(f, fP), w.unit));
  w.triangle_left = maps_equal(left, identity_map(P.value));
  auto fn = pullback_star(f, n);
  auto right = compose(pullback_map(f, w.counit), unit_at(fn));
  w.triangle_right = maps_equal(right, identity_map(fn));
  return w;
}

// ---------------------------------------------------------------------------------------------
// Tensor and internal hom

Sheaf tensor(const Sheaf& m, const Sheaf& n) {
  same_base(m, n);
  Sheaf s{m.base, m.k, {}, {}};
  for (size_t o = 0; o < m.dim.size(); ++o) s.dim.push_back(m.dim[o] * n.dim[o]);
  for (size_t a = 0; a < m.mat.size(); ++a) s.mat.push_back(m.mat[a].kron(n.mat[a]));
  return s;
}

SheafMap tensor_map(const SheafMap& a, const SheafMap& b) {
  SheafMap r;
  for (size_t o = 0; o < a.comp.size(); ++o) r.comp.push_back(a.comp[o].kron(b.comp[o]));
  return r;
}

Sheaf internal_hom(const Sheaf& m, const Sheaf& n) {
  same_base(m, n);
  const auto& X = *m.base;
  Sheaf s{m.base, m.k, {}, {}};
  for (size_t o = 0; o < m.dim.size(); ++o) s.dim.push_back(n.dim[o] * m.dim[o]);
  for (int a = 0; a < X.num_morphisms(); ++a) s.mat.push_back(n.mat[a].kron(m.mat[X.inverse(a)].transpose()));
  return s;
}

SheafMap ihom_map(const SheafMap& alpha, const Sheaf&, const Sheaf&, const SheafMap& beta, const Sheaf&,
                  const Sheaf&) {
  SheafMap r;
  for (size_t o = 0; o < alpha.comp.size(); ++o) r.comp.push_back(beta.comp[o].kron(alpha.comp[o].transpose()));
  return r;
}

SheafMap evaluation(const Sheaf& m, const Sheaf& n) {
  same_base(m, n);
  SheafMap r;
  for (size_t o = 0; o < m.dim.size(); ++o) {
    int dm = m.dim[o], dn = n.dim[o];
    Matrix e(dn, dn * dm * dm, m.k);
    for (int row = 0; row < dn; ++row)
      for (int c = 0; c < dm; ++c) e.at(row, (row * dm + c) * dm + c) = m.k.one();
    r.comp.push_back(e);
  }
  return r;
}

SheafMap curry(const SheafMap& phi, const Sheaf& a, const Sheaf& b, const Sheaf& c) {
  SheafMap r;
  for (size_t o = 0; o < a.dim.size(); ++o) {
    int da = a.dim[o], db = b.dim[o], dc = c.dim[o];
    Matrix m(dc * db, da, a.k);
    for (int row = 0; row < dc; ++row)
      for (int col = 0; col < db; ++col)
        for (int i = 0; i < da; ++i) m.at(row * db + col, i) = phi.comp[o].at(row, i * db + col);
    r.comp.push_back(m);
  }
  return r;
}

SheafMap uncurry(const SheafMap& psi, const Sheaf& b, const Sheaf& c) {
  return compose(evaluation(b, c), tensor_map(psi, identity_map(b)));
}

SheafMap tensor_swap(const Sheaf& m, const Sheaf& n) {
  SheafMap r;
  for (size_t o = 0; o < m.dim.size(); ++o) {
    int dm = m.dim[o], dn = n.dim[o];
    Matrix p(dn * dm, dm * dn, m.k);
    for (int i = 0; i < dm; ++i)
      for (int j = 0; j < dn; ++j) p.at(j * dm + i, i * dn + j) = m.k.one();
    r.comp.push_back(p);
  }
  return r;
}

Sheaf dual(const Sheaf& m) { return internal_hom(m, unit_sheaf(m.base, m.k)); }

AdjunctionWitness tensor_witness(const Sheaf& m, const Sheaf& a, const Sheaf& n) {
  AdjunctionWitness w{"- ⊗ M", "iHom(M, -)", {}, {}};
  auto am = tensor(a, m);
  w.unit = curry(identity_map(am), a, m, am);
  w.counit = evaluation(m, n);
  // (ε_{A⊗M})∘(η_A ⊗ M) = id
  auto h = internal_hom(m, am);
  auto left = compose(evaluation(m, am), tensor_map(w.unit, identity_map(m)));
  w.triangle_left = maps_equal(left, identity_map(am));
  // iHom(M, ε_N)∘η_{iHom(M,N)} = id
  auto hn = internal_hom(m, n);
  auto hnm = tensor(hn, m);
  auto eta = curry(identity_map(hnm), hn, m, hnm);
  auto right = compose(ihom_map(identity_map(m), m, m, w.counit, hnm, n), eta);
  w.triangle_right = maps_equal(right, identity_map(hn));
  (void)h;
  return w;
}

// ---------------------------------------------------------------------------------------------
// Canonical comparison maps

SheafMap composition_map(const FunctorPtr& f, const FunctorPtr& g, const Sheaf& m) {
  auto gf = compose_functors(g, f);
  auto q = lower_shriek(gf, m);
  auto gq = pullback_star(g, q);
  auto eta = lan_unit(gf, m);  // M -> f* g* Q
  auto inner = lan_adjunct(f, m, gq, eta);
  auto fm = lower_shriek(f, m);
  return lan_adjunct(g, fm, q, inner);
}

SheafMap base_change_map(const IsoComma& sq, const FunctorPtr& f, const FunctorPtr& g, const Sheaf& m) {
  auto q = lower_shriek(f, m);
  auto gpm = pullback_star(sq.pY, m);
  auto u = pullback_map(sq.pY, lan_unit(f, m));
  auto psi = compose(transport(q, sq.alpha), u);
  return lan_adjunct(sq.pX, gpm, pullback_star(g, q), psi);
}

SheafMap projection_map(const FunctorPtr& f, const Sheaf& m, const Sheaf& n) {
  auto fm = pullback_star(f, m);
  auto q = lower_shriek(f, n);
  auto a = tensor(fm, n);
  auto psi = tensor_map(identity_map(fm), lan_unit(f, n));
  return lan_adjunct(f, a, tensor(m, q), psi);
}

SheafMap hom_projection_map(const FunctorPtr& f, const Sheaf& n, const Sheaf& m) {
  auto q = lower_shriek(f, n);
  auto a = internal_hom(q, m);
  auto fq = pullback_star(f, q);
  auto fm = pullback_star(f, m);
  auto psi = ihom_map(lan_unit(f, n), n, fq, identity_map(fm), fm, fm);
  return ran_adjunct(f, a, internal_hom(n, fm), psi);
}

Certificate verify_base_change(const IsoComma& sq, const FunctorPtr& f, const FunctorPtr& g, const Sheaf& m) {
  auto phi = base_change_map(sq, f, g, m);
  Certificate c;
  c.ok = is_iso(phi);
  c.detail = c.ok ? "base change comparison invertible" : "base change comparison singular";
  return c;
}

Certificate verify_projection_formula(const FunctorPtr& f, const Sheaf& m, const Sheaf& n) {
  Certificate c;
  bool a = is_iso(projection_map(f, m, n));
  bool b = is_iso(hom_projection_map(f, n, m));
  c.ok = a && b;
  c.detail = std::string(a ? "tensor form invertible" : "tensor form singular") + "; " +
             (b ? "hom form invertible" : "hom form singular");
  return c;
}

GlobalSections global_sections(const Sheaf& m) {
  auto p = to_point(m.base);
  GlobalSections g;
  g.gamma = lower_star(p, m);
  g.gamma_c = lower_shriek(p, m);
  g.gamma_dim = g.gamma.dim[0];
  g.gamma_c_dim = g.gamma_c.dim[0];
  return g;
}

// ---------------------------------------------------------------------------------------------
// Hom spaces and isomorphism

std::vector<SheafMap> hom_space(const Sheaf& m, const Sheaf& n) {
  same_base(m, n);
  const auto& X = *m.base;
  const Field k = m.k;
  std::vector<SheafMap> basis;
  for (int c = 0; c < X.num_components(); ++c) {
    int rep = X.component_rep(c);
    int dm = m.dim[rep], dn = n.dim[rep];
    if (dm == 0 || dn == 0) continue;
    const auto& gens = X.aut_generators(c);
    Matrix sys(static_cast<int>(gens.size()) * dn * dm, dn * dm, k);
    for (size_t i = 0; i < gens.size(); ++i) {
      Matrix eq = n.mat[gens[i]].kron(Matrix::identity(dm, k)) -
                  Matrix::identity(dn, k).kron(m.mat[gens[i]].transpose());
      sys.set_block(static_cast<int>(i) * dn * dm, 0, eq);
    }
    Matrix ns = sys.nullspace();
    for (int j = 0; j < ns.cols(); ++j) {
      Matrix t(dn, dm, k);
      for (int r = 0; r < dn; ++r)
        for (int s = 0; s < dm; ++s) t.at(r, s) = ns.at(r * dm + s, j);
      SheafMap phi = zero_map(m, n);
      for (int o = 0; o < X.num_objects(); ++o)
        if (X.component_of(o) == c) phi.comp[o] = n.mat[X.tree(o)] * t * m.mat[X.inverse(X.tree(o))];
      basis.push_back(std::move(phi));
    }
  }
  return basis;
}

int hom_dim(const Sheaf& m, const Sheaf& n) { return static_cast<int>(hom_space(m, n).size()); }

bool is_isomorphic(const Sheaf& m, const Sheaf& n) {
  if (m.dim != n.dim) return false;
  int a = hom_dim(m, m), b = hom_dim(n, n), c = hom_dim(m, n);
  return a == b && b == c;
}

std::optional<SheafMap> find_isomorphism(const Sheaf& m, const Sheaf& n, std::mt19937_64& rng) {
  if (!is_isomorphic(m, n)) return std::nullopt;
  auto basis = hom_space(m, n);
  if (basis.empty()) return zero_map(m, n);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < 200; ++attempt) {
    SheafMap phi = zero_map(m, n);
    for (const auto& b : basis) phi = add(phi, scale(b, m.k.from_int(coef(rng))));
    if (is_iso(phi)) return phi;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// Random data

Matrix random_matrix(int rows, int cols, Field k, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Matrix m(rows, cols, k);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = k.from_int(d(rng));
  return m;
}

Matrix random_invertible(int n, Field k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-1, 1), sgn(0, 1);
  Matrix l = Matrix::identity(n, k), u = Matrix::identity(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i > j) l.at(i, j) = k.from_int(d(rng));
      if (i < j) u.at(i, j) = k.from_int(d(rng));
      if (i == j) u.at(i, j) = k.from_int(sgn(rng) ? 1 : -1);
    }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix p(n, n, k);
  for (int i = 0; i < n; ++i) p.at(i, perm[i]) = k.one();
  return p * l * u;
}

namespace {

// Permutation representation of Aut(rep) on cosets of the subgroup generated by `sub`, or a sign
// character when the subgroup has index 2 and `sign` is set.
std::vector<Matrix> coset_rep(const FiniteCategory& X, int rep, const std::vector<int>& sub_elems, bool sign,
                              const std::vector<int>& gens, Field k) {
  const auto& aut = X.hom(rep, rep);
  std::vector<int> coset(aut.size(), -1);
  std::vector<int> reps;
  for (int a : aut) {
    if (coset[X.hom_position(a)] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int h : sub_elems) coset[X.hom_position(X.compose_or_throw(a, h))] = id;
  }
  int n = static_cast<int>(reps.size());
  std::vector<Matrix> out;
  for (int g : gens) {
    if (sign) {
      Matrix m(1, 1, k);
      m.at(0, 0) = coset[X.hom_position(g)] == coset[X.hom_position(X.identity(rep))] ? k.one() : -k.one();
      out.push_back(m);
      continue;
    }
    Matrix m(n, n, k);
    for (int i = 0; i < n; ++i) m.at(coset[X.hom_position(X.compose_or_throw(g, reps[i]))], i) = k.one();
    out.push_back(m);
  }
  return out;
}

std::vector<int> generated_subgroup(const FiniteCategory& X, int rep, const std::vector<int>& gens) {
  std::vector<int> elems{X.identity(rep)};
  std::vector<bool> seen(X.hom(rep, rep).size(), false);
  seen[X.hom_position(X.identity(rep))] = true;
  for (size_t i = 0; i < elems.size(); ++i)
    for (int g : gens) {
      int h = X.compose_or_throw(g, elems[i]);
      if (!seen[X.hom_position(h)]) {
        seen[X.hom_position(h)] = true;
        elems.push_back(h);
      }
    }
  return elems;
}

}  // namespace

Sheaf random_sheaf(const GroupoidPtr& xp, Field k, std::mt19937_64& rng, int max_dim) {
  const auto& X = *xp;
  require_gate(X, k);
  std::vector<int> dims;
  std::vector<std::vector<Matrix>> gen_mats;
  std::uniform_int_distribution<int> coin(0, 3);
  for (int c = 0; c < X.num_components(); ++c) {
    int rep = X.component_rep(c);
    const auto& aut = X.hom(rep, rep);
    const auto& gens = X.aut_generators(c);
    int order = static_cast<int>(aut.size());
    std::vector<std::vector<Matrix>> blocks;
    int total = 0;
    int target = std::uniform_int_distribution<int>(0, max_dim)(rng);
    for (int tries = 0; tries < 12 && total < target; ++tries) {
      int a = aut[std::uniform_int_distribution<int>(0, order - 1)(rng)];
      int b = aut[std::uniform_int_distribution<int>(0, order - 1)(rng)];
      std::vector<int> sub;
      int kind = coin(rng);
      if (kind == 0) sub = {X.identity(rep)};
      else if (kind == 1) sub = generated_subgroup(X, rep, {a});
      else if (kind == 2) sub = generated_subgroup(X, rep, {a, b});
      else sub = aut;
      int index = order / static_cast<int>(sub.size());
      bool sign = index == 2 && coin(rng) < 2;
      int d = sign ? 1 : index;
      if (total + d > max_dim) continue;
      blocks.push_back(coset_rep(X, rep, sub, sign, gens, k));
      total += d;
    }
    std::vector<Matrix> mats(gens.size(), Matrix(total, total, k));
    int off = 0;
    for (const auto& blk : blocks) {
      int d = gens.empty() ? 0 : blk[0].rows();
      for (size_t i = 0; i < gens.size(); ++i) mats[i].set_block(off, off, blk[i]);
      off += d;
    }
    if (gens.empty()) {
      // Trivial automorphism group: only the dimension matters.
      total = std::uniform_int_distribution<int>(0, max_dim)(rng);
    } else if (total > 0) {
      Matrix p = random_invertible(total, k, rng);
      Matrix pi = p.inverse_or_throw("conjugator");
      for (auto& m : mats) m = p * m * pi;
    }
    dims.push_back(total);
    gen_mats.push_back(mats);
  }
  std::vector<Matrix> tree;
  for (int o = 0; o < X.num_objects(); ++o) {
    int c = X.component_of(o);
    tree.push_back(o == X.component_rep(c) ? Matrix::identity(dims[c], k) : random_invertible(dims[c], k, rng));
  }
  return sheaf_from_aut_action(xp, k, dims, gen_mats, tree);
}

SheafMap random_map(const Sheaf& m, const Sheaf& n, std::mt19937_64& rng) {
  SheafMap phi = zero_map(m, n);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (const auto& b : hom_space(m, n)) phi = add(phi, scale(b, m.k.from_int(coef(rng))));
  return phi;
}

// ---------------------------------------------------------------------------------------------
// Summands

Sheaf restrict_to(const Sheaf& m, const std::vector<Matrix>& bases) {
  const auto& X = *m.base;
  Sheaf s{m.base, m.k, {}, {}};
  std::vector<Matrix> left;
  for (int o = 0; o < X.num_objects(); ++o) {
    s.dim.push_back(bases[o].cols());
    left.push_back(bases[o].left_inverse());
  }
  for (int a = 0; a < X.num_morphisms(); ++a) s.mat.push_back(left[X.tgt(a)] * m.mat[a] * bases[X.src(a)]);
  return s;
}

namespace {

Matrix integer_scaled(const Matrix& t) {
  if (t.field().p != 0) return t;
  mpz_class l = 1;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) {
      mpz_class d = t.at(i, j).value().get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
  return t.scaled(t.field().from_mpq(mpq_class(l)));
}

void split(const Sheaf& m, int rep, const Matrix& span, std::vector<Matrix>& out) {
  const auto& X = *m.base;
  const Field k = m.k;
  int r = span.cols();
  if (r == 0) return;
  Matrix lspan = span.left_inverse();
  const auto& aut = X.hom(rep, rep);
  std::vector<Matrix> act;
  for (int a : aut) act.push_back(lspan * m.mat[a] * span);
  const auto& gens = X.aut_generators(X.component_of(rep));
  Matrix sys(static_cast<int>(std::max<size_t>(gens.size(), 1)) * r * r, r * r, k);
  for (size_t i = 0; i < gens.size(); ++i) {
    Matrix g = lspan * m.mat[gens[i]] * span;
    sys.set_block(static_cast<int>(i) * r * r, 0,
                  g.kron(Matrix::identity(r, k)) - Matrix::identity(r, k).kron(g.transpose()));
  }
  Matrix ns = sys.nullspace();
  if (ns.cols() <= 1) {
    out.push_back(span);
    return;
  }
  for (int j = 0; j < ns.cols(); ++j) {
    Matrix t(r, r, k);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) t.at(a, b) = ns.at(a * r + b, j);
    Matrix ti = integer_scaled(t);
    std::vector<Scalar> candidates;
    if (k.p != 0) {
      if (k.p > 2000) continue;
      for (std::uint32_t c = 0; c < k.p; ++c) candidates.push_back(k.from_int(c));
    } else {
      mpz_class bound = 0;
      for (int a = 0; a < r; ++a) {
        mpz_class s = 0;
        for (int b = 0; b < r; ++b) s += abs(ti.at(a, b).value().get_num());
        bound = std::max(bound, s);
      }
      if (bound > 5000) bound = 5000;
      for (long c = -bound.get_si(); c <= bound.get_si(); ++c) candidates.push_back(k.from_int(c));
    }
    for (const auto& c : candidates) {
      Matrix shifted = ti - Matrix::identity(r, k).scaled(c);
      Matrix ker = shifted.nullspace();
      if (ker.cols() == 0 || ker.cols() == r) continue;
      // Equivariant projection onto ker by averaging.
      Matrix p = ker * ker.left_inverse();
      Matrix avg(r, r, k);
      for (size_t i = 0; i < aut.size(); ++i) {
        Matrix inv = lspan * m.mat[X.inverse(aut[i])] * span;
        avg = avg + act[i] * p * inv;
      }
      avg = avg.scaled(k.from_int(static_cast<long>(aut.size())).inverse());
      Matrix comp = avg.nullspace();
      split(m, rep, span * ker, out);
      split(m, rep, span * comp, out);
      return;
    }
  }
  out.push_back(span);
}

}  // namespace

std::vector<Sheaf> simple_summands(const Sheaf& m) {
  const auto& X = *m.base;
  if (X.num_components() != 1) throw std::invalid_argument("simple_summands expects a connected groupoid");
  require_gate(X, m.k);
  int rep = X.component_rep(0);
  std::vector<Matrix> spans;
  split(m, rep, Matrix::identity(m.dim[rep], m.k), spans);
  std::vector<Sheaf> out;
  for (const auto& s : spans) {
    std::vector<Matrix> bases;
    for (int o = 0; o < X.num_objects(); ++o) bases.push_back(m.mat[X.tree(o)] * s);
    out.push_back(restrict_to(m, bases));
  }
  return out;
}

std::string describe(const Sheaf& m) {
  std::ostringstream os;
  os << "dims [";
  for (size_t o = 0; o < m.dim.size(); ++o) os << (o ? " " : "") << m.dim[o];
  os << "] on " << m.base->label;
  return os.str();
}

}  // namespace sixff
