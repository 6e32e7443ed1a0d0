#include "sixff/corr.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace sixff {

// ---------------------------------------------------------------------------------------------
// EnumeratedBackend

EnumeratedBackend::EnumeratedBackend(CategoryPtr cat, std::vector<bool> in_e)
    : cat_(std::move(cat)), in_e_(std::move(in_e)) {
  if (static_cast<int>(in_e_.size()) != cat_->num_morphisms())
    throw StructuralError("E-flags do not match the morphisms of " + cat_->label);
}

bool EnumeratedBackend::is_iso(Mor m) const {
  for (int n : cat_->hom(tgt(m), src(m)))
    if (compose(n, m) == identity(src(m)) && compose(m, n) == identity(tgt(m))) return true;
  return false;
}

std::optional<Cone<int, int>> EnumeratedBackend::pullback(Mor f, Mor g) const {
  if (tgt(f) != tgt(g)) throw std::invalid_argument("pullback: not a cospan");
  auto key = std::make_pair(f, g);
  auto it = pb_cache_.find(key);
  if (it != pb_cache_.end()) return it->second;
  const auto& C = *cat_;
  std::vector<Cone<int, int>> cones;
  for (int p = 0; p < C.num_objects(); ++p)
    for (int a : C.hom(p, src(f)))
      for (int b : C.hom(p, src(g)))
        if (compose(f, a) == compose(g, b)) cones.push_back({p, a, b});
  std::optional<Cone<int, int>> best;
  for (const auto& cand : cones) {
    bool terminal = true;
    for (const auto& other : cones) {
      int count = 0;
      for (int u : C.hom(other.apex, cand.apex))
        if (compose(cand.p1, u) == other.p1 && compose(cand.p2, u) == other.p2) ++count;
      if (count != 1) {
        terminal = false;
        break;
      }
    }
    if (terminal) {
      best = cand;
      break;
    }
  }
  pb_cache_.emplace(key, best);
  return best;
}

std::optional<int> EnumeratedBackend::mediate(const Cone<int, int>& from, const Cone<int, int>& to) const {
  std::optional<int> found;
  for (int u : cat_->hom(from.apex, to.apex))
    if (compose(to.p1, u) == from.p1 && compose(to.p2, u) == from.p2) {
      if (found) return std::nullopt;
      found = u;
    }
  return found;
}

std::optional<int> EnumeratedBackend::iso_over(Obj a, Obj b, Mor a1, Mor a2, Mor b1, Mor b2) const {
  for (int u : cat_->hom(a, b))
    if (compose(b1, u) == a1 && compose(b2, u) == a2 && is_iso(u)) return u;
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// FinSetBackend

FinMap FinSetBackend::compose(const FinMap& g, const FinMap& f) const {
  if (f.tgt != g.src) throw std::invalid_argument("finset compose: not composable");
  FinMap r{f.src, g.tgt, std::vector<int>(f.src)};
  for (int i = 0; i < f.src; ++i) r.img[i] = g.img[f.img[i]];
  return r;
}

FinMap FinSetBackend::identity(int n) const {
  FinMap r{n, n, std::vector<int>(n)};
  std::iota(r.img.begin(), r.img.end(), 0);
  return r;
}

bool FinSetBackend::is_iso(const FinMap& m) const {
  if (m.src != m.tgt) return false;
  std::vector<bool> hit(m.tgt, false);
  for (int v : m.img) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

std::optional<Cone<int, FinMap>> FinSetBackend::pullback(const FinMap& f, const FinMap& g) const {
  if (f.tgt != g.tgt) throw std::invalid_argument("pullback: not a cospan");
  std::vector<int> a, b;
  for (int i = 0; i < f.src; ++i)
    for (int j = 0; j < g.src; ++j)
      if (f.img[i] == g.img[j]) a.push_back(i), b.push_back(j);
  int n = static_cast<int>(a.size());
  return Cone<int, FinMap>{n, FinMap{n, f.src, a}, FinMap{n, g.src, b}};
}

std::optional<FinMap> FinSetBackend::mediate(const Cone<int, FinMap>& from, const Cone<int, FinMap>& to) const {
  FinMap u{from.apex, to.apex, std::vector<int>(from.apex, -1)};
  for (int i = 0; i < from.apex; ++i) {
    for (int j = 0; j < to.apex; ++j)
      if (to.p1.img[j] == from.p1.img[i] && to.p2.img[j] == from.p2.img[i]) {
        if (u.img[i] >= 0) return std::nullopt;
        u.img[i] = j;
      }
    if (u.img[i] < 0) return std::nullopt;
  }
  return u;
}

std::optional<FinMap> FinSetBackend::iso_over(int a, int b, const FinMap& a1, const FinMap& a2, const FinMap& b1,
                                              const FinMap& b2) const {
  if (a != b) return std::nullopt;
  // Match elements fiberwise over (leg1, leg2) values, in order.
  std::map<std::pair<int, int>, std::vector<int>> fibers;
  for (int j = 0; j < b; ++j) fibers[{b1.img[j], b2.img[j]}].push_back(j);
  std::map<std::pair<int, int>, size_t> used;
  FinMap u{a, b, std::vector<int>(a)};
  for (int i = 0; i < a; ++i) {
    auto key = std::make_pair(a1.img[i], a2.img[i]);
    auto it = fibers.find(key);
    size_t& k = used[key];
    if (it == fibers.end() || k >= it->second.size()) return std::nullopt;
    u.img[i] = it->second[k++];
  }
  return u;
}

std::string FinSetBackend::mor_name(const FinMap& m) const {
  std::string s = "[";
  for (size_t i = 0; i < m.img.size(); ++i) s += (i ? "," : "") + std::to_string(m.img[i]);
  return s + "]:" + std::to_string(m.src) + "->" + std::to_string(m.tgt);
}

FinMap FinSetBackend::product(const FinMap& f, const FinMap& g) {
  FinMap r{f.src * g.src, f.tgt * g.tgt, std::vector<int>(f.src * g.src)};
  for (int a = 0; a < f.src; ++a)
    for (int b = 0; b < g.src; ++b) r.img[a * g.src + b] = f.img[a] * g.tgt + g.img[b];
  return r;
}

FinMap FinSetBackend::diagonal(int n) {
  FinMap r{n, n * n, std::vector<int>(n)};
  for (int a = 0; a < n; ++a) r.img[a] = a * n + a;
  return r;
}

FinMap FinSetBackend::to_terminal(int n) { return FinMap{n, 1, std::vector<int>(n, 0)}; }

FinMap FinSetBackend::from_vector(int tgt, std::vector<int> img) {
  for (int v : img)
    if (v < 0 || v >= tgt) throw std::invalid_argument("finite-set map leaves its target");
  int n = static_cast<int>(img.size());
  return FinMap{n, tgt, std::move(img)};
}

bool finset_pullback_certified(const FinSetBackend& b, const FinMap& f, const FinMap& g) {
  auto pb = b.pullback(f, g);
  if (!pb || !b.same(b.compose(f, pb->p1), b.compose(g, pb->p2))) return false;
  for (int i = 0; i < f.src; ++i)
    for (int j = 0; j < g.src; ++j) {
      if (f.img[i] != g.img[j]) continue;
      Cone<int, FinMap> point{1, FinMap{1, f.src, {i}}, FinMap{1, g.src, {j}}};
      if (!b.mediate(point, *pb)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------------------------
// Setups

SetupReport validate_setup(const EnumeratedBackend& s) {
  SetupReport r;
  const auto& C = s.cat();
  const int nm = C.num_morphisms();
  auto name = [&](int m) { return C.morphism_name(m); };
  r.contains_isos = true;
  for (int m = 0; m < nm; ++m)
    if (s.is_iso(m) && !s.in_e(m)) {
      r.contains_isos = false;
      r.violations.push_back({"iso_not_in_e", name(m)});
    }
  r.composition_closed = true;
  for (int f = 0; f < nm; ++f)
    for (int g : C.out(C.tgt(f)))
      if (s.in_e(f) && s.in_e(g) && !s.in_e(s.compose(g, f))) {
        r.composition_closed = false;
        r.violations.push_back({"composite_not_in_e", "(" + name(g) + ", " + name(f) + ")"});
      }
  r.base_change_closed = true;
  for (int f = 0; f < nm; ++f) {
    if (!s.in_e(f)) continue;
    for (int g = 0; g < nm; ++g) {
      if (C.tgt(g) != C.tgt(f)) continue;
      auto pb = s.pullback(f, g);
      if (!pb) {
        r.base_change_closed = false;
        r.violations.push_back({"pullback_missing", "(" + name(f) + ", " + name(g) + ")"});
      } else if (!s.in_e(pb->p2)) {
        r.base_change_closed = false;
        r.violations.push_back({"base_change_not_in_e", name(f) + " along " + name(g)});
      }
    }
  }
  r.diagonals_in_e = true;
  for (int f = 0; f < nm; ++f) {
    if (!s.in_e(f)) continue;
    auto pb = s.pullback(f, f);
    std::optional<int> delta;
    if (pb) delta = s.mediate({C.src(f), C.identity(C.src(f)), C.identity(C.src(f))}, *pb);
    if (!delta || !s.in_e(*delta)) {
      r.diagonals_in_e = false;
      r.violations.push_back({"diagonal_not_in_e", name(f)});
    }
  }
  r.right_cancellative = true;
  for (int f = 0; f < nm; ++f)
    for (int g : C.out(C.tgt(f)))
      if (s.in_e(g) && s.in_e(s.compose(g, f)) && !s.in_e(f)) {
        r.right_cancellative = false;
        r.violations.push_back({"not_right_cancellative", "(" + name(g) + ", " + name(f) + ")"});
      }
  bool base = r.contains_isos && r.composition_closed && r.base_change_closed;
  r.verdict_diagonal = base && r.diagonals_in_e;
  r.verdict_right_cancellative = base && r.right_cancellative;
  r.cross_check = r.verdict_diagonal == r.verdict_right_cancellative;
  return r;
}

CategoryPtr poset_category(const std::vector<std::string>& names, const std::vector<std::vector<bool>>& leq,
                           const std::string& label) {
  const int n = static_cast<int>(names.size());
  for (int a = 0; a < n; ++a) {
    if (!leq[a][a]) throw std::invalid_argument("poset relation is not reflexive");
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (leq[a][b] && leq[b][c] && !leq[a][c]) throw std::invalid_argument("poset relation is not transitive");
  }
  CategoryBuilder b;
  for (const auto& nm : names) b.add_object(nm);
  std::vector<std::vector<int>> mor(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      if (leq[a][c]) {
        mor[a][c] = a == c ? b.add_identity(a) : b.add_morphism(names[a] + "->" + names[c], a, c);
      }
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d)
        if (mor[a][c] >= 0 && mor[c][d] >= 0) b.set_compose(mor[c][d], mor[a][c], mor[a][d]);
  return b.build(label, false);
}

CategoryPtr divisor_poset(int n) {
  std::vector<int> divs;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  std::vector<std::string> names;
  for (int d : divs) names.push_back(std::to_string(d));
  std::vector<std::vector<bool>> leq(divs.size(), std::vector<bool>(divs.size()));
  for (size_t i = 0; i < divs.size(); ++i)
    for (size_t j = 0; j < divs.size(); ++j) leq[i][j] = divs[j] % divs[i] == 0;
  return poset_category(names, leq, "Div(" + std::to_string(n) + ")");
}

CategoryPtr chain_poset(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) leq[i][j] = i <= j;
  return poset_category(names, leq, "chain" + std::to_string(n));
}

CategoryPtr finset_category(const std::vector<int>& sizes) {
  CategoryBuilder b;
  const int n = static_cast<int>(sizes.size());
  for (int s : sizes) b.add_object("[" + std::to_string(s) + "]");
  std::vector<FinMap> maps;
  std::map<FinMap, int> index;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      int count = 1;
      for (int i = 0; i < sizes[a]; ++i) count *= sizes[c];
      for (int code = 0; code < count; ++code) {
        FinMap m{sizes[a], sizes[c], std::vector<int>(sizes[a])};
        int v = code;
        for (int i = 0; i < sizes[a]; ++i) m.img[i] = v % sizes[c], v /= sizes[c];
        FinSetBackend fs;
        bool id = a == c && m == fs.identity(sizes[a]);
        int idx = b.add_morphism(id ? "id_[" + std::to_string(sizes[a]) + "]" : fs.mor_name(m), a, c);
        if (id) b.set_identity(a, idx);
        maps.push_back(m);
        index[m] = idx;
      }
    }
  // Morphisms are (src object, tgt object, map); object sizes are distinct.
  FinSetBackend fs;
  for (size_t f = 0; f < maps.size(); ++f)
    for (size_t g = 0; g < maps.size(); ++g)
      if (maps[f].tgt == maps[g].src) b.set_compose(static_cast<int>(g), static_cast<int>(f), index.at(fs.compose(maps[g], maps[f])));
  std::string label = "FinSet{";
  for (int i = 0; i < n; ++i) label += (i ? "," : "") + std::to_string(sizes[i]);
  return b.build(label + "}", false);
}

std::vector<bool> all_morphisms(const FiniteCategory& c) { return std::vector<bool>(c.num_morphisms(), true); }

std::vector<bool> isomorphisms_only(const FiniteCategory& c) {
  EnumeratedBackend tmp(std::shared_ptr<const FiniteCategory>(&c, [](const FiniteCategory*) {}),
                        std::vector<bool>(c.num_morphisms(), true));
  std::vector<bool> r(c.num_morphisms());
  for (int m = 0; m < c.num_morphisms(); ++m) r[m] = tmp.is_iso(m);
  return r;
}

std::vector<Span<EnumeratedBackend>> corr_hom(const EnumeratedBackend& s, int x, int y, long bound) {
  const auto& C = s.cat();
  long candidates = 0;
  for (int z = 0; z < C.num_objects(); ++z)
    candidates += static_cast<long>(C.hom(z, x).size()) * static_cast<long>(C.hom(z, y).size());
  if (candidates > bound)
    throw PartialEnumeration("corr_hom: " + std::to_string(candidates) + " candidate spans exceed bound " +
                             std::to_string(bound));
  std::vector<Span<EnumeratedBackend>> classes;
  for (int z = 0; z < C.num_objects(); ++z)
    for (int l : C.hom(z, x))
      for (int r : C.hom(z, y)) {
        if (!s.in_e(r)) continue;
        Span<EnumeratedBackend> sp{x, z, y, l, r};
        bool fresh = true;
        for (const auto& c : classes)
          if (span_iso(s, c, sp)) {
            fresh = false;
            break;
          }
        if (fresh) classes.push_back(sp);
      }
  return classes;
}

// ---------------------------------------------------------------------------------------------
// Duals

Span<FinSetBackend> product_span(const Span<FinSetBackend>& a, const Span<FinSetBackend>& b) {
  return {a.x * b.x, a.z * b.z, a.y * b.y, FinSetBackend::product(a.left, b.left),
          FinSetBackend::product(a.right, b.right)};
}

DualData dual_data(const FinSetBackend& b, int x) {
  if (!b.in_e(FinSetBackend::to_terminal(x)) || !b.in_e(FinSetBackend::diagonal(x)))
    throw SetupViolation("dual_data: X -> * or the diagonal is not exceptional");
  DualData d;
  d.ev = {x * x, x, 1, FinSetBackend::diagonal(x), FinSetBackend::to_terminal(x)};
  d.coev = {1, x, x * x, FinSetBackend::to_terminal(x), FinSetBackend::diagonal(x)};
  auto id = identity_span(b, x);
  // X = X×* ⇒ X×X×X ⇒ *×X = X
  d.triangle1 = compose_spans(b, product_span(id, d.coev), product_span(d.ev, id));
  // X = *×X ⇒ X×X×X ⇒ X×* = X
  d.triangle2 = compose_spans(b, product_span(d.coev, id), product_span(id, d.ev));
  d.witness1 = span_iso(b, d.triangle1, id);
  d.witness2 = span_iso(b, d.triangle2, id);
  return d;
}

}  // namespace sixff
