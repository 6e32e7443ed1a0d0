#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sixff/category.hpp"

namespace sixff {

// ---------------------------------------------------------------------------------------------
// Backends: an enumerated finite category with an E-flag per morphism, and concrete finite sets.

template <class Obj, class Mor>
struct Cone {
  Obj apex;
  Mor p1, p2;  // apex -> X, apex -> Y
};

class EnumeratedBackend {
 public:
  using Obj = int;
  using Mor = int;
  EnumeratedBackend(CategoryPtr cat, std::vector<bool> in_e);

  const FiniteCategory& cat() const { return *cat_; }
  const CategoryPtr& cat_ptr() const { return cat_; }
  Obj src(Mor m) const { return cat_->src(m); }
  Obj tgt(Mor m) const { return cat_->tgt(m); }
  Mor compose(Mor g, Mor f) const { return cat_->compose_or_throw(g, f); }
  Mor identity(Obj o) const { return cat_->identity(o); }
  bool in_e(Mor m) const { return in_e_.at(m); }
  bool same(Mor a, Mor b) const { return a == b; }
  bool is_iso(Mor m) const;
  // Lexicographically minimal terminal cone over f: X -> S <- Y: g.
  std::optional<Cone<Obj, Mor>> pullback(Mor f, Mor g) const;
  // Unique u: from.apex -> to.apex with to.p1 u = from.p1 and to.p2 u = from.p2.
  std::optional<Mor> mediate(const Cone<Obj, Mor>& from, const Cone<Obj, Mor>& to) const;
  // Isomorphism a -> b with leg_b1 ∘ u = leg_a1 and leg_b2 ∘ u = leg_a2.
  std::optional<Mor> iso_over(Obj a, Obj b, Mor a1, Mor a2, Mor b1, Mor b2) const;
  std::string obj_name(Obj o) const { return cat_->object_name(o); }
  std::string mor_name(Mor m) const { return cat_->morphism_name(m); }
  bool mor_less(Mor a, Mor b) const { return a < b; }

 private:
  CategoryPtr cat_;
  std::vector<bool> in_e_;
  mutable std::map<std::pair<int, int>, std::optional<Cone<int, int>>> pb_cache_;
};

struct FinMap {
  int src = 0, tgt = 0;
  std::vector<int> img;
  bool operator==(const FinMap& o) const { return src == o.src && tgt == o.tgt && img == o.img; }
  bool operator<(const FinMap& o) const { return std::tie(src, tgt, img) < std::tie(o.src, o.tgt, o.img); }
};

// Finite sets {0..n-1}; E is all maps, or only bijections.
class FinSetBackend {
 public:
  using Obj = int;
  using Mor = FinMap;
  explicit FinSetBackend(bool all_maps_in_e = true) : all_(all_maps_in_e) {}
  Obj src(const Mor& m) const { return m.src; }
  Obj tgt(const Mor& m) const { return m.tgt; }
  Mor compose(const Mor& g, const Mor& f) const;
  Mor identity(Obj n) const;
  bool in_e(const Mor& m) const { return all_ || is_iso(m); }
  bool same(const Mor& a, const Mor& b) const { return a == b; }
  bool is_iso(const Mor& m) const;
  // Apex = compatible pairs in lexicographic order.
  std::optional<Cone<Obj, Mor>> pullback(const Mor& f, const Mor& g) const;
  std::optional<Mor> mediate(const Cone<Obj, Mor>& from, const Cone<Obj, Mor>& to) const;
  std::optional<Mor> iso_over(Obj a, Obj b, const Mor& a1, const Mor& a2, const Mor& b1, const Mor& b2) const;
  std::string obj_name(Obj o) const { return "[" + std::to_string(o) + "]"; }
  std::string mor_name(const Mor& m) const;
  bool mor_less(const Mor& a, const Mor& b) const { return a < b; }

  // Strict monoidal product: (a, b) -> a*|B| + b.
  static Obj product(Obj a, Obj b) { return a * b; }
  static Mor product(const Mor& f, const Mor& g);
  static Mor diagonal(Obj n);
  static Mor to_terminal(Obj n);
  static Mor from_vector(int tgt, std::vector<int> img);

 private:
  bool all_;
};

// Universal property of the FinSet pullback checked against every cone from the one-point set.
bool finset_pullback_certified(const FinSetBackend& b, const FinMap& f, const FinMap& g);

// ---------------------------------------------------------------------------------------------
// Spans

template <class B>
struct Span {
  typename B::Obj x, z, y;
  typename B::Mor left, right;  // z -> x, z -> y
};

template <class B>
Span<B> identity_span(const B& b, typename B::Obj x) {
  return {x, x, x, b.identity(x), b.identity(x)};
}

// [X <-id X -f-> Y]
template <class B>
Span<B> forward_span(const B& b, const typename B::Mor& f) {
  return {b.src(f), b.src(f), b.tgt(f), b.identity(b.src(f)), f};
}

// [Y <-f- X -id-> X]
template <class B>
Span<B> backward_span(const B& b, const typename B::Mor& f) {
  return {b.tgt(f), b.src(f), b.src(f), f, b.identity(b.src(f))};
}

template <class B>
Span<B> swap_span(const Span<B>& s) {
  return {s.y, s.z, s.x, s.right, s.left};
}

class SetupViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// s1: X ⇒ Y, s2: Y ⇒ W; apex is the pullback of z1 -> Y <- z2.
template <class B>
Span<B> compose_spans(const B& b, const Span<B>& s1, const Span<B>& s2) {
  if (s1.y != s2.x) throw std::invalid_argument("compose_spans: middle objects differ");
  if (!b.in_e(s1.right) || !b.in_e(s2.right)) throw SetupViolation("compose_spans: right leg not exceptional");
  auto pb = b.pullback(s1.right, s2.left);
  if (!pb) throw SetupViolation("compose_spans: pullback of " + b.mor_name(s1.right) + " and " +
                                b.mor_name(s2.left) + " does not exist");
  Span<B> r{s1.x, pb->apex, s2.y, b.compose(s1.left, pb->p1), b.compose(s2.right, pb->p2)};
  if (!b.in_e(r.right)) throw SetupViolation("compose_spans: composite right leg left E");
  return r;
}

template <class B>
std::optional<typename B::Mor> span_iso(const B& b, const Span<B>& s1, const Span<B>& s2) {
  if (s1.x != s2.x || s1.y != s2.y) return std::nullopt;
  return b.iso_over(s1.z, s2.z, s1.left, s1.right, s2.left, s2.right);
}

// Checks that (P, p1, p2) over (f, g) is a pullback by comparing it to the canonical one.
template <class B>
bool is_pullback_square(const B& b, const typename B::Obj& p, const typename B::Mor& p1,
                        const typename B::Mor& p2, const typename B::Mor& f, const typename B::Mor& g) {
  if (!b.same(b.compose(f, p1), b.compose(g, p2))) return false;
  auto pb = b.pullback(f, g);
  if (!pb) return false;
  auto u = b.mediate(Cone<typename B::Obj, typename B::Mor>{p, p1, p2}, *pb);
  return u && b.is_iso(*u);
}

// ---------------------------------------------------------------------------------------------
// Geometric setups on enumerated categories

struct SetupReport {
  ValidationReport violations;
  bool contains_isos = false;
  bool composition_closed = false;
  bool base_change_closed = false;
  bool diagonals_in_e = false;
  bool right_cancellative = false;
  // Full validity using the diagonal condition, resp. right-cancellativity, as third axiom.
  bool verdict_diagonal = false;
  bool verdict_right_cancellative = false;
  bool cross_check = false;  // the two verdicts agree
  bool valid() const { return verdict_diagonal; }
};
SetupReport validate_setup(const EnumeratedBackend& s);

// Poset with a morphism a -> b iff leq[a][b].
CategoryPtr poset_category(const std::vector<std::string>& names, const std::vector<std::vector<bool>>& leq,
                           const std::string& label);
CategoryPtr divisor_poset(int n);
CategoryPtr chain_poset(int n);  // 0 -> 1 -> ... -> n-1
// Full subcategory of finite sets on the given sizes.
CategoryPtr finset_category(const std::vector<int>& sizes);
std::vector<bool> all_morphisms(const FiniteCategory& c);
std::vector<bool> isomorphisms_only(const FiniteCategory& c);

class PartialEnumeration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Span iso-classes X ⇒ Y; refuses when more than `bound` candidate spans would be examined.
std::vector<Span<EnumeratedBackend>> corr_hom(const EnumeratedBackend& s, int x, int y, long bound);

// ---------------------------------------------------------------------------------------------
// Duals in Corr(FinSet)

struct DualData {
  Span<FinSetBackend> ev, coev;
  Span<FinSetBackend> triangle1, triangle2;  // (ev×id)∘(id×coev), (id×ev)∘(coev×id)
  std::optional<FinMap> witness1, witness2;  // isos to the identity span
  bool ok() const { return witness1.has_value() && witness2.has_value(); }
};
Span<FinSetBackend> product_span(const Span<FinSetBackend>& a, const Span<FinSetBackend>& b);
DualData dual_data(const FinSetBackend& b, int x);

}  // namespace sixff
