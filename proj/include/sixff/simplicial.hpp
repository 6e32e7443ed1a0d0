#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sixff/category.hpp"
#include "sixff/corr.hpp"
#include "sixff/sheaf.hpp"

namespace sixff {

// ---------------------------------------------------------------------------------------------
// Pyramid posets

enum class PyramidVariant { Sigma, Sigma2, Lambda };

struct PyramidPoset {
  int n = 0;
  PyramidVariant variant = PyramidVariant::Sigma;
  std::vector<std::pair<int, int>> elements;  // (i, j), lexicographic
  int index(int i, int j) const;              // -1 if absent
  bool leq(int a, int b) const;               // on element indices
  std::vector<std::pair<int, int>> covers() const;  // index pairs a ⋖ b
  CategoryPtr category() const;
};
PyramidPoset build_pyramid(int n, PyramidVariant variant);
std::string variant_name(PyramidVariant v);

// Monotone map [src] -> [tgt].
struct MonotoneMap {
  int src = 0, tgt = 0;
  std::vector<int> img;
  bool operator==(const MonotoneMap& o) const { return src == o.src && tgt == o.tgt && img == o.img; }
  bool monotone() const;
};
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);
MonotoneMap identity_monotone(int n);

// A functor (Σⁿ)^op -> Δ^op: a value [N_a] per element and, for a ≤ b, a monotone map [N_a] -> [N_b].
struct PyramidSection {
  PyramidPoset shape;
  std::vector<int> value;
  std::map<std::pair<int, int>, MonotoneMap> transition;
  bool is_functor() const;
};

struct PyramidSections {
  PyramidSection s, t;
  std::vector<MonotoneMap> t_to_s;  // per element: [i] -> [N_t], first half-interval
  bool t_to_s_natural = false;
  // Identity components t ≅ rev∘t; natural iff every transition commutes with reversal.
  bool symmetry_natural = false;
  bool symmetry_involutive = false;
};
PyramidSections pyramid_sections(int n);
MonotoneMap reverse_conjugate(const MonotoneMap& m);  // r∘m∘r

// ---------------------------------------------------------------------------------------------
// Functors Σⁿ -> C over a corr backend

template <class B>
struct PyramidFunctor {
  int n = 0;
  std::vector<std::vector<typename B::Obj>> obj;       // obj[i][j], i ≤ j
  std::vector<std::vector<typename B::Mor>> to_right;  // F(i,j) -> F(i+1,j), i < j
  std::vector<std::vector<typename B::Mor>> to_left;   // F(i,j) -> F(i,j-1), i < j
};

template <class B>
PyramidFunctor<B> empty_pyramid(int n) {
  PyramidFunctor<B> f;
  f.n = n;
  f.obj.assign(n + 1, std::vector<typename B::Obj>(n + 1));
  f.to_right.assign(n + 1, std::vector<typename B::Mor>(n + 1));
  f.to_left.assign(n + 1, std::vector<typename B::Mor>(n + 1));
  return f;
}

template <class B>
bool pyramid_functor_valid(const B& b, const PyramidFunctor<B>& f) {
  for (int i = 0; i <= f.n; ++i)
    for (int j = i + 1; j <= f.n; ++j) {
      const auto& r = f.to_right[i][j];
      const auto& l = f.to_left[i][j];
      if (b.src(r) != f.obj[i][j] || b.tgt(r) != f.obj[i + 1][j]) return false;
      if (b.src(l) != f.obj[i][j] || b.tgt(l) != f.obj[i][j - 1]) return false;
      if (j - i >= 2 &&
          !b.same(b.compose(f.to_left[i + 1][j], r), b.compose(f.to_right[i][j - 1], l)))
        return false;
    }
  return true;
}

struct CartesianReport {
  bool cartesian = true;
  std::optional<std::pair<int, int>> failing;  // top corner (i, j) of the first non-pullback square
};

template <class B>
CartesianReport is_cartesian(const B& b, const PyramidFunctor<B>& f) {
  CartesianReport rep;
  for (int d = 2; d <= f.n; ++d)
    for (int i = 0; i + d <= f.n; ++i) {
      int j = i + d;
      if (!is_pullback_square(b, f.obj[i][j], f.to_left[i][j], f.to_right[i][j], f.to_right[i][j - 1],
                              f.to_left[i + 1][j])) {
        rep.cartesian = false;
        rep.failing = std::make_pair(i, j);
        return rep;
      }
    }
  return rep;
}

// Λⁿ data as n composable spans F(i-1,i-1) <- F(i-1,i) -> F(i,i).
template <class B>
std::vector<Span<B>> restrict_to_lambda(const PyramidFunctor<B>& f) {
  std::vector<Span<B>> out;
  for (int i = 1; i <= f.n; ++i)
    out.push_back({f.obj[i - 1][i - 1], f.obj[i - 1][i], f.obj[i][i], f.to_left[i - 1][i], f.to_right[i - 1][i]});
  return out;
}

template <class B>
PyramidFunctor<B> lambda_to_sigma(const B& b, typename B::Obj start, const std::vector<Span<B>>& spans) {
  const int n = static_cast<int>(spans.size());
  auto f = empty_pyramid<B>(n);
  f.obj[0][0] = start;
  for (int i = 1; i <= n; ++i) {
    const auto& s = spans[i - 1];
    if (s.x != f.obj[i - 1][i - 1]) throw std::invalid_argument("lambda_to_sigma: spans are not composable");
    if (!b.in_e(s.right)) throw SetupViolation("lambda_to_sigma: right leg " + b.mor_name(s.right) + " not in E");
    f.obj[i][i] = s.y;
    f.obj[i - 1][i] = s.z;
    f.to_left[i - 1][i] = s.left;
    f.to_right[i - 1][i] = s.right;
  }
  for (int d = 2; d <= n; ++d)
    for (int i = 0; i + d <= n; ++i) {
      int j = i + d;
      auto pb = b.pullback(f.to_right[i][j - 1], f.to_left[i + 1][j]);
      if (!pb)
        throw SetupViolation("lambda_to_sigma: pullback at (" + std::to_string(i) + "," + std::to_string(j) +
                             ") does not exist");
      f.obj[i][j] = pb->apex;
      f.to_left[i][j] = pb->p1;
      f.to_right[i][j] = pb->p2;
      if (!b.in_e(pb->p2)) throw SetupViolation("lambda_to_sigma: base change left E");
    }
  return f;
}

// ---------------------------------------------------------------------------------------------
// Descent index categories

enum class DescentKind { DeltaI, PI };

struct DescentIndex {
  DescentKind kind = DescentKind::DeltaI;
  int index_size = 0;
  int truncation = 0;
  CategoryPtr category;
  // Δ_I: ([n], i•); P_I: the subset as a sorted list.
  std::vector<std::vector<int>> labels;
  std::vector<int> level;                     // n for Δ_I, |J|-1 for P_I
  std::vector<std::vector<int>> morphism_map; // α for Δ_I, positions of J in J' for P_I
};
DescentIndex descent_index(int index_size, DescentKind kind, int truncation);

// The functor to cover powers: object ↦ U_{i0} ×_U ... ×_U U_{in}, morphism α ↦ the projection
// U_{target} -> U_{source}.
struct CoverPowers {
  std::vector<ChainPtr> powers;  // per object of the index category
  std::vector<FunctorPtr> maps;  // per morphism
};
CoverPowers attach_cover(const DescentIndex& idx, const std::vector<FunctorPtr>& cover);
ValidationReport check_cover_powers(const DescentIndex& idx, const CoverPowers& cp);

// ---------------------------------------------------------------------------------------------
// Grothendieck descent for a cover f: Y -> X of groupoids

// α at a level-1 object (y0, y1, φ: f y0 -> f y1) maps M(y1) -> M(y0).
struct DescentDatum {
  Sheaf m;
  SheafMap alpha;
};

class DescentCategory {
 public:
  DescentCategory(const FunctorPtr& f, Field k);

  const FunctorPtr& cover() const { return f_; }
  Field field() const { return k_; }
  const TruncatedSimplicialGroupoid& nerve() const { return nerve_; }

  // Empty report iff α is an isomorphism d0*M -> d1*M satisfying d1*α = d2*α ∘ d0*α exactly.
  ValidationReport validate(const DescentDatum& d) const;
  // φ: M1 -> M2 with d1*φ ∘ α1 = α2 ∘ d0*φ.
  bool is_morphism(const DescentDatum& a, const DescentDatum& b, const SheafMap& phi) const;
  std::vector<SheafMap> hom_space(const DescentDatum& a, const DescentDatum& b) const;

  // (f*N, N(φ⁻¹)).
  DescentDatum comparison(const Sheaf& n) const;
  SheafMap comparison_map(const SheafMap& phi) const { return pullback_map(f_, phi); }

  // Glues a datum to a sheaf N on X together with an isomorphism f*N -> M of descent data.
  struct Descended {
    Sheaf n;
    SheafMap iso;
  };
  Descended descend(const DescentDatum& d) const;

  // Replaces M by g M g⁻¹ objectwise for invertible g.
  DescentDatum twist(const DescentDatum& d, const std::vector<Matrix>& g) const;

 private:
  FunctorPtr f_;
  Field k_;
  TruncatedSimplicialGroupoid nerve_;
  std::vector<int> cover_object_;  // per component of X, an object of Y over it
};

struct DescentCertificate {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  int objects_checked = 0;
  int data_checked = 0;
  std::string detail;
  bool ok() const { return fully_faithful && essentially_surjective; }
};
// Fully faithful on simple summands of the regular sheaves plus random sheaves (hom dimensions agree
// and the induced map is injective); every twisted random datum descends.
DescentCertificate descent_comparison(const FunctorPtr& f, Field k, std::mt19937_64& rng, int samples = 3);

}  // namespace sixff
