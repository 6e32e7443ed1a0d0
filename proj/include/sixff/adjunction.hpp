#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "sixff/category.hpp"

namespace sixff {

struct Cell1 {
  int src = 0, tgt = 0;
  std::string name;
};
// A 2-cell between parallel 1-cells src ⇒ tgt.
struct Cell2 {
  int src = 0, tgt = 0;
  std::string name;
};

// A strict 2-category given by finite composition tables.
class StrictTwoCat {
 public:
  std::vector<std::string> objects;
  std::vector<Cell1> cells1;
  std::vector<Cell2> cells2;
  std::vector<int> id1;  // per object
  std::vector<int> id2;  // per 1-cell
  std::unordered_map<std::uint64_t, int> comp1;  // (g, f) -> g∘f
  std::unordered_map<std::uint64_t, int> vcomp;  // (β, α) -> β∘α
  std::unordered_map<std::uint64_t, int> hcomp;  // (β, α) -> β*α on composites

  // Builds hom indexes; call after filling the tables.
  void finalize();

  int compose1(int g, int f) const;
  int vcompose(int b, int a) const;
  int hcompose(int b, int a) const;
  // l∘α∘r for 1-cells l, r (either may be -1 for none).
  int whisker(int l, int a, int r) const;
  const std::vector<int>& hom1(int x, int y) const;
  const std::vector<int>& hom2(int f, int g) const;
  std::optional<int> inverse2(int a) const;

  // Associativity, units and the interchange law, exhaustively.
  ValidationReport validate() const;

 private:
  std::unordered_map<std::uint64_t, std::vector<int>> hom1_, hom2_;
  std::vector<int> empty_;
};

// The full sub-2-category of Cat on the given finite categories: all functors and all natural
// transformations.
StrictTwoCat functor_two_category(const std::vector<CategoryPtr>& cats);
// Picks three distinct categories from a fixed pool of small posets, discrete categories and B(Z/2)
// whose 2-cell sets have at most max_cells elements.
StrictTwoCat random_two_category(std::mt19937_64& rng, int num_objects = 3, int max_cells = 4);
std::vector<CategoryPtr> small_category_pool();

// Product 2-category and its projection onto the first factor (on cells).
struct ProductTwoCat {
  StrictTwoCat cat;
  std::vector<int> proj1_obj, proj1_cell1, proj1_cell2;
  std::vector<int> proj2_cell1, proj2_cell2;
};
ProductTwoCat product_two_category(const StrictTwoCat& a, const StrictTwoCat& b);

struct AdjunctionQuadruple {
  int f = 0;    // Y -> X
  int g = 0;    // X -> Y
  int eta = 0;  // id_Y ⇒ g∘f
  int eps = 0;  // f∘g ⇒ id_X
};

struct AdjunctionCheck {
  bool ok = false;
  std::string failing;  // "first triangle" or "second triangle"
};
// (εf)∘(fη) = id_f and (gε)∘(ηg) = id_g.
AdjunctionCheck verify_adjunction(const StrictTwoCat& c, const AdjunctionQuadruple& q);
// Composite f -> fgf -> f and g -> gfg -> g.
int triangle_left(const StrictTwoCat& c, const AdjunctionQuadruple& q);
int triangle_right(const StrictTwoCat& c, const AdjunctionQuadruple& q);

class PreconditionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replaces η by (θ⁻¹f)∘η where θ = (gε)∘(ηg); requires both composites invertible.
AdjunctionQuadruple upgrade_weak(const StrictTwoCat& c, const AdjunctionQuadruple& q);

// All adjunctions of the 2-category (every f, g, η, ε passing verify_adjunction).
std::vector<AdjunctionQuadruple> all_adjunctions(const StrictTwoCat& c);

// For adjunctions (f, u) : A ⇄ B and (f', u') : A' ⇄ B' and 1-cells a: A -> A', b: B -> B':
// ρ: Hom(f'a, bf) -> Hom(au, u'b) and λ back.
int mate_rho(const StrictTwoCat& c, const AdjunctionQuadruple& adj, const AdjunctionQuadruple& adj2, int a, int b,
             int phi);
int mate_lambda(const StrictTwoCat& c, const AdjunctionQuadruple& adj, const AdjunctionQuadruple& adj2, int a,
                int b, int psi);

struct MateReport {
  long squares = 0;
  long rho_lambda_checked = 0;  // ψ with ρ(λ(ψ)) compared
  long lambda_rho_checked = 0;
  long failures = 0;
  bool ok() const { return failures == 0; }
};
MateReport mate_bijection_exhaustive(const StrictTwoCat& c);

// (g2 ε1)∘(η2 g1): g1 ⇒ g2, with an invertibility certificate.
struct UniquenessResult {
  int cell = -1;
  bool invertible = false;
};
UniquenessResult adjoint_uniqueness(const StrictTwoCat& c, const AdjunctionQuadruple& q1,
                                    const AdjunctionQuadruple& q2);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PointwiseAudit {
  bool condition_a = false;  // every G_Z exists
  bool condition_b = false;  // G_X(id)∘f -> G_Y(f) bijective after Hom(id_Y, -)
  std::optional<int> right_adjoint;  // G_X(id_X) when it exists
  bool direct_search_found = false;  // an adjunction with left 1-cell f exists
  bool agrees = false;               // criterion verdict matches the direct search
  std::string detail;
};
// f: Y -> X. Right adjoints of f_* are found object by object via universal arrows; the
// search visits at most `budget` candidate (object, 2-cell) pairs.
PointwiseAudit pointwise_audit(const StrictTwoCat& c, int f, const std::vector<int>& test_objects,
                               long budget = 10000);

}  // namespace sixff
