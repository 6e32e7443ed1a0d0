#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sixff/category.hpp"
#include "sixff/matrix.hpp"
#include "sixff/sheaf.hpp"

namespace sixff {

struct DoubleCoset {
  int rep = 0;                 // minimal element of HgK
  int size = 0;
  int intersection_order = 0;  // |H ∩ gKg⁻¹|
};
struct DoubleCosetTable {
  std::vector<DoubleCoset> cosets;
  std::vector<int> index_of;  // element -> coset
  // The components of */H ×_{*/G} */K and their automorphism orders match the cosets.
  bool oracle_agrees = false;
  std::string detail;
};
DoubleCosetTable double_cosets(const FiniteGroup& g, const std::vector<int>& h, const std::vector<int>& k);

// Group structure read off a delooping */G: elements are morphisms in index order.
struct GroupView {
  GroupoidPtr bg;
  int order() const { return bg->num_morphisms(); }
  int mul(int a, int b) const { return bg->compose_or_throw(a, b); }
  int inv(int a) const { return bg->inverse(a); }
  int identity() const { return bg->identity(0); }
};

// cInd_K^G V = {F: G -> V | F(kg) = kF(g)} with G acting by right translation.
struct CompactInduction {
  FunctorPtr inc;  // */K -> */G
  Sheaf v, sheaf;
  std::vector<int> coset_reps;  // minimal representatives of the right cosets Kx
  Matrix functions;             // basis functions as columns of V^G, entry (g, i) at g*dim V + i
  Matrix coords;                // left inverse of functions
  SheafMap from_shriek;         // inc_! V -> cInd V, adjunct of v -> [1, v]
  // [1, v]: supported on K with value kv at k.
  Matrix delta(const Matrix& v) const;
};
CompactInduction compact_induction(const FunctorPtr& inc, const Sheaf& v);

// H(G, K, V) = End_G(cInd V) in two models.
struct HeckeAlgebra {
  CompactInduction ind;
  int dim = 0;
  int identity = 0;              // index of T_e
  std::vector<int> basis_coset;  // double coset representative supporting each basis function
  // Model B: bi-equivariant functions G -> End(V), entry (g, r, c) at (g*d + r)*d + c.
  std::vector<Matrix> functions;
  Matrix function_coords;        // left inverse of the stacked basis functions
  std::vector<std::vector<Matrix>> structure;  // T_i T_j as a coordinate column
  // Model A: intertwiners of cInd V, and the map T -> [g -> [v -> T([1,v])(g)]] in model B coordinates.
  std::vector<Matrix> endomorphisms;
  Matrix a_to_b;
  bool associative = false, unital = false, bi_equivariant = false, models_isomorphic = false;
  std::string detail;
};
HeckeAlgebra hecke_algebra(const FunctorPtr& inc, const Sheaf& v);

// (f1 * f2)(g) = Σ_{x ∈ K\G} f1(gx⁻¹) f2(x), on function vectors.
Matrix convolve(const HeckeAlgebra& h, const Matrix& f1, const Matrix& f2);
Matrix hecke_multiply(const HeckeAlgebra& h, const Matrix& a, const Matrix& b);  // coordinates
Matrix basis_vector(const HeckeAlgebra& h, int i);
// Model A endomorphism for a coordinate vector and back.
Matrix to_endomorphism(const HeckeAlgebra& h, const Matrix& a);
Matrix from_endomorphism(const HeckeAlgebra& h, const Matrix& t);

class HeckePrecondition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ι(f)(g) = f(g⁻¹)ᵀ on functions. For orthogonal weights ρ(k)ᵀ = ρ(k⁻¹) this is an element of
// the same algebra; otherwise it lands in H(G, K, V*) and only the function is returned.
Matrix dual_weight_function(const HeckeAlgebra& h, const Matrix& f);
Matrix anti_involution(const HeckeAlgebra& h, const Matrix& a);  // coordinates
struct InvolutionCertificate {
  bool anti_multiplicative = false;  // ι(ab) = ι(b)ι(a) on basis pairs
  bool involutive = false;
  bool fixes_identity = false;
  bool coset_rule = false;  // ι(T_w) = T_{w⁻¹} on a weight-1 coset basis
  std::vector<Matrix> images;
  bool ok() const { return anti_multiplicative && involutive && fixes_identity && coset_rule; }
};
InvolutionCertificate involution_certificate(const HeckeAlgebra& h);

// Transports T ∈ End(cInd 1) to θ∘D(T)∘θ⁻¹ using the prim duality of cInd 1 over */G -> *,
// the mate of T under that adjunction, and the identification DPrim(cInd 1) ≅ cInd 1.
class HeckeAlarm : public std::runtime_error {
 public:
  HeckeAlarm(const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage(stage) {}
  std::string stage;
};
struct PrimHeckeComparison {
  std::vector<Matrix> prim_images, iota_images;  // coordinates, per basis element
  bool agrees = false;
};
PrimHeckeComparison prim_duality_on_hecke(const FunctorPtr& inc, Field k);

struct FrobeniusCheck {
  int lhs = 0, rhs = 0;  // dim Hom_G(cInd V, W), dim Hom_K(V, Res W)
  bool ok() const { return lhs == rhs; }
};
FrobeniusCheck frobenius_check(const FunctorPtr& inc, const Sheaf& v, const Sheaf& w);

}  // namespace sixff
