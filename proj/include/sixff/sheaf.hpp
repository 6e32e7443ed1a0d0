#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sixff/category.hpp"
#include "sixff/matrix.hpp"

namespace sixff {

// Functor from a finite groupoid to finite-dimensional vector spaces; mat[m] is dim(tgt) x dim(src).
struct Sheaf {
  GroupoidPtr base;
  Field k;
  std::vector<int> dim;
  std::vector<Matrix> mat;
  int total_dim() const;
};

// Per-object components of a morphism of sheaves.
struct SheafMap {
  std::vector<Matrix> comp;
};

class GateViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a canonical comparison that must be invertible is not.
class TheoremViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool gate_holds(const FiniteCategory& x, Field k);
void require_gate(const FiniteCategory& x, Field k);

Sheaf unit_sheaf(const GroupoidPtr& x, Field k);
Sheaf zero_sheaf(const GroupoidPtr& x, Field k);
// Builds a sheaf from matrices on the automorphism generators of each component representative
// (transport along the spanning tree is the identity); relations are checked.
Sheaf sheaf_from_generators(const GroupoidPtr& x, Field k, const std::vector<int>& rep_dims,
                            const std::vector<std::vector<Matrix>>& gen_mats);
// Same, with matrices keyed by morphism for every aut generator and arbitrary tree transports.
Sheaf sheaf_from_aut_action(const GroupoidPtr& x, Field k, const std::vector<int>& rep_dims,
                            const std::vector<std::vector<Matrix>>& aut_mats,
                            const std::vector<Matrix>& tree_mats);
ValidationReport validate_sheaf(const Sheaf& m);

SheafMap identity_map(const Sheaf& m);
SheafMap zero_map(const Sheaf& m, const Sheaf& n);
SheafMap compose(const SheafMap& b, const SheafMap& a);  // b∘a
SheafMap add(const SheafMap& a, const SheafMap& b);
SheafMap scale(const SheafMap& a, const Scalar& s);
bool maps_equal(const SheafMap& a, const SheafMap& b);
bool is_morphism(const Sheaf& m, const Sheaf& n, const SheafMap& phi);
bool is_iso(const SheafMap& phi);
SheafMap inverse_map(const SheafMap& phi);
bool sheaves_equal(const Sheaf& a, const Sheaf& b);

// f*
Sheaf pullback_star(const FunctorPtr& f, const Sheaf& m);
SheafMap pullback_map(const FunctorPtr& f, const SheafMap& phi);
// Components M(α_y): F*M -> G*M for α: F ⇒ G.
SheafMap transport(const Sheaf& m, const NatTrans& alpha);

// Comma fibers of f over component representatives of the target.
struct FiberComponent {
  int y = 0;    // representative object of Y
  int phi = 0;  // f(y) -> x0
  std::vector<int> stabilizer;  // h in Aut(y) with f(h) = id
};
struct Fiber {
  FunctorPtr f;
  std::vector<std::vector<FiberComponent>> comps;  // indexed by target component
  // node (y, φ: f y -> x0) with φ at position p of hom(f y, x0): node_comp[y][p], node_kappa[y][p]: y -> y_c
  std::vector<std::vector<int>> node_comp, node_kappa;
  int locate(int y, int phi, int* kappa) const;
};
std::shared_ptr<const Fiber> fiber_of(const FunctorPtr& f);

// f_! (colimits, via coinvariants) or f_* (limits, via invariants).
struct Pushforward {
  FunctorPtr f;
  Sheaf value;
  bool shriek = true;
  struct Block {
    Matrix e, B, L;
    int offset = 0;
  };
  std::vector<std::vector<Block>> blocks;  // [target component][fiber component]
};
Pushforward lan_shriek(const FunctorPtr& f, const Sheaf& m);
Pushforward ran_star(const FunctorPtr& f, const Sheaf& m);
SheafMap lan_map(const Pushforward& src, const Pushforward& tgt, const SheafMap& phi);
SheafMap ran_map(const Pushforward& src, const Pushforward& tgt, const SheafMap& phi);
Sheaf lower_shriek(const FunctorPtr& f, const Sheaf& m);
Sheaf lower_star(const FunctorPtr& f, const Sheaf& m);
SheafMap lower_shriek_map(const FunctorPtr& f, const Sheaf& a, const Sheaf& b, const SheafMap& phi);
SheafMap lower_star_map(const FunctorPtr& f, const Sheaf& a, const Sheaf& b, const SheafMap& phi);

SheafMap lan_unit(const FunctorPtr& f, const Sheaf& m);    // M -> f* f_! M
SheafMap lan_counit(const FunctorPtr& f, const Sheaf& n);  // f_! f* N -> N
SheafMap ran_unit(const FunctorPtr& f, const Sheaf& n);    // N -> f_* f* N
SheafMap ran_counit(const FunctorPtr& f, const Sheaf& m);  // f* f_* M -> M
// Adjuncts: ψ: A -> f*B gives f_!A -> B; ψ: f*A -> B gives A -> f_*B.
SheafMap lan_adjunct(const FunctorPtr& f, const Sheaf& a, const Sheaf& b, const SheafMap& psi);
SheafMap ran_adjunct(const FunctorPtr& f, const Sheaf& a, const Sheaf& b, const SheafMap& psi);

struct AdjunctionWitness {
  std::string left, right;
  SheafMap unit;    // at the supplied source object
  SheafMap counit;  // at the supplied target object
  bool triangle_left = false;   // (ε L)∘(L η) = id
  bool triangle_right = false;  // (R ε)∘(η R) = id
  bool ok() const { return triangle_left && triangle_right; }
};
AdjunctionWitness lan_witness(const FunctorPtr& f, const Sheaf& m, const Sheaf& n);
AdjunctionWitness ran_witness(const FunctorPtr& f, const Sheaf& n, const Sheaf& m);

// f_! M -> f_* M, orbit sums over the fiber stabilizers.
SheafMap norm_map(const FunctorPtr& f, const Sheaf& m);

// f^! := f*; witness for f_! ⊣ f^!.
Sheaf upper_shriek(const FunctorPtr& f, const Sheaf& m);
AdjunctionWitness shriek_witness(const FunctorPtr& f, const Sheaf& m, const Sheaf& n);
// f_* ⊣ f^* assembled from the f_! ⊣ f^* witness and the norm isomorphism.
AdjunctionWitness ambidextrous_witness(const FunctorPtr& f, const Sheaf& m, const Sheaf& n);

Sheaf tensor(const Sheaf& m, const Sheaf& n);
SheafMap tensor_map(const SheafMap& a, const SheafMap& b);
// Hom(M(x), N(x)) vectorized row-major.
Sheaf internal_hom(const Sheaf& m, const Sheaf& n);
// α: M' -> M, β: N -> N' induce iHom(M, N) -> iHom(M', N').
SheafMap ihom_map(const SheafMap& alpha, const Sheaf& m_src, const Sheaf& m_tgt, const SheafMap& beta,
                  const Sheaf& n_src, const Sheaf& n_tgt);
SheafMap evaluation(const Sheaf& m, const Sheaf& n);  // iHom(M,N) ⊗ M -> N
// φ: A ⊗ B -> C gives A -> iHom(B, C).
SheafMap curry(const SheafMap& phi, const Sheaf& a, const Sheaf& b, const Sheaf& c);
SheafMap uncurry(const SheafMap& psi, const Sheaf& b, const Sheaf& c);
SheafMap tensor_swap(const Sheaf& m, const Sheaf& n);  // M ⊗ N -> N ⊗ M
Sheaf dual(const Sheaf& m);
AdjunctionWitness tensor_witness(const Sheaf& m, const Sheaf& a, const Sheaf& n);

// g_! f_! M -> (g∘f)_! M.
SheafMap composition_map(const FunctorPtr& f, const FunctorPtr& g, const Sheaf& m);
// For the iso-comma square of f: Y -> X and g: X' -> X with f' = pX, g' = pY:
// f'_! g'* M -> g* f_! M.
SheafMap base_change_map(const IsoComma& sq, const FunctorPtr& f, const FunctorPtr& g, const Sheaf& m);
// f_!(f*M ⊗ N) -> M ⊗ f_!N.
SheafMap projection_map(const FunctorPtr& f, const Sheaf& m, const Sheaf& n);
// iHom(f_!N, M) -> f_* iHom(N, f^!M).
SheafMap hom_projection_map(const FunctorPtr& f, const Sheaf& n, const Sheaf& m);

struct Certificate {
  bool ok = false;
  std::string detail;
};
Certificate verify_base_change(const IsoComma& sq, const FunctorPtr& f, const FunctorPtr& g, const Sheaf& m);
Certificate verify_projection_formula(const FunctorPtr& f, const Sheaf& m, const Sheaf& n);

struct GlobalSections {
  int gamma_dim = 0;
  int gamma_c_dim = 0;
  Sheaf gamma, gamma_c;
};
GlobalSections global_sections(const Sheaf& m);

std::vector<SheafMap> hom_space(const Sheaf& m, const Sheaf& n);
int hom_dim(const Sheaf& m, const Sheaf& n);
// Semisimple criterion plus an explicit isomorphism from random combinations of a Hom basis.
std::optional<SheafMap> find_isomorphism(const Sheaf& m, const Sheaf& n, std::mt19937_64& rng);
bool is_isomorphic(const Sheaf& m, const Sheaf& n);

Matrix random_matrix(int rows, int cols, Field k, std::mt19937_64& rng, int bound = 2);
Matrix random_invertible(int n, Field k, std::mt19937_64& rng);
// Random sheaf: per component a sum of conjugated permutation representations on cosets.
Sheaf random_sheaf(const GroupoidPtr& x, Field k, std::mt19937_64& rng, int max_dim = 4);
SheafMap random_map(const Sheaf& m, const Sheaf& n, std::mt19937_64& rng);

// Decomposition of a sheaf on a connected groupoid into summands split by rational eigenvalues of
// endomorphisms; summands with one-dimensional endomorphism rings are absolutely simple.
std::vector<Sheaf> simple_summands(const Sheaf& m);
// Sub-sheaf given by a basis of an invariant subspace at each object.
Sheaf restrict_to(const Sheaf& m, const std::vector<Matrix>& bases);

std::string describe(const Sheaf& m);

}  // namespace sixff
