#pragma once

#include <random>
#include <string>
#include <vector>

#include "sixff/category.hpp"
#include "sixff/sheaf.hpp"

namespace sixff {

// An object X -> S of the kernel 2-category. Objects are identified by the map pointer.
struct KernelObject {
  FunctorPtr map;
  const GroupoidPtr& groupoid() const { return map->src; }
  const GroupoidPtr& base() const { return map->tgt; }
};
KernelObject kernel_object(const FunctorPtr& f);
// S -> S by a cached identity functor, so every use of S shares one object.
KernelObject base_object(const GroupoidPtr& s);

// D(X ×_S Y): chain product of (X -> S, Y -> S), target coordinate first.
struct KernelHom {
  KernelObject tgt, src;
  ChainPtr chain;
  const GroupoidPtr& groupoid() const { return chain->groupoid; }
  const FunctorPtr& to_tgt() const { return chain->proj[0]; }
  const FunctorPtr& to_src() const { return chain->proj[1]; }
};
KernelHom kernel_hom(const KernelObject& x, const KernelObject& y, Field k);

// A 1-morphism Y -> X: a sheaf on X ×_S Y acting D(Y) -> D(X).
struct Kernel {
  KernelObject tgt, src;
  Sheaf payload;
};
Kernel make_kernel(const KernelObject& x, const KernelObject& y, const Sheaf& payload);

Kernel kernel_compose(const Kernel& m, const Kernel& n);  // m∘n
Kernel kernel_identity(const KernelObject& x, Field k);
// Δ: X -> X ×_S X.
FunctorPtr kernel_diagonal(const KernelObject& x);

// 2-cells are sheaf maps between payloads.
SheafMap whisker_left(const Kernel& m, const Kernel& n, const Kernel& n2, const SheafMap& a);   // m∘n -> m∘n2
SheafMap whisker_right(const Kernel& m, const Kernel& m2, const SheafMap& a, const Kernel& n);  // m∘n -> m2∘n
SheafMap associator(const Kernel& m, const Kernel& n, const Kernel& l);  // (m∘n)∘l -> m∘(n∘l)
SheafMap left_unitor(const Kernel& m);   // id∘m -> m
SheafMap right_unitor(const Kernel& m);  // m∘id -> m

// f'_! g'* M -> g* f_! M for a strictly commuting square f∘g' = g∘f'.
SheafMap strict_base_change_map(const FunctorPtr& f, const FunctorPtr& g, const FunctorPtr& fp,
                                const FunctorPtr& gp, const Sheaf& m);
// f_!(N ⊗ f*M) -> f_!N ⊗ M.
SheafMap projection_map_right(const FunctorPtr& f, const Sheaf& m, const Sheaf& n);

// Ψ(M)(N) = π_X!(M ⊗ π_Y* N).
Sheaf psi_apply(const Kernel& m, const Sheaf& n);
// Ψ(m∘n) ≅ Ψ(m)∘Ψ(n) on each probe.
bool psi_coherent(const Kernel& m, const Kernel& n, const std::vector<Sheaf>& probes);

// A span A <- Z -> B of maps over S with strictly commuting legs.
struct KernelSpan {
  KernelObject a, b;
  FunctorPtr left, right;  // Z -> A, Z -> B
};
// The kernel A -> B given by c_!1 for c: Z -> B ×_S A.
Kernel phi(const KernelSpan& s, Field k);
// Explicit isomorphism Ψ(Φ(s))(N) -> right_! left* N.
SheafMap psi_phi_comparison(const KernelSpan& s, const Kernel& phi_s, const Sheaf& n);

// Leg swap: a kernel Y -> X becomes a kernel X -> Y.
Kernel kernel_swap(const Kernel& m);

// Kernel views of a sheaf P on X for f: X -> S.
Kernel sheaf_to_base(const KernelObject& x, const Sheaf& p);    // X -> S
Kernel sheaf_from_base(const KernelObject& x, const Sheaf& p);  // S -> X

// An adjunction left ⊣ right completed from a given counit: the unit is the unique solution of the
// first triangle identity, and the second identity is then checked.
struct KernelAdjunction {
  Kernel left, right;
  SheafMap unit, counit;
  bool triangle1 = false, triangle2 = false;
  std::string failure;
  bool ok() const { return triangle1 && triangle2; }
};
KernelAdjunction complete_adjunction(const Kernel& left, const Kernel& right, const SheafMap& counit);

enum class DualKind { Suave, Prim };

struct SuavePrimCertificate {
  DualKind kind = DualKind::Suave;
  Sheaf dual;  // on X
  KernelAdjunction adjunction;
  bool double_dual = false;  // D(D(P)) ≅ P
  bool ok() const { return adjunction.ok() && double_dual; }
};
Sheaf dsuave(const FunctorPtr& f, const Sheaf& p);  // iHom(P, f^!1)
Sheaf dprim(const FunctorPtr& f, const Sheaf& p);   // π2_* iHom(π1* P, Δ_!1)
SuavePrimCertificate suave_test(const FunctorPtr& f, const Sheaf& p);
SuavePrimCertificate prim_test(const FunctorPtr& f, const Sheaf& p);

struct EtaleProperReport {
  bool etale = false, proper = false;
  Sheaf omega, delta;  // f^!1 and the prim dual of 1
  bool omega_twist = false, delta_twist = false;
  std::string detail;
  bool ok() const { return etale && proper && omega_twist && delta_twist; }
};
EtaleProperReport etale_proper_test(const FunctorPtr& f, const std::vector<Sheaf>& probes_x,
                                    const std::vector<Sheaf>& probes_s);

// The eight comparison maps for the iso-comma square of f: Y -> X and g: X' -> X.
struct SquareComparison {
  std::string name;
  bool invertible = false;
};
std::vector<SquareComparison> base_change_suave_prim(const FunctorPtr& f, const FunctorPtr& g,
                                                     const std::vector<Sheaf>& probes_x,
                                                     const std::vector<Sheaf>& probes_y,
                                                     const std::vector<Sheaf>& probes_xp);

// Unit, one random sheaf and, on connected groupoids, the simple summands of the regular sheaf.
std::vector<Sheaf> default_probes(const GroupoidPtr& x, Field k, std::mt19937_64& rng, int max_dim = 3);

}  // namespace sixff
