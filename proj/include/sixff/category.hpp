#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sixff {

struct Violation {
  std::string code;
  std::string detail;
};
using ValidationReport = std::vector<Violation>;

// Malformed input (dangling identifiers, ragged tables); distinct from axiom violations.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VecHash {
  size_t operator()(const std::vector<int>& v) const noexcept {
    size_t h = v.size();
    for (int x : v) h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct MorphismInfo {
  int src = 0;
  int tgt = 0;
  std::string name;
};

class FiniteCategory;
using CategoryPtr = std::shared_ptr<const FiniteCategory>;
using GroupoidPtr = CategoryPtr;

class FiniteCategory {
 public:
  using ComposeRule = std::function<int(int g, int f)>;

  FiniteCategory(std::vector<std::string> objects, std::vector<MorphismInfo> morphisms,
                 std::vector<int> identity);

  // Composition from an explicit table keyed by (g, f); entries for non-composable pairs are allowed
  // here so that validate_category can report them.
  void set_table(std::unordered_map<std::uint64_t, int> table);
  void set_rule(ComposeRule rule);
  void set_inverse(std::vector<int> inverse);
  // Builds hom lists, name lookups and (for groupoids) component data. Call once.
  void finalize();

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object_name(int o) const { return objects_.at(o); }
  const std::string& morphism_name(int m) const { return morphisms_.at(m).name; }
  int object_index(const std::string& name) const;
  int morphism_index(const std::string& name) const;
  int src(int m) const { return morphisms_[m].src; }
  int tgt(int m) const { return morphisms_[m].tgt; }
  int identity(int o) const { return identity_[o]; }
  bool is_identity(int m) const { return identity_[src(m)] == m; }

  // g∘f; throws if not composable, returns -1 if the table has no entry.
  int compose(int g, int f) const;
  int compose_or_throw(int g, int f) const;
  bool has_table() const { return !table_.empty() || !rule_; }
  const std::unordered_map<std::uint64_t, int>& table() const { return table_; }

  bool is_groupoid() const { return groupoid_; }
  int inverse(int m) const;

  const std::vector<int>& hom(int a, int b) const;
  const std::vector<int>& out(int a) const { return out_[a]; }
  int hom_position(int m) const { return hom_pos_[m]; }

  // Groupoid structure (valid only for groupoids).
  int component_of(int o) const { return comp_[o]; }
  int num_components() const { return static_cast<int>(comp_rep_.size()); }
  int component_rep(int c) const { return comp_rep_[c]; }
  // Morphism rep -> o inside its component.
  int tree(int o) const { return tree_[o]; }
  const std::vector<int>& aut_generators(int c) const { return aut_gens_[c]; }
  // Closed-under-inverse generating morphisms leaving o.
  const std::vector<int>& out_generators(int o) const { return out_gens_[o]; }

  std::string label;

 private:
  std::vector<std::string> objects_;
  std::vector<MorphismInfo> morphisms_;
  std::vector<int> identity_;
  std::vector<int> inverse_;
  bool groupoid_ = false;
  std::unordered_map<std::uint64_t, int> table_;
  ComposeRule rule_;

  std::unordered_map<std::string, int> obj_by_name_, mor_by_name_;
  std::unordered_map<std::uint64_t, std::vector<int>> hom_;
  std::vector<std::vector<int>> out_;
  std::vector<int> hom_pos_;
  std::vector<int> comp_, comp_rep_, tree_;
  std::vector<std::vector<int>> aut_gens_, out_gens_;
  bool finalized_ = false;
};

inline std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

// Incremental construction of a table-composed category.
class CategoryBuilder {
 public:
  int add_object(const std::string& name);
  int add_morphism(const std::string& name, int src, int tgt);
  void set_identity(int obj, int m);
  int add_identity(int obj);  // adds "id_<obj>" and registers it
  void set_compose(int g, int f, int gf);
  void set_inverse(int m, int inv);
  // Fills composites of identities automatically.
  CategoryPtr build(const std::string& label, bool groupoid);

 private:
  std::vector<std::string> objects_;
  std::vector<MorphismInfo> morphisms_;
  std::vector<int> identity_;
  std::unordered_map<std::uint64_t, int> table_;
  std::vector<int> inverse_;
};

ValidationReport validate_category(const FiniteCategory& c);

// ----------------------------------------------------------------------------------------------
// Finite groups

class FiniteGroup {
 public:
  // Checks closure, associativity, identity and inverses; throws std::invalid_argument naming the axiom.
  static FiniteGroup from_table(std::vector<std::vector<int>> mul, std::vector<std::string> names = {});
  // Closes the generated permutation group; elements sorted lexicographically (identity first).
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators, int degree);
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);
  static FiniteGroup dihedral(int n);  // order 2n
  static FiniteGroup quaternion();
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return static_cast<int>(mul_.size()); }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return e_; }
  const std::string& name(int a) const { return names_[a]; }
  int element_by_name(const std::string& s) const;
  int element_order(int a) const;
  // Permutation images (empty unless built from permutations).
  const std::vector<std::vector<int>>& permutations() const { return perms_; }

  // Subgroup generated by the given elements, as a sorted element list.
  std::vector<int> closure(const std::vector<int>& gens) const;
  bool is_subgroup(const std::vector<int>& elems) const;
  std::vector<std::vector<int>> all_subgroups() const;
  std::vector<std::vector<int>> subgroups_up_to_conjugacy() const;
  FiniteGroup subgroup(const std::vector<int>& elems) const;
  std::vector<int> small_generating_set() const;

  std::string label;

 private:
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  int e_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> perms_;
  void derive();
};

std::string cycle_notation(const std::vector<int>& perm);
std::vector<int> parse_cycles(const std::string& text, int degree);

// Group isomorphism by generator-image search; returns the element map when one exists.
std::optional<std::vector<int>> group_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

// ----------------------------------------------------------------------------------------------
// Functors and natural transformations

struct Functor {
  CategoryPtr src, tgt;
  std::vector<int> obj, mor;
  std::string label;
};
using FunctorPtr = std::shared_ptr<const Functor>;

FunctorPtr make_functor(CategoryPtr src, CategoryPtr tgt, std::vector<int> obj, std::vector<int> mor,
                        std::string label = "");
FunctorPtr identity_functor(const CategoryPtr& c);
FunctorPtr compose_functors(const FunctorPtr& g, const FunctorPtr& f);  // g∘f
FunctorPtr constant_functor(const CategoryPtr& src, const CategoryPtr& tgt, int object);
bool functors_equal(const Functor& a, const Functor& b);
ValidationReport validate_functor(const Functor& f);

// Components F(y) -> G(y) in the common target.
struct NatTrans {
  FunctorPtr F, G;
  std::vector<int> comp;
};
ValidationReport validate_nat_trans(const NatTrans& t);
NatTrans identity_nat(const FunctorPtr& F);
NatTrans inverse_nat(const NatTrans& t);
NatTrans vcompose_nat(const NatTrans& b, const NatTrans& a);  // b∘a
// (t * h): F∘h ⇒ G∘h
NatTrans whisker_right(const NatTrans& t, const FunctorPtr& h);
// (h * t): h∘F ⇒ h∘G
NatTrans whisker_left(const FunctorPtr& h, const NatTrans& t);

// ----------------------------------------------------------------------------------------------
// Constructions

GroupoidPtr point_groupoid();
GroupoidPtr discrete_groupoid(const std::vector<std::string>& names, const std::string& label = "");
GroupoidPtr discrete_groupoid(int n, const std::string& label = "");
GroupoidPtr delooping(const FiniteGroup& g, const std::string& label = "");
GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& parts, const std::string& label = "");
FunctorPtr to_point(const GroupoidPtr& x);
// Delooping functor of a group homomorphism given on elements.
FunctorPtr delooping_map(const GroupoidPtr& h, const GroupoidPtr& g, const std::vector<int>& hom);

struct ActionGroupoid {
  GroupoidPtr groupoid;
  FunctorPtr to_bg;  // X//G -> */G
  GroupoidPtr bg;
};
// act[g][x] = g·x; checks the action axioms.
ActionGroupoid action_groupoid(const FiniteGroup& g, const std::vector<std::vector<int>>& act,
                               const std::vector<std::string>& points);

// Iterated iso-comma product over S of maps p_i: X_i -> S in chain form: objects
// (x_0..x_n, φ_1..φ_n) with φ_i: p_{i-1}(x_{i-1}) -> p_i(x_i).
struct ChainProduct {
  GroupoidPtr groupoid;
  std::vector<FunctorPtr> maps;
  std::vector<FunctorPtr> proj;
  std::vector<std::vector<int>> obj_x, obj_phi;  // per object
  std::vector<std::vector<int>> mor_a;           // per morphism
  std::unordered_map<std::vector<int>, int, VecHash> obj_index;

  int find_object(const std::vector<int>& xs, const std::vector<int>& phis) const;
  int length() const { return static_cast<int>(maps.size()) - 1; }
  int morphism_of(int src, const std::vector<int>& as) const;

  // Functor P_n -> P_m choosing coordinates sel (increasing indices; φ's composed between them).
  FunctorPtr projection(const std::vector<int>& sel, const std::shared_ptr<const ChainProduct>& target) const;

  std::unordered_map<std::vector<int>, int, VecHash> mor_index;
};
using ChainPtr = std::shared_ptr<const ChainProduct>;

// Cached by the identity of the map pointers.
ChainPtr chain_product(const std::vector<FunctorPtr>& maps);

struct IsoComma {
  ChainPtr chain;
  GroupoidPtr groupoid;
  FunctorPtr pY, pX;  // projections
  NatTrans alpha;     // f∘pY ⇒ g∘pX with components φ
};
// Objects (y, x, φ: f(y) -> g(x)).
IsoComma iso_comma_pullback(const FunctorPtr& f, const FunctorPtr& g);

struct ComponentInfo {
  int rep;
  std::vector<int> members;
  FiniteGroup aut;  // elements are the endomorphisms of rep, in hom order
  std::vector<int> aut_morphisms;
};
std::vector<ComponentInfo> pi0_and_aut(const FiniteCategory& x);
int automorphism_order(const FiniteCategory& x, int obj);

struct Skeleton {
  GroupoidPtr skeleton;
  FunctorPtr include;   // skeleton -> X
  FunctorPtr retract;   // X -> skeleton
  NatTrans unit;        // include∘retract ⇒ id_X
  NatTrans counit;      // retract∘include ⇒ id_skeleton (identity)
  bool verified = false;
};
Skeleton skeletalize(const GroupoidPtr& x);

struct EquivalenceResult {
  bool equivalent = false;
  std::string reason;
  std::vector<int> component_match;  // component of A -> component of B
};
EquivalenceResult groupoids_equivalent(const FiniteCategory& a, const FiniteCategory& b);

struct TruncatedSimplicialGroupoid {
  std::vector<GroupoidPtr> levels;
  std::vector<ChainPtr> chains;                        // chains[n] for n >= 1
  std::vector<std::vector<FunctorPtr>> faces;          // faces[n][i]: level n -> n-1
  std::vector<std::vector<FunctorPtr>> degeneracies;   // degeneracies[n][i]: level n -> n+1
  ValidationReport check_identities() const;
};
TruncatedSimplicialGroupoid cech_nerve(const FunctorPtr& f, int truncation = 3);

// Cartesian product groupoid X × Y (iso-comma over the point).
IsoComma product_groupoid(const GroupoidPtr& x, const GroupoidPtr& y);

}  // namespace sixff
