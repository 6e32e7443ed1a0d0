#pragma once

#include <string>
#include <vector>

#include "sixff/category.hpp"
#include "sixff/sheaf.hpp"

namespace sixff {

// "s3", "s4", "d4", "q8", "c2", "c3", "c4", "c2xc4", "trivial".
FiniteGroup group_preset(const std::string& name);

// A group with its delooping, sharing one groupoid for all maps into it.
struct GroupContext {
  FiniteGroup group;
  GroupoidPtr bg;
  explicit GroupContext(FiniteGroup g);
  // */H -> */G for the subgroup with the given elements.
  FunctorPtr include(const std::vector<int>& sub) const;
  FunctorPtr point() const;  // * -> */G
  FiniteGroup subgroup(const std::vector<int>& sub) const { return group.subgroup(sub); }
};

GroupoidPtr finite_set(int n, const std::string& prefix = "p");
// Map of discrete groupoids given by images of points.
FunctorPtr set_map(const GroupoidPtr& x, const GroupoidPtr& y, const std::vector<int>& images);
// The inclusion of one object of X as a functor from the point.
FunctorPtr object_inclusion(const GroupoidPtr& x, int obj);

// Sheaf on */G from matrices of every group element (in group order).
Sheaf representation(const GroupoidPtr& bg, Field k, const std::vector<Matrix>& element_mats);
Sheaf trivial_rep(const GroupoidPtr& bg, Field k, int dim = 1);
// Permutation representation of a permutation group on its points.
Sheaf permutation_rep(const GroupoidPtr& bg, const FiniteGroup& g, Field k);
// Sign character of a permutation group.
Sheaf sign_rep(const GroupoidPtr& bg, const FiniteGroup& g, Field k);
// Sum-zero subrepresentation of the permutation representation.
Sheaf standard_rep(const GroupoidPtr& bg, const FiniteGroup& g, Field k);
Sheaf regular_rep(const GroupoidPtr& bg, const FiniteGroup& g, Field k);

}  // namespace sixff
