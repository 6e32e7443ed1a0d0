#include "sixff/presets.hpp"

#include <algorithm>
#include <stdexcept>

namespace sixff {

FiniteGroup group_preset(const std::string& name) {
  if (name == "s3") return FiniteGroup::symmetric(3);
  if (name == "s4") return FiniteGroup::symmetric(4);
  if (name == "d4") return FiniteGroup::dihedral(4);
  if (name == "q8") return FiniteGroup::quaternion();
  if (name == "c2") return FiniteGroup::cyclic(2);
  if (name == "c3") return FiniteGroup::cyclic(3);
  if (name == "c4") return FiniteGroup::cyclic(4);
  if (name == "c2xc4") return FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
  if (name == "trivial") return FiniteGroup::cyclic(1);
  throw std::invalid_argument("unknown group preset '" + name + "'");
}

GroupContext::GroupContext(FiniteGroup g) : group(std::move(g)), bg(delooping(group)) {}

FunctorPtr GroupContext::include(const std::vector<int>& sub) const {
  auto h = group.subgroup(sub);
  std::vector<int> sorted = sub;
  std::sort(sorted.begin(), sorted.end());
  return delooping_map(delooping(h), bg, sorted);
}

FunctorPtr GroupContext::point() const {
  return make_functor(point_groupoid(), bg, {0}, {group.identity()}, "pt");
}

GroupoidPtr finite_set(int n, const std::string& prefix) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + 1));
  return discrete_groupoid(names, "set" + std::to_string(n));
}

FunctorPtr set_map(const GroupoidPtr& x, const GroupoidPtr& y, const std::vector<int>& images) {
  std::vector<int> mor;
  for (int o = 0; o < x->num_objects(); ++o) mor.push_back(y->identity(images.at(o)));
  return make_functor(x, y, images, mor, "map");
}

FunctorPtr object_inclusion(const GroupoidPtr& x, int obj) {
  return make_functor(point_groupoid(), x, {obj}, {x->identity(obj)}, "incl");
}

Sheaf representation(const GroupoidPtr& bg, Field k, const std::vector<Matrix>& element_mats) {
  Sheaf s{bg, k, {element_mats.at(0).rows()}, element_mats};
  if (!validate_sheaf(s).empty()) throw std::invalid_argument("matrices do not form a representation");
  return s;
}

Sheaf trivial_rep(const GroupoidPtr& bg, Field k, int dim) {
  return representation(bg, k, std::vector<Matrix>(bg->num_morphisms(), Matrix::identity(dim, k)));
}

Sheaf permutation_rep(const GroupoidPtr& bg, const FiniteGroup& g, Field k) {
  std::vector<Matrix> mats;
  for (const auto& p : g.permutations()) {
    int n = static_cast<int>(p.size());
    Matrix m(n, n, k);
    for (int i = 0; i < n; ++i) m.at(p[i], i) = k.one();
    mats.push_back(m);
  }
  return representation(bg, k, mats);
}

Sheaf sign_rep(const GroupoidPtr& bg, const FiniteGroup& g, Field k) {
  std::vector<Matrix> mats;
  for (const auto& p : g.permutations()) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    Matrix m(1, 1, k);
    m.at(0, 0) = k.from_int(inv % 2 ? -1 : 1);
    mats.push_back(m);
  }
  return representation(bg, k, mats);
}

Sheaf standard_rep(const GroupoidPtr& bg, const FiniteGroup& g, Field k) {
  auto p = permutation_rep(bg, g, k);
  int n = p.dim[0];
  Matrix basis(n, n - 1, k);
  for (int j = 0; j + 1 < n; ++j) {
    basis.at(j, j) = k.one();
    basis.at(j + 1, j) = -k.one();
  }
  return restrict_to(p, {basis});
}

Sheaf regular_rep(const GroupoidPtr& bg, const FiniteGroup& g, Field k) {
  std::vector<Matrix> mats;
  int n = g.order();
  for (int a = 0; a < n; ++a) {
    Matrix m(n, n, k);
    for (int x = 0; x < n; ++x) m.at(g.mul(a, x), x) = k.one();
    mats.push_back(m);
  }
  return representation(bg, k, mats);
}

}  // namespace sixff
