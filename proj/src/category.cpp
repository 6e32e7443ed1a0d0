#include "sixff/category.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>

namespace sixff {

// ---------------------------------------------------------------------------------------------
// FiniteCategory

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<MorphismInfo> morphisms,
                               std::vector<int> identity)
    : objects_(std::move(objects)), morphisms_(std::move(morphisms)), identity_(std::move(identity)) {}

void FiniteCategory::set_table(std::unordered_map<std::uint64_t, int> table) { table_ = std::move(table); }
void FiniteCategory::set_rule(ComposeRule rule) { rule_ = std::move(rule); }
void FiniteCategory::set_inverse(std::vector<int> inverse) {
  inverse_ = std::move(inverse);
  groupoid_ = true;
}

void FiniteCategory::finalize() {
  if (finalized_) throw std::logic_error("category finalized twice");
  const int no = num_objects(), nm = num_morphisms();
  if (static_cast<int>(identity_.size()) != no) throw StructuralError("identity map is not total on objects");
  for (int m = 0; m < nm; ++m) {
    const auto& mi = morphisms_[m];
    if (mi.src < 0 || mi.src >= no || mi.tgt < 0 || mi.tgt >= no)
      throw StructuralError("morphism '" + mi.name + "' has a dangling endpoint");
  }
  for (int o = 0; o < no; ++o) {
    int id = identity_[o];
    if (id < 0 || id >= nm) throw StructuralError("identity of '" + objects_[o] + "' is not a morphism");
    if (morphisms_[id].src != o || morphisms_[id].tgt != o)
      throw StructuralError("identity of '" + objects_[o] + "' has wrong endpoints");
  }
  for (int o = 0; o < no; ++o)
    if (!obj_by_name_.emplace(objects_[o], o).second) throw StructuralError("duplicate object '" + objects_[o] + "'");
  for (int m = 0; m < nm; ++m)
    if (!mor_by_name_.emplace(morphisms_[m].name, m).second)
      throw StructuralError("duplicate morphism '" + morphisms_[m].name + "'");
  for (const auto& [k, v] : table_) {
    int g = static_cast<int>(k >> 32), f = static_cast<int>(k & 0xffffffffu);
    if (g < 0 || g >= nm || f < 0 || f >= nm || v < 0 || v >= nm)
      throw StructuralError("composition table references an unknown morphism");
  }
  if (groupoid_) {
    if (static_cast<int>(inverse_.size()) != nm) throw StructuralError("inverse map is not total");
    for (int v : inverse_)
      if (v < 0 || v >= nm) throw StructuralError("inverse map references an unknown morphism");
  }
  out_.assign(no, {});
  hom_pos_.assign(nm, 0);
  for (int m = 0; m < nm; ++m) {
    auto& h = hom_[pair_key(src(m), tgt(m))];
    hom_pos_[m] = static_cast<int>(h.size());
    h.push_back(m);
    out_[src(m)].push_back(m);
  }
  finalized_ = true;
  if (!groupoid_) return;

  // Components, spanning trees and small generating sets.
  comp_.assign(no, -1);
  tree_.assign(no, -1);
  for (int o = 0; o < no; ++o) {
    if (comp_[o] >= 0) continue;
    int c = static_cast<int>(comp_rep_.size());
    comp_rep_.push_back(o);
    comp_[o] = c;
    tree_[o] = identity_[o];
    std::deque<int> q{o};
    std::vector<int> members{o};
    while (!q.empty()) {
      int y = q.front();
      q.pop_front();
      for (int a : out_[y]) {
        int z = tgt(a);
        if (comp_[z] >= 0) continue;
        comp_[z] = c;
        int t = compose(a, tree_[y]);
        if (t < 0) throw StructuralError("composition table incomplete in groupoid '" + label + "'");
        tree_[z] = t;
        members.push_back(z);
        q.push_back(z);
      }
    }
    std::vector<int> gens;
    std::set<int> generated{identity_[o]};
    for (int m : hom(o, o)) {
      if (generated.count(m)) continue;
      gens.push_back(m);
      std::deque<int> frontier(generated.begin(), generated.end());
      while (!frontier.empty()) {
        int x = frontier.front();
        frontier.pop_front();
        for (int s : gens) {
          int y = compose(s, x);
          if (generated.insert(y).second) frontier.push_back(y);
        }
      }
    }
    aut_gens_.push_back(gens);
  }
  out_gens_.assign(no, {});
  for (int o = 0; o < no; ++o) {
    int c = comp_[o];
    int rep = comp_rep_[c];
    if (o != rep) {
      out_gens_[o].push_back(inverse(tree_[o]));
      continue;
    }
    std::set<int> s;
    for (int g : aut_gens_[c]) {
      s.insert(g);
      s.insert(inverse(g));
    }
    for (int z = 0; z < no; ++z)
      if (comp_[z] == c && z != rep) s.insert(tree_[z]);
    out_gens_[o].assign(s.begin(), s.end());
  }
}

int FiniteCategory::object_index(const std::string& name) const {
  auto it = obj_by_name_.find(name);
  return it == obj_by_name_.end() ? -1 : it->second;
}

int FiniteCategory::morphism_index(const std::string& name) const {
  auto it = mor_by_name_.find(name);
  return it == mor_by_name_.end() ? -1 : it->second;
}

int FiniteCategory::compose(int g, int f) const {
  if (tgt(f) != src(g))
    throw std::logic_error("compose: '" + morphism_name(g) + "' and '" + morphism_name(f) + "' are not composable");
  if (rule_) return rule_(g, f);
  auto it = table_.find(pair_key(g, f));
  return it == table_.end() ? -1 : it->second;
}

int FiniteCategory::compose_or_throw(int g, int f) const {
  int r = compose(g, f);
  if (r < 0) throw std::logic_error("compose: no table entry for (" + morphism_name(g) + ", " + morphism_name(f) + ")");
  return r;
}

int FiniteCategory::inverse(int m) const {
  if (!groupoid_) throw std::logic_error("inverse requested in a category that is not a groupoid");
  return inverse_[m];
}

const std::vector<int>& FiniteCategory::hom(int a, int b) const {
  static const std::vector<int> empty;
  auto it = hom_.find(pair_key(a, b));
  return it == hom_.end() ? empty : it->second;
}

// ---------------------------------------------------------------------------------------------
// CategoryBuilder

int CategoryBuilder::add_object(const std::string& name) {
  objects_.push_back(name);
  identity_.push_back(-1);
  return static_cast<int>(objects_.size()) - 1;
}

int CategoryBuilder::add_morphism(const std::string& name, int src, int tgt) {
  morphisms_.push_back({src, tgt, name});
  return static_cast<int>(morphisms_.size()) - 1;
}

void CategoryBuilder::set_identity(int obj, int m) { identity_.at(obj) = m; }

int CategoryBuilder::add_identity(int obj) {
  int m = add_morphism("id_" + objects_.at(obj), obj, obj);
  identity_[obj] = m;
  return m;
}

void CategoryBuilder::set_compose(int g, int f, int gf) { table_[pair_key(g, f)] = gf; }

void CategoryBuilder::set_inverse(int m, int inv) {
  if (inverse_.size() < morphisms_.size()) inverse_.resize(morphisms_.size(), -1);
  inverse_[m] = inv;
}

CategoryPtr CategoryBuilder::build(const std::string& label, bool groupoid) {
  for (size_t m = 0; m < morphisms_.size(); ++m) {
    int s = morphisms_[m].src, t = morphisms_[m].tgt;
    if (s < 0 || t < 0 || s >= static_cast<int>(objects_.size()) || t >= static_cast<int>(objects_.size()))
      throw StructuralError("morphism '" + morphisms_[m].name + "' has a dangling endpoint");
    if (identity_[t] >= 0) table_.emplace(pair_key(identity_[t], static_cast<int>(m)), static_cast<int>(m));
    if (identity_[s] >= 0) table_.emplace(pair_key(static_cast<int>(m), identity_[s]), static_cast<int>(m));
  }
  auto c = std::make_shared<FiniteCategory>(objects_, morphisms_, identity_);
  c->label = label;
  c->set_table(table_);
  if (groupoid) {
    inverse_.resize(morphisms_.size(), -1);
    for (int& v : inverse_)
      if (v < 0) throw StructuralError("groupoid '" + label + "' has a morphism without inverse");
    c->set_inverse(inverse_);
  }
  c->finalize();
  return c;
}

ValidationReport validate_category(const FiniteCategory& c) {
  ValidationReport rep;
  const int nm = c.num_morphisms();
  auto name = [&](int m) { return c.morphism_name(m); };
  for (const auto& [k, v] : c.table()) {
    int g = static_cast<int>(k >> 32), f = static_cast<int>(k & 0xffffffffu);
    if (c.tgt(f) != c.src(g))
      rep.push_back({"compose_not_composable", "(" + name(g) + ", " + name(f) + ") has an entry"});
  }
  for (int f = 0; f < nm; ++f)
    for (int g : c.out(c.tgt(f))) {
      int gf = c.compose(g, f);
      if (gf < 0) {
        rep.push_back({"compose_missing", "(" + name(g) + ", " + name(f) + ")"});
        continue;
      }
      if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g))
        rep.push_back({"compose_endpoints", "(" + name(g) + ", " + name(f) + ")"});
    }
  for (int m = 0; m < nm; ++m) {
    if (c.compose(c.identity(c.tgt(m)), m) != m) rep.push_back({"unit_left", name(m)});
    if (c.compose(m, c.identity(c.src(m))) != m) rep.push_back({"unit_right", name(m)});
  }
  if (!rep.empty()) return rep;
  for (int f = 0; f < nm; ++f)
    for (int g : c.out(c.tgt(f))) {
      int gf = c.compose(g, f);
      for (int h : c.out(c.tgt(g))) {
        int hg = c.compose(h, g);
        if (c.compose(h, gf) != c.compose(hg, f))
          rep.push_back({"associativity", "(" + name(h) + ", " + name(g) + ", " + name(f) + ")"});
      }
    }
  if (c.is_groupoid())
    for (int m = 0; m < nm; ++m) {
      int i = c.inverse(m);
      if (c.src(i) != c.tgt(m) || c.tgt(i) != c.src(m) || c.compose(i, m) != c.identity(c.src(m)) ||
          c.compose(m, i) != c.identity(c.tgt(m)))
        rep.push_back({"inverse", name(m)});
    }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Finite groups

std::string cycle_notation(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::string out;
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == static_cast<int>(i)) continue;
    out += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<size_t>(perm[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::vector<int> parse_cycles(const std::string& text, int degree) {
  std::vector<int> perm(degree);
  for (int i = 0; i < degree; ++i) perm[i] = i;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '(') {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      throw std::invalid_argument("bad cycle notation '" + text + "'");
    }
    size_t j = text.find(')', i);
    if (j == std::string::npos) throw std::invalid_argument("unclosed cycle in '" + text + "'");
    std::string body = text.substr(i + 1, j - i - 1);
    std::vector<int> cyc;
    bool spaced = body.find_first_of(" ,") != std::string::npos;
    if (spaced) {
      std::string tok;
      std::istringstream is(body);
      while (std::getline(is, tok, body.find(',') != std::string::npos ? ',' : ' '))
        if (!tok.empty()) cyc.push_back(std::stoi(tok) - 1);
    } else {
      for (char ch : body) cyc.push_back(ch - '1');
    }
    std::vector<int> cycle_perm(degree);
    for (int k = 0; k < degree; ++k) cycle_perm[k] = k;
    for (size_t k = 0; k < cyc.size(); ++k) {
      if (cyc[k] < 0 || cyc[k] >= degree) throw std::invalid_argument("point out of range in '" + text + "'");
      cycle_perm[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    // Cycles are applied right to left.
    std::vector<int> next(degree);
    for (int k = 0; k < degree; ++k) next[k] = perm[cycle_perm[k]];
    perm = next;
    i = j + 1;
  }
  return perm;
}

void FiniteGroup::derive() {
  int n = order();
  e_ = -1;
  for (int a = 0; a < n && e_ < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = mul_[a][b] == b && mul_[b][a] == b;
    if (ok) e_ = a;
  }
  if (e_ < 0) throw std::invalid_argument("group axiom 'identity' fails");
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mul_[a][b] == e_ && mul_[b][a] == e_) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] < 0) throw std::invalid_argument("group axiom 'inverse' fails for element " + names_[a]);
  }
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> mul, std::vector<std::string> names) {
  FiniteGroup g;
  int n = static_cast<int>(mul.size());
  if (n == 0) throw std::invalid_argument("group axiom 'nonempty' fails");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group axiom 'closure' fails: ragged table");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("group axiom 'closure' fails: entry out of range");
  }
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back("g" + std::to_string(i));
  g.mul_ = std::move(mul);
  g.names_ = std::move(names);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul_[g.mul_[a][b]][c] != g.mul_[a][g.mul_[b][c]])
          throw std::invalid_argument("group axiom 'associativity' fails at (" + g.names_[a] + ", " + g.names_[b] +
                                      ", " + g.names_[c] + ")");
  g.derive();
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators, int degree) {
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::set<std::vector<int>> elems{id};
  std::deque<std::vector<int>> q{id};
  for (const auto& s : generators) {
    if (static_cast<int>(s.size()) != degree) throw std::invalid_argument("generator of wrong degree");
    std::vector<bool> hit(degree, false);
    for (int v : s) {
      if (v < 0 || v >= degree || hit[v]) throw std::invalid_argument("generator is not a permutation");
      hit[v] = true;
    }
  }
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (const auto& s : generators) {
      std::vector<int> y(degree);
      for (int i = 0; i < degree; ++i) y[i] = s[x[i]];
      if (elems.insert(y).second) q.push_back(y);
    }
  }
  FiniteGroup g;
  g.perms_.assign(elems.begin(), elems.end());
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < g.perms_.size(); ++i) index[g.perms_[i]] = static_cast<int>(i);
  int n = static_cast<int>(g.perms_.size());
  g.mul_.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> ab(degree);
      for (int i = 0; i < degree; ++i) ab[i] = g.perms_[a][g.perms_[b][i]];
      g.mul_[a][b] = index.at(ab);
    }
  for (const auto& p : g.perms_) g.names_.push_back(cycle_notation(p));
  g.derive();
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<int> r(n);
  for (int i = 0; i < n; ++i) r[i] = (i + 1) % n;
  auto g = from_permutations({r}, n);
  g.label = "C" + std::to_string(n);
  return g;
}

FiniteGroup FiniteGroup::symmetric(int n) {
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> t(n), r(n);
    for (int i = 0; i < n; ++i) t[i] = i, r[i] = (i + 1) % n;
    std::swap(t[0], t[1]);
    gens = {t, r};
  }
  auto g = from_permutations(gens, std::max(n, 1));
  g.label = "S" + std::to_string(n);
  return g;
}

FiniteGroup FiniteGroup::dihedral(int n) {
  std::vector<int> r(n), s(n);
  for (int i = 0; i < n; ++i) r[i] = (i + 1) % n, s[i] = (n - i) % n;
  auto g = from_permutations({r, s}, n);
  g.label = "D" + std::to_string(n);
  return g;
}

FiniteGroup FiniteGroup::quaternion() {
  // Elements 1, -1, i, -i, j, -j, k, -k encoded as (sign, unit) with unit in {1, i, j, k}.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const std::vector<std::string> names = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  std::vector<std::vector<int>> mul(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, ub = b / 2;
      int sa = a % 2 ? -1 : 1, sb = b % 2 ? -1 : 1;
      int u = unit_mul[ua][ub];
      int s = sa * sb * unit_sign[ua][ub];
      mul[a][b] = 2 * u + (s < 0 ? 1 : 0);
    }
  auto g = from_table(mul, names);
  g.label = "Q8";
  return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> mul(na * nb, std::vector<int>(na * nb));
  std::vector<std::string> names;
  for (int x = 0; x < na * nb; ++x) {
    names.push_back("(" + a.name(x / nb) + "," + b.name(x % nb) + ")");
    for (int y = 0; y < na * nb; ++y) mul[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  auto g = from_table(mul, names);
  g.label = a.label + "x" + b.label;
  return g;
}

int FiniteGroup::element_by_name(const std::string& s) const {
  for (int i = 0; i < order(); ++i)
    if (names_[i] == s) return i;
  if (!perms_.empty()) {
    auto p = parse_cycles(s, static_cast<int>(perms_[0].size()));
    for (int i = 0; i < order(); ++i)
      if (perms_[i] == p) return i;
  }
  throw std::invalid_argument("no group element named '" + s + "'");
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != e_; x = mul_[x][a]) ++k;
  return k;
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& gens) const {
  std::set<int> s{e_};
  std::deque<int> q{e_};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int g : gens) {
      int y = mul_[x][g];
      if (s.insert(y).second) q.push_back(y);
    }
  }
  return {s.begin(), s.end()};
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
  std::set<int> s(elems.begin(), elems.end());
  if (!s.count(e_)) return false;
  for (int a : s)
    for (int b : s)
      if (!s.count(mul_[a][inv_[b]])) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::all_subgroups() const {
  std::set<std::vector<int>> subs;
  for (int g = 0; g < order(); ++g) subs.insert(closure({g}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(subs.begin(), subs.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<int> gens = cur[i];
        gens.insert(gens.end(), cur[j].begin(), cur[j].end());
        if (subs.insert(closure(gens)).second) grew = true;
      }
  }
  std::vector<std::vector<int>> out(subs.begin(), subs.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::vector<std::vector<int>> FiniteGroup::subgroups_up_to_conjugacy() const {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> reps;
  for (const auto& h : all_subgroups()) {
    if (seen.count(h)) continue;
    reps.push_back(h);
    for (int g = 0; g < order(); ++g) {
      std::vector<int> c;
      for (int x : h) c.push_back(mul_[mul_[g][x]][inv_[g]]);
      std::sort(c.begin(), c.end());
      seen.insert(c);
    }
  }
  return reps;
}

FiniteGroup FiniteGroup::subgroup(const std::vector<int>& elems) const {
  if (!is_subgroup(elems)) throw std::invalid_argument("element set is not a subgroup");
  std::vector<int> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  std::map<int, int> idx;
  for (size_t i = 0; i < sorted.size(); ++i) idx[sorted[i]] = static_cast<int>(i);
  int n = static_cast<int>(sorted.size());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back(names_[sorted[a]]);
    for (int b = 0; b < n; ++b) mul[a][b] = idx.at(mul_[sorted[a]][sorted[b]]);
  }
  FiniteGroup g = from_table(mul, names);
  for (int a : sorted)
    if (!perms_.empty()) g.perms_.push_back(perms_[a]);
  return g;
}

std::vector<int> FiniteGroup::small_generating_set() const {
  std::vector<int> gens;
  std::vector<int> span{e_};
  // Prefer elements of large order: they cut the search in group_isomorphism.
  std::vector<int> order_sorted(order());
  for (int i = 0; i < order(); ++i) order_sorted[i] = i;
  std::stable_sort(order_sorted.begin(), order_sorted.end(),
                   [&](int a, int b) { return element_order(a) > element_order(b); });
  for (int g : order_sorted) {
    if (std::binary_search(span.begin(), span.end(), g)) continue;
    gens.push_back(g);
    span = closure(gens);
    if (static_cast<int>(span.size()) == order()) break;
  }
  return gens;
}

std::optional<std::vector<int>> group_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  int n = a.order();
  if (n != b.order()) return std::nullopt;
  std::map<int, int> prof_a, prof_b;
  for (int i = 0; i < n; ++i) ++prof_a[a.element_order(i)], ++prof_b[b.element_order(i)];
  if (prof_a != prof_b) return std::nullopt;
  std::vector<int> gens = a.small_generating_set();
  std::vector<int> img(gens.size(), -1);

  auto extend = [&]() -> std::optional<std::vector<int>> {
    std::vector<int> map(n, -1);
    map[a.identity()] = b.identity();
    std::deque<int> q{a.identity()};
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (size_t k = 0; k < gens.size(); ++k) {
        int y = a.mul(x, gens[k]);
        int fy = b.mul(map[x], img[k]);
        if (map[y] < 0) {
          map[y] = fy;
          q.push_back(y);
        } else if (map[y] != fy) {
          return std::nullopt;
        }
      }
    }
    std::vector<bool> hit(n, false);
    for (int v : map) {
      if (v < 0 || hit[v]) return std::nullopt;
      hit[v] = true;
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return std::nullopt;
    return map;
  };

  std::function<std::optional<std::vector<int>>(size_t)> search = [&](size_t k) -> std::optional<std::vector<int>> {
    if (k == gens.size()) return extend();
    int want = a.element_order(gens[k]);
    for (int c = 0; c < n; ++c) {
      if (b.element_order(c) != want) continue;
      img[k] = c;
      if (auto r = search(k + 1)) return r;
    }
    return std::nullopt;
  };
  return search(0);
}

// ---------------------------------------------------------------------------------------------
// Functors

FunctorPtr make_functor(CategoryPtr src, CategoryPtr tgt, std::vector<int> obj, std::vector<int> mor,
                        std::string label) {
  if (static_cast<int>(obj.size()) != src->num_objects() || static_cast<int>(mor.size()) != src->num_morphisms())
    throw StructuralError("functor maps are not total");
  for (int o : obj)
    if (o < 0 || o >= tgt->num_objects()) throw StructuralError("functor object map leaves the target");
  for (int m : mor)
    if (m < 0 || m >= tgt->num_morphisms()) throw StructuralError("functor morphism map leaves the target");
  auto f = std::make_shared<Functor>();
  f->src = std::move(src);
  f->tgt = std::move(tgt);
  f->obj = std::move(obj);
  f->mor = std::move(mor);
  f->label = std::move(label);
  return f;
}

FunctorPtr identity_functor(const CategoryPtr& c) {
  std::vector<int> obj(c->num_objects()), mor(c->num_morphisms());
  for (size_t i = 0; i < obj.size(); ++i) obj[i] = static_cast<int>(i);
  for (size_t i = 0; i < mor.size(); ++i) mor[i] = static_cast<int>(i);
  return make_functor(c, c, obj, mor, "id");
}

FunctorPtr compose_functors(const FunctorPtr& g, const FunctorPtr& f) {
  if (f->tgt.get() != g->src.get()) throw std::logic_error("compose_functors: middle categories differ");
  std::vector<int> obj(f->obj.size()), mor(f->mor.size());
  for (size_t i = 0; i < obj.size(); ++i) obj[i] = g->obj[f->obj[i]];
  for (size_t i = 0; i < mor.size(); ++i) mor[i] = g->mor[f->mor[i]];
  return make_functor(f->src, g->tgt, obj, mor, g->label + "∘" + f->label);
}

FunctorPtr constant_functor(const CategoryPtr& src, const CategoryPtr& tgt, int object) {
  return make_functor(src, tgt, std::vector<int>(src->num_objects(), object),
                      std::vector<int>(src->num_morphisms(), tgt->identity(object)), "const");
}

bool functors_equal(const Functor& a, const Functor& b) {
  return a.src.get() == b.src.get() && a.tgt.get() == b.tgt.get() && a.obj == b.obj && a.mor == b.mor;
}

ValidationReport validate_functor(const Functor& f) {
  ValidationReport rep;
  const auto& C = *f.src;
  const auto& D = *f.tgt;
  for (int m = 0; m < C.num_morphisms(); ++m) {
    int fm = f.mor[m];
    if (D.src(fm) != f.obj[C.src(m)] || D.tgt(fm) != f.obj[C.tgt(m)])
      rep.push_back({"functor_endpoints", C.morphism_name(m)});
  }
  for (int o = 0; o < C.num_objects(); ++o)
    if (f.mor[C.identity(o)] != D.identity(f.obj[o])) rep.push_back({"functor_identity", C.object_name(o)});
  if (!rep.empty()) return rep;
  for (int a = 0; a < C.num_morphisms(); ++a)
    for (int b : C.out(C.tgt(a))) {
      int ba = C.compose(b, a);
      if (ba < 0) continue;
      if (f.mor[ba] != D.compose(f.mor[b], f.mor[a]))
        rep.push_back({"functor_composition", "(" + C.morphism_name(b) + ", " + C.morphism_name(a) + ")"});
    }
  return rep;
}

ValidationReport validate_nat_trans(const NatTrans& t) {
  ValidationReport rep;
  const auto& C = *t.F->src;
  const auto& D = *t.F->tgt;
  if (t.F->src.get() != t.G->src.get() || t.F->tgt.get() != t.G->tgt.get())
    throw StructuralError("natural transformation between functors with different endpoints");
  if (static_cast<int>(t.comp.size()) != C.num_objects()) throw StructuralError("components are not total");
  for (int o = 0; o < C.num_objects(); ++o) {
    int c = t.comp[o];
    if (D.src(c) != t.F->obj[o] || D.tgt(c) != t.G->obj[o]) rep.push_back({"component_endpoints", C.object_name(o)});
  }
  if (!rep.empty()) return rep;
  for (int m = 0; m < C.num_morphisms(); ++m) {
    int lhs = D.compose(t.G->mor[m], t.comp[C.src(m)]);
    int rhs = D.compose(t.comp[C.tgt(m)], t.F->mor[m]);
    if (lhs != rhs) rep.push_back({"naturality", C.morphism_name(m)});
  }
  return rep;
}

NatTrans identity_nat(const FunctorPtr& F) {
  NatTrans t{F, F, {}};
  for (int o : F->obj) t.comp.push_back(F->tgt->identity(o));
  return t;
}

NatTrans inverse_nat(const NatTrans& t) {
  NatTrans r{t.G, t.F, {}};
  for (int c : t.comp) r.comp.push_back(t.F->tgt->inverse(c));
  return r;
}

NatTrans vcompose_nat(const NatTrans& b, const NatTrans& a) {
  NatTrans r{a.F, b.G, {}};
  for (size_t o = 0; o < a.comp.size(); ++o) r.comp.push_back(a.F->tgt->compose_or_throw(b.comp[o], a.comp[o]));
  return r;
}

NatTrans whisker_right(const NatTrans& t, const FunctorPtr& h) {
  NatTrans r{compose_functors(t.F, h), compose_functors(t.G, h), {}};
  for (int z = 0; z < h->src->num_objects(); ++z) r.comp.push_back(t.comp[h->obj[z]]);
  return r;
}

NatTrans whisker_left(const FunctorPtr& h, const NatTrans& t) {
  NatTrans r{compose_functors(h, t.F), compose_functors(h, t.G), {}};
  for (int c : t.comp) r.comp.push_back(h->mor[c]);
  return r;
}

// ---------------------------------------------------------------------------------------------
// Constructions

GroupoidPtr discrete_groupoid(const std::vector<std::string>& names, const std::string& label) {
  CategoryBuilder b;
  for (const auto& n : names) b.add_object(n);
  for (int o = 0; o < static_cast<int>(names.size()); ++o) {
    int m = b.add_identity(o);
    b.set_inverse(m, m);
  }
  return b.build(label.empty() ? "discrete" + std::to_string(names.size()) : label, true);
}

GroupoidPtr discrete_groupoid(int n, const std::string& label) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return discrete_groupoid(names, label);
}

GroupoidPtr point_groupoid() { return discrete_groupoid(std::vector<std::string>{"*"}, "*"); }

GroupoidPtr delooping(const FiniteGroup& g, const std::string& label) {
  CategoryBuilder b;
  b.add_object("*");
  for (int x = 0; x < g.order(); ++x) b.add_morphism(g.name(x), 0, 0);
  b.set_identity(0, g.identity());
  for (int x = 0; x < g.order(); ++x) {
    b.set_inverse(x, g.inv(x));
    for (int y = 0; y < g.order(); ++y) b.set_compose(x, y, g.mul(x, y));
  }
  return b.build(label.empty() ? "*/" + g.label : label, true);
}

GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& parts, const std::string& label) {
  CategoryBuilder b;
  std::vector<int> obj_off, mor_off;
  int no = 0, nm = 0;
  for (size_t i = 0; i < parts.size(); ++i) {
    obj_off.push_back(no);
    mor_off.push_back(nm);
    for (int o = 0; o < parts[i]->num_objects(); ++o)
      b.add_object(std::to_string(i) + ":" + parts[i]->object_name(o));
    for (int m = 0; m < parts[i]->num_morphisms(); ++m)
      b.add_morphism(std::to_string(i) + ":" + parts[i]->morphism_name(m), no + parts[i]->src(m),
                     no + parts[i]->tgt(m));
    no += parts[i]->num_objects();
    nm += parts[i]->num_morphisms();
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    const auto& P = *parts[i];
    for (int o = 0; o < P.num_objects(); ++o) b.set_identity(obj_off[i] + o, mor_off[i] + P.identity(o));
    for (int m = 0; m < P.num_morphisms(); ++m) {
      b.set_inverse(mor_off[i] + m, mor_off[i] + P.inverse(m));
      for (int g : P.out(P.tgt(m))) b.set_compose(mor_off[i] + g, mor_off[i] + m, mor_off[i] + P.compose_or_throw(g, m));
    }
  }
  return b.build(label.empty() ? "union" : label, true);
}

FunctorPtr to_point(const GroupoidPtr& x) {
  static std::mutex mu;
  static GroupoidPtr pt = point_groupoid();
  std::lock_guard<std::mutex> lock(mu);
  return make_functor(x, pt, std::vector<int>(x->num_objects(), 0), std::vector<int>(x->num_morphisms(), 0), "!");
}

FunctorPtr delooping_map(const GroupoidPtr& h, const GroupoidPtr& g, const std::vector<int>& hom) {
  return make_functor(h, g, {0}, hom, "B");
}

ActionGroupoid action_groupoid(const FiniteGroup& g, const std::vector<std::vector<int>>& act,
                               const std::vector<std::string>& points) {
  int n = static_cast<int>(points.size());
  if (static_cast<int>(act.size()) != g.order()) throw std::invalid_argument("action table has wrong row count");
  for (const auto& row : act) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("action table has wrong column count");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("action table entry out of range");
  }
  for (int x = 0; x < n; ++x)
    if (act[g.identity()][x] != x) throw std::invalid_argument("action axiom 'unit' fails at " + points[x]);
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      for (int x = 0; x < n; ++x)
        if (act[a][act[b][x]] != act[g.mul(a, b)][x])
          throw std::invalid_argument("action axiom 'compatibility' fails at (" + g.name(a) + ", " + g.name(b) + ", " +
                                      points[x] + ")");
  CategoryBuilder b;
  for (const auto& p : points) b.add_object(p);
  auto mid = [&](int a, int x) { return a * n + x; };
  for (int a = 0; a < g.order(); ++a)
    for (int x = 0; x < n; ++x) b.add_morphism(g.name(a) + "|" + points[x], x, act[a][x]);
  for (int x = 0; x < n; ++x) b.set_identity(x, mid(g.identity(), x));
  for (int a = 0; a < g.order(); ++a)
    for (int x = 0; x < n; ++x) {
      b.set_inverse(mid(a, x), mid(g.inv(a), act[a][x]));
      for (int c = 0; c < g.order(); ++c) b.set_compose(mid(c, act[a][x]), mid(a, x), mid(g.mul(c, a), x));
    }
  ActionGroupoid out;
  out.groupoid = b.build("X//" + g.label, true);
  out.bg = delooping(g);
  std::vector<int> mor;
  for (int a = 0; a < g.order(); ++a)
    for (int x = 0; x < n; ++x) mor.push_back(a);
  out.to_bg = make_functor(out.groupoid, out.bg, std::vector<int>(n, 0), mor, "q");
  return out;
}

// ---------------------------------------------------------------------------------------------
// Chain products

int ChainProduct::find_object(const std::vector<int>& xs, const std::vector<int>& phis) const {
  std::vector<int> key = xs;
  key.insert(key.end(), phis.begin(), phis.end());
  auto it = obj_index.find(key);
  return it == obj_index.end() ? -1 : it->second;
}

int ChainProduct::morphism_of(int src, const std::vector<int>& as) const {
  std::vector<int> key{src};
  key.insert(key.end(), as.begin(), as.end());
  auto it = mor_index.find(key);
  if (it == mor_index.end()) throw std::logic_error("chain product: no such morphism");
  return it->second;
}

namespace {

std::shared_ptr<ChainProduct> build_chain(const std::vector<FunctorPtr>& maps) {
  if (maps.empty()) throw std::invalid_argument("chain product of no maps");
  const auto S = maps[0]->tgt;
  for (const auto& m : maps) {
    if (m->tgt.get() != S.get()) throw std::invalid_argument("chain product: maps have different targets");
    if (!m->src->is_groupoid() || !S->is_groupoid())
      throw std::invalid_argument("iso-comma products are defined only for groupoids");
  }
  auto cp = std::make_shared<ChainProduct>();
  cp->maps = maps;
  const int n = static_cast<int>(maps.size()) - 1;

  // Enumerate objects depth-first in lexicographic order of (x_0, φ_1, x_1, ...).
  std::vector<std::string> obj_names;
  std::vector<int> xs, phis;
  std::function<void(int)> rec = [&](int i) {
    if (i > n) {
      cp->obj_x.push_back(xs);
      cp->obj_phi.push_back(phis);
      std::vector<int> key = xs;
      key.insert(key.end(), phis.begin(), phis.end());
      cp->obj_index.emplace(key, static_cast<int>(cp->obj_x.size()) - 1);
      std::string nm = "(";
      for (int k = 0; k <= n; ++k) nm += (k ? "," : "") + maps[k]->src->object_name(xs[k]);
      for (int k = 0; k < n; ++k) nm += ";" + S->morphism_name(phis[k]);
      obj_names.push_back(nm + ")");
      return;
    }
    const auto& X = *maps[i]->src;
    for (int x = 0; x < X.num_objects(); ++x) {
      xs.push_back(x);
      if (i == 0) {
        rec(i + 1);
      } else {
        for (int phi : S->hom(maps[i - 1]->obj[xs[i - 1]], maps[i]->obj[x])) {
          phis.push_back(phi);
          rec(i + 1);
          phis.pop_back();
        }
      }
      xs.pop_back();
    }
  };
  rec(0);

  std::vector<MorphismInfo> mors;
  std::vector<int> identity(obj_names.size(), -1);
  std::vector<int> as;
  for (int o = 0; o < static_cast<int>(obj_names.size()); ++o) {
    const auto ox = cp->obj_x[o];
    const auto ophi = cp->obj_phi[o];
    std::function<void(int)> mrec = [&](int i) {
      if (i > n) {
        std::vector<int> tx(n + 1), tphi(n);
        for (int k = 0; k <= n; ++k) tx[k] = maps[k]->src->tgt(as[k]);
        for (int k = 0; k < n; ++k) {
          int back = S->inverse(maps[k]->mor[as[k]]);
          tphi[k] = S->compose_or_throw(maps[k + 1]->mor[as[k + 1]], S->compose_or_throw(ophi[k], back));
        }
        int t = cp->find_object(tx, tphi);
        int idx = static_cast<int>(mors.size());
        std::string nm = "[";
        for (int k = 0; k <= n; ++k) nm += (k ? "," : "") + maps[k]->src->morphism_name(as[k]);
        mors.push_back({o, t, nm + "]@" + obj_names[o]});
        std::vector<int> key{o};
        key.insert(key.end(), as.begin(), as.end());
        cp->mor_index.emplace(key, idx);
        cp->mor_a.push_back(as);
        bool is_id = true;
        for (int k = 0; k <= n; ++k) is_id = is_id && maps[k]->src->is_identity(as[k]);
        if (is_id) identity[o] = idx;
        return;
      }
      for (int a : maps[i]->src->out(ox[i])) {
        as.push_back(a);
        mrec(i + 1);
        as.pop_back();
      }
    };
    mrec(0);
  }
  std::vector<int> inverse(mors.size());
  for (int m = 0; m < static_cast<int>(mors.size()); ++m) {
    std::vector<int> inv_as(n + 1);
    for (int k = 0; k <= n; ++k) inv_as[k] = maps[k]->src->inverse(cp->mor_a[m][k]);
    inverse[m] = cp->morphism_of(mors[m].tgt, inv_as);
  }
  auto g = std::make_shared<FiniteCategory>(obj_names, mors, identity);
  std::string label = "[";
  for (int k = 0; k <= n; ++k) label += (k ? " x " : "") + maps[k]->src->label;
  g->label = label + " over " + S->label + "]";
  ChainProduct* raw = cp.get();
  g->set_rule([raw, n](int gm, int fm) {
    std::vector<int> as2(n + 1);
    for (int k = 0; k <= n; ++k) as2[k] = raw->maps[k]->src->compose_or_throw(raw->mor_a[gm][k], raw->mor_a[fm][k]);
    std::vector<int> key{raw->groupoid->src(fm)};
    key.insert(key.end(), as2.begin(), as2.end());
    return raw->mor_index.at(key);
  });
  g->set_inverse(inverse);
  cp->groupoid = g;
  g->finalize();
  for (int k = 0; k <= n; ++k) {
    std::vector<int> obj(cp->obj_x.size()), mor(cp->mor_a.size());
    for (size_t o = 0; o < obj.size(); ++o) obj[o] = cp->obj_x[o][k];
    for (size_t m = 0; m < mor.size(); ++m) mor[m] = cp->mor_a[m][k];
    cp->proj.push_back(make_functor(g, maps[k]->src, obj, mor, "pr" + std::to_string(k + 1)));
  }
  return cp;
}

}  // namespace

FunctorPtr ChainProduct::projection(const std::vector<int>& sel, const ChainPtr& target) const {
  const int m = static_cast<int>(sel.size()) - 1;
  if (target->length() != m) throw std::invalid_argument("projection: target chain length mismatch");
  for (int k = 0; k <= m; ++k)
    if (target->maps[k].get() != maps[sel[k]].get())
      throw std::invalid_argument("projection: target chain built from different maps");
  const auto& S = *maps[0]->tgt;
  std::vector<int> obj(obj_x.size()), mor(mor_a.size());
  for (size_t o = 0; o < obj.size(); ++o) {
    std::vector<int> xs(m + 1), phis(m);
    for (int k = 0; k <= m; ++k) xs[k] = obj_x[o][sel[k]];
    for (int k = 1; k <= m; ++k) {
      int lo = sel[k - 1], hi = sel[k];
      if (hi < lo) throw std::invalid_argument("projection: selection must be nondecreasing");
      int phi = S.identity(maps[lo]->obj[obj_x[o][lo]]);
      for (int j = lo + 1; j <= hi; ++j) phi = S.compose_or_throw(obj_phi[o][j - 1], phi);
      phis[k - 1] = phi;
    }
    obj[o] = target->find_object(xs, phis);
    if (obj[o] < 0) throw std::logic_error("projection: object missing in target chain");
  }
  for (size_t a = 0; a < mor.size(); ++a) {
    std::vector<int> as(m + 1);
    for (int k = 0; k <= m; ++k) as[k] = mor_a[a][sel[k]];
    mor[a] = target->morphism_of(obj[groupoid->src(static_cast<int>(a))], as);
  }
  std::string lab = "pi";
  for (int s : sel) lab += std::to_string(s + 1);
  return make_functor(groupoid, target->groupoid, obj, mor, lab);
}

ChainPtr chain_product(const std::vector<FunctorPtr>& maps) {
  static std::mutex mu;
  static std::map<std::vector<const Functor*>, ChainPtr> cache;
  std::vector<const Functor*> key;
  for (const auto& m : maps) key.push_back(m.get());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  ChainPtr cp = build_chain(maps);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, cp).first->second;
}

IsoComma iso_comma_pullback(const FunctorPtr& f, const FunctorPtr& g) {
  IsoComma ic;
  ic.chain = chain_product({f, g});
  ic.groupoid = ic.chain->groupoid;
  ic.pY = ic.chain->proj[0];
  ic.pX = ic.chain->proj[1];
  ic.alpha.F = compose_functors(f, ic.pY);
  ic.alpha.G = compose_functors(g, ic.pX);
  for (const auto& phis : ic.chain->obj_phi) ic.alpha.comp.push_back(phis[0]);
  return ic;
}

IsoComma product_groupoid(const GroupoidPtr& x, const GroupoidPtr& y) {
  return iso_comma_pullback(to_point(x), to_point(y));
}

// ---------------------------------------------------------------------------------------------
// Components, skeleta, equivalence

int automorphism_order(const FiniteCategory& x, int obj) { return static_cast<int>(x.hom(obj, obj).size()); }

std::vector<ComponentInfo> pi0_and_aut(const FiniteCategory& x) {
  if (!x.is_groupoid()) throw std::invalid_argument("pi0_and_aut expects a groupoid");
  std::vector<ComponentInfo> out;
  for (int c = 0; c < x.num_components(); ++c) {
    ComponentInfo ci;
    ci.rep = x.component_rep(c);
    for (int o = 0; o < x.num_objects(); ++o)
      if (x.component_of(o) == c) ci.members.push_back(o);
    ci.aut_morphisms = x.hom(ci.rep, ci.rep);
    int n = static_cast<int>(ci.aut_morphisms.size());
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
      names.push_back(x.morphism_name(ci.aut_morphisms[i]));
      for (int j = 0; j < n; ++j) mul[i][j] = x.hom_position(x.compose_or_throw(ci.aut_morphisms[i], ci.aut_morphisms[j]));
    }
    ci.aut = FiniteGroup::from_table(mul, names);
    out.push_back(std::move(ci));
  }
  return out;
}

Skeleton skeletalize(const GroupoidPtr& xp) {
  const auto& X = *xp;
  if (!X.is_groupoid()) throw std::invalid_argument("skeletalize expects a groupoid");
  CategoryBuilder b;
  std::vector<int> mor_off;
  int nm = 0;
  for (int c = 0; c < X.num_components(); ++c) {
    int rep = X.component_rep(c);
    b.add_object(X.object_name(rep));
    mor_off.push_back(nm);
    for (int m : X.hom(rep, rep)) {
      b.add_morphism(X.morphism_name(m), c, c);
      ++nm;
    }
  }
  std::vector<int> incl_mor;
  for (int c = 0; c < X.num_components(); ++c) {
    int rep = X.component_rep(c);
    const auto& aut = X.hom(rep, rep);
    b.set_identity(c, mor_off[c] + X.hom_position(X.identity(rep)));
    for (int m : aut) {
      incl_mor.push_back(m);
      b.set_inverse(mor_off[c] + X.hom_position(m), mor_off[c] + X.hom_position(X.inverse(m)));
      for (int k : aut) b.set_compose(mor_off[c] + X.hom_position(k), mor_off[c] + X.hom_position(m),
                                      mor_off[c] + X.hom_position(X.compose_or_throw(k, m)));
    }
  }
  Skeleton sk;
  sk.skeleton = b.build("sk(" + X.label + ")", true);
  std::vector<int> incl_obj;
  for (int c = 0; c < X.num_components(); ++c) incl_obj.push_back(X.component_rep(c));
  sk.include = make_functor(sk.skeleton, xp, incl_obj, incl_mor, "incl");
  std::vector<int> r_obj(X.num_objects()), r_mor(X.num_morphisms());
  for (int o = 0; o < X.num_objects(); ++o) r_obj[o] = X.component_of(o);
  for (int m = 0; m < X.num_morphisms(); ++m) {
    int s = X.src(m), t = X.tgt(m);
    int conj = X.compose_or_throw(X.inverse(X.tree(t)), X.compose_or_throw(m, X.tree(s)));
    r_mor[m] = mor_off[X.component_of(s)] + X.hom_position(conj);
  }
  sk.retract = make_functor(xp, sk.skeleton, r_obj, r_mor, "retr");
  sk.unit.F = compose_functors(sk.include, sk.retract);
  sk.unit.G = identity_functor(xp);
  for (int o = 0; o < X.num_objects(); ++o) sk.unit.comp.push_back(X.tree(o));
  sk.counit = identity_nat(compose_functors(sk.retract, sk.include));
  sk.counit.G = identity_functor(sk.skeleton);
  sk.verified = validate_functor(*sk.include).empty() && validate_functor(*sk.retract).empty() &&
                validate_nat_trans(sk.unit).empty() &&
                functors_equal(*sk.counit.F, *sk.counit.G) && validate_nat_trans(sk.counit).empty();
  return sk;
}

EquivalenceResult groupoids_equivalent(const FiniteCategory& a, const FiniteCategory& b) {
  EquivalenceResult r;
  auto ca = pi0_and_aut(a), cb = pi0_and_aut(b);
  if (ca.size() != cb.size()) {
    r.reason = "component counts differ: " + std::to_string(ca.size()) + " vs " + std::to_string(cb.size());
    return r;
  }
  std::vector<bool> used(cb.size(), false);
  for (size_t i = 0; i < ca.size(); ++i) {
    int found = -1;
    for (size_t j = 0; j < cb.size() && found < 0; ++j)
      if (!used[j] && group_isomorphism(ca[i].aut, cb[j].aut)) found = static_cast<int>(j);
    if (found < 0) {
      r.reason = "no component matches the automorphism group of " + a.object_name(ca[i].rep);
      return r;
    }
    used[found] = true;
    r.component_match.push_back(found);
  }
  r.equivalent = true;
  return r;
}

// ---------------------------------------------------------------------------------------------
// Čech nerve

TruncatedSimplicialGroupoid cech_nerve(const FunctorPtr& f, int truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation level must be nonnegative");
  TruncatedSimplicialGroupoid t;
  t.levels.push_back(f->src);
  t.chains.push_back(nullptr);
  for (int n = 1; n <= truncation; ++n) {
    t.chains.push_back(chain_product(std::vector<FunctorPtr>(n + 1, f)));
    t.levels.push_back(t.chains[n]->groupoid);
  }
  t.faces.resize(truncation + 1);
  t.degeneracies.resize(truncation + 1);
  for (int n = 1; n <= truncation; ++n)
    for (int i = 0; i <= n; ++i) {
      if (n == 1) {
        t.faces[n].push_back(t.chains[1]->proj[1 - i]);
        continue;
      }
      std::vector<int> sel;
      for (int k = 0; k <= n; ++k)
        if (k != i) sel.push_back(k);
      t.faces[n].push_back(t.chains[n]->projection(sel, t.chains[n - 1]));
    }
  for (int n = 0; n < truncation; ++n)
    for (int i = 0; i <= n; ++i) {
      if (n == 0) {
        const auto& Y = *f->src;
        const auto& S = *f->tgt;
        std::vector<int> obj(Y.num_objects()), mor(Y.num_morphisms());
        for (int y = 0; y < Y.num_objects(); ++y) obj[y] = t.chains[1]->find_object({y, y}, {S.identity(f->obj[y])});
        for (int m = 0; m < Y.num_morphisms(); ++m) mor[m] = t.chains[1]->morphism_of(obj[Y.src(m)], {m, m});
        t.degeneracies[0].push_back(make_functor(f->src, t.levels[1], obj, mor, "s0"));
        continue;
      }
      std::vector<int> sel;
      for (int k = 0; k <= n; ++k) {
        sel.push_back(k);
        if (k == i) sel.push_back(k);
      }
      t.degeneracies[n].push_back(t.chains[n]->projection(sel, t.chains[n + 1]));
    }
  return t;
}

ValidationReport TruncatedSimplicialGroupoid::check_identities() const {
  ValidationReport rep;
  const int N = static_cast<int>(levels.size()) - 1;
  auto same = [](const FunctorPtr& a, const FunctorPtr& b) { return functors_equal(*a, *b); };
  auto tag = [](const char* what, int n, int i, int j) {
    return std::string(what) + " at level " + std::to_string(n) + " (i=" + std::to_string(i) + ", j=" +
           std::to_string(j) + ")";
  };
  for (int n = 2; n <= N; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (!same(compose_functors(faces[n - 1][i], faces[n][j]), compose_functors(faces[n - 1][j - 1], faces[n][i])))
          rep.push_back({"face_face", tag("d_i d_j = d_{j-1} d_i", n, i, j)});
  for (int n = 0; n < N; ++n)
    for (int j = 0; j <= n; ++j) {
      auto id = identity_functor(levels[n]);
      if (!same(compose_functors(faces[n + 1][j], degeneracies[n][j]), id) ||
          !same(compose_functors(faces[n + 1][j + 1], degeneracies[n][j]), id))
        rep.push_back({"face_degeneracy_id", tag("d_j s_j = d_{j+1} s_j = id", n, j, j)});
      for (int i = 0; i <= n + 1; ++i) {
        if (i == j || i == j + 1 || n == 0) continue;
        FunctorPtr lhs = compose_functors(faces[n + 1][i], degeneracies[n][j]);
        FunctorPtr rhs = i < j ? compose_functors(degeneracies[n - 1][j - 1], faces[n][i])
                               : compose_functors(degeneracies[n - 1][j], faces[n][i - 1]);
        if (!same(lhs, rhs)) rep.push_back({"face_degeneracy", tag("d_i s_j", n, i, j)});
      }
    }
  for (int n = 0; n + 2 <= N; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        if (!same(compose_functors(degeneracies[n + 1][i], degeneracies[n][j]),
                  compose_functors(degeneracies[n + 1][j + 1], degeneracies[n][i])))
          rep.push_back({"degeneracy_degeneracy", tag("s_i s_j = s_{j+1} s_i", n, i, j)});
  return rep;
}

}  // namespace sixff
