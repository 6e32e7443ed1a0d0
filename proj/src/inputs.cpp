#include "sixff/inputs.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "sixff/presets.hpp"

namespace sixff {

namespace {

using nlohmann::json;

FiniteGroup parse_group(const json& j) {
  FiniteGroup g;
  if (j.contains("generators")) {
    int degree = j.at("degree").get<int>();
    std::vector<std::vector<int>> gens;
    for (const auto& s : j.at("generators")) gens.push_back(parse_cycles(s.get<std::string>(), degree));
    g = FiniteGroup::from_permutations(gens, degree);
  } else if (j.contains("table")) {
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    std::vector<std::string> names;
    if (j.contains("elements")) names = j.at("elements").get<std::vector<std::string>>();
    g = FiniteGroup::from_table(table, names);
  } else {
    throw std::invalid_argument("group needs \"generators\" or \"table\"");
  }
  g.label = j.at("name").get<std::string>();
  return g;
}

CategoryPtr parse_category(const json& j) {
  CategoryBuilder b;
  std::map<std::string, int> obj, mor;
  const auto name = j.at("name").get<std::string>();
  for (const auto& o : j.at("objects")) {
    auto s = o.get<std::string>();
    if (obj.count(s)) throw StructuralError("duplicate object '" + s + "'");
    obj[s] = b.add_object(s);
  }
  auto lookup = [](const std::map<std::string, int>& m, const std::string& s, const char* kind) {
    auto it = m.find(s);
    if (it == m.end()) throw StructuralError(std::string("unknown ") + kind + " '" + s + "'");
    return it->second;
  };
  if (j.contains("morphisms"))
    for (const auto& m : j.at("morphisms")) {
      auto s = m.at("name").get<std::string>();
      if (mor.count(s)) throw StructuralError("duplicate morphism '" + s + "'");
      mor[s] = b.add_morphism(s, lookup(obj, m.at("src").get<std::string>(), "object"),
                              lookup(obj, m.at("tgt").get<std::string>(), "object"));
    }
  std::map<std::string, std::string> ids;
  if (j.contains("identities")) ids = j.at("identities").get<std::map<std::string, std::string>>();
  for (const auto& [s, o] : obj) {
    auto it = ids.find(s);
    if (it == ids.end())
      mor["id_" + s] = b.add_identity(o);
    else
      b.set_identity(o, lookup(mor, it->second, "morphism"));
  }
  if (j.contains("compose"))
    for (const auto& t : j.at("compose")) {
      auto v = t.get<std::vector<std::string>>();
      if (v.size() != 3) throw StructuralError("composition entries are [g, f, g∘f]");
      b.set_compose(lookup(mor, v[0], "morphism"), lookup(mor, v[1], "morphism"), lookup(mor, v[2], "morphism"));
    }
  bool groupoid = j.value("groupoid", false);
  if (groupoid) {
    for (const auto& [s, o] : obj) {
      int id = ids.count(s) ? mor.at(ids.at(s)) : mor.at("id_" + s);
      b.set_inverse(id, id);
    }
    if (j.contains("inverses"))
      for (const auto& [m, n] : j.at("inverses").get<std::map<std::string, std::string>>())
        b.set_inverse(lookup(mor, m, "morphism"), lookup(mor, n, "morphism"));
  }
  auto c = b.build(name, groupoid);
  auto rep = validate_category(*c);
  if (!rep.empty()) throw std::invalid_argument(rep.front().code + " " + rep.front().detail);
  return c;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

InputStore parse_inputs(const std::string& text, const std::string& origin) {
  InputStore store;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(origin + ": parse error: " + e.what());
  }
  auto each = [&](const char* key, auto&& fn) {
    if (!doc.contains(key)) return;
    const auto& arr = doc.at(key);
    for (size_t i = 0; i < arr.size(); ++i) {
      std::string where = origin + ": " + key + "[" + std::to_string(i) + "]";
      if (arr[i].contains("name")) where += " '" + arr[i]["name"].get<std::string>() + "'";
      try {
        fn(arr[i]);
      } catch (const std::exception& e) {
        throw InputError(where + ": " + e.what());
      }
    }
  };
  each("groups", [&](const json& j) { store.groups.push_back(parse_group(j)); });
  each("categories", [&](const json& j) { store.categories.push_back(parse_category(j)); });
  return store;
}

InputStore load_inputs(const std::vector<std::string>& paths) {
  InputStore all;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw InputError(p + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    auto s = parse_inputs(ss.str(), p);
    all.groups.insert(all.groups.end(), s.groups.begin(), s.groups.end());
    all.categories.insert(all.categories.end(), s.categories.begin(), s.categories.end());
  }
  return all;
}

FiniteGroup find_group(const std::string& name, const InputStore& store) {
  for (const auto& g : store.groups)
    if (g.label == name) return g;
  auto g = group_preset(lower(name));
  g.label = name;
  return g;
}

}  // namespace sixff
