#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sixff/category.hpp"

namespace sixff {

// Parse or validation failure, prefixed with the file and the offending record.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputStore {
  std::vector<FiniteGroup> groups;
  std::vector<CategoryPtr> categories;
};

// JSON documents of the form
//   {"groups": [{"name": "D4", "degree": 4, "generators": ["(1 2 3 4)", "(1 3)"]},
//               {"name": "C3", "table": [[0,1,2],[1,2,0],[2,0,1]], "elements": ["e","a","b"]}],
//    "categories": [{"name": "arrow", "objects": ["a","b"],
//                    "morphisms": [{"name": "f", "src": "a", "tgt": "b"}],
//                    "compose": [["g", "f", "gf"]], "groupoid": false, "inverses": {"m": "n"}}]}
// Identities "id_<obj>" are added unless an object already lists one under "identities".
InputStore load_inputs(const std::vector<std::string>& paths);
InputStore parse_inputs(const std::string& text, const std::string& origin);

// Preset names (case-insensitive) or groups from the store, by name.
FiniteGroup find_group(const std::string& name, const InputStore& store);

}  // namespace sixff
