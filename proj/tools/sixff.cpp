#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sixff/hecke.hpp"
#include "sixff/inputs.hpp"
#include "sixff/presets.hpp"
#include "sixff/suites.hpp"

using namespace sixff;
using nlohmann::ordered_json;

namespace {

struct Options {
  std::vector<std::string> suites, inputs, generators;
  std::string field = "q", format = "text", group = "s3";
  std::uint64_t seed = 1;
  int truncate = 3, probes = 3;
};

std::vector<std::string> expand_suites(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& s : raw) {
    if (s == "all") {
      for (const auto& n : suite_names()) out.push_back(n);
    } else if (std::find(out.begin(), out.end(), s) == out.end()) {
      out.push_back(s);
    }
  }
  return out;
}

int run_report(const Options& o) {
  SuiteConfig cfg;
  cfg.suites = expand_suites(o.suites);
  cfg.field = Field::parse(o.field);
  cfg.seed = o.seed;
  cfg.truncate = o.truncate;
  cfg.probes = o.probes;
  auto store = load_inputs(o.inputs);
  cfg.groups = store.groups;
  cfg.categories = store.categories;
  auto records = run_suites(cfg);
  int failed = 0, skipped = 0;
  for (const auto& r : records) {
    failed += !r.pass;
    skipped += r.skipped;
  }
  auto status = [](const CheckRecord& r) { return r.skipped ? "skip" : r.pass ? "pass" : "fail"; };

  if (o.format == "json") {
    ordered_json doc;
    doc["schema"] = "sixff-report/1";
    doc["config"] = {{"suites", cfg.suites}, {"field", cfg.field.name()}, {"seed", cfg.seed},
                     {"truncate", cfg.truncate}, {"probes", cfg.probes}, {"inputs", o.inputs}};
    doc["checks"] = ordered_json::array();
    for (const auto& r : records)
      doc["checks"].push_back({{"id", r.id},
                               {"status", status(r)},
                               {"witness", r.witness},
                               {"counterexample", r.pass ? ordered_json(nullptr) : ordered_json(r.counterexample)}});
    doc["summary"] = {{"checks", records.size()}, {"failed", failed}, {"skipped", skipped}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "sixff report: " << records.size() << " checks, " << failed << " failed, " << skipped << " skipped (field " << cfg.field.name()
              << ", seed " << cfg.seed << ")\n";
    for (const auto& r : records) {
      char t[32];
      std::snprintf(t, sizeof t, "%.2fs", r.seconds);
      std::cout << (r.skipped ? "SKIP " : r.pass ? "PASS " : "FAIL ") << r.id << " [" << t << "] " << r.witness << "\n";
      if (!r.pass) std::cout << "  counterexample: " << r.counterexample << "\n";
    }
  }
  return failed == 0 ? 0 : 1;
}

std::string combination(const HeckeAlgebra& h, const Matrix& col, const std::vector<std::string>& labels) {
  std::string s;
  for (int i = 0; i < h.dim; ++i) {
    if (col.at(i, 0) == h.ind.v.k.zero()) continue;
    s += (s.empty() ? "" : " + ") + col.at(i, 0).str() + "*" + labels[i];
  }
  return s.empty() ? "0" : s;
}

int run_hecke_table(const Options& o) {
  auto store = load_inputs(o.inputs);
  auto field = Field::parse(o.field);
  GroupContext g(find_group(o.group, store));
  std::vector<int> gens;
  for (const auto& s : o.generators) gens.push_back(g.group.element_by_name(s));
  auto sub = g.group.closure(gens);
  auto inc = g.include(sub);
  auto h = hecke_algebra(inc, unit_sheaf(inc->src, field));
  std::vector<std::string> labels;
  for (int i = 0; i < h.dim; ++i) labels.push_back("T[" + g.group.name(h.basis_coset[i]) + "]");
  auto inv = involution_certificate(h);

  if (o.format == "json") {
    ordered_json doc;
    doc["schema"] = "sixff-hecke/1";
    doc["group"] = o.group;
    doc["subgroup"] = o.generators;
    doc["field"] = field.name();
    doc["basis"] = labels;
    doc["identity"] = h.identity;
    ordered_json st = ordered_json::array();
    for (int i = 0; i < h.dim; ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < h.dim; ++j) {
        std::vector<std::string> c;
        for (int k = 0; k < h.dim; ++k) c.push_back(h.structure[i][j].at(k, 0).str());
        row.push_back(c);
      }
      st.push_back(row);
    }
    doc["structure"] = st;
    ordered_json io = ordered_json::array();
    for (const auto& m : inv.images) {
      std::vector<std::string> c;
      for (int k = 0; k < h.dim; ++k) c.push_back(m.at(k, 0).str());
      io.push_back(c);
    }
    doc["involution"] = io;
    doc["certified"] = h.associative && h.unital && h.models_isomorphic && inv.ok();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "Hecke algebra of " << o.group << " relative to the subgroup of order " << sub.size() << " over "
              << field.name() << ", dimension " << h.dim << "\n";
    for (int i = 0; i < h.dim; ++i)
      for (int j = 0; j < h.dim; ++j)
        std::cout << labels[i] << " * " << labels[j] << " = " << combination(h, h.structure[i][j], labels) << "\n";
    for (int i = 0; i < h.dim; ++i)
      std::cout << "iota(" << labels[i] << ") = " << combination(h, inv.images[i], labels) << "\n";
  }
  return h.associative && h.unital && h.models_isomorphic && inv.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite six-functor formalism checks"};
  Options o;
  app.add_option("--suite", o.suites, "Suites to run (repeatable): groupoid, corr, sheaf, descent, kernel, adjunction, hecke, all")
      ->delimiter(',');
  app.add_option("--field", o.field, "Coefficient field: q or fp:P");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--truncate", o.truncate, "Čech nerve truncation level")->check(CLI::Range(1, 6));
  app.add_option("--probes", o.probes, "Maximal probe sheaf dimension")->check(CLI::Range(1, 4));
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--input", o.inputs, "JSON input file (repeatable)")->check(CLI::ExistingFile);

  auto* hecke = app.add_subcommand("hecke", "Hecke algebra tools");
  auto* table = hecke->add_subcommand("table", "Structure constants and involution on the double coset basis");
  table->add_option("--group", o.group, "Group preset or input group name");
  table->add_option("--subgroup", o.generators, "Subgroup generator in cycle notation (repeatable)");
  hecke->require_subcommand(1);
  hecke->fallthrough();
  table->fallthrough();

  CLI11_PARSE(app, argc, argv);
  try {
    if (table->parsed()) return run_hecke_table(o);
    return run_report(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
