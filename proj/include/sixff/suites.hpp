#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sixff/category.hpp"
#include "sixff/field.hpp"

namespace sixff {

struct CheckRecord {
  std::string id;
  bool pass = false;
  bool skipped = false;        // precondition (such as the characteristic gate) not met; not an alarm
  std::string witness;         // short summary of what was verified
  std::string counterexample;  // first failing instance, empty on success
  double seconds = 0;
};

struct SuiteConfig {
  std::vector<std::string> suites;
  Field field = Field::rationals();
  std::uint64_t seed = 1;
  int truncate = 3;
  int probes = 3;
  // Groups and categories loaded from --input files, run alongside the presets.
  std::vector<FiniteGroup> groups;
  std::vector<CategoryPtr> categories;
};

std::vector<std::string> suite_names();
// Checks of the selected suites, sorted by id. Unknown suite names throw std::invalid_argument.
std::vector<CheckRecord> run_suites(const SuiteConfig& config);

// Individual checks, shared by the suites and the acceptance harness.
CheckRecord check_setup_verdicts(const std::vector<CategoryPtr>& extra = {});
CheckRecord check_finset_duals();
CheckRecord check_double_cosets(const std::vector<std::string>& presets, const std::vector<FiniteGroup>& extra = {});
CheckRecord check_six_functor_axioms(Field k, std::uint64_t seed, int instances);
CheckRecord check_kernel_coherence(std::uint64_t seed, int triples);
CheckRecord check_psi_phi(std::uint64_t seed);
CheckRecord check_suave_prim(std::uint64_t seed, int probe_dim);
CheckRecord check_etale_proper(std::uint64_t seed);
CheckRecord check_descent(std::uint64_t seed, int truncation);
CheckRecord check_mates(std::uint64_t seed);
CheckRecord check_adjunction_examples();
CheckRecord check_hecke_s3(Field k);
CheckRecord check_kunneth(Field k, std::uint64_t seed, int pairs);
CheckRecord check_classifying_sections(Field k);
CheckRecord check_pyramid_symmetry(int max_n);

// Acceptance criteria 1..10 with their fixed parameters.
CheckRecord acceptance_criterion(int n);

}  // namespace sixff
