#pragma once

#include <string>
#include <vector>

#include "mel/serialize.hpp"

namespace mel {

inline constexpr const char* kToolVersion = "melikyan-workbench 0.1.0";

struct SuiteOptions {
  int n1 = 1, n2 = 1;
  int field_degree = 2;  // GF(5^k) stage; the default carries beta and mu_24
  std::uint64_t seed = 0;
};

struct CheckResult {
  std::string name;
  std::string anchor;   // the identity or fact being checked
  bool pass = false;
  std::string witness;  // nonempty on failure; optional notes on pass
  double wall_ms = 0.0;
};

struct Certificate {
  std::string command;
  Json algebra;
  Json field;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  /// timings are reported but excluded from the determinism contract;
  /// with_timing=false produces the canonical byte-stable form
  Json to_json(bool with_timing = true) const;
  std::string table() const;  // aligned human-readable form
};

/// suite in {jacobi, grading, torus, sigma, duality, simplicity, all}
Certificate run_suite(const std::string& suite, const SuiteOptions& opt);

/// One seeded run of the twist-and-recover demonstration: build a standard
/// grading, twist it by a seeded product of lambda / exp_ad / sigma_M
/// factors, verify the twist, recover it from the eigenspaces of its
/// character action, and untwist back.
Certificate twist_recover(const SuiteOptions& opt);

/// dims, degree ranges, and support facts of M(2;n)
Json info_json(int n1, int n2);
std::string info_table(int n1, int n2);

/// standard grading report for a hom spec {"group":…, "images":[e1,e2]}
Json grade_report(const Json& hom_spec, const SuiteOptions& opt);

}  // namespace mel
