#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "polydots/serialize.hpp"

namespace polydots {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;  // each names the violated invariant
  Json detail = Json::object();
};

struct Verdict {
  unsigned seed = 0;
  bool passed = true;
  std::vector<SuiteResult> suites;

  /// Deterministic: no timestamps, no timings, fixed key order.
  Json to_json() const;
  std::vector<std::string> failures() const;
};

struct VerifyOptions {
  unsigned seed = 1;
  std::filesystem::path corpus;
  int workers = 1;
  int draws = 20;  // random specs per family in the oracle suite
};

/// Checks one corpus file's "expect" block against the library.
SuiteResult check_corpus_file(const std::filesystem::path& file);

/// Corpus expectations, closed form vs Newton oracle on seeded random draws,
/// lemma thresholds, FD convergence and the butterfly1d catastrophe boundary.
Verdict run_verification(const VerifyOptions& options);

/// Directory of the shipped corpus (compile-time default).
std::filesystem::path default_corpus_dir();

}  // namespace polydots
