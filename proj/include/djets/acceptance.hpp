#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "djets/dvariety.hpp"

namespace djets {

/// A D-variety with a rational initial value for its sharp point.
struct CorpusEntry {
  std::string source;
  DVariety variety;
  std::vector<Rational> initial;
};

/// Every coordinate point of every .djv file under dir, sorted by file name.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240607;
  std::vector<CorpusEntry> corpus;
};

/// The twelve acceptance criteria, in order. A criterion also fails when it
/// exceeds its time limit.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS [3] kernel-identity (0.01s / 1s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace djets
