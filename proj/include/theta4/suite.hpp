#pragma once

// Corpus runner: loads a list of period matrices with expectations, runs the
// exact sign-matrix checks, the identity checks and a basis report on each,
// and rolls the results up into one deterministic report.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "theta4/basis_analysis.hpp"
#include "theta4/json_io.hpp"

namespace theta4 {

inline constexpr const char* kToolVersion = "0.1.0";

/// What an entry is declared to produce. Unset fields are not checked.
/// Entries on the vanishing-null locus declare false verdicts; matching them
/// counts as a pass.
struct Expectation {
  std::optional<bool> theorem11;
  std::optional<bool> theorem12;
  std::optional<int> vanishing_nulls;
};

struct CorpusEntry {
  std::string label;
  PeriodMatrix tau;
  std::optional<Characteristic> kappa0;  // defaults to zero
  Expectation expect;
};

struct SuiteSettings {
  TruncationPolicy truncation;
  NumericalRankPolicy rank;
  double null_threshold = kDefaultNullThreshold;
  double identity_tolerance = 1e-8;
  std::size_t identity_samples = 3;
  std::uint64_t seed = 1;
};

struct CorpusSpec {
  std::vector<CorpusEntry> entries;
  SuiteSettings settings;
};

/// Parses a corpus document. Tau sources:
///   "path.json" or {"kind": "file", "path": ...}  (relative to base_dir)
///   {"kind": "literal", "g": G, "re": [[...]], "im": [[...]]}
///   {"kind": "random", "g": G, "seed": S, "floor": F}
///   {"kind": "diagonal", "entries": [[re, im], ...]}
///   {"kind": "block", "blocks": [<tau source>, ...]}
/// Every tau is built and validated here; any problem raises InputError.
CorpusSpec parse_corpus(const Json& doc, const std::filesystem::path& base_dir);
CorpusSpec load_corpus(const std::filesystem::path& path);

enum class EntryStatus { pass, fail, warn };
const char* to_string(EntryStatus s);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct EntryResult {
  std::string label;
  EntryStatus status = EntryStatus::pass;
  std::vector<std::string> reasons;
  std::optional<std::string> error;
  // Largest scaled_residual over the identity checks.
  double max_quartic_residual = 0.0;
  double max_inversion_residual = 0.0;
  std::size_t quartic_checks = 0;
  std::size_t inversion_checks = 0;
  std::optional<BasisReport> report;
  std::vector<StageTiming> timings;
};

struct RunReport {
  std::map<int, MMatrixVerification> mmatrix;  // per genus present in the corpus
  std::vector<EntryResult> entries;
  EntryStatus rollup = EntryStatus::pass;
};

RunReport run_suite(const CorpusSpec& corpus);

/// Wall-clock timings vary run to run, so they are only serialized on
/// request.
Json to_json(const RunReport& report, bool include_timings = false);

/// 0 pass, 1 fail, 3 warn.
int exit_code(const RunReport& report);

}  // namespace theta4
