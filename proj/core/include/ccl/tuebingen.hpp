#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ccl/scorer.hpp"

namespace ccl {

// One cause-effect pair as described by the benchmark metadata.
// Column ranges come from the metadata file as 1-based inclusive indices
// (the published layout) and are stored 0-based here.
struct PairRecord {
  std::string id;                        // zero-padded, e.g. "0001"
  ColumnData columns;                    // full data table, column per variable
  std::vector<std::size_t> cause_cols;   // 0-based
  std::vector<std::size_t> effect_cols;  // 0-based
  double weight = 1.0;
  bool scalar = false;  // exactly one cause and one effect column
};

struct Benchmark {
  std::vector<PairRecord> pairs;
  std::vector<std::string> warnings;
};

// Whitespace-separated numeric matrix (one row per line, blank lines
// skipped, scientific notation accepted). Returns one vector per column.
// Ragged rows or non-numeric tokens raise ParseError with the line number.
ColumnData parse_pair_file(const std::filesystem::path& path);
ColumnData parse_pair_text(const std::string& text);

// Round-trip serialization of a parsed matrix (full double precision).
std::string serialize_matrix(const ColumnData& columns);

// Loads `pairmeta.txt` from the directory; each line is
//   <id> <cause-start> <cause-end> <effect-start> <effect-end> [weight]
// with 1-based inclusive column ranges and weight defaulting to 1.0.
// An empty directory yields an empty benchmark plus a warning; a non-empty
// directory without the metadata file raises IoError, as does a metadata
// row whose pair file is missing.
Benchmark load_benchmark(const std::filesystem::path& dir);

struct PairOutcome {
  std::string id;
  double weight = 1.0;
  std::size_t n_rows = 0;
  bool scalar = false;
  bool skipped_multivariate = false;
  bool failed = false;
  std::string error;                  // populated when failed
  std::vector<double> seed_scores;    // raw per-seed scores
  double mean_score = 0.0;            // mean over seeds
  Direction direction = Direction::Undecided;
  bool correct = false;               // direction == XtoY (cause listed first)
};

struct CurvePoint {
  std::size_t pairs_included = 0;
  double weighted_accuracy = 0.0;
};

struct BenchmarkMetrics {
  double weighted_accuracy = 0.0;
  double unweighted_accuracy = 0.0;
  double auc = 0.0;  // weighted, tie-averaged; confidence = |mean score|
  std::vector<CurvePoint> curve;  // descending |score|, ties by id
};

struct BenchmarkReport {
  std::vector<PairOutcome> outcomes;
  std::size_t n_scored = 0;
  std::size_t n_skipped_multivariate = 0;
  std::size_t n_failed = 0;
  BenchmarkMetrics metrics;
};

struct TuebingenRunConfig {
  RunConfig run;                 // scoring protocol for every pair
  std::size_t n_seeds = 5;       // seeds averaged per pair
  std::uint64_t master_seed = 1;  // documented default protocol seed
  std::size_t jobs = 1;          // parallel pair x seed tasks
};

// Scores every scalar pair (mean score over seeds, sign gives direction);
// multi-column pairs are skipped and counted; per-pair scoring failures are
// recorded and excluded from metrics without aborting the run.
BenchmarkReport run_tuebingen(const Benchmark& benchmark,
                              const TuebingenRunConfig& cfg);

// Metrics over the scored outcomes (failed/skipped entries ignored).
BenchmarkMetrics compute_metrics(const std::vector<PairOutcome>& outcomes);

}  // namespace ccl
