#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccl/graph.hpp"
#include "ccl/mlp.hpp"

namespace ccl {

enum class Direction : std::uint8_t { XtoY, YtoX, Undecided };

const char* direction_name(Direction d);

// Everything needed to score one pair: network shape, training protocol,
// optimizer, and the normalization policy.
struct RunConfig {
  MlpConfig mlp;
  TrainConfig train;
  OptimizerSpec opt = OptimizerSpec::adam();
  // z-score both series before training (population variance convention).
  // false is meant only for boundary-condition studies.
  bool normalize = true;
  // Reuse the forward direction's seed streams for the reverse network
  // (identical init/split/batch randomness in both directions).
  bool shared_init = false;
  // Swap the two per-direction stream tags; used to exercise the documented
  // antisymmetry property.
  bool swap_direction_streams = false;
};

struct CcaScore {
  std::uint64_t t_fwd = 0;  // steps-to-threshold fitting y from x
  std::uint64_t t_rev = 0;  // steps-to-threshold fitting x from y
  std::int64_t score = 0;   // t_fwd - t_rev; negative favors x -> y
  Direction direction = Direction::Undecided;
  bool fwd_capped = false;
  bool rev_capped = false;
  bool fwd_diverged = false;
  bool rev_diverged = false;
  bool normalized = true;

  bool operator==(const CcaScore&) const = default;
};

// Score plus the full training traces (needed for loss-curve reports).
struct ScoredPair {
  CcaScore score;
  TrainTrace fwd_trace;
  TrainTrace rev_trace;
};

// Decides the causal direction of (x, y) from convergence-time asymmetry.
// Per-direction seeds derive from `seed` with documented tags (forward 10,
// reverse 11; swapped when cfg.swap_direction_streams). Throws
// DegenerateSeriesError for constant/too-short/non-finite input and
// ShapeMismatchError for unequal lengths. Divergent trainings are reported
// as capped with the corresponding flag, never thrown.
CcaScore score_pair(const std::vector<double>& x, const std::vector<double>& y,
                    const RunConfig& cfg, std::uint64_t seed);

ScoredPair score_pair_traced(const std::vector<double>& x,
                             const std::vector<double>& y, const RunConfig& cfg,
                             std::uint64_t seed);

// Sum of edge scores over the directed edges of a DAG, where the score of
// edge (i -> j) is score_pair(col_i, col_j) for i < j and the exact negation
// of score_pair(col_j, col_i)'s canonical value otherwise. One computation
// per unordered pair, seeded by derive_seed(seed, 20, min(i,j), max(i,j)),
// so edge scores are independent of traversal or scheduling order.
double aggregate_graph_cca(const Dag& dag, const ColumnData& data,
                           const RunConfig& cfg, std::uint64_t seed);

// Canonical per-unordered-pair CCA score used by graph search and
// aggregation; from < to is required.
CcaScore score_edge_canonical(const ColumnData& data, std::size_t from,
                              std::size_t to, const RunConfig& cfg,
                              std::uint64_t seed);

}  // namespace ccl
