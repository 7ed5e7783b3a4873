#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "ccl/graph.hpp"
#include "ccl/scorer.hpp"

namespace ccl {

struct CclParams {
  double lambda2 = 1.0;    // weight of the description-length term
  double lambda3 = 0.0025; // weight of the convergence-asymmetry term
  double alpha_pc = 0.01;  // stage-0 independence level
  std::uint64_t max_iters = 20;
  std::uint64_t seed = 0;  // master seed for edge-score streams
};

// Thread-safe cache of canonical per-unordered-pair CCA scores.
// get() has get-or-compute semantics: the first caller computes, everyone
// else reuses; a pair is never trained twice.
class CcaEdgeCache {
 public:
  CcaEdgeCache(const ColumnData& data, RunConfig cfg, std::uint64_t seed)
      : data_(&data), cfg_(std::move(cfg)), seed_(seed) {}

  // Canonical score for the unordered pair {lo, hi}, lo < hi.
  CcaScore get(std::size_t lo, std::size_t hi);

  // Signed score of the directed edge from->to (negated when from > to).
  double directed_score(std::size_t from, std::size_t to);

  std::size_t size() const;

 private:
  const ColumnData* data_;
  RunConfig cfg_;
  std::uint64_t seed_;
  mutable std::mutex mu_;
  std::map<UndirectedEdge, CcaScore> cache_;
};

struct ScoreBreakdown {
  double mdl = 0.0;    // description length of the graph
  double cca = 0.0;    // sum of directed edge scores
  double total = 0.0;  // lambda2 * mdl + lambda3 * cca
};

ScoreBreakdown score_graph(const Dag& dag, const ColumnData& data,
                           const CclParams& params, CcaEdgeCache* cache);

struct SearchResult {
  Dag dag;
  ScoreBreakdown score;
  std::size_t moves_applied = 0;
};

// Greedy local search over orientations/deletions of skeleton edges.
// Moves (delete, insert, reverse; enumerated lexicographically by kind then
// edge) are evaluated against the objective lambda2*MDL + lambda3*CCA; the
// best strictly-improving move is applied until none exists. Acyclicity is
// enforced on every candidate. Deterministic for fixed inputs. When
// `cache` is null and lambda3 != 0 an internal cache seeded with params.seed
// is used; lambda3 == 0 skips edge-score training entirely.
SearchResult xges_orient(const Skeleton& skeleton, const ColumnData& data,
                         const CclParams& params, const RunConfig& cca_cfg,
                         CcaEdgeCache* cache = nullptr,
                         const Dag* warm_start = nullptr);

// Testing oracle: enumerates every DAG assembled from skeleton edges (each
// edge absent or oriented either way), scores all acyclic ones, and returns
// the minimum. Exponential in edge count; desk scale only.
SearchResult exhaustive_orient(const Skeleton& skeleton, const ColumnData& data,
                               const CclParams& params, const RunConfig& cca_cfg,
                               CcaEdgeCache* cache = nullptr);

struct LoopTrace {
  std::vector<double> objectives;        // index 0 = initial graph
  std::vector<Dag> graphs;               // graph snapshot per recorded point
  std::vector<std::size_t> spurious;     // vs truth, when supplied
  std::size_t iterations = 0;            // search passes executed
  bool converged = false;                // objective change < tolerance
  bool monotone = false;                 // objectives non-increasing
};

// Reduced-form alternating loop. The full method alternates representation
// learning, structure search, and policy evaluation; here the representation
// stage is an identity pass-through and the policy stage contributes a
// constant reward (both documented stubs), so each iteration re-runs the
// structure search warm-started from the previous graph and records the
// objective lambda2*MDL(G) + lambda3*CCA(G) + const. Terminates when the
// objective changes by less than 1e-9 or after params.max_iters passes.
LoopTrace ccl_plus_loop(const ColumnData& data, const CclParams& params,
                        const RunConfig& cca_cfg,
                        const std::optional<Skeleton>& skeleton = std::nullopt,
                        const Dag* truth = nullptr,
                        CcaEdgeCache* cache = nullptr);

}  // namespace ccl
