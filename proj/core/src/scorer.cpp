#include "ccl/scorer.hpp"

#include <cmath>

#include "ccl/dgp.hpp"
#include "ccl/errors.hpp"
#include "ccl/rng.hpp"

namespace ccl {

namespace {

constexpr std::uint64_t kFwdTag = 10;
constexpr std::uint64_t kRevTag = 11;
constexpr std::uint64_t kEdgeTag = 20;

void check_series(const std::vector<double>& s, const char* name) {
  if (s.size() < 10)
    throw DegenerateSeriesError(std::string("score_pair: series '") + name +
                                "' needs at least 10 values");
  const double first = s.front();
  bool constant = true;
  for (double v : s) {
    if (!std::isfinite(v))
      throw DegenerateSeriesError(std::string("score_pair: series '") + name +
                                  "' contains non-finite values");
    if (v != first) constant = false;
  }
  if (constant)
    throw DegenerateSeriesError(std::string("score_pair: series '") + name +
                                "' is constant");
}

Direction direction_from_score(std::int64_t score) {
  if (score < 0) return Direction::XtoY;
  if (score > 0) return Direction::YtoX;
  return Direction::Undecided;
}

}  // namespace

const char* direction_name(Direction d) {
  switch (d) {
    case Direction::XtoY: return "x->y";
    case Direction::YtoX: return "y->x";
    case Direction::Undecided: return "undecided";
  }
  return "undecided";
}

ScoredPair score_pair_traced(const std::vector<double>& x,
                             const std::vector<double>& y, const RunConfig& cfg,
                             std::uint64_t seed) {
  if (x.size() != y.size())
    throw ShapeMismatchError("score_pair: series lengths differ");
  check_series(x, "x");
  check_series(y, "y");

  std::vector<double> xs = x;
  std::vector<double> ys = y;
  if (cfg.normalize) {
    xs = zscore(x).values;
    ys = zscore(y).values;
  }

  const std::uint64_t fwd_tag = cfg.swap_direction_streams ? kRevTag : kFwdTag;
  const std::uint64_t rev_tag = cfg.swap_direction_streams ? kFwdTag : kRevTag;
  TrainConfig fwd_tc = cfg.train;
  fwd_tc.seed = derive_seed(seed, fwd_tag);
  TrainConfig rev_tc = cfg.train;
  rev_tc.seed = cfg.shared_init ? fwd_tc.seed : derive_seed(seed, rev_tag);

  ScoredPair out;
  out.fwd_trace = train_to_threshold(cfg.mlp, make_dataset(xs, ys), fwd_tc, cfg.opt);
  out.rev_trace = train_to_threshold(cfg.mlp, make_dataset(ys, xs), rev_tc, cfg.opt);

  CcaScore& s = out.score;
  s.t_fwd = out.fwd_trace.steps_to_threshold;
  s.t_rev = out.rev_trace.steps_to_threshold;
  s.score = static_cast<std::int64_t>(s.t_fwd) - static_cast<std::int64_t>(s.t_rev);
  s.direction = direction_from_score(s.score);
  s.fwd_capped = !out.fwd_trace.converged;
  s.rev_capped = !out.rev_trace.converged;
  s.fwd_diverged = out.fwd_trace.diverged;
  s.rev_diverged = out.rev_trace.diverged;
  s.normalized = cfg.normalize;
  return out;
}

CcaScore score_pair(const std::vector<double>& x, const std::vector<double>& y,
                    const RunConfig& cfg, std::uint64_t seed) {
  return score_pair_traced(x, y, cfg, seed).score;
}

CcaScore score_edge_canonical(const ColumnData& data, std::size_t from,
                              std::size_t to, const RunConfig& cfg,
                              std::uint64_t seed) {
  if (from >= to)
    throw InvalidConfigError("score_edge_canonical: requires from < to");
  if (to >= data.size())
    throw ShapeMismatchError("score_edge_canonical: column index out of range");
  const std::uint64_t edge_seed = derive_seed(seed, kEdgeTag, from, to);
  return score_pair(data[from], data[to], cfg, edge_seed);
}

double aggregate_graph_cca(const Dag& dag, const ColumnData& data,
                           const RunConfig& cfg, std::uint64_t seed) {
  double total = 0.0;
  for (const auto& [from, to] : dag.edges) {
    const std::size_t lo = from < to ? from : to;
    const std::size_t hi = from < to ? to : from;
    const CcaScore canonical = score_edge_canonical(data, lo, hi, cfg, seed);
    total += (from == lo) ? static_cast<double>(canonical.score)
                          : -static_cast<double>(canonical.score);
  }
  return total;
}

}  // namespace ccl
