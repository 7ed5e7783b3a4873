#pragma once

#include "ccl/graph.hpp"

namespace ccl {

// Gaussian description length of the data under a DAG:
//   sum_j (n/2) * ln(RSS_j / n)  +  (#parameters + |edges|) * ln(n) / 2
// where node j is least-squares regressed on [1, parents(j)] and
// #parameters counts one intercept per node plus one slope per edge.
// Singular normal equations fall back to a ridge solve with lambda = 1e-8
// (documented); the result is finite for any solvable DAG.
double mdl_score(const Dag& dag, const ColumnData& data);

// Residual sum of squares of the least-squares fit of column `node` on its
// parent columns plus intercept (ridge fallback as above). Exposed for
// testing against closed-form small cases.
double node_rss(const ColumnData& data, std::size_t node,
                const std::vector<std::size_t>& parents);

}  // namespace ccl
