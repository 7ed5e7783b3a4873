#pragma once

#include <cstddef>
#include <vector>

#include "ccl/graph.hpp"

namespace ccl {

struct PartialCorrResult {
  double r = 0.0;        // partial correlation of (i, j) given cond_set
  double stat = 0.0;     // Fisher z statistic: atanh(r) * sqrt(n - |S| - 3)
  double p_value = 1.0;  // two-sided under the null of zero partial corr
};

// Gaussian (Fisher-z) conditional-independence test. The partial correlation
// is computed from the inverse of the correlation submatrix over
// {i, j} union cond_set. Throws DegenerateConditioningError when that matrix
// is numerically singular and InvalidConfigError when n <= |S| + 3 or the
// conditioning set overlaps {i, j}.
PartialCorrResult fisher_z_partial_corr(const ColumnData& data, std::size_t i,
                                        std::size_t j,
                                        const std::vector<std::size_t>& cond_set);

// Order-independent PC-stable skeleton: starts complete; at conditioning
// level l the adjacency sets are frozen, every edge (i, j) is tested against
// all size-l subsets of adj(i)\{j} and adj(j)\{i} (lexicographic order), and
// edges whose test accepts independence (p > alpha) are removed only after
// the level completes. No orientation information is produced.
Skeleton pc_stable_skeleton(const ColumnData& data, double alpha = 0.01);

}  // namespace ccl
