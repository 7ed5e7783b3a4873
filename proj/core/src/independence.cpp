#include "ccl/independence.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ccl/errors.hpp"

namespace ccl {

namespace {

void check_columns(const ColumnData& data) {
  if (data.empty()) throw ShapeMismatchError("independence: no columns");
  const std::size_t n = data.front().size();
  if (n < 2) throw ShapeMismatchError("independence: columns too short");
  for (const auto& col : data)
    if (col.size() != n) throw ShapeMismatchError("independence: ragged columns");
}

// Pearson correlation matrix over the selected columns.
Eigen::MatrixXd correlation_submatrix(const ColumnData& data,
                                      const std::vector<std::size_t>& vars) {
  const auto k = static_cast<Eigen::Index>(vars.size());
  const auto n = static_cast<Eigen::Index>(data.front().size());
  Eigen::MatrixXd centered(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const auto& col = data[vars[static_cast<std::size_t>(c)]];
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(col.size());
    for (Eigen::Index r = 0; r < n; ++r)
      centered(r, c) = col[static_cast<std::size_t>(r)] - mean;
  }
  Eigen::VectorXd norms = centered.colwise().norm();
  for (Eigen::Index c = 0; c < k; ++c) {
    if (norms(c) == 0.0)
      throw DegenerateSeriesError("independence: constant column");
    centered.col(c) /= norms(c);
  }
  return centered.transpose() * centered;
}

// Two-sided standard-normal tail probability.
double two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

}  // namespace

PartialCorrResult fisher_z_partial_corr(const ColumnData& data, std::size_t i,
                                        std::size_t j,
                                        const std::vector<std::size_t>& cond_set) {
  check_columns(data);
  if (i == j) throw InvalidConfigError("fisher_z: i == j");
  if (i >= data.size() || j >= data.size())
    throw InvalidConfigError("fisher_z: variable index out of range");
  for (std::size_t s : cond_set) {
    if (s == i || s == j)
      throw InvalidConfigError("fisher_z: conditioning set overlaps {i, j}");
    if (s >= data.size())
      throw InvalidConfigError("fisher_z: conditioning index out of range");
  }
  const std::size_t n = data.front().size();
  if (n <= cond_set.size() + 3)
    throw InvalidConfigError("fisher_z: need n > |cond_set| + 3");

  std::vector<std::size_t> vars = {i, j};
  vars.insert(vars.end(), cond_set.begin(), cond_set.end());
  const Eigen::MatrixXd corr = correlation_submatrix(data, vars);

  double r;
  if (cond_set.empty()) {
    r = corr(0, 1);
  } else {
    // Partial correlation from the precision matrix of the submatrix.
    Eigen::FullPivLU<Eigen::MatrixXd> lu(corr);
    if (!lu.isInvertible())
      throw DegenerateConditioningError(
          "fisher_z: singular correlation matrix for the conditioning set");
    const Eigen::MatrixXd prec = lu.inverse();
    const double denom = prec(0, 0) * prec(1, 1);
    if (denom <= 0.0)
      throw DegenerateConditioningError("fisher_z: non-positive precision diagonal");
    r = -prec(0, 1) / std::sqrt(denom);
  }
  r = std::clamp(r, -1.0, 1.0);

  PartialCorrResult out;
  out.r = r;
  const double dof = static_cast<double>(n) - static_cast<double>(cond_set.size()) - 3.0;
  if (std::abs(r) >= 1.0) {
    out.stat = std::numeric_limits<double>::infinity();
    out.p_value = 0.0;
  } else {
    out.stat = std::atanh(r) * std::sqrt(dof);
    out.p_value = two_sided_p(out.stat);
  }
  return out;
}

namespace {

// Enumerates size-k subsets of `pool` in lexicographic order, invoking fn;
// fn returns true to stop early.
bool for_each_subset(const std::vector<std::size_t>& pool, std::size_t k,
                     const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (k > pool.size()) return false;
  std::vector<std::size_t> pick(k);
  std::vector<std::size_t> idx(k);
  for (std::size_t m = 0; m < k; ++m) idx[m] = m;
  while (true) {
    for (std::size_t m = 0; m < k; ++m) pick[m] = pool[idx[m]];
    if (fn(pick)) return true;
    // advance combination
    std::size_t m = k;
    while (m-- > 0) {
      if (idx[m] != m + pool.size() - k) {
        ++idx[m];
        for (std::size_t r = m + 1; r < k; ++r) idx[r] = idx[r - 1] + 1;
        break;
      }
      if (m == 0) return false;
    }
    if (k == 0) return false;
  }
}

}  // namespace

Skeleton pc_stable_skeleton(const ColumnData& data, double alpha) {
  check_columns(data);
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidConfigError("pc_stable: alpha must be in (0, 1)");
  const std::size_t p = data.size();
  Skeleton skel = Skeleton::complete(p);

  for (std::size_t level = 0; level + 2 <= p; ++level) {
    // Freeze adjacency sets for order independence.
    std::vector<std::vector<std::size_t>> adj(p);
    for (std::size_t i = 0; i < p; ++i) adj[i] = skel.neighbors(i);

    bool testable = false;
    for (const auto& [i, j] : skel.edges)
      if (adj[i].size() >= level + 1 || adj[j].size() >= level + 1) testable = true;
    if (!testable) break;

    std::vector<UndirectedEdge> to_remove;
    for (const auto& [i, j] : skel.edges) {
      auto independent_given_subset_of = [&](const std::vector<std::size_t>& base,
                                             std::size_t excluded) {
        std::vector<std::size_t> pool;
        for (std::size_t v : base)
          if (v != excluded) pool.push_back(v);
        return for_each_subset(pool, level,
                               [&](const std::vector<std::size_t>& cond) {
                                 return fisher_z_partial_corr(data, i, j, cond)
                                            .p_value > alpha;
                               });
      };
      if (independent_given_subset_of(adj[i], j) ||
          independent_given_subset_of(adj[j], i))
        to_remove.push_back({i, j});
    }
    for (const auto& [i, j] : to_remove) skel.remove_edge(i, j);
  }
  return skel;
}

}  // namespace ccl
