#include "ccl/mdl.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ccl/errors.hpp"

namespace ccl {

namespace {

constexpr double kRidgeLambda = 1e-8;

}  // namespace

double node_rss(const ColumnData& data, std::size_t node,
                const std::vector<std::size_t>& parents) {
  const auto n = static_cast<Eigen::Index>(data.front().size());
  const auto k = static_cast<Eigen::Index>(parents.size()) + 1;  // + intercept

  Eigen::MatrixXd design(n, k);
  design.col(0).setOnes();
  for (std::size_t c = 0; c < parents.size(); ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      design(r, static_cast<Eigen::Index>(c) + 1) =
          data[parents[c]][static_cast<std::size_t>(r)];
  Eigen::VectorXd target(n);
  for (Eigen::Index r = 0; r < n; ++r)
    target(r) = data[node][static_cast<std::size_t>(r)];

  const Eigen::MatrixXd gram = design.transpose() * design;
  const Eigen::VectorXd moment = design.transpose() * target;
  Eigen::LDLT<Eigen::MatrixXd> solver(gram);
  Eigen::VectorXd beta;
  if (solver.info() == Eigen::Success && solver.isPositive()) {
    beta = solver.solve(moment);
  } else {
    // Ridge fallback for collinear parents.
    Eigen::MatrixXd ridged = gram;
    ridged.diagonal().array() += kRidgeLambda;
    beta = Eigen::LDLT<Eigen::MatrixXd>(ridged).solve(moment);
  }
  return (target - design * beta).squaredNorm();
}

double mdl_score(const Dag& dag, const ColumnData& data) {
  if (data.size() != dag.n_vars)
    throw ShapeMismatchError("mdl_score: column count != n_vars");
  if (data.empty()) throw ShapeMismatchError("mdl_score: no data");
  const std::size_t n = data.front().size();
  for (const auto& col : data)
    if (col.size() != n) throw ShapeMismatchError("mdl_score: ragged columns");
  if (n < 2) throw ShapeMismatchError("mdl_score: need at least 2 rows");

  const double dn = static_cast<double>(n);
  double fit = 0.0;
  std::size_t n_slopes = 0;
  for (std::size_t j = 0; j < dag.n_vars; ++j) {
    const auto parents = dag.parents(j);
    n_slopes += parents.size();
    double rss_per_n = node_rss(data, j, parents) / dn;
    if (rss_per_n < 1e-300) rss_per_n = 1e-300;  // keep the score finite
    fit += 0.5 * dn * std::log(rss_per_n);
  }
  const double n_params = static_cast<double>(dag.n_vars + n_slopes);
  const double complexity =
      (n_params + static_cast<double>(dag.edges.size())) * std::log(dn) / 2.0;
  return fit + complexity;
}

}  // namespace ccl
