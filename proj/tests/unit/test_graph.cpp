#include <doctest.h>

#include <vector>

#include "ccl/errors.hpp"
#include "ccl/graph.hpp"

TEST_SUITE_BEGIN("graph");

TEST_CASE("skeleton edges are canonical and queryable from both ends") {
  ccl::Skeleton sk;
  sk.n_vars = 4;
  sk.add_edge(2, 0);
  CHECK(sk.has_edge(0, 2));
  CHECK(sk.has_edge(2, 0));
  CHECK(sk.edges.count({0, 2}) == 1);  // stored as (min, max)
  CHECK(sk.edges.size() == 1);

  sk.add_edge(0, 2);  // duplicate in the other order is a no-op
  CHECK(sk.edges.size() == 1);

  sk.remove_edge(0, 2);
  CHECK_FALSE(sk.has_edge(2, 0));
}

TEST_CASE("complete skeleton has n(n-1)/2 edges") {
  const ccl::Skeleton sk = ccl::Skeleton::complete(4);
  CHECK(sk.n_vars == 4);
  CHECK(sk.edges.size() == 6);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(sk.has_edge(i, j));
}

TEST_CASE("neighbors are sorted and symmetric") {
  ccl::Skeleton sk;
  sk.n_vars = 5;
  sk.add_edge(3, 1);
  sk.add_edge(3, 0);
  sk.add_edge(3, 4);
  CHECK(sk.neighbors(3) == std::vector<std::size_t>{0, 1, 4});
  CHECK(sk.neighbors(1) == std::vector<std::size_t>{3});
  CHECK(sk.neighbors(2).empty());
}

TEST_CASE("dag rejects self-loops and cycles") {
  ccl::Dag dag;
  dag.n_vars = 3;
  dag.add_edge(0, 1);
  dag.add_edge(1, 2);
  CHECK(dag.has_edge(0, 1));
  CHECK_FALSE(dag.has_edge(1, 0));

  CHECK(dag.would_create_cycle(2, 0));
  CHECK_THROWS_AS(dag.add_edge(2, 0), ccl::InvalidConfigError);
  CHECK_THROWS_AS(dag.add_edge(1, 1), ccl::InvalidConfigError);

  // A diamond 0->1, 1->2, 0->2 stays acyclic.
  dag.add_edge(0, 2);
  CHECK(dag.edges.size() == 3);

  dag.remove_edge(1, 2);
  CHECK(dag.would_create_cycle(2, 0));  // 0->2 still present
  CHECK_FALSE(dag.would_create_cycle(2, 1));
}

TEST_CASE("parents lists incoming edges sorted") {
  ccl::Dag dag;
  dag.n_vars = 4;
  dag.add_edge(2, 3);
  dag.add_edge(0, 3);
  dag.add_edge(1, 3);
  CHECK(dag.parents(3) == std::vector<std::size_t>{0, 1, 2});
  CHECK(dag.parents(0).empty());
}

TEST_CASE("spurious edge count compares against a truth graph") {
  ccl::Dag truth;
  truth.n_vars = 3;
  truth.add_edge(0, 1);
  truth.add_edge(1, 2);

  ccl::Dag got;
  got.n_vars = 3;
  got.add_edge(0, 1);   // true
  got.add_edge(2, 1);   // reversed truth edge: spurious as directed
  got.add_edge(0, 2);   // absent from truth: spurious
  CHECK(got.spurious_edge_count(truth) == 2);
  CHECK(truth.spurious_edge_count(truth) == 0);
}

TEST_CASE("edge list text is deterministic") {
  ccl::Dag dag;
  dag.n_vars = 3;
  dag.add_edge(2, 0);
  dag.add_edge(0, 1);
  CHECK(dag.to_edge_list() == "0 -> 1\n2 -> 0\n");
}

TEST_SUITE_END();
