#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ccl {

// Column-per-variable data table for small-graph experiments.
using ColumnData = std::vector<std::vector<double>>;

using UndirectedEdge = std::pair<std::size_t, std::size_t>;  // first < second
using DirectedEdge = std::pair<std::size_t, std::size_t>;    // (from, to)

// Undirected adjacency structure; carries no orientation information.
struct Skeleton {
  std::size_t n_vars = 0;
  std::set<UndirectedEdge> edges;  // canonical (min, max) form

  bool has_edge(std::size_t i, std::size_t j) const;
  void add_edge(std::size_t i, std::size_t j);
  void remove_edge(std::size_t i, std::size_t j);
  std::vector<std::size_t> neighbors(std::size_t i) const;

  static Skeleton complete(std::size_t n_vars);

  bool operator==(const Skeleton&) const = default;
};

// Directed acyclic graph over n_vars nodes. Mutators enforce acyclicity.
struct Dag {
  std::size_t n_vars = 0;
  std::set<DirectedEdge> edges;

  bool has_edge(std::size_t from, std::size_t to) const;
  // True if adding from->to would close a directed cycle.
  bool would_create_cycle(std::size_t from, std::size_t to) const;
  // Throws InvalidConfigError on self-loops or cycle creation.
  void add_edge(std::size_t from, std::size_t to);
  void remove_edge(std::size_t from, std::size_t to);
  std::vector<std::size_t> parents(std::size_t node) const;

  // Number of edges present here but absent from `truth`.
  std::size_t spurious_edge_count(const Dag& truth) const;

  // One line per edge: "i -> j\n"; deterministic (set ordering).
  std::string to_edge_list() const;

  bool operator==(const Dag&) const = default;
};

}  // namespace ccl
