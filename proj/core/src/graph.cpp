#include "ccl/graph.hpp"

#include <algorithm>

#include "ccl/errors.hpp"

namespace ccl {

namespace {

UndirectedEdge canonical(std::size_t i, std::size_t j) {
  return i < j ? UndirectedEdge{i, j} : UndirectedEdge{j, i};
}

}  // namespace

bool Skeleton::has_edge(std::size_t i, std::size_t j) const {
  return edges.count(canonical(i, j)) > 0;
}

void Skeleton::add_edge(std::size_t i, std::size_t j) {
  if (i == j) throw InvalidConfigError("skeleton: self-loop");
  if (i >= n_vars || j >= n_vars) throw InvalidConfigError("skeleton: node out of range");
  edges.insert(canonical(i, j));
}

void Skeleton::remove_edge(std::size_t i, std::size_t j) {
  edges.erase(canonical(i, j));
}

std::vector<std::size_t> Skeleton::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : edges) {
    if (a == i) out.push_back(b);
    if (b == i) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Skeleton Skeleton::complete(std::size_t n_vars) {
  Skeleton s;
  s.n_vars = n_vars;
  for (std::size_t i = 0; i < n_vars; ++i)
    for (std::size_t j = i + 1; j < n_vars; ++j) s.edges.insert({i, j});
  return s;
}

bool Dag::has_edge(std::size_t from, std::size_t to) const {
  return edges.count({from, to}) > 0;
}

bool Dag::would_create_cycle(std::size_t from, std::size_t to) const {
  if (from == to) return true;
  // Cycle iff a directed path to -> ... -> from already exists.
  std::vector<std::size_t> stack = {to};
  std::vector<bool> seen(n_vars, false);
  seen[to] = true;
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (node == from) return true;
    for (const auto& [a, b] : edges) {
      if (a == node && !seen[b]) {
        seen[b] = true;
        stack.push_back(b);
      }
    }
  }
  return false;
}

void Dag::add_edge(std::size_t from, std::size_t to) {
  if (from == to) throw InvalidConfigError("dag: self-loop");
  if (from >= n_vars || to >= n_vars) throw InvalidConfigError("dag: node out of range");
  if (would_create_cycle(from, to)) throw InvalidConfigError("dag: edge would create a cycle");
  edges.insert({from, to});
}

void Dag::remove_edge(std::size_t from, std::size_t to) {
  edges.erase({from, to});
}

std::vector<std::size_t> Dag::parents(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : edges)
    if (b == node) out.push_back(a);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Dag::spurious_edge_count(const Dag& truth) const {
  std::size_t count = 0;
  for (const auto& e : edges)
    if (truth.edges.count(e) == 0) ++count;
  return count;
}

std::string Dag::to_edge_list() const {
  std::string out;
  for (const auto& [a, b] : edges) {
    out += std::to_string(a);
    out += " -> ";
    out += std::to_string(b);
    out += '\n';
  }
  return out;
}

}  // namespace ccl
