#include "salvo/topology.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "salvo/errors.hpp"

namespace salvo {

std::vector<std::string> CommGraph::validate(const std::vector<std::vector<double>>& weights) {
  std::vector<std::string> problems;
  const std::size_t n = weights.size();
  if (n < 2) problems.push_back("graph: need at least 2 nodes, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i].size() != n) {
      problems.push_back("graph: row " + std::to_string(i) + " has " +
                         std::to_string(weights[i].size()) + " entries, expected " +
                         std::to_string(n));
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double a = weights[i][j];
      if (!std::isfinite(a) || a < 0.0)
        problems.push_back("graph: weight a[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] must be finite and non-negative");
      else if (i == j && a != 0.0)
        problems.push_back("graph: self-loop at node " + std::to_string(i));
    }
  }
  return problems;
}

CommGraph::CommGraph(std::vector<std::vector<double>> weights) : n_(weights.size()) {
  if (auto problems = validate(weights); !problems.empty()) throw ValidationError(std::move(problems));
  w_.reserve(n_ * n_);
  for (const auto& row : weights) w_.insert(w_.end(), row.begin(), row.end());
}

CommGraph CommGraph::ring(std::size_t n) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) w[(j + 1) % n][j] = 1.0;
  return CommGraph(std::move(w));
}

std::vector<std::vector<double>> CommGraph::weights() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = weight(i, j);
  return out;
}

CommGraph CommGraph::without_sources(const std::vector<bool>& keep) const {
  CommGraph g = *this;
  for (std::size_t j = 0; j < n_ && j < keep.size(); ++j)
    if (!keep[j])
      for (std::size_t i = 0; i < n_; ++i) g.w_[i * n_ + j] = 0.0;
  return g;
}

std::vector<std::vector<double>> laplacian(const CommGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<double>> L(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      L[i][j] = -g.weight(i, j);
      degree += g.weight(i, j);
    }
    L[i][i] = degree;
  }
  return L;
}

std::vector<bool> reachable_from(const CommGraph& g, std::size_t root) {
  const std::size_t n = g.size();
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    const std::size_t from = queue.front();
    queue.pop_front();
    for (std::size_t to = 0; to < n; ++to) {
      if (!seen[to] && g.has_edge(from, to)) {
        seen[to] = true;
        queue.push_back(to);
      }
    }
  }
  return seen;
}

bool has_spanning_tree(const CommGraph& g) {
  for (std::size_t root = 0; root < g.size(); ++root) {
    const auto seen = reachable_from(g, root);
    bool all = true;
    for (bool b : seen) all = all && b;
    if (all) return true;
  }
  return false;
}

std::vector<std::size_t> neighbors(const CommGraph& g, std::size_t i) {
  if (i >= g.size())
    throw std::out_of_range("node " + std::to_string(i) + " out of range for graph of size " +
                            std::to_string(g.size()));
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g.weight(i, j) > 0.0) out.push_back(j);
  return out;
}

}  // namespace salvo
