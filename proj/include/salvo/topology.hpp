#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace salvo {

/// Weighted directed communication graph over the attackers.
///
/// weight(i, j) = a_ij is the weight of the edge j -> i: node i *receives*
/// from node j. This is the orientation the Laplacian row sums use, and it is
/// the direction information floods in during propagation.
///
/// Immutable after construction.
class CommGraph {
 public:
  /// Throws ValidationError unless n >= 2, the matrix is square, all weights
  /// are finite and non-negative, and the diagonal is zero.
  explicit CommGraph(std::vector<std::vector<double>> weights);

  /// Every invariant violated by `weights`, empty when valid.
  static std::vector<std::string> validate(const std::vector<std::vector<double>>& weights);

  /// Directed ring 0 -> 1 -> ... -> n-1 -> 0 with unit weights.
  static CommGraph ring(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double weight(std::size_t i, std::size_t j) const noexcept { return w_[i * n_ + j]; }
  bool has_edge(std::size_t from, std::size_t to) const noexcept { return weight(to, from) > 0.0; }

  std::vector<std::vector<double>> weights() const;

  /// Copy with every edge out of a node whose `keep` flag is false removed
  /// (a_ij = 0 for all i whenever !keep[j]).
  CommGraph without_sources(const std::vector<bool>& keep) const;

  bool operator==(const CommGraph&) const = default;

 private:
  std::size_t n_;
  std::vector<double> w_;
};

/// L_ij = -a_ij off the diagonal, L_ii = sum_{j != i} a_ij.
std::vector<std::vector<double>> laplacian(const CommGraph& g);

/// True iff some root reaches every node along directed edges.
bool has_spanning_tree(const CommGraph& g);

/// Nodes reachable from `root` (including itself), as a mask.
std::vector<bool> reachable_from(const CommGraph& g, std::size_t root);

/// In-neighbours { j : a_ij > 0 }, ascending. Throws std::out_of_range.
std::vector<std::size_t> neighbors(const CommGraph& g, std::size_t i);

}  // namespace salvo
