#pragma once

#include <cstddef>
#include <vector>

namespace permconc {

struct Flow {
  std::size_t row;
  std::size_t col;
  double mass;
};

/// Dense min-cost transportation problem with fixed marginals, solved by the
/// primal network simplex on the bipartite spanning-tree basis.
///
/// Rows and columns with zero mass are dropped from the basis; costs are passed
/// row-major over the full index ranges. The basis is kept between calls to
/// solve(), so a sequence of cost matrices over the same marginals warm-starts.
class TransportSolver {
 public:
  TransportSolver(std::vector<double> supply, std::vector<double> demand);

  struct Result {
    double primal = 0.0;
    /// Certified lower bound on the optimum: Σ a u + Σ b v + Σ_i a_i min(0, min_j reduced_ij).
    double lower_bound = 0.0;
    std::size_t pivots = 0;
  };

  /// Throws std::invalid_argument when cost has the wrong size.
  Result solve(const std::vector<double>& cost);

  /// Basic cells of the current basis with positive mass, full indices.
  std::vector<Flow> flows() const;
  /// Dense plan, full index ranges.
  std::vector<double> plan() const;

  std::size_t rows() const { return supply_.size(); }
  std::size_t cols() const { return demand_.size(); }

 private:
  void initial_basis();
  void compute_tree(const std::vector<double>& cost);
  void compute_flows();

  std::vector<double> supply_, demand_;
  std::vector<std::size_t> row_ids_, col_ids_;  // active local -> full index
  std::vector<double> a_, b_;                   // active masses
  // Basis cells in local indices.
  std::vector<std::size_t> cell_row_, cell_col_;
  std::vector<double> cell_flow_;
  // Tree data over nodes 0..m-1 (rows) and m..m+k-1 (cols).
  std::vector<double> pot_;
  std::vector<std::size_t> parent_, parent_cell_, depth_, order_;
  bool has_basis_ = false;
};

}  // namespace permconc
