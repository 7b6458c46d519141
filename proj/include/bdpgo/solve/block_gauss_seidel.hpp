#pragma once

#include "bdpgo/kernels/exec.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace bdpgo {

/// Symmetric positive definite system H x = b whose unknowns are grouped into
/// contiguous blocks, one per robot. b may carry several right-hand sides.
struct BlockSystem {
  std::size_t dim = 0;
  /// Unknowns per vertex. Rows group*v .. group*v + group - 1 are ordered
  /// together by the fill-reducing ordering.
  int group = 1;
  std::vector<std::size_t> offsets;  ///< block boundaries, size blocks + 1
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::MatrixXd rhs;
};

/// Distributed block Gauss-Seidel: every block solves its own normal equations
/// exactly with the other blocks held at their latest values. Blocks are
/// greedily coloured so that same-coloured blocks share no coupling; colours
/// run in sequence, blocks of one colour run concurrently under Exec::parallel.
class BlockGaussSeidel {
 public:
  /// Factorizes every diagonal block, concurrently under Exec::parallel.
  /// Throws AnchoringError if one is singular.
  BlockGaussSeidel(const BlockSystem& system, Exec exec);

  void sweep(Eigen::MatrixXd& x) const;

  /// False when no block couples to another; one sweep is then exact.
  bool coupled() const { return coupled_; }
  std::size_t num_colors() const { return colors_.size(); }

 private:
  struct Block {
    std::size_t offset = 0;
    std::size_t size = 0;
    Eigen::SparseMatrix<double, Eigen::RowMajor> off_diagonal;  // size x dim
    Eigen::MatrixXd rhs;
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> order;  // local -> factor position
    std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::NaturalOrdering<int>>> solver;
  };

  void solve_block(const Block& b, Eigen::MatrixXd& x) const;

  std::vector<Block> blocks_;
  std::vector<std::vector<std::size_t>> colors_;
  bool coupled_ = false;
  Exec exec_;
};

struct GaussSeidelRun {
  int sweeps = 0;
  bool converged = false;
};

/// Relative change of one sweep, given the iterates before and after it.
using SweepChange = std::function<double(const Eigen::MatrixXd& before, const Eigen::MatrixXd& after)>;

/// ||after - before|| / max(||after||, scale). `scale` lets an increment be
/// measured against the state it updates.
SweepChange state_change(double scale = 0.0);

/// Sweeps until `change` drops below tol or max_sweeps is reached. Stops
/// after one sweep when the blocks are uncoupled.
GaussSeidelRun run_gauss_seidel(const BlockGaussSeidel& gs, Eigen::MatrixXd& x, int max_sweeps,
                                double tol, const SweepChange& change = state_change());

}  // namespace bdpgo
