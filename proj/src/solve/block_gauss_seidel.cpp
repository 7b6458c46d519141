#include "bdpgo/solve/block_gauss_seidel.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace bdpgo {
namespace {

// AMD on the vertex graph of a block, expanded to its unknowns.
Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> fill_reducing_order(
    const std::vector<Eigen::Triplet<double>>& entries, Eigen::Index n, int group) {
  const Eigen::Index nv = n / group;
  std::vector<Eigen::Triplet<double>> pattern;
  pattern.reserve(entries.size() / static_cast<std::size_t>(group * group) + static_cast<std::size_t>(nv));
  for (Eigen::Index v = 0; v < nv; ++v) pattern.emplace_back(static_cast<int>(v), static_cast<int>(v), 1.0);
  for (const auto& t : entries)
    if (t.row() / group != t.col() / group) pattern.emplace_back(t.row() / group, t.col() / group, 1.0);
  Eigen::SparseMatrix<double> graph(nv, nv);
  graph.setFromTriplets(pattern.begin(), pattern.end());
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> by_vertex;
  Eigen::AMDOrdering<int>()(graph, by_vertex);
  // AMD lists the elimination order; position of vertex v is its inverse.
  const Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> position = by_vertex.inverse();
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> out(n);
  for (Eigen::Index v = 0; v < nv; ++v)
    for (int d = 0; d < group; ++d)
      out.indices()[group * v + d] = group * position.indices()[v] + d;
  return out;
}

}  // namespace

BlockGaussSeidel::BlockGaussSeidel(const BlockSystem& system, Exec exec) : exec_(exec) {
  const std::size_t nb = system.offsets.empty() ? 0 : system.offsets.size() - 1;
  std::vector<std::size_t> block_of(system.dim);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t r = system.offsets[b]; r < system.offsets[b + 1]; ++r) block_of[r] = b;

  std::vector<std::vector<Eigen::Triplet<double>>> diag(nb);
  std::vector<std::vector<Eigen::Triplet<double>>> off(nb);
  std::vector<std::set<std::size_t>> adjacent(nb);
  for (const auto& t : system.triplets) {
    const std::size_t r = static_cast<std::size_t>(t.row());
    const std::size_t c = static_cast<std::size_t>(t.col());
    const std::size_t b = block_of[r];
    const auto local = static_cast<int>(r - system.offsets[b]);
    if (block_of[c] == b) {
      diag[b].emplace_back(local, static_cast<int>(c - system.offsets[b]), t.value());
    } else {
      off[b].emplace_back(local, t.col(), t.value());
      adjacent[b].insert(block_of[c]);
    }
  }

  blocks_.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    Block& blk = blocks_[b];
    blk.offset = system.offsets[b];
    blk.size = system.offsets[b + 1] - system.offsets[b];
    if (!adjacent[b].empty()) coupled_ = true;
  }
  const int group = std::max(system.group, 1);
  std::vector<std::string> failures(nb);
  auto factor = [&](std::size_t b) {
    Block& blk = blocks_[b];
    const auto n = static_cast<Eigen::Index>(blk.size);
    blk.rhs = system.rhs.middleRows(static_cast<Eigen::Index>(blk.offset), n);
    blk.off_diagonal.resize(n, static_cast<Eigen::Index>(system.dim));
    blk.off_diagonal.setFromTriplets(off[b].begin(), off[b].end());
    if (blk.size == 0) return;
    blk.order = fill_reducing_order(diag[b], n, group);
    const auto& pos = blk.order.indices();
    for (auto& t : diag[b]) t = Eigen::Triplet<double>(pos[t.row()], pos[t.col()], t.value());
    Eigen::SparseMatrix<double> h(n, n);
    h.setFromTriplets(diag[b].begin(), diag[b].end());
    blk.solver = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::NaturalOrdering<int>>>(h);
    const auto& ldlt = *blk.solver;
    if (ldlt.info() != Eigen::Success ||
        ldlt.vectorD().minCoeff() <= 1e-12 * std::max(1.0, ldlt.vectorD().maxCoeff()))
      failures[b] = "local normal equations of block " + std::to_string(b) +
                    " are singular; the block holds no gauge anchor";
  };
  const auto nblocks = static_cast<std::ptrdiff_t>(nb);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) factor(static_cast<std::size_t>(b));
  } else {
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) factor(static_cast<std::size_t>(b));
  }
  for (const auto& f : failures)
    if (!f.empty()) throw AnchoringError(f);

  // Greedy colouring in block order.
  std::vector<int> color(nb, -1);
  for (std::size_t b = 0; b < nb; ++b) {
    std::set<int> used;
    for (std::size_t a : adjacent[b])
      if (color[a] >= 0) used.insert(color[a]);
    int c = 0;
    while (used.contains(c)) ++c;
    color[b] = c;
    if (static_cast<std::size_t>(c) >= colors_.size()) colors_.resize(static_cast<std::size_t>(c) + 1);
    colors_[static_cast<std::size_t>(c)].push_back(b);
  }
}

void BlockGaussSeidel::solve_block(const Block& b, Eigen::MatrixXd& x) const {
  if (b.size == 0) return;
  const Eigen::MatrixXd rhs = b.order * (b.rhs - b.off_diagonal * x);
  x.middleRows(static_cast<Eigen::Index>(b.offset), static_cast<Eigen::Index>(b.size)) =
      b.order.transpose() * b.solver->solve(rhs);
}

void BlockGaussSeidel::sweep(Eigen::MatrixXd& x) const {
  for (const auto& group : colors_) {
    const auto n = static_cast<std::ptrdiff_t>(group.size());
    if (exec_ == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < n; ++i) solve_block(blocks_[group[static_cast<std::size_t>(i)]], x);
    } else {
      for (std::ptrdiff_t i = 0; i < n; ++i) solve_block(blocks_[group[static_cast<std::size_t>(i)]], x);
    }
  }
}

SweepChange state_change(double scale) {
  return [scale](const Eigen::MatrixXd& before, const Eigen::MatrixXd& after) {
    return (after - before).norm() / std::max({after.norm(), scale, 1e-12});
  };
}

GaussSeidelRun run_gauss_seidel(const BlockGaussSeidel& gs, Eigen::MatrixXd& x, int max_sweeps,
                                double tol, const SweepChange& change) {
  GaussSeidelRun run;
  if (x.size() == 0) {
    run.converged = true;
    return run;
  }
  while (run.sweeps < max_sweeps) {
    const Eigen::MatrixXd prev = x;
    gs.sweep(x);
    ++run.sweeps;
    const double c = change(prev, x);
    if (!gs.coupled() || c < tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

}  // namespace bdpgo
