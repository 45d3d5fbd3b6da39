#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "pseudochain/topology.hpp"

namespace pseudochain {

// Hard size guards. Exceeding one is an error, never a silent truncation.
inline constexpr int kFullSpaceMaxSpins = 22;
inline constexpr std::int64_t kSectorMaxStates = 5'000'000;
inline constexpr int kTraceMaxSpins = 16;
inline constexpr double kSparseDropTol = 1e-15;

std::int64_t binomial(int n, int k);

/// Basis of all spin configurations with a fixed number of excitations,
/// stored as bitmasks in ascending numeric order (bit i set = spin i
/// excited = local state |1> with Z eigenvalue -1).
class SectorBasis {
 public:
  SectorBasis(int spin_count, int excitation_count);

  int spin_count() const { return spin_count_; }
  int excitation_count() const { return excitation_count_; }
  std::int64_t size() const { return static_cast<std::int64_t>(states_.size()); }
  std::uint32_t state(std::int64_t r) const { return states_[static_cast<std::size_t>(r)]; }
  const std::vector<std::uint32_t>& states() const { return states_; }

  /// Position of `mask` in the ascending order, via the combinatorial
  /// number system (no search).
  std::int64_t rank(std::uint32_t mask) const;

 private:
  int spin_count_;
  int excitation_count_;
  std::vector<std::uint32_t> states_;
};

/// Real symmetric sparse matrix. All Hamiltonians here are real in the
/// excitation basis; entries below kSparseDropTol are dropped.
struct SparseOperator {
  Eigen::SparseMatrix<double> mat;

  Eigen::Index dimension() const { return mat.rows(); }
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  double hermiticity_defect() const;
};

/// Pairwise spin couplings and per-site fields, the common lowering of both
/// spec flavors. An excitation hops along an edge with the edge amplitude;
/// the diagonal is the sum of the fields on excited sites.
struct SiteCouplingGraph {
  int spins = 0;
  std::vector<double> fields;
  struct Edge {
    int a;
    int b;
    double amplitude;
  };
  std::vector<Edge> edges;

  double max_coupling_scale() const;
};

SiteCouplingGraph lower(const PseudoChainSpec& spec);
SiteCouplingGraph lower(const ModelChainSpec& model);

SparseOperator build_hamiltonian(const SiteCouplingGraph& graph, int excitations);
SparseOperator build_hamiltonian(const PseudoChainSpec& spec, int excitations);
SparseOperator build_hamiltonian(const ModelChainSpec& model, int excitations);

/// Full 2^M matrix, for cross-checks at small M.
SparseOperator build_full_hamiltonian(const PseudoChainSpec& spec);

enum class Axis { X, Y, Z };

/// Single-site Pauli operator at one end of the chain, exposed as blocks
/// between excitation sectors: X and Y connect k to k±1, Z maps k to k.
/// Y is stored as i * R with real R, so the heavy kernels can stay real.
class EndOperator {
 public:
  EndOperator(int spin_count, Axis axis, int site);

  Axis axis() const { return axis_; }
  int site() const { return site_; }
  int spin_count() const { return spin_count_; }

  /// 1 for X and Z, i for Y; multiplies real_block to give the true block.
  std::complex<double> scalar_prefactor() const;

  /// Real structural part of the block taking sector `from` into sector `to`.
  Eigen::SparseMatrix<double> real_block(const SectorBasis& to,
                                         const SectorBasis& from) const;

  Eigen::SparseMatrix<std::complex<double>> block(const SectorBasis& to,
                                                  const SectorBasis& from) const;

  /// Full 2^M matrix (small M only), for tests and small-system work.
  Eigen::SparseMatrix<std::complex<double>> full() const;

 private:
  int spin_count_;
  Axis axis_;
  int site_;
};

/// Coordinate dump: a header line with the dimension, then one
/// "row col re im" line per stored entry.
std::string to_coordinate_text(const SparseOperator& op);

}  // namespace pseudochain
