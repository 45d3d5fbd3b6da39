#pragma once

// Test-side reference constructions, kept independent of the library's
// sector-hopping builders: everything here goes through dense Pauli algebra
// on the full 2^M space.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pseudochain/topology.hpp"

namespace testsupport {

using Cplx = std::complex<double>;
using DenseC = Eigen::MatrixXcd;

inline DenseC pauli(char which) {
  DenseC m(2, 2);
  switch (which) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Cplx(0, -1), Cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default:  m.setIdentity();
  }
  return m;
}

// Site 0 acts on the lowest bit of the basis index.
inline DenseC site_operator(int spins, int site, char which) {
  DenseC result = DenseC::Identity(1, 1);
  for (int s = 0; s < spins; ++s) {
    const DenseC factor = (s == site) ? pauli(which) : DenseC::Identity(2, 2);
    DenseC next(result.rows() * 2, result.cols() * 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        next.block(i * result.rows(), j * result.cols(), result.rows(),
                   result.cols()) = factor(i, j) * result;
      }
    }
    result.swap(next);
  }
  return result;
}

// Basis convention: bit set = excited = |1>, and Z|1> = -|1>, so the local
// field term is B * (1 - Z)/2 with Z(bit set) = -1.
inline DenseC dense_full_hamiltonian(const pseudochain::PseudoChainSpec& spec) {
  const pseudochain::SiteMap map(spec);
  const int m = map.total_spins();
  const long dim = 1L << m;
  DenseC h = DenseC::Zero(dim, dim);
  auto add_exchange = [&](int a, int b, double j) {
    h += 0.5 * j *
         (site_operator(m, a, 'X') * site_operator(m, b, 'X') +
          site_operator(m, a, 'Y') * site_operator(m, b, 'Y'));
  };
  for (int bl = 0; bl < spec.block_count(); ++bl) {
    const auto& block = spec.blocks[bl];
    for (int mem = 0; mem < block.size; ++mem) {
      const int site = map.flatten(bl, mem);
      h += 0.5 * block.field *
           (DenseC::Identity(dim, dim) - site_operator(m, site, 'Z'));
    }
    for (int mem = 0; mem < block.size; ++mem) {
      for (int mem2 = mem + 1; mem2 < block.size; ++mem2) {
        add_exchange(map.flatten(bl, mem), map.flatten(bl, mem2),
                     block.intra_coupling);
      }
    }
    if (bl + 1 < spec.block_count()) {
      const auto& next = spec.blocks[bl + 1];
      const double amp = spec.inter_couplings[bl] /
                         std::sqrt(double(block.size) * next.size);
      for (int mem = 0; mem < block.size; ++mem) {
        for (int mem2 = 0; mem2 < next.size; ++mem2) {
          add_exchange(map.flatten(bl, mem), map.flatten(bl + 1, mem2), amp);
        }
      }
    }
  }
  return h;
}

inline pseudochain::PseudoChainSpec random_pseudo_chain(std::mt19937_64& rng,
                                                        int max_blocks = 5,
                                                        int max_block_size = 3,
                                                        int max_total_spins = 12,
                                                        double coupling_scale = 2.0) {
  std::uniform_int_distribution<int> nblocks(2, max_blocks);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    pseudochain::PseudoChainSpec spec;
    const int n = nblocks(rng);
    std::uniform_int_distribution<int> bsize(1, max_block_size);
    for (int i = 0; i < n; ++i) {
      pseudochain::BlockSpec b;
      b.size = (i == 0 || i == n - 1) ? 1 : bsize(rng);
      b.field = coupling_scale * unit(rng);
      b.intra_coupling = coupling_scale * unit(rng);
      spec.blocks.push_back(b);
    }
    for (int i = 0; i + 1 < n; ++i) {
      double j = 0.0;
      while (std::abs(j) < 0.25) j = coupling_scale * unit(rng);
      spec.inter_couplings.push_back(j);
    }
    if (spec.total_spins() <= max_total_spins && spec.total_spins() >= 2) {
      return spec;
    }
  }
}

}  // namespace testsupport
