#include "pseudochain/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pseudochain/errors.hpp"

namespace pseudochain {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

SectorBasis::SectorBasis(int spin_count, int excitation_count)
    : spin_count_(spin_count), excitation_count_(excitation_count) {
  if (spin_count < 1 || spin_count > kFullSpaceMaxSpins) {
    throw Error(ErrorCode::OutOfRange, "spin count outside supported range");
  }
  if (excitation_count < 0 || excitation_count > spin_count) {
    throw Error(ErrorCode::OutOfRange, "excitation count outside 0..M");
  }
  const std::int64_t count = binomial(spin_count, excitation_count);
  if (count > kSectorMaxStates) {
    throw Error(ErrorCode::CapExceeded, "sector larger than the state cap");
  }
  states_.reserve(static_cast<std::size_t>(count));
  if (excitation_count == 0) {
    states_.push_back(0);
    return;
  }
  std::uint32_t mask = (1u << excitation_count) - 1u;
  const std::uint32_t limit = 1u << spin_count;
  while (mask < limit) {
    states_.push_back(mask);
    // Gosper's hack: next ascending mask with the same popcount.
    const std::uint32_t c = mask & (0u - mask);
    const std::uint32_t r = mask + c;
    if (r >= limit || r == 0) break;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

std::int64_t SectorBasis::rank(std::uint32_t mask) const {
  std::int64_t r = 0;
  int seen = 0;
  for (int bit = 0; bit < spin_count_; ++bit) {
    if (mask & (1u << bit)) {
      ++seen;
      r += binomial(bit, seen);
    }
  }
  return r;
}

Eigen::VectorXd SparseOperator::apply(const Eigen::VectorXd& v) const {
  if (v.size() != mat.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match operator");
  }
  return mat * v;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != mat.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match operator");
  }
  Eigen::VectorXcd out(v.size());
  out.real() = mat * v.real().eval();
  out.imag() = mat * v.imag().eval();
  return out;
}

double SparseOperator::hermiticity_defect() const {
  Eigen::SparseMatrix<double> d = Eigen::SparseMatrix<double>(mat.transpose()) - mat;
  double worst = 0.0;
  for (int k = 0; k < d.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(d, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

double SiteCouplingGraph::max_coupling_scale() const {
  double scale = 0.0;
  for (const auto& e : edges) scale = std::max(scale, std::abs(e.amplitude));
  for (double f : fields) scale = std::max(scale, std::abs(f));
  return scale;
}

SiteCouplingGraph lower(const PseudoChainSpec& spec) {
  validate(spec);
  const SiteMap map(spec);
  SiteCouplingGraph graph;
  graph.spins = map.total_spins();
  graph.fields.resize(graph.spins);
  for (int b = 0; b < spec.block_count(); ++b) {
    const auto& block = spec.blocks[b];
    for (int m = 0; m < block.size; ++m) {
      graph.fields[map.flatten(b, m)] = block.field;
    }
    if (block.size >= 2 && block.intra_coupling != 0.0) {
      for (int m = 0; m < block.size; ++m) {
        for (int m2 = m + 1; m2 < block.size; ++m2) {
          graph.edges.push_back({map.flatten(b, m), map.flatten(b, m2),
                                 block.intra_coupling});
        }
      }
    }
    if (b + 1 < spec.block_count()) {
      const auto& next = spec.blocks[b + 1];
      const double amp = spec.inter_couplings[b] /
                         std::sqrt(static_cast<double>(block.size) * next.size);
      for (int m = 0; m < block.size; ++m) {
        for (int m2 = 0; m2 < next.size; ++m2) {
          graph.edges.push_back({map.flatten(b, m), map.flatten(b + 1, m2), amp});
        }
      }
    }
  }
  return graph;
}

SiteCouplingGraph lower(const ModelChainSpec& model) {
  validate(model);
  SiteCouplingGraph graph;
  graph.spins = model.site_count();
  graph.fields = model.effective_fields;
  for (int i = 0; i + 1 < graph.spins; ++i) {
    graph.edges.push_back({i, i + 1, model.couplings[i]});
  }
  return graph;
}

SparseOperator build_hamiltonian(const SiteCouplingGraph& graph, int excitations) {
  const SectorBasis basis(graph.spins, excitations);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(basis.size()) *
                   (graph.edges.size() / 2 + 2));
  for (std::int64_t r = 0; r < basis.size(); ++r) {
    const std::uint32_t s = basis.state(r);
    double diag = 0.0;
    for (int bit = 0; bit < graph.spins; ++bit) {
      if (s & (1u << bit)) diag += graph.fields[bit];
    }
    if (std::abs(diag) > kSparseDropTol) {
      triplets.emplace_back(static_cast<int>(r), static_cast<int>(r), diag);
    }
    for (const auto& e : graph.edges) {
      const bool occ_a = (s >> e.a) & 1u;
      const bool occ_b = (s >> e.b) & 1u;
      if (occ_a == occ_b) continue;
      if (std::abs(e.amplitude) <= kSparseDropTol) continue;
      const std::uint32_t s2 = s ^ (1u << e.a) ^ (1u << e.b);
      if (s2 < s) continue;  // store each pair once, symmetrize below
      const std::int64_t r2 = basis.rank(s2);
      triplets.emplace_back(static_cast<int>(r2), static_cast<int>(r), e.amplitude);
      triplets.emplace_back(static_cast<int>(r), static_cast<int>(r2), e.amplitude);
    }
  }
  SparseOperator op;
  op.mat.resize(basis.size(), basis.size());
  op.mat.setFromTriplets(triplets.begin(), triplets.end());
  op.mat.makeCompressed();
  return op;
}

SparseOperator build_hamiltonian(const PseudoChainSpec& spec, int excitations) {
  return build_hamiltonian(lower(spec), excitations);
}

SparseOperator build_hamiltonian(const ModelChainSpec& model, int excitations) {
  return build_hamiltonian(lower(model), excitations);
}

SparseOperator build_full_hamiltonian(const PseudoChainSpec& spec) {
  const SiteCouplingGraph graph = lower(spec);
  if (graph.spins > kFullSpaceMaxSpins) {
    throw Error(ErrorCode::CapExceeded, "full-space build above the spin cap");
  }
  const std::int64_t dim = std::int64_t{1} << graph.spins;
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::int64_t s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int bit = 0; bit < graph.spins; ++bit) {
      if (s & (std::int64_t{1} << bit)) diag += graph.fields[bit];
    }
    if (std::abs(diag) > kSparseDropTol) {
      triplets.emplace_back(static_cast<int>(s), static_cast<int>(s), diag);
    }
    for (const auto& e : graph.edges) {
      const bool occ_a = (s >> e.a) & 1;
      const bool occ_b = (s >> e.b) & 1;
      if (occ_a == occ_b) continue;
      if (std::abs(e.amplitude) <= kSparseDropTol) continue;
      const std::int64_t s2 = s ^ (std::int64_t{1} << e.a) ^ (std::int64_t{1} << e.b);
      if (s2 < s) continue;
      triplets.emplace_back(static_cast<int>(s2), static_cast<int>(s), e.amplitude);
      triplets.emplace_back(static_cast<int>(s), static_cast<int>(s2), e.amplitude);
    }
  }
  SparseOperator op;
  op.mat.resize(dim, dim);
  op.mat.setFromTriplets(triplets.begin(), triplets.end());
  op.mat.makeCompressed();
  return op;
}

EndOperator::EndOperator(int spin_count, Axis axis, int site)
    : spin_count_(spin_count), axis_(axis), site_(site) {
  if (site != 0 && site != spin_count - 1) {
    throw Error(ErrorCode::OutOfRange, "end operator site must be first or last");
  }
}

std::complex<double> EndOperator::scalar_prefactor() const {
  return axis_ == Axis::Y ? std::complex<double>(0.0, 1.0)
                          : std::complex<double>(1.0, 0.0);
}

Eigen::SparseMatrix<double> EndOperator::real_block(const SectorBasis& to,
                                                    const SectorBasis& from) const {
  if (to.spin_count() != spin_count_ || from.spin_count() != spin_count_) {
    throw Error(ErrorCode::DimensionMismatch, "sector spin counts do not match");
  }
  const int dk = to.excitation_count() - from.excitation_count();
  if (axis_ == Axis::Z ? dk != 0 : std::abs(dk) != 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "sector pair incompatible with the operator axis");
  }
  std::vector<Eigen::Triplet<double>> triplets;
  const std::uint32_t bit = 1u << site_;
  for (std::int64_t r = 0; r < from.size(); ++r) {
    const std::uint32_t s = from.state(r);
    if (axis_ == Axis::Z) {
      triplets.emplace_back(static_cast<int>(r), static_cast<int>(r),
                            (s & bit) ? -1.0 : 1.0);
      continue;
    }
    const bool excited = (s & bit) != 0;
    if (excited != (dk < 0)) continue;  // X/Y flip toward the target sector
    const std::uint32_t s2 = s ^ bit;
    double value = 1.0;
    if (axis_ == Axis::Y) {
      // Y = i * R with R|0> = |1>, R|1> = -|0> at this site.
      value = excited ? -1.0 : 1.0;
    }
    triplets.emplace_back(static_cast<int>(to.rank(s2)), static_cast<int>(r), value);
  }
  Eigen::SparseMatrix<double> block(to.size(), from.size());
  block.setFromTriplets(triplets.begin(), triplets.end());
  block.makeCompressed();
  return block;
}

Eigen::SparseMatrix<std::complex<double>> EndOperator::block(
    const SectorBasis& to, const SectorBasis& from) const {
  return (real_block(to, from) * scalar_prefactor())
      .cast<std::complex<double>>()
      .eval();
}

Eigen::SparseMatrix<std::complex<double>> EndOperator::full() const {
  if (spin_count_ > kFullSpaceMaxSpins) {
    throw Error(ErrorCode::CapExceeded, "full-space build above the spin cap");
  }
  const std::int64_t dim = std::int64_t{1} << spin_count_;
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  const std::int64_t bit = std::int64_t{1} << site_;
  for (std::int64_t s = 0; s < dim; ++s) {
    const bool excited = (s & bit) != 0;
    switch (axis_) {
      case Axis::Z:
        triplets.emplace_back(static_cast<int>(s), static_cast<int>(s),
                              excited ? -1.0 : 1.0);
        break;
      case Axis::X:
        triplets.emplace_back(static_cast<int>(s ^ bit), static_cast<int>(s), 1.0);
        break;
      case Axis::Y:
        triplets.emplace_back(static_cast<int>(s ^ bit), static_cast<int>(s),
                              std::complex<double>(0.0, excited ? -1.0 : 1.0));
        break;
    }
  }
  Eigen::SparseMatrix<std::complex<double>> m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

std::string to_coordinate_text(const SparseOperator& op) {
  std::ostringstream out;
  out.precision(17);
  out << "# dim " << op.dimension() << "\n";
  for (int k = 0; k < op.mat.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.mat, k); it; ++it) {
      out << it.row() << " " << it.col() << " " << it.value() << " " << 0.0 << "\n";
    }
  }
  return out.str();
}

}  // namespace pseudochain
