#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pseudochain {

/// One site of a pseudo-chain: a group of spins that share a local field and a
/// common pairwise exchange coupling. A group of size 1 is an ordinary chain
/// site; its intra_coupling is stored but inert.
struct BlockSpec {
  int size = 1;
  double field = 0.0;          // B, energy units (hbar = 1)
  double intra_coupling = 0.0; // K, pairwise in-block exchange
};

/// A chain of blocks. Block i couples to block i+1 with strength
/// inter_couplings[i] / sqrt(size_i * size_{i+1}) per spin pair, so the
/// one-excitation effective coupling between blocks is inter_couplings[i].
struct PseudoChainSpec {
  std::vector<BlockSpec> blocks;
  std::vector<double> inter_couplings;

  int block_count() const { return static_cast<int>(blocks.size()); }
  int total_spins() const;
};

/// Plain linear chain with couplings J_i and per-site fields B'_i.
struct ModelChainSpec {
  std::vector<double> couplings;
  std::vector<double> effective_fields;

  int site_count() const { return static_cast<int>(effective_fields.size()); }
};

/// Throws Error on the first violated invariant. End blocks must be single
/// spins, coupling count must be block count minus one, all parameters finite,
/// and the chain must hold at least two spins.
void validate(const PseudoChainSpec& spec);

/// Model chains only need consistent lengths (N >= 1 sites, N-1 couplings).
void validate(const ModelChainSpec& model);

/// The linear chain indistinguishable from `spec` at the chain ends in the
/// one-excitation subspace: couplings copied, field of block i mapped to
/// B_i + (size_i - 1) * K_i.
ModelChainSpec effective_model(const PseudoChainSpec& spec);

/// View of a model chain as a pseudo-chain of singleton blocks.
PseudoChainSpec as_pseudo(const ModelChainSpec& model);

bool is_linear(const PseudoChainSpec& spec);

/// Block-major flat numbering of the spins: block 0 first, members in order.
class SiteMap {
 public:
  explicit SiteMap(const PseudoChainSpec& spec);

  int total_spins() const { return total_; }
  int block_count() const { return static_cast<int>(offsets_.size()) - 1; }
  int flatten(int block, int member) const;
  std::pair<int, int> unflatten(int site) const;
  int block_of(int site) const;
  int block_offset(int block) const { return offsets_[block]; }
  int block_size(int block) const { return offsets_[block + 1] - offsets_[block]; }

 private:
  std::vector<int> offsets_;
  int total_ = 0;
};

/// Interchange schema: {"blocks":[{"n":int,"B":float,"K":float},...],"J":[...]}.
/// "B" and "K" default to 0 when absent; "n" is required.
PseudoChainSpec spec_from_json_string(const std::string& text);
std::string spec_to_json_string(const PseudoChainSpec& spec);
PseudoChainSpec load_spec(const std::string& path);

}  // namespace pseudochain
