#include "pseudochain/topology.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pseudochain/errors.hpp"

namespace pseudochain {

namespace {

bool all_finite(const std::vector<double>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EndBlockNotSingleton: return "EndBlockNotSingleton";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteParameter: return "NonFiniteParameter";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NonPositiveWeights: return "NonPositiveWeights";
    case ErrorCode::Breakdown: return "Breakdown";
    case ErrorCode::FitIllConditioned: return "FitIllConditioned";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::NoSignal: return "NoSignal";
    case ErrorCode::NoConsistentSolution: return "NoConsistentSolution";
    case ErrorCode::AmbiguousStructure: return "AmbiguousStructure";
    case ErrorCode::NotABlock: return "NotABlock";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

int PseudoChainSpec::total_spins() const {
  int m = 0;
  for (const auto& b : blocks) m += b.size;
  return m;
}

void validate(const PseudoChainSpec& spec) {
  const int n = spec.block_count();
  if (n == 0) {
    throw Error(ErrorCode::LengthMismatch, "spec has no blocks");
  }
  for (const auto& b : spec.blocks) {
    if (b.size < 1) {
      throw Error(ErrorCode::OutOfRange, "block size must be >= 1");
    }
    if (!std::isfinite(b.field) || !std::isfinite(b.intra_coupling)) {
      throw Error(ErrorCode::NonFiniteParameter, "block field/coupling not finite");
    }
  }
  if (spec.blocks.front().size != 1 || spec.blocks.back().size != 1) {
    throw Error(ErrorCode::EndBlockNotSingleton,
                "first and last blocks must contain a single spin");
  }
  if (static_cast<int>(spec.inter_couplings.size()) != n - 1) {
    std::ostringstream msg;
    msg << "expected " << n - 1 << " inter-block couplings, got "
        << spec.inter_couplings.size();
    throw Error(ErrorCode::LengthMismatch, msg.str());
  }
  if (!all_finite(spec.inter_couplings)) {
    throw Error(ErrorCode::NonFiniteParameter, "inter-block coupling not finite");
  }
  if (spec.total_spins() < 2) {
    throw Error(ErrorCode::OutOfRange, "chain must contain at least two spins");
  }
}

void validate(const ModelChainSpec& model) {
  const int n = model.site_count();
  if (n < 1) {
    throw Error(ErrorCode::LengthMismatch, "model chain has no sites");
  }
  if (static_cast<int>(model.couplings.size()) != n - 1) {
    std::ostringstream msg;
    msg << "expected " << n - 1 << " couplings for " << n << " sites, got "
        << model.couplings.size();
    throw Error(ErrorCode::LengthMismatch, msg.str());
  }
  if (!all_finite(model.couplings) || !all_finite(model.effective_fields)) {
    throw Error(ErrorCode::NonFiniteParameter, "model chain parameter not finite");
  }
}

ModelChainSpec effective_model(const PseudoChainSpec& spec) {
  validate(spec);
  ModelChainSpec model;
  model.couplings = spec.inter_couplings;
  model.effective_fields.reserve(spec.blocks.size());
  for (const auto& b : spec.blocks) {
    model.effective_fields.push_back(b.field + (b.size - 1) * b.intra_coupling);
  }
  return model;
}

PseudoChainSpec as_pseudo(const ModelChainSpec& model) {
  validate(model);
  PseudoChainSpec spec;
  spec.inter_couplings = model.couplings;
  spec.blocks.reserve(model.effective_fields.size());
  for (double b : model.effective_fields) {
    spec.blocks.push_back(BlockSpec{1, b, 0.0});
  }
  return spec;
}

bool is_linear(const PseudoChainSpec& spec) {
  for (const auto& b : spec.blocks) {
    if (b.size != 1) return false;
  }
  return true;
}

SiteMap::SiteMap(const PseudoChainSpec& spec) {
  offsets_.reserve(spec.blocks.size() + 1);
  offsets_.push_back(0);
  for (const auto& b : spec.blocks) {
    offsets_.push_back(offsets_.back() + b.size);
  }
  total_ = offsets_.back();
}

int SiteMap::flatten(int block, int member) const {
  if (block < 0 || block >= block_count()) {
    throw Error(ErrorCode::OutOfRange, "block index out of range");
  }
  if (member < 0 || member >= block_size(block)) {
    throw Error(ErrorCode::OutOfRange, "member index out of range");
  }
  return offsets_[block] + member;
}

std::pair<int, int> SiteMap::unflatten(int site) const {
  const int b = block_of(site);
  return {b, site - offsets_[b]};
}

int SiteMap::block_of(int site) const {
  if (site < 0 || site >= total_) {
    throw Error(ErrorCode::OutOfRange, "site index out of range");
  }
  int lo = 0;
  int hi = block_count() - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (offsets_[mid] <= site) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

PseudoChainSpec spec_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoError, std::string("bad spec JSON: ") + e.what());
  }
  if (!j.contains("blocks") || !j["blocks"].is_array()) {
    throw Error(ErrorCode::IoError, "spec JSON missing \"blocks\" array");
  }
  if (!j.contains("J") || !j["J"].is_array()) {
    throw Error(ErrorCode::IoError, "spec JSON missing \"J\" array");
  }
  PseudoChainSpec spec;
  for (const auto& jb : j["blocks"]) {
    if (!jb.contains("n")) {
      throw Error(ErrorCode::IoError, "block entry missing \"n\"");
    }
    BlockSpec b;
    b.size = jb["n"].get<int>();
    b.field = jb.value("B", 0.0);
    b.intra_coupling = jb.value("K", 0.0);
    spec.blocks.push_back(b);
  }
  for (const auto& jj : j["J"]) {
    spec.inter_couplings.push_back(jj.get<double>());
  }
  return spec;
}

std::string spec_to_json_string(const PseudoChainSpec& spec) {
  nlohmann::json j;
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : spec.blocks) {
    j["blocks"].push_back({{"n", b.size}, {"B", b.field}, {"K", b.intra_coupling}});
  }
  j["J"] = spec.inter_couplings;
  return j.dump();
}

PseudoChainSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open spec file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return spec_from_json_string(buffer.str());
}

}  // namespace pseudochain
