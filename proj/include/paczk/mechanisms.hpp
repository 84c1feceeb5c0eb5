#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paczk/circuit.hpp"
#include "paczk/dataset.hpp"
#include "paczk/query.hpp"
#include "paczk/rng.hpp"

namespace paczk {

struct KMeansConfig {
  std::size_t k = 2;
  std::size_t iters = 1;
  double subsample_ratio = 1.0;

  void validate() const;
};

struct SvmConfig {
  std::size_t epochs = 1;
  double learning_rate = 0.1;   // eta_0; per-epoch step is eta_0 / (1 + lambda * t)
  double regularization = 0.0;  // lambda
  double subsample_ratio = 1.0;

  void validate() const;
};

// Ordered statistics tuple; the mechanism output has one coordinate per entry.
struct MechanismSpec {
  struct Entry {
    StatFn function = StatFn::kAverage;
    std::size_t attribute = 0;
  };
  std::vector<Entry> entries;

  std::size_t output_dim() const { return entries.size(); }
  void validate(const AttributeSchema& schema) const;
};

// Fixed-shape point-to-centroid assignment: active[i*n + j] is 1.0 when point
// j currently belongs to centroid i, else 0.0. Sizes never change during a run.
struct ClusterGroups {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<double> active;

  ClusterGroups() = default;
  ClusterGroups(std::size_t k_, std::size_t n_) : k(k_), n(n_), active(k_ * n_, 0.0) {}
  double at(std::size_t i, std::size_t j) const { return active[i * n + j]; }
};

struct KMeansRun {
  std::vector<double> centroids;  // k x d flattened, canonical order
  ClusterGroups groups;           // final assignment
};

// Deterministic fixed-trace K-means: centroids start at points 0..K-1, the
// initial assignment is round-robin, and exactly cfg.iters assignment/update
// rounds run through ClusterGroups masking. Output order is canonicalized via
// canonicalize_kmeans when labels are present.
KMeansRun kmeans_fixed(const Dataset& data, const KMeansConfig& cfg, Circuit& c);

// Reorders centroids so that position i holds the centroid inferred to
// represent class i. Inference is the majority label among actively assigned
// points (ties to the smaller label); when two centroids claim one class the
// larger vote count wins (ties to the lexicographically smaller centroid) and
// the loser takes the lowest free class. Pure index relabeling: contributes
// no traced arithmetic.
std::vector<double> canonicalize_kmeans(std::span<const double> centroids,
                                        const ClusterGroups& groups, std::span<const int> labels,
                                        std::size_t d);

struct SvmModel {
  std::vector<double> w;
  double b = 0.0;
};

// Hinge-loss subgradient descent over binary labels {0,1} mapped to {-1,+1};
// full pass per epoch in point order, exactly cfg.epochs epochs, canonical
// output. Fully traced.
SvmModel svm_fixed(const Dataset& data, const SvmConfig& cfg, Circuit& c);

// Scale (w, b) to unit norm, then flip the sign of both so the first nonzero
// coordinate of w is positive. Traced, branch-free.
SvmModel canonicalize_svm(std::span<const double> w, double b, Circuit& c);

struct DbStatResult {
  std::vector<double> values;
  std::uint64_t match_count = 0;
  bool valid = false;  // false when no row matched; values are then 0
};

// Branch-free filtered statistics: averages as masked-sum / max(count, 1),
// medians via a masked bitonic sorting network on power-of-two padding with
// excluded rows mapped to a large finite sentinel, then branch-free rank
// selection of the lower median. Fully traced.
DbStatResult db_stat_eval(const DbTable& table, const MechanismSpec& spec, const Formula& f,
                          Circuit& c);

// Uniformly random subset of exactly floor(ratio * n) points (Fisher-Yates
// prefix), emitted in original index order. Verifier-side.
Dataset subsample(const Dataset& data, double ratio, SeededRng& rng);

}  // namespace paczk
