#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmhop/degree_model.hpp"
#include "cmhop/diagnostics.hpp"
#include "cmhop/distance.hpp"
#include "cmhop/stats.hpp"

namespace cmhop {

enum class GiantsMode { topk, beta };

struct ExperimentConfig {
  double tau = 1.8;
  // Truncation exponent; +infinity runs the conditioned sampler with no
  // effective bound (identical draws to the unconditioned law).
  std::optional<double> alpha;
  std::vector<std::size_t> sizes;
  std::uint64_t replicas = 1000;
  std::uint64_t master_seed = 42;
  std::uint32_t cutoff = kDefaultCutoff;
  GiantsMode giants_mode = GiantsMode::topk;
  std::size_t giants_k = 10;
  double epsilon = 0.5;
  bool collect_flags = false;
  bool lazy = true;
  bool random_pair = false;
  std::optional<std::uint64_t> stub_cap;  // default depends on mode
  unsigned threads = 0;                   // 0: hardware concurrency

  // Throws InputError on an invalid configuration.
  void validate() const;
  DegreeLaw law() const;
  std::uint64_t effective_stub_cap() const;
};

struct ReplicaFlags {
  bool B = false;
  bool C = false;
  bool D = false;
  bool A = false;
};

struct ReplicaOutcome {
  std::size_t size_index = 0;
  std::size_t N = 0;
  std::uint64_t replica = 0;
  NodeId a = 0;
  NodeId b = 1;
  Hopcount hopcount;
  std::uint64_t L_N = 0;
  Degree D1 = 0;  // degree of endpoint a
  Degree D2 = 0;  // degree of endpoint b
  double ratio1 = 0.0;
  double ratio2 = 0.0;
  double l_ratio = 0.0;
  std::optional<ReplicaFlags> flags;
  std::optional<double> giant_mass;
  bool parity_corrected = false;
  bool degree_capped = false;
  bool failed = false;
  std::string failure;
  double wall_time = 0.0;  // seconds
};

// Bucket layout for a cutoff c: 0..c, then ">c", then "inf".
std::size_t bucket_count(std::uint32_t cutoff);
std::size_t bucket_index(const Hopcount& h, std::uint32_t cutoff);
std::string bucket_label(std::size_t index, std::uint32_t cutoff);

// Aggregate for one N. add() and merge() form an associative, commutative fold.
struct SizeSummary {
  std::size_t N = 0;
  std::uint32_t cutoff = kDefaultCutoff;
  std::vector<std::uint64_t> counts;  // per bucket, completed replicas only
  std::uint64_t completed = 0;
  std::uint64_t failed = 0;
  std::uint64_t degree_capped = 0;
  std::uint64_t parity_corrected = 0;
  std::uint64_t flags_recorded = 0;
  std::uint64_t count_B = 0;
  std::uint64_t count_C = 0;
  std::uint64_t count_D = 0;
  std::uint64_t count_A = 0;
  std::uint64_t violations = 0;  // A and H > 3
  double giant_mass_sum = 0.0;
  std::uint64_t giant_mass_n = 0;

  SizeSummary() = default;
  SizeSummary(std::size_t n, std::uint32_t cutoff);

  void add(const ReplicaOutcome& o);
  void merge(const SizeSummary& other);

  std::vector<double> pmf() const;
  double probability(std::size_t bucket) const;
  Interval interval(std::size_t bucket) const;
  std::uint64_t count_finite(std::uint32_t d) const { return counts.at(d); }
};

struct SummaryTable {
  std::uint32_t cutoff = kDefaultCutoff;
  std::vector<SizeSummary> sizes;
};

struct PEstimate {
  double p = 0.0;
  Interval ci;
};

// p_hat = #{H=2} / #{H in {2,3}} with a Wilson interval. Throws if both counts are 0.
PEstimate estimate_p(const SizeSummary& s);

struct RunOptions {
  // Called once per replica, in (size index, replica) order.
  std::function<void(const ReplicaOutcome&)> on_outcome;
  // Called after each finished size with its summary.
  std::function<void(const SizeSummary&)> on_size_done;
};

struct ExperimentResult {
  SummaryTable summary;
  std::vector<ReplicaOutcome> outcomes;
};

// One replica; a pure function of (cfg, size_index, replica).
ReplicaOutcome run_replica(const ExperimentConfig& cfg, std::size_t size_index, std::uint64_t replica);

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

// Order statistics only (no graph), same stream derivation as run_experiment.
std::vector<OrderStats> sample_order_stats(const DegreeLaw& law, std::size_t n,
                                           std::uint64_t replicas, std::uint64_t master_seed,
                                           std::size_t m, std::size_t size_index = 0,
                                           unsigned threads = 0);

// Throws InputError unless alpha > 1/(tau-1) (infinity allowed).
void check_conditioned_regime(double tau, double alpha);

// Total variation between two hopcount pmfs with the same cutoff.
double hopcount_tv(const SizeSummary& x, const SizeSummary& y);

// TV per N between an unconditioned run and one conditioned with alpha > 1/(tau-1).
std::vector<double> compare_conditioned(const ExperimentConfig& unconditioned,
                                        const ExperimentConfig& conditioned);

// Runs f(i) for i in [0, count) on `threads` workers (0: hardware).
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& f);

}  // namespace cmhop
