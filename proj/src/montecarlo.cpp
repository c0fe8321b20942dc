#include "cmhop/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "cmhop/errors.hpp"

namespace cmhop {

void ExperimentConfig::validate() const {
  if (!(tau > 1.0 && tau < 2.0)) {
    throw InputError("tau must lie in the supported range (1,2)");
  }
  if (alpha && !(*alpha > 0.0)) throw InputError("alpha must be positive");
  if (sizes.empty()) throw InputError("at least one node count is required");
  for (std::size_t n : sizes) {
    if (n < 2) throw InputError("node counts must be at least 2");
    if (n >= std::numeric_limits<NodeId>::max()) throw InputError("node count too large");
  }
  if (replicas < 1) throw InputError("replicas must be at least 1");
  if (cutoff < 1) throw InputError("cutoff must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0,1)");
  if (giants_k < 1) throw InputError("giant count k must be at least 1");
  if (collect_flags && giants_mode == GiantsMode::topk) {
    for (std::size_t n : sizes) {
      if (giants_k > n) throw InputError("giant count k exceeds a node count");
    }
  }
  if (giants_mode == GiantsMode::beta && (!alpha || std::isinf(*alpha))) {
    throw InputError("beta giants need a finite alpha");
  }
  if (stub_cap && *stub_cap < 2) throw InputError("stub cap must be at least 2");
}

DegreeLaw ExperimentConfig::law() const {
  return alpha ? DegreeLaw::truncated(tau, *alpha) : DegreeLaw::power_law(tau);
}

std::uint64_t ExperimentConfig::effective_stub_cap() const {
  if (stub_cap) return *stub_cap;
  return lazy ? kDefaultLazyStubCap : kDefaultEagerStubCap;
}

std::size_t bucket_count(std::uint32_t cutoff) { return static_cast<std::size_t>(cutoff) + 3; }

std::size_t bucket_index(const Hopcount& h, std::uint32_t cutoff) {
  switch (h.kind) {
    case Hopcount::Kind::finite:
      if (h.value > cutoff) throw InputError("finite hopcount above cutoff");
      return h.value;
    case Hopcount::Kind::exceeds_cutoff:
      return static_cast<std::size_t>(cutoff) + 1;
    case Hopcount::Kind::infinite:
      return static_cast<std::size_t>(cutoff) + 2;
  }
  return 0;
}

std::string bucket_label(std::size_t index, std::uint32_t cutoff) {
  if (index <= cutoff) return std::to_string(index);
  if (index == static_cast<std::size_t>(cutoff) + 1) return ">" + std::to_string(cutoff);
  return "inf";
}

SizeSummary::SizeSummary(std::size_t n, std::uint32_t c) : N(n), cutoff(c), counts(bucket_count(c), 0) {}

void SizeSummary::add(const ReplicaOutcome& o) {
  if (o.degree_capped) ++degree_capped;
  if (o.parity_corrected) ++parity_corrected;
  if (o.giant_mass) {
    giant_mass_sum += *o.giant_mass;
    ++giant_mass_n;
  }
  if (o.failed) {
    ++failed;
    return;
  }
  ++completed;
  ++counts[bucket_index(o.hopcount, cutoff)];
  if (o.flags) {
    ++flags_recorded;
    count_B += o.flags->B;
    count_C += o.flags->C;
    count_D += o.flags->D;
    count_A += o.flags->A;
    if (o.flags->A && !o.hopcount.at_most(3)) ++violations;
  }
}

void SizeSummary::merge(const SizeSummary& other) {
  if (other.N != N || other.cutoff != cutoff) throw InputError("merging summaries of different shape");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  completed += other.completed;
  failed += other.failed;
  degree_capped += other.degree_capped;
  parity_corrected += other.parity_corrected;
  flags_recorded += other.flags_recorded;
  count_B += other.count_B;
  count_C += other.count_C;
  count_D += other.count_D;
  count_A += other.count_A;
  violations += other.violations;
  giant_mass_sum += other.giant_mass_sum;
  giant_mass_n += other.giant_mass_n;
}

std::vector<double> SizeSummary::pmf() const {
  std::vector<double> p(counts.size(), 0.0);
  if (completed == 0) return p;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    p[i] = static_cast<double>(counts[i]) / static_cast<double>(completed);
  }
  return p;
}

double SizeSummary::probability(std::size_t bucket) const {
  return completed == 0 ? 0.0 : static_cast<double>(counts.at(bucket)) / static_cast<double>(completed);
}

Interval SizeSummary::interval(std::size_t bucket) const {
  return wilson_interval(counts.at(bucket), completed);
}

PEstimate estimate_p(const SizeSummary& s) {
  if (s.cutoff < 3) throw EstimationError("cutoff below 3 hides H=3");
  const std::uint64_t two = s.counts[2];
  const std::uint64_t three = s.counts[3];
  if (two + three == 0) throw EstimationError("no replica with H in {2,3}");
  PEstimate out;
  out.p = static_cast<double>(two) / static_cast<double>(two + three);
  out.ci = wilson_interval(two, two + three);
  return out;
}

void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& f) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  if (threads == 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next++; i < count; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ReplicaOutcome run_replica(const ExperimentConfig& cfg, std::size_t size_index, std::uint64_t replica) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = cfg.sizes.at(size_index);
  const DegreeLaw law = cfg.law();
  RngStream rng(derive_stream_seed(cfg.master_seed, size_index, replica));

  ReplicaOutcome out;
  out.size_index = size_index;
  out.N = n;
  out.replica = replica;

  const DegreeSequence seq = sample_sequence(law, n, rng);
  out.parity_corrected = seq.parity_corrected;
  out.degree_capped = seq.degree_capped;
  const OrderStats stats = order_stats(seq, law, 2);
  out.L_N = stats.L_N;
  out.ratio1 = stats.ratios[0];
  out.ratio2 = stats.ratios[1];
  out.l_ratio = stats.l_ratio;

  if (cfg.random_pair) {
    out.a = static_cast<NodeId>(rng.uniform_below(n));
    out.b = static_cast<NodeId>(rng.uniform_below(n - 1));
    if (out.b >= out.a) ++out.b;
  }
  out.D1 = seq.degrees[out.a];
  out.D2 = seq.degrees[out.b];

  std::vector<NodeId> giants;
  if (cfg.collect_flags) {
    giants = cfg.giants_mode == GiantsMode::topk ? giants_topk(seq, cfg.giants_k) : giants_beta(seq, law);
    out.giant_mass = giant_mass_fraction(seq, giants);
  }

  try {
    Matching m = cfg.lazy ? Matching::make_lazy(seq, cfg.effective_stub_cap())
                          : Matching::build_eager(seq, rng, cfg.effective_stub_cap());
    out.hopcount = bidirectional_hopcount(m, out.a, out.b, cfg.cutoff, rng);
    if (cfg.collect_flags && !giants.empty()) {
      const EventFlags f = event_flags(m, seq, law, giants, cfg.epsilon, rng, out.a, out.b);
      out.flags = ReplicaFlags{f.B, f.C, f.D, f.A};
    }
  } catch (const ResourceError& e) {
    out.failed = true;
    out.failure = e.what();
  }
  out.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  cfg.validate();
  ExperimentResult result;
  result.summary.cutoff = cfg.cutoff;
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
    std::vector<ReplicaOutcome> batch(cfg.replicas);
    parallel_for(cfg.replicas, cfg.threads, [&](std::uint64_t r) { batch[r] = run_replica(cfg, i, r); });
    SizeSummary summary(cfg.sizes[i], cfg.cutoff);
    for (ReplicaOutcome& o : batch) {
      summary.add(o);
      if (options.on_outcome) options.on_outcome(o);
      result.outcomes.push_back(std::move(o));
    }
    if (options.on_size_done) options.on_size_done(summary);
    result.summary.sizes.push_back(std::move(summary));
  }
  return result;
}

std::vector<OrderStats> sample_order_stats(const DegreeLaw& law, std::size_t n, std::uint64_t replicas,
                                           std::uint64_t master_seed, std::size_t m, std::size_t size_index,
                                           unsigned threads) {
  std::vector<OrderStats> out(replicas);
  parallel_for(replicas, threads, [&](std::uint64_t r) {
    RngStream rng(derive_stream_seed(master_seed, size_index, r));
    out[r] = order_stats(sample_sequence(law, n, rng), law, m);
  });
  return out;
}

void check_conditioned_regime(double tau, double alpha) {
  const double boundary = 1.0 / (tau - 1.0);
  if (!(alpha > boundary + 1e-12)) {
    throw InputError("alpha must exceed 1/(tau-1) = " + std::to_string(boundary) +
                     "; the boundary itself is excluded");
  }
}

double hopcount_tv(const SizeSummary& x, const SizeSummary& y) {
  if (x.cutoff != y.cutoff) throw InputError("summaries use different cutoffs");
  return total_variation(x.pmf(), y.pmf());
}

std::vector<double> compare_conditioned(const ExperimentConfig& unconditioned,
                                        const ExperimentConfig& conditioned) {
  if (unconditioned.alpha && !std::isinf(*unconditioned.alpha)) {
    throw InputError("reference run must be unconditioned");
  }
  if (!conditioned.alpha) throw InputError("conditioned run needs alpha");
  if (unconditioned.tau != conditioned.tau || unconditioned.sizes != conditioned.sizes ||
      unconditioned.cutoff != conditioned.cutoff) {
    throw InputError("compared runs must share tau, node counts and cutoff");
  }
  check_conditioned_regime(conditioned.tau, *conditioned.alpha);
  const SummaryTable u = run_experiment(unconditioned).summary;
  const SummaryTable c = run_experiment(conditioned).summary;
  std::vector<double> tv;
  for (std::size_t i = 0; i < u.sizes.size(); ++i) tv.push_back(hopcount_tv(u.sizes[i], c.sizes[i]));
  return tv;
}

}  // namespace cmhop
