#include "cmhop/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "cmhop/errors.hpp"

namespace cmhop {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_replica_csv_header(std::ostream& out) { out << kReplicaCsvHeader << '\n'; }

void write_replica_csv_row(std::ostream& out, const ReplicaOutcome& o) {
  auto flag = [&](bool ReplicaFlags::*field) -> std::string {
    return o.flags ? ((*o.flags).*field ? "1" : "0") : "";
  };
  out << o.size_index << ',' << o.N << ',' << o.replica << ','
      << (o.failed ? std::string("na") : o.hopcount.label()) << ',' << o.L_N << ',' << o.D1 << ','
      << o.D2 << ',' << format_double(o.ratio1) << ',' << format_double(o.ratio2) << ','
      << flag(&ReplicaFlags::B) << ',' << flag(&ReplicaFlags::C) << ',' << flag(&ReplicaFlags::D) << ','
      << flag(&ReplicaFlags::A) << ',' << (o.giant_mass ? format_double(*o.giant_mass) : "") << ','
      << (o.parity_corrected ? 1 : 0) << ',' << (o.failed ? 1 : 0) << '\n';
}

nlohmann::ordered_json summary_json(const SummaryTable& table) {
  using nlohmann::ordered_json;
  ordered_json root;
  root["cutoff"] = table.cutoff;
  ordered_json sizes = ordered_json::object();
  for (const SizeSummary& s : table.sizes) {
    ordered_json entry;
    entry["completed"] = s.completed;
    entry["failed"] = s.failed;
    entry["degree_capped"] = s.degree_capped;
    entry["parity_corrected"] = s.parity_corrected;
    ordered_json buckets = ordered_json::object();
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
      const Interval ci = s.interval(i);
      buckets[bucket_label(i, s.cutoff)] = {
          {"count", s.counts[i]}, {"p", s.probability(i)}, {"ci_lo", ci.lo}, {"ci_hi", ci.hi}};
    }
    entry["hopcount"] = std::move(buckets);
    try {
      const PEstimate p = estimate_p(s);
      entry["p_hat"] = p.p;
      entry["p_hat_ci"] = {p.ci.lo, p.ci.hi};
    } catch (const EstimationError&) {
      entry["p_hat"] = nullptr;
      entry["p_hat_ci"] = nullptr;
    }
    entry["mean_giant_mass"] =
        s.giant_mass_n > 0 ? ordered_json(s.giant_mass_sum / static_cast<double>(s.giant_mass_n)) : ordered_json();
    if (s.flags_recorded > 0) {
      const double n = static_cast<double>(s.flags_recorded);
      entry["events"] = {{"replicas", s.flags_recorded},
                         {"B", static_cast<double>(s.count_B) / n},
                         {"C", static_cast<double>(s.count_C) / n},
                         {"D", static_cast<double>(s.count_D) / n},
                         {"A", static_cast<double>(s.count_A) / n},
                         {"violations", s.violations}};
    }
    sizes[std::to_string(s.N)] = std::move(entry);
  }
  root["sizes"] = std::move(sizes);
  return root;
}

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["tau"] = cfg.tau;
  if (cfg.alpha) {
    j["alpha"] = std::isinf(*cfg.alpha) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(*cfg.alpha);
  } else {
    j["alpha"] = nullptr;
  }
  j["sizes"] = cfg.sizes;
  j["replicas"] = cfg.replicas;
  j["master_seed"] = cfg.master_seed;
  j["cutoff"] = cfg.cutoff;
  j["giants_mode"] = cfg.giants_mode == GiantsMode::topk ? "topk" : "beta";
  j["giants_k"] = cfg.giants_k;
  j["epsilon"] = cfg.epsilon;
  j["collect_flags"] = cfg.collect_flags;
  j["lazy"] = cfg.lazy;
  j["random_pair"] = cfg.random_pair;
  j["stub_cap"] = cfg.effective_stub_cap();
  j["threads"] = cfg.threads;
  j["seed_derivation"] = "mix64(mix64(mix64(master_seed) + size_index) + replica), mix64 = splitmix64";
  return j;
}

void write_histogram_tsv(std::ostream& out, const SizeSummary& s) {
  out << "bucket\tprobability\n";
  for (std::size_t i = 0; i < s.counts.size(); ++i) {
    out << bucket_label(i, s.cutoff) << '\t' << format_double(s.probability(i)) << '\n';
  }
}

}  // namespace cmhop
