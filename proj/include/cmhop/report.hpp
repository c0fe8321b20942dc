#pragma once

#include <iosfwd>
#include "json.hpp"
#include <span>

#include "cmhop/montecarlo.hpp"

namespace cmhop {

inline constexpr const char* kReplicaCsvHeader =
    "size_index,N,replica,hopcount,LN,D1,D2,ratio1,ratio2,flagB,flagC,flagD,flagA,giant_mass,parity,failed";

// Per-replica CSV. hopcount is "inf", ">c", a number, or "na" for failed replicas;
// flag and giant_mass cells are empty when not collected.
void write_replica_csv_header(std::ostream& out);
void write_replica_csv_row(std::ostream& out, const ReplicaOutcome& o);

nlohmann::ordered_json summary_json(const SummaryTable& table);
nlohmann::ordered_json config_json(const ExperimentConfig& cfg);

// "bucket<TAB>probability" lines for one N.
void write_histogram_tsv(std::ostream& out, const SizeSummary& s);

// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace cmhop
