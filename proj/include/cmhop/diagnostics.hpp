#pragma once

#include <cstdint>
#include <vector>

#include "cmhop/degree_model.hpp"
#include "cmhop/distance.hpp"
#include "cmhop/matching.hpp"

namespace cmhop {

struct OrderStats {
  std::vector<Degree> sorted_degrees_desc;  // top m
  double u_N = 0.0;
  std::uint64_t L_N = 0;  // saturating
  std::vector<double> ratios;
  double l_ratio = 0.0;
};

// Top-m order statistics scaled by u_N of the unconditioned law.
OrderStats order_stats(const DegreeSequence& seq, const DegreeLaw& law, std::size_t m);

// The k largest-degree nodes, ties to the smaller id; returned sorted by id.
std::vector<NodeId> giants_topk(const DegreeSequence& seq, std::size_t k);

// (1 + alpha (4 - tau)) / 4
double beta_exponent(double tau, double alpha);
// Whether 1/tau < alpha < 1/(tau-1), the regime where beta-giants are meaningful.
bool beta_regime(double tau, double alpha);
// Nodes with N^beta < degree < N^alpha. Needs a truncated law.
std::vector<NodeId> giants_beta(const DegreeSequence& seq, const DegreeLaw& law);

struct EventFlags {
  bool B = false;  // every stub of the two endpoints lands on a giant
  bool C = false;  // every pair of distinct giants shares an edge
  bool D = false;  // both endpoint degrees <= b_{D,eps}
  bool A = false;  // B && C && D
  std::vector<NodeId> giant_ids;
  Degree b_threshold = 0;
};

// Evaluates the events for endpoints a, b. Lazy matchings are revealed only
// as far as each event needs.
EventFlags event_flags(Matching& m, const DegreeSequence& seq, const DegreeLaw& law,
                       const std::vector<NodeId>& giants, double epsilon, RngStream& rng,
                       NodeId a = 0, NodeId b = 1);

double giant_mass_fraction(const DegreeSequence& seq, const std::vector<NodeId>& giants);

// A implies H <= 3.
inline bool implication_holds(const EventFlags& flags, const Hopcount& h) {
  return !flags.A || h.at_most(3);
}

}  // namespace cmhop
