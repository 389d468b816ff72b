#pragma once

// Quotients of ordered decompositions and the cover degrees between them.
//
// An ordered 6-tuple is a point of VSP_ord; marking one entry gives VSP_6
// (PointedDecomposition); splitting into two unordered triples gives VSP^6
// (Bipartition). On the moduli side these correspond to A2(1,7;2,2),
// A2(1,7)^-_sym and A2(1,7)^+_sym respectively.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kvsp/decomposer.hpp"

namespace kvsp {

using Ordering = std::array<int, 6>;

struct PointedDecomposition {
  Decomposition base;
  int marked = 0;
};

struct Bipartition {
  Decomposition base;
  // Both blocks sorted; first block holds index 0 so the key is swap-invariant.
  std::array<int, 3> first;
  std::array<int, 3> second;

  friend bool operator==(const Bipartition& a, const Bipartition& b) {
    return a.first == b.first && a.second == b.second;
  }
};

Bipartition make_bipartition(const Decomposition& d, std::array<int, 3> block_a, std::array<int, 3> block_b);

// Throws DuplicatePoints unless the 6 points are pairwise distinct.
void require_distinct(const Decomposition& d, double tol = kDistinctTol);

std::vector<Ordering> orderings(const Decomposition& d);
long orderings_count(const Decomposition& d);
std::vector<PointedDecomposition> to_pointed(const Decomposition& d);
std::vector<Bipartition> to_bipartitions(const Decomposition& d);

// Orderings whose leading slots are the given indices.
long f2_fiber_count(const Decomposition& d, int i, int j);
long f3_fiber_count(const Decomposition& d, int i, int j, int k);

bool same_pointed(const PointedDecomposition& a, const PointedDecomposition& b, double tol = kDistinctTol);

// True iff every pair (L_marked, L_j), j != marked, reconstructs the same
// pointed decomposition.
bool alpha_fiber_check(const Decomposition& d, int marked, double tol = 1e-9);

PointedDecomposition vsp6_chart(const std::array<Complex, 3>& params, double tol = 1e-9);

// Ordering- and scaling-invariant key: sorted normalized points rounded to
// `digits` decimal places.
std::string canonical_key(const Decomposition& d, int digits = 6);

struct DegreeTable {
  long phi6 = 0;        // VSP_ord -> VSP
  long chi6_lower = 0;  // VSP_6 -> VSP
  long chi6_upper = 0;  // VSP^6 -> VSP
  long f2 = 0;
  long f3 = 0;
  long alpha = 0;
  // Arrows from P3 drawn in the cover diagram without proof.
  long p3_to_p2 = 0;
  long p3_to_vsp = 0;
  long p3_to_vsp_upper = 0;
  bool bookkeeping_ok = false;
};

DegreeTable degree_table(const Decomposition& d);

}  // namespace kvsp
