#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgid/instance.hpp"

namespace sgid {

/// The overlap shapes F, each a nonempty subset of K.
struct OverlapFamily {
  std::vector<Shape> shapes;
};

/// Validates the family against the instance (nonempty shapes, all inside K).
OverlapFamily make_overlap_family(const Instance& inst, std::vector<Shape> shapes);

struct OverlapEdge {
  std::uint32_t c1 = 0, c2 = 0;  // indices into C, c1 < c2
  Element g;                     // witness translate
  std::uint32_t shape_index = 0;
  // invariant: g·F[shape_index] ⊆ c1·K ∩ c2·K
};

struct OverlapGraph {
  std::size_t n_centers = 0;
  std::vector<OverlapEdge> edges;
};

/** Builds the overlap graph: centers c1, c2 are adjacent iff some translate of
 *  some family shape fits inside both read footprints.  Candidate translates g
 *  are enumerated as (c1K ∩ c2K)·f0^{-1} for the first element f0 of F —
 *  complete, since g·f0 must land in the intersection. */
OverlapGraph build_overlap_graph(const Instance& inst, const OverlapFamily& fam);

bool is_connected(const OverlapGraph& graph);

struct UniqueLabelingResult {
  bool certified = false;
  std::string reason;  // empty when certified
};

/** Sound (not complete) identifiability certificate: the overlap graph is
 *  connected and, for every family shape F, all translates of F inside CK carry
 *  pairwise-distinct subpatterns of w.  Duplicate detection is
 *  fingerprint-first with exact confirmation inside colliding buckets. */
UniqueLabelingResult unique_labeling_certificate(const Instance& inst, const OverlapFamily& fam,
                                                 const Pattern& w);

/** Test utility: famB must refine famA (every F in famA contains some member
 *  of famB).  Returns whether "famA connected implies famB connected" holds on
 *  this instance. */
bool subfamily_connectivity_check(const Instance& inst, const OverlapFamily& famA,
                                  const OverlapFamily& famB);

struct IConditionReport {
  bool i1_connected = false;
  double i2_ratio = 0.0;  // ln|fam| / ln|CK| — reported, never judged, at a single n
  bool i3 = false;        // |F| >= (1+eps)·(2/H2(p))·ln|CK| for every F
};

IConditionReport check_I_conditions(const Instance& inst, const OverlapFamily& fam,
                                    const ProbVector& p, double eps);

/// 1 − Σ_F [ |CK|²·pi_2^{|F|} + |CK|·|FF^{-1}|·pi_2^{|F|/2} ]; negative means vacuous.
double identifiability_lower_bound(const Instance& inst, const OverlapFamily& fam,
                                   const ProbVector& p);

/** Precomputed per-instance window tables for the Monte Carlo hot loop: the
 *  connectivity bit and, per family shape, per translate g in T(F), the CK cell
 *  indices of g·F in F's canonical order.  Window uniqueness of a sampled
 *  pattern then needs only its symbol array. */
struct WindowPlan {
  bool connected = false;
  std::vector<std::vector<std::vector<std::uint32_t>>> windows;  // [shape][translate][cell]
};

WindowPlan make_window_plan(const Instance& inst, const OverlapFamily& fam);

/// The per-trial half of unique_labeling_certificate, on raw CK symbols.
bool unique_labeling_certified(const WindowPlan& plan, const std::vector<Symbol>& cells);

}  // namespace sgid
