#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sgid/instance.hpp"

namespace sgid {

/** Everything the theory attaches to a position h in CK: the centers whose
 *  reads cover it (C_h), its shell S_h = C_hK \ {h}, the closed shell
 *  S̄_h = C_hK, and the shell type h^{-1}C_h (the center set normalized to the
 *  identity — equal types mean congruent shells). */
struct ShellInfo {
  Element h;
  Shape C_h;
  Shape S_h;
  Shape S_bar_h;
  Shape shell_type;
};

/// Requires h ∈ CK (then C_h is automatically nonempty).
ShellInfo shell_info(const Instance& inst, const Element& h);

/// Partition of A ⊆ CK by shell type, keyed by the canonical type shape.
std::map<Shape, Shape> shell_type_index(const Instance& inst, const Shape& A);

/// Swaps the labels at a and b; an involution, requires a ≠ b, both in shape.
Pattern phi_swap(const Pattern& w, const Element& a, const Element& b);

/** A repeated-shell blocking configuration: a, b have the same shell type,
 *  disjoint center sets, identical shell labels (after aligning the shells by
 *  b a^{-1}) and different center labels.  Swapping the two center labels then
 *  preserves the read multiset. */
struct BlockingPair {
  Element a, b;
  Pattern swap_witness;  // phi_swap(w, a, b)
};

/// All blocking pairs of w, sorted by (a, b).  Search prunes by shell type,
/// then by shell-label fingerprint within a type.
std::vector<BlockingPair> find_repeated_shells(const Instance& inst, const Pattern& w);

struct NonIdCertificate {
  bool certified = false;
  std::optional<BlockingPair> pair;
};

/** Exact non-identifiability certificate: certified iff some blocking pair's
 *  swap lands outside the identifiability class of w (the class test filters
 *  the exceptional patterns whose swap is merely a C-preserving translate).
 *  Certifies on the first excluding pair in canonical order. */
NonIdCertificate certify_nonidentifiable(const Instance& inst, const Pattern& w);

/** Greedy Disjoint Shell Condition subset: scans B in canonical order, keeping
 *  b whenever its closed shell avoids every kept shell.  Each kept element
 *  excludes candidates only inside b(K^{-1}K)^2, so |D| ≥ |B| / |(K^{-1}K)^2|. */
Shape dsc_greedy(const Instance& inst, const Shape& B);

struct NConditionReport {
  double n1_ratio = 0.0;  // ln|I_B| / ln|CK|
  double n2_ratio = 0.0;  // ln|B| / ln|CK|
  bool n3 = false;        // |K^{-1}K| <= (1-eps)·(2/H2(p))·ln|CK|
};

NConditionReport check_N_conditions(const Instance& inst, const Shape& B, const ProbVector& p,
                                    double eps);

struct RsLowerBound {
  double value = 0.0;
  bool vacuous = false;  // value not a useful bound (≤ 0 or not finite)
};

/** Lower bound on the probability that a repeated shell exists, evaluated on a
 *  DSC set D (every represented shell type must have ≥ 2 members):
 *  1 − [4√|I_D|·(1−pi_2)^{-1} / (|D|·pi_2^{|K^{-1}K|/2})] ·
 *      [√|I_D| / (|D|·pi_2^{|K^{-1}K|/2}) + 2]. */
RsLowerBound rs_lower_bound(const Instance& inst, const Shape& D, const ProbVector& p);

/** Precomputed per-instance shell tables for the Monte Carlo hot loop.  For
 *  each CK cell: its type id, the CK indices of its shell cells in the shared
 *  normalized order of that type, and the indices (into C) of its center set.
 *  Also carries the class permutations of G_C so the exceptional filter can run
 *  on raw symbol arrays. */
struct ShellPlan {
  std::vector<std::uint32_t> type_id;
  std::vector<std::vector<std::uint32_t>> shell_cells;
  std::vector<std::vector<std::uint32_t>> center_ids;
  std::vector<std::vector<std::uint32_t>> cells_by_type;
  std::vector<std::vector<std::uint32_t>> class_perm;  // one permutation of CK per G_C member
};

ShellPlan make_shell_plan(const Instance& inst);

/// Existence-only variant of certify_nonidentifiable on raw CK symbols; the
/// verdict (not the chosen pair) matches the canonical-order API exactly.
bool certified_nonidentifiable(const ShellPlan& plan, const std::vector<Symbol>& cells);

}  // namespace sgid
