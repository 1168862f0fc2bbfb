#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sgid/instance.hpp"

namespace sgid {

/** The multiset of K-shaped reads of a pattern, location-erased: one entry per
 *  center, each stored as the symbol array of a pattern on K itself.  Entries
 *  are kept sorted so multiset equality is plain vector equality; the 128-bit
 *  fingerprint is a fast pre-filter over that sorted form. */
struct ReadMultiset {
  Shape K;
  std::vector<std::vector<Symbol>> reads;  // sorted lexicographically, |C| entries
  std::uint64_t fp_lo = 0, fp_hi = 0;
};

/// R_{C,K}(w): the read at center c maps k -> w(ck).  Requires w.shape = CK.
ReadMultiset reads(const Instance& inst, const Pattern& w);

/// True iff some bijection of centers matches the reads exactly.
bool multiset_equal(const ReadMultiset& r1, const ReadMultiset& r2);

/** The identifiability class of w: all v with sigma^g(v) = w for some
 *  C-preserving g, i.e. { translate(w, g^{-1}) : g in G_C }, deduplicated and
 *  sorted in pattern order.  Always contains w; size <= |G_C| <= |C|. */
std::vector<Pattern> identifiability_class(const Instance& inst, const Pattern& w);

inline constexpr std::uint64_t kDefaultOracleBudget = std::uint64_t{1} << 24;

/** Every pattern on CK with the same read multiset as w, found by backtracking:
 *  centers are visited in canonical order, each is assigned one of the
 *  remaining reads, and symbol constraints propagate through overlapping
 *  footprints.  Complete by the read-permutation characterization: a pattern
 *  has equal reads iff such an assignment exists.  `budget` caps the number of
 *  search-tree nodes; exceeding it raises BudgetExceeded. */
std::vector<Pattern> preimage_patterns(const Instance& inst, const Pattern& w,
                                       std::uint64_t budget = kDefaultOracleBudget);

struct OracleResult {
  bool identifiable = false;
  /// First (in pattern order) preimage member outside the class, when any.
  std::optional<Pattern> witness;
};

/** Exact identifiability oracle: w is identifiable iff every pattern with the
 *  same read multiset lies in its identifiability class. */
OracleResult oracle_identifiable(const Instance& inst, const Pattern& w,
                                 std::uint64_t budget = kDefaultOracleBudget);

}  // namespace sgid
