#pragma once

#include <utility>
#include <vector>

#include "sgid/instance.hpp"

namespace sgid {

/** The orbit decomposition of A ∪ gA under the symmetric-transitive closure of
 *  u -> gu (u in A).  Orbit sizes drive exact repeat probabilities. */
struct OrbitDecomposition {
  Shape ground;               // A ∪ gA
  std::vector<Shape> orbits;  // disjoint cover of ground, sorted by smallest member
};

OrbitDecomposition orbit_decomposition(const GroupCtx& ctx, const Shape& A, const Element& g);

/** Probability that an i.i.d. pattern agrees with its own g-translate on A:
 *  the product of pi_{|O|}(p) over orbits.  Computed in log space; hundreds of
 *  tiny factors would underflow a plain product.  A must be nonempty. */
double exact_repeat_prob(const GroupCtx& ctx, const Shape& A, const Element& g, const ProbVector& p);

/// Exact-rational variant; requires p in rational mode.
Rat exact_repeat_prob_exact(const GroupCtx& ctx, const Shape& A, const Element& g, const ProbVector& p);

/** Probability that A, g_2 A, ..., g_n A all carry the same labels, for
 *  pairwise-disjoint translates (g_1 = e implied): pi_n(p)^{|A|}.
 *  Overlapping translates are an error. */
double disjoint_repeat_prob(const GroupCtx& ctx, const Shape& A, const std::vector<Element>& gs,
                            const ProbVector& p);
Rat disjoint_repeat_prob_exact(const GroupCtx& ctx, const Shape& A, const std::vector<Element>& gs,
                               const ProbVector& p);

/** The bound sandwich (pi_2^{|A|}, pi_2^{|A|/2}) valid for any g != e; rejects
 *  g = e since the repeat event is then the whole space. */
std::pair<double, double> repeat_prob_bounds(const GroupCtx& ctx, const Shape& A, const Element& g,
                                             const ProbVector& p);

/** Upper bound min(1, |CK|^3 · pi_2^{|CK|/2 - 1}) on the probability that some
 *  repeated shell's swap stays inside the identifiability class. */
double exceptional_upper_bound(const Instance& inst, const ProbVector& p);

}  // namespace sgid
