#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sgid/group.hpp"

namespace sgid {

/** A finite set of group elements, deduplicated and sorted in canonical order.
 *  Center sets C, read shapes K, overlap shapes F, shells, balls and blocking
 *  sets are all Shapes.  Immutable after construction by convention. */
struct Shape {
  std::vector<Element> elems;  // sorted, no duplicates

  /// Sorts and dedupes an arbitrary element list.
  static Shape of(std::vector<Element> es);

  bool contains(const Element& g) const;
  /// Index in canonical order, or -1 if absent.
  std::ptrdiff_t index_of(const Element& g) const;

  std::size_t size() const { return elems.size(); }
  bool empty() const { return elems.empty(); }
  const Element& operator[](std::size_t i) const { return elems[i]; }
  auto begin() const { return elems.begin(); }
  auto end() const { return elems.end(); }

  friend auto operator<=>(const Shape&, const Shape&) = default;
};

/// gA = {g a : a in A}.
Shape translate_shape(const GroupCtx& ctx, const Element& g, const Shape& A);

/// AB = {a b : a in A, b in B}, deduplicated.
Shape set_product(const GroupCtx& ctx, const Shape& A, const Shape& B);

/// A^{-1} = {a^{-1} : a in A}.
Shape set_inverse(const GroupCtx& ctx, const Shape& A);

Shape set_union(const Shape& A, const Shape& B);
Shape set_intersection(const Shape& A, const Shape& B);
Shape set_difference(const Shape& A, const Shape& B);

/// Closed ball T_r around the identity in the word metric of ctx's generators.
Shape ball(const GroupCtx& ctx, int r);

/// Growth function gamma(r) = |T_r|.
std::int64_t growth(const GroupCtx& ctx, int r);

/** Stabilizer G_A = {g : gA = A}.  Candidates are A·a0^{-1} for the first
 *  canonical element a0 (complete, since g·a0 must land in A), then filtered by
 *  exact translate comparison.  |G_A| <= |A|; contains the identity; closed
 *  under inversion. */
Shape stabilizer(const GroupCtx& ctx, const Shape& A);

/// One-step interior over the standard basis: {x in A : x ± e_i in A for all i}.
/// Requires a ZLattice context.
Shape interior_1(const GroupCtx& ctx, const Shape& A);

/// T-interior over ctx's generating set: intersection of A ∩ tA over t in T.
Shape interior_T(const GroupCtx& ctx, const Shape& A);

/// Max pairwise l-infinity distance.  Requires a ZLattice context; A nonempty.
std::int64_t diameter_inf(const GroupCtx& ctx, const Shape& A);

}  // namespace sgid
