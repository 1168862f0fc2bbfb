#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sgid {

/// The concrete group families supported by the library.
enum class GroupKind { ZLattice, CyclicZ, FreeGroup, Heisenberg3 };

/** A group element in canonical form.
 *
 *  The payload is group-specific:
 *    ZLattice(d)   d integer coordinates
 *    CyclicZ(m)    a single residue in [0, m)
 *    FreeGroup(k)  a reduced word of nonzero signed letters (+i = generator i, 1-based; -i = its inverse)
 *    Heisenberg3   the integer triple (x, y, z)
 *
 *  Canonicalization is idempotent, so element equality is payload equality, and
 *  the canonical order used for all deterministic iteration and tie-breaking is
 *  lexicographic on the payload.
 */
struct Element {
  std::vector<std::int64_t> v;

  friend auto operator<=>(const Element&, const Element&) = default;
};

/** A concrete countable group: kind, size parameter, and a symmetric generating
 *  set (used by balls and T-interiors).  Factories install the natural
 *  generators; `with_generators` overrides them. */
struct GroupCtx {
  GroupKind kind = GroupKind::ZLattice;
  std::int64_t param = 1;  // dimension d / modulus m / rank k; unused for Heisenberg3
  std::vector<Element> generators;
};

/// Reduced free-group words longer than this are an error, never a truncation.
inline constexpr std::size_t kMaxWordLength = 64;

GroupCtx z_lattice(int d);
GroupCtx cyclic_z(std::int64_t m);
GroupCtx free_group(int k);
GroupCtx heisenberg3();

/// Replaces the generating set; throws if the new set is not symmetric.
GroupCtx with_generators(GroupCtx ctx, std::vector<Element> gens);

Element identity(const GroupCtx& ctx);
bool is_identity(const GroupCtx& ctx, const Element& g);

/// Canonicalizes and validates a raw payload (reduces free words, wraps residues).
Element make_element(const GroupCtx& ctx, std::vector<std::int64_t> payload);

Element mul(const GroupCtx& ctx, const Element& g, const Element& h);
Element inverse(const GroupCtx& ctx, const Element& g);

/// Text form used by the CLI and pattern files: whitespace-separated payload
/// integers; the empty free-group word prints/parses as "e".
Element parse_element(const GroupCtx& ctx, const std::string& text);
std::string format_element(const GroupCtx& ctx, const Element& g);

}  // namespace sgid
