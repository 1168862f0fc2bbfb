#pragma once

// Shared test utilities: seeded random instances and naive reference
// implementations the library results are checked against.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sgid/instance.hpp"
#include "sgid/pattern.hpp"
#include "sgid/rational.hpp"
#include "sgid/reads.hpp"
#include "sgid/rng.hpp"
#include "sgid/shape.hpp"

namespace sgid::testing {

inline Element el(const GroupCtx& ctx, std::vector<std::int64_t> payload) {
  return make_element(ctx, std::move(payload));
}

inline Shape shape_of(const GroupCtx& ctx, const std::vector<std::vector<std::int64_t>>& payloads) {
  std::vector<Element> es;
  es.reserve(payloads.size());
  for (auto payload : payloads) es.push_back(make_element(ctx, std::move(payload)));
  return Shape::of(std::move(es));
}

/// Interval {lo..hi} as a 1-D lattice shape.
inline Shape interval(const GroupCtx& ctx, std::int64_t lo, std::int64_t hi) {
  std::vector<Element> es;
  for (std::int64_t x = lo; x <= hi; ++x) es.push_back(make_element(ctx, {x}));
  return Shape::of(std::move(es));
}

/// One representative context per group kind, cycling with `which`.
inline GroupCtx random_ctx(CounterRng& rng, int which) {
  switch (which % 5) {
    case 0: return z_lattice(1);
    case 1: return z_lattice(2);
    case 2: return cyclic_z(2 + static_cast<std::int64_t>(rng.next_below(11)));
    case 3: return free_group(2);
    default: return heisenberg3();
  }
}

inline Element random_element(CounterRng& rng, const GroupCtx& ctx, std::int64_t range) {
  const auto coord = [&] { return rng.next_in(-range, range); };
  switch (ctx.kind) {
    case GroupKind::ZLattice: {
      std::vector<std::int64_t> v;
      for (std::int64_t i = 0; i < ctx.param; ++i) v.push_back(coord());
      return make_element(ctx, std::move(v));
    }
    case GroupKind::CyclicZ:
      return make_element(ctx, {static_cast<std::int64_t>(rng.next_below(
                                   static_cast<std::uint64_t>(ctx.param)))});
    case GroupKind::FreeGroup: {
      std::vector<std::int64_t> word;
      const std::uint64_t len = rng.next_below(5);
      for (std::uint64_t i = 0; i < len; ++i) {
        const std::int64_t letter = 1 + static_cast<std::int64_t>(rng.next_below(
                                            static_cast<std::uint64_t>(ctx.param)));
        word.push_back(rng.next_below(2) ? letter : -letter);
      }
      return make_element(ctx, std::move(word));
    }
    default:
      return make_element(ctx, {coord(), coord(), coord()});
  }
}

inline Shape random_shape(CounterRng& rng, const GroupCtx& ctx, std::size_t max_size,
                          std::int64_t range) {
  const std::size_t n = 1 + rng.next_below(max_size);
  std::vector<Element> es;
  es.reserve(n);
  for (std::size_t i = 0; i < n; ++i) es.push_back(random_element(rng, ctx, range));
  return Shape::of(std::move(es));
}

/// Random rational probability vector with all entries positive.
inline ProbVector random_rational_p(CounterRng& rng, int q) {
  std::vector<Rat> w(static_cast<std::size_t>(q));
  Rat total = 0;
  for (auto& x : w) {
    x = Rat(1 + static_cast<long long>(rng.next_below(20)));
    total += x;
  }
  for (auto& x : w) x /= total;
  return ProbVector::from_rationals(std::move(w));
}

/** Reference repeat probability: enumerate every labeling of A ∪ gA and add up
 *  the probability of those where each cell matches its g-shift. */
inline Rat naive_repeat_prob(const GroupCtx& ctx, const Shape& A, const Element& g,
                             const ProbVector& p) {
  const Shape ground = set_union(A, translate_shape(ctx, g, A));
  const std::size_t n = ground.size();
  const auto q = p.size();
  std::vector<std::size_t> labels(n, 0);
  Rat total = 0;
  for (;;) {
    bool repeats = true;
    for (const Element& u : A) {
      const auto iu = ground.index_of(u);
      const auto igu = ground.index_of(mul(ctx, g, u));
      if (labels[static_cast<std::size_t>(iu)] != labels[static_cast<std::size_t>(igu)]) {
        repeats = false;
        break;
      }
    }
    if (repeats) {
      Rat prob = 1;
      for (std::size_t i = 0; i < n; ++i) prob *= p.exact_weight(labels[i]);
      total += prob;
    }
    std::size_t i = 0;
    while (i < n && ++labels[i] == q) labels[i++] = 0;
    if (i == n) break;
  }
  return total;
}

/// Same enumeration for the n-fold disjoint repeat event across translates
/// {e} ∪ gs.
inline Rat naive_disjoint_repeat_prob(const GroupCtx& ctx, const Shape& A,
                                      const std::vector<Element>& gs, const ProbVector& p) {
  Shape ground = A;
  for (const Element& g : gs) ground = set_union(ground, translate_shape(ctx, g, A));
  const std::size_t n = ground.size();
  const auto q = p.size();
  std::vector<std::size_t> labels(n, 0);
  Rat total = 0;
  for (;;) {
    bool repeats = true;
    for (const Element& u : A) {
      const auto base = labels[static_cast<std::size_t>(ground.index_of(u))];
      for (const Element& g : gs) {
        if (labels[static_cast<std::size_t>(ground.index_of(mul(ctx, g, u)))] != base) {
          repeats = false;
          break;
        }
      }
      if (!repeats) break;
    }
    if (repeats) {
      Rat prob = 1;
      for (std::size_t i = 0; i < n; ++i) prob *= p.exact_weight(labels[i]);
      total += prob;
    }
    std::size_t i = 0;
    while (i < n && ++labels[i] == q) labels[i++] = 0;
    if (i == n) break;
  }
  return total;
}

/// Every pattern on CK, in pattern order.  Only for tiny instances.
inline std::vector<Pattern> all_patterns(const Instance& inst) {
  const std::size_t n = inst.CK.size();
  const auto q = static_cast<Symbol>(inst.alphabet);
  std::vector<Pattern> out;
  std::vector<Symbol> symbols(n, 0);
  for (;;) {
    out.push_back(Pattern{inst.CK, symbols});
    std::size_t i = n;
    while (i > 0 && ++symbols[i - 1] == q) symbols[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

/// Reference preimage: scan all of A^{CK} for equal read multisets.
inline std::vector<Pattern> naive_preimage(const Instance& inst, const Pattern& w) {
  const ReadMultiset target = reads(inst, w);
  std::vector<Pattern> out;
  for (Pattern& v : all_patterns(inst))
    if (multiset_equal(reads(inst, v), target)) out.push_back(std::move(v));
  return out;
}

}  // namespace sgid::testing
