#pragma once

#include <cstdint>
#include <vector>

#include "sgid/rational.hpp"
#include "sgid/rng.hpp"
#include "sgid/shape.hpp"

namespace sgid {

/// Symbols are dense indices into an alphabet of known size.
using Symbol = std::uint8_t;
inline constexpr int kMaxAlphabet = 255;

/** A probability vector over the alphabet.
 *
 *  Runs in one of two numeric modes: double weights only (simulation), or
 *  double weights backed by exact rationals (oracle equality tests must not
 *  depend on floating-point luck).  At least two symbols must have positive
 *  probability — a degenerate vector makes every identifiability question
 *  trivial and is rejected at construction.
 */
class ProbVector {
 public:
  static ProbVector from_doubles(std::vector<double> w);
  static ProbVector from_rationals(std::vector<Rat> w);
  /// Uniform over q symbols, exact-rational mode.
  static ProbVector uniform(int q);

  std::size_t size() const { return w_.size(); }
  double weight(std::size_t a) const { return w_[a]; }
  bool has_exact() const { return !exact_.empty(); }
  const Rat& exact_weight(std::size_t a) const { return exact_[a]; }

  /// Maps a uniform u in [0,1) to a symbol by cdf inversion.
  Symbol sample_symbol(double u) const;

 private:
  ProbVector() = default;
  void finish();  // validates and builds the cdf

  std::vector<double> w_;
  std::vector<double> cum_;
  std::vector<Rat> exact_;
};

/// pi_i(p) = sum_a p_a^i, the i-fold collision probability.  Requires i >= 1.
double pi_i(const ProbVector& p, int i);
/// Exact-rational pi_i; requires rational mode.
Rat pi_i_exact(const ProbVector& p, int i);

/// Second-order Renyi entropy H_2(p) = -ln pi_2(p), in nats.  Always > 0.
double renyi2(const ProbVector& p);

/** A pattern: symbols attached to the cells of a Shape, stored in the shape's
 *  canonical order.  Pattern order (for witnesses and dedup) is lexicographic
 *  on the symbol array. */
struct Pattern {
  Shape shape;
  std::vector<Symbol> symbols;

  Symbol at(const Element& h) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Validates symbol range and length and assembles a pattern.
Pattern make_pattern(Shape shape, std::vector<Symbol> symbols, int alphabet);

/// sigma^g(w): pattern on g^{-1}·shape with value(h) = w(g·h).
Pattern translate(const GroupCtx& ctx, const Pattern& w, const Element& g);

/// w restricted to E; requires E ⊆ w.shape.
Pattern restrict(const Pattern& w, const Shape& E);

/// i.i.d. sample from p on the given shape; deterministic given the rng state.
Pattern sample(CounterRng& rng, const Shape& shape, const ProbVector& p);

}  // namespace sgid
