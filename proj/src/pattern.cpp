#include "sgid/pattern.hpp"

#include <cmath>
#include <stdexcept>

namespace sgid {

void ProbVector::finish() {
  if (w_.size() < 2 || w_.size() > static_cast<std::size_t>(kMaxAlphabet))
    throw std::invalid_argument("ProbVector: alphabet size must be in [2, 255]");
  int positive = 0;
  double sum = 0.0;
  for (double x : w_) {
    if (x < 0.0 || !std::isfinite(x)) throw std::invalid_argument("ProbVector: negative or non-finite weight");
    if (x > 0.0) ++positive;
    sum += x;
  }
  if (positive < 2) throw std::invalid_argument("ProbVector: needs at least two positive symbols");
  if (exact_.empty()) {
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("ProbVector: weights do not sum to 1");
  } else {
    Rat rsum = 0;
    for (const Rat& x : exact_) {
      if (x < 0) throw std::invalid_argument("ProbVector: negative weight");
      rsum += x;
    }
    if (rsum != 1) throw std::invalid_argument("ProbVector: exact weights do not sum to 1");
  }
  cum_.resize(w_.size());
  double acc = 0.0;
  for (std::size_t a = 0; a < w_.size(); ++a) {
    acc += w_[a];
    cum_[a] = acc;
  }
  cum_.back() = 1.0;  // guard against rounding in the last bucket
}

ProbVector ProbVector::from_doubles(std::vector<double> w) {
  ProbVector p;
  p.w_ = std::move(w);
  p.finish();
  return p;
}

ProbVector ProbVector::from_rationals(std::vector<Rat> w) {
  ProbVector p;
  p.exact_ = std::move(w);
  p.w_.reserve(p.exact_.size());
  for (const Rat& x : p.exact_) p.w_.push_back(rat_to_double(x));
  p.finish();
  return p;
}

ProbVector ProbVector::uniform(int q) {
  if (q < 2) throw std::invalid_argument("ProbVector::uniform: need q >= 2");
  return from_rationals(std::vector<Rat>(q, Rat(1, q)));
}

Symbol ProbVector::sample_symbol(double u) const {
  // Linear cdf walk; alphabets are small.
  for (std::size_t a = 0; a + 1 < cum_.size(); ++a)
    if (u < cum_[a]) return static_cast<Symbol>(a);
  return static_cast<Symbol>(cum_.size() - 1);
}

double pi_i(const ProbVector& p, int i) {
  if (i < 1) throw std::invalid_argument("pi_i: order must be >= 1");
  double s = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    double t = 1.0;
    for (int j = 0; j < i; ++j) t *= p.weight(a);
    s += t;
  }
  return s;
}

Rat pi_i_exact(const ProbVector& p, int i) {
  if (i < 1) throw std::invalid_argument("pi_i_exact: order must be >= 1");
  if (!p.has_exact()) throw std::invalid_argument("pi_i_exact: probability vector has no exact weights");
  Rat s = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    s += rat_pow(p.exact_weight(a), static_cast<unsigned>(i));
  return s;
}

double renyi2(const ProbVector& p) {
  const double pi2 = pi_i(p, 2);
  if (pi2 >= 1.0) throw std::invalid_argument("renyi2: degenerate probability vector");
  return -std::log(pi2);
}

Symbol Pattern::at(const Element& h) const {
  const std::ptrdiff_t i = shape.index_of(h);
  if (i < 0) throw std::invalid_argument("Pattern::at: element outside the pattern shape");
  return symbols[static_cast<std::size_t>(i)];
}

Pattern make_pattern(Shape shape, std::vector<Symbol> symbols, int alphabet) {
  if (alphabet < 2 || alphabet > kMaxAlphabet)
    throw std::invalid_argument("make_pattern: alphabet size must be in [2, 255]");
  if (symbols.size() != shape.size())
    throw std::invalid_argument("make_pattern: symbol count does not match shape size");
  for (Symbol s : symbols)
    if (s >= alphabet) throw std::invalid_argument("make_pattern: symbol index outside alphabet");
  return Pattern{std::move(shape), std::move(symbols)};
}

Pattern translate(const GroupCtx& ctx, const Pattern& w, const Element& g) {
  const Shape out_shape = translate_shape(ctx, inverse(ctx, g), w.shape);
  std::vector<Symbol> out(out_shape.size());
  for (std::size_t i = 0; i < out_shape.size(); ++i)
    out[i] = w.at(mul(ctx, g, out_shape[i]));
  return Pattern{out_shape, std::move(out)};
}

Pattern restrict(const Pattern& w, const Shape& E) {
  std::vector<Symbol> out;
  out.reserve(E.size());
  for (const Element& h : E) {
    const std::ptrdiff_t i = w.shape.index_of(h);
    if (i < 0) throw std::invalid_argument("restrict: set is not contained in the pattern shape");
    out.push_back(w.symbols[static_cast<std::size_t>(i)]);
  }
  return Pattern{E, std::move(out)};
}

Pattern sample(CounterRng& rng, const Shape& shape, const ProbVector& p) {
  std::vector<Symbol> out(shape.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.sample_symbol(rng.next_double());
  return Pattern{shape, std::move(out)};
}

}  // namespace sgid
