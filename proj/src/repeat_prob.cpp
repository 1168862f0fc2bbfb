#include "sgid/repeat_prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sgid {

namespace {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::size_t> orbit_sizes(const OrbitDecomposition& od) {
  std::vector<std::size_t> out;
  out.reserve(od.orbits.size());
  for (const Shape& o : od.orbits) out.push_back(o.size());
  return out;
}

void check_disjoint_translates(const GroupCtx& ctx, const Shape& A, const std::vector<Element>& gs) {
  std::vector<Element> all(A.begin(), A.end());
  for (const Element& g : gs) {
    const Shape gA = translate_shape(ctx, g, A);
    all.insert(all.end(), gA.begin(), gA.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("disjoint_repeat_prob: translates are not pairwise disjoint");
}

}  // namespace

OrbitDecomposition orbit_decomposition(const GroupCtx& ctx, const Shape& A, const Element& g) {
  const Shape gA = translate_shape(ctx, g, A);
  const Shape ground = set_union(A, gA);
  DisjointSet ds(ground.size());
  for (const Element& u : A)
    ds.unite(static_cast<std::size_t>(ground.index_of(u)),
             static_cast<std::size_t>(ground.index_of(mul(ctx, g, u))));
  std::vector<std::vector<Element>> buckets(ground.size());
  for (std::size_t i = 0; i < ground.size(); ++i) buckets[ds.find(i)].push_back(ground[i]);
  OrbitDecomposition od;
  od.ground = ground;
  for (auto& b : buckets)
    if (!b.empty()) od.orbits.push_back(Shape{std::move(b)});
  return od;
}

double exact_repeat_prob(const GroupCtx& ctx, const Shape& A, const Element& g, const ProbVector& p) {
  if (A.empty()) throw std::invalid_argument("exact_repeat_prob: A must be nonempty");
  double log_prob = 0.0;
  for (std::size_t n : orbit_sizes(orbit_decomposition(ctx, A, g)))
    log_prob += std::log(pi_i(p, static_cast<int>(n)));
  return std::exp(log_prob);
}

Rat exact_repeat_prob_exact(const GroupCtx& ctx, const Shape& A, const Element& g, const ProbVector& p) {
  if (A.empty()) throw std::invalid_argument("exact_repeat_prob_exact: A must be nonempty");
  Rat prob = 1;
  for (std::size_t n : orbit_sizes(orbit_decomposition(ctx, A, g)))
    prob *= pi_i_exact(p, static_cast<int>(n));
  return prob;
}

double disjoint_repeat_prob(const GroupCtx& ctx, const Shape& A, const std::vector<Element>& gs,
                            const ProbVector& p) {
  if (A.empty()) throw std::invalid_argument("disjoint_repeat_prob: A must be nonempty");
  check_disjoint_translates(ctx, A, gs);
  const int n = static_cast<int>(gs.size()) + 1;
  return std::exp(static_cast<double>(A.size()) * std::log(pi_i(p, n)));
}

Rat disjoint_repeat_prob_exact(const GroupCtx& ctx, const Shape& A, const std::vector<Element>& gs,
                               const ProbVector& p) {
  if (A.empty()) throw std::invalid_argument("disjoint_repeat_prob_exact: A must be nonempty");
  check_disjoint_translates(ctx, A, gs);
  const int n = static_cast<int>(gs.size()) + 1;
  return rat_pow(pi_i_exact(p, n), static_cast<unsigned>(A.size()));
}

std::pair<double, double> repeat_prob_bounds(const GroupCtx& ctx, const Shape& A, const Element& g,
                                             const ProbVector& p) {
  if (is_identity(ctx, g))
    throw std::invalid_argument("repeat_prob_bounds: g = e has no nontrivial bounds");
  const double log_pi2 = std::log(pi_i(p, 2));
  const auto n = static_cast<double>(A.size());
  return {std::exp(n * log_pi2), std::exp(0.5 * n * log_pi2)};
}

double exceptional_upper_bound(const Instance& inst, const ProbVector& p) {
  const auto n = static_cast<double>(inst.CK.size());
  const double log_bound = 3.0 * std::log(n) + (0.5 * n - 1.0) * std::log(pi_i(p, 2));
  return std::min(1.0, std::exp(log_bound));
}

}  // namespace sgid
