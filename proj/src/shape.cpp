#include "sgid/shape.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sgid {

Shape Shape::of(std::vector<Element> es) {
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return Shape{std::move(es)};
}

bool Shape::contains(const Element& g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

std::ptrdiff_t Shape::index_of(const Element& g) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), g);
  if (it == elems.end() || *it != g) return -1;
  return it - elems.begin();
}

Shape translate_shape(const GroupCtx& ctx, const Element& g, const Shape& A) {
  std::vector<Element> out;
  out.reserve(A.size());
  for (const Element& a : A) out.push_back(mul(ctx, g, a));
  return Shape::of(std::move(out));
}

Shape set_product(const GroupCtx& ctx, const Shape& A, const Shape& B) {
  std::vector<Element> out;
  out.reserve(A.size() * B.size());
  for (const Element& a : A)
    for (const Element& b : B) out.push_back(mul(ctx, a, b));
  return Shape::of(std::move(out));
}

Shape set_inverse(const GroupCtx& ctx, const Shape& A) {
  std::vector<Element> out;
  out.reserve(A.size());
  for (const Element& a : A) out.push_back(inverse(ctx, a));
  return Shape::of(std::move(out));
}

Shape set_union(const Shape& A, const Shape& B) {
  std::vector<Element> out;
  out.reserve(A.size() + B.size());
  std::set_union(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
  return Shape{std::move(out)};
}

Shape set_intersection(const Shape& A, const Shape& B) {
  std::vector<Element> out;
  std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
  return Shape{std::move(out)};
}

Shape set_difference(const Shape& A, const Shape& B) {
  std::vector<Element> out;
  std::set_difference(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
  return Shape{std::move(out)};
}

Shape ball(const GroupCtx& ctx, int r) {
  if (ctx.generators.empty()) throw std::invalid_argument("ball: context has no generating set");
  if (r < 0) throw std::invalid_argument("ball: radius must be >= 0");
  std::set<Element> seen{identity(ctx)};
  std::vector<Element> frontier{identity(ctx)};
  for (int step = 0; step < r && !frontier.empty(); ++step) {
    std::vector<Element> next;
    for (const Element& g : frontier)
      for (const Element& t : ctx.generators) {
        Element gt = mul(ctx, g, t);
        if (seen.insert(gt).second) next.push_back(std::move(gt));
      }
    frontier = std::move(next);
  }
  return Shape{std::vector<Element>(seen.begin(), seen.end())};
}

std::int64_t growth(const GroupCtx& ctx, int r) {
  return static_cast<std::int64_t>(ball(ctx, r).size());
}

Shape stabilizer(const GroupCtx& ctx, const Shape& A) {
  if (A.empty()) throw std::invalid_argument("stabilizer: set must be nonempty");
  const Element a0_inv = inverse(ctx, A[0]);
  std::vector<Element> out;
  for (const Element& a : A) {
    Element g = mul(ctx, a, a0_inv);
    // gA = A iff g·x ∈ A for every x (sizes agree).  Probing from the top down
    // bails on the first miss, which for shift-like candidates is immediate.
    bool ok = true;
    for (std::size_t i = A.size(); i-- > 0;) {
      if (!A.contains(mul(ctx, g, A[i]))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(g));
  }
  return Shape::of(std::move(out));
}

Shape interior_1(const GroupCtx& ctx, const Shape& A) {
  if (ctx.kind != GroupKind::ZLattice)
    throw std::invalid_argument("interior_1: requires a ZLattice context");
  const auto d = static_cast<std::size_t>(ctx.param);
  std::vector<Element> out;
  for (const Element& x : A) {
    bool inside = true;
    Element y = x;
    for (std::size_t i = 0; i < d && inside; ++i) {
      y.v[i] = x.v[i] + 1;
      inside = A.contains(y);
      y.v[i] = x.v[i] - 1;
      inside = inside && A.contains(y);
      y.v[i] = x.v[i];
    }
    if (inside) out.push_back(x);
  }
  return Shape{std::move(out)};
}

Shape interior_T(const GroupCtx& ctx, const Shape& A) {
  if (ctx.generators.empty()) throw std::invalid_argument("interior_T: context has no generating set");
  std::vector<Element> out;
  for (const Element& x : A) {
    bool inside = true;
    for (const Element& t : ctx.generators) {
      // x in tA  <=>  t^{-1} x in A
      if (!A.contains(mul(ctx, inverse(ctx, t), x))) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(x);
  }
  return Shape{std::move(out)};
}

std::int64_t diameter_inf(const GroupCtx& ctx, const Shape& A) {
  if (ctx.kind != GroupKind::ZLattice)
    throw std::invalid_argument("diameter_inf: requires a ZLattice context");
  if (A.empty()) throw std::invalid_argument("diameter_inf: set must be nonempty");
  // The l-infinity diameter of a finite lattice set is the largest per-axis extent.
  std::int64_t diam = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(ctx.param); ++i) {
    std::int64_t lo = A[0].v[i], hi = A[0].v[i];
    for (const Element& a : A) {
      lo = std::min(lo, a.v[i]);
      hi = std::max(hi, a.v[i]);
    }
    diam = std::max(diam, hi - lo);
  }
  return diam;
}

}  // namespace sgid
