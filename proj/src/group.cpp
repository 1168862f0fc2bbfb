#include "sgid/group.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sgid {

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void check_arity(const GroupCtx& ctx, const Element& g, const char* op) {
  switch (ctx.kind) {
    case GroupKind::ZLattice:
      if (g.v.size() != static_cast<std::size_t>(ctx.param))
        throw std::invalid_argument(std::string(op) + ": element does not match lattice dimension");
      return;
    case GroupKind::CyclicZ:
      if (g.v.size() != 1 || g.v[0] < 0 || g.v[0] >= ctx.param)
        throw std::invalid_argument(std::string(op) + ": element is not a canonical residue");
      return;
    case GroupKind::FreeGroup:
      for (std::int64_t x : g.v)
        if (x == 0 || x > ctx.param || x < -ctx.param)
          throw std::invalid_argument(std::string(op) + ": letter outside free-group rank");
      return;
    case GroupKind::Heisenberg3:
      if (g.v.size() != 3)
        throw std::invalid_argument(std::string(op) + ": element is not a Heisenberg triple");
      return;
  }
  throw std::invalid_argument(std::string(op) + ": unknown group kind");
}

/// Appends letter x to a reduced word, cancelling against the tail.
void push_reduced(std::vector<std::int64_t>& word, std::int64_t x) {
  if (!word.empty() && word.back() == -x) {
    word.pop_back();
  } else {
    word.push_back(x);
  }
}

void check_word_cap(const std::vector<std::int64_t>& word) {
  if (word.size() > kMaxWordLength)
    throw std::length_error("free-group word exceeds the length cap (64)");
}

}  // namespace

GroupCtx z_lattice(int d) {
  if (d < 1) throw std::invalid_argument("z_lattice: dimension must be >= 1");
  GroupCtx ctx{GroupKind::ZLattice, d, {}};
  for (int i = 0; i < d; ++i) {
    Element e{std::vector<std::int64_t>(d, 0)};
    e.v[i] = 1;
    ctx.generators.push_back(e);
    e.v[i] = -1;
    ctx.generators.push_back(e);
  }
  std::sort(ctx.generators.begin(), ctx.generators.end());
  return ctx;
}

GroupCtx cyclic_z(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("cyclic_z: modulus must be >= 1");
  GroupCtx ctx{GroupKind::CyclicZ, m, {}};
  if (m > 1) {
    ctx.generators.push_back(Element{{1}});
    if (m > 2) ctx.generators.push_back(Element{{m - 1}});
  }
  return ctx;
}

GroupCtx free_group(int k) {
  if (k < 1) throw std::invalid_argument("free_group: rank must be >= 1");
  GroupCtx ctx{GroupKind::FreeGroup, k, {}};
  for (int i = 1; i <= k; ++i) {
    ctx.generators.push_back(Element{{-i}});
    ctx.generators.push_back(Element{{i}});
  }
  std::sort(ctx.generators.begin(), ctx.generators.end());
  return ctx;
}

GroupCtx heisenberg3() {
  GroupCtx ctx{GroupKind::Heisenberg3, 0, {}};
  ctx.generators = {Element{{-1, 0, 0}}, Element{{0, -1, 0}}, Element{{0, 1, 0}}, Element{{1, 0, 0}}};
  return ctx;
}

GroupCtx with_generators(GroupCtx ctx, std::vector<Element> gens) {
  for (const Element& g : gens) {
    check_arity(ctx, g, "with_generators");
    const Element gi = inverse(ctx, g);
    if (std::find(gens.begin(), gens.end(), gi) == gens.end())
      throw std::invalid_argument("with_generators: generating set is not symmetric");
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  ctx.generators = std::move(gens);
  return ctx;
}

Element identity(const GroupCtx& ctx) {
  switch (ctx.kind) {
    case GroupKind::ZLattice: return Element{std::vector<std::int64_t>(ctx.param, 0)};
    case GroupKind::CyclicZ: return Element{{0}};
    case GroupKind::FreeGroup: return Element{{}};
    case GroupKind::Heisenberg3: return Element{{0, 0, 0}};
  }
  throw std::invalid_argument("identity: unknown group kind");
}

bool is_identity(const GroupCtx& ctx, const Element& g) { return g == identity(ctx); }

Element make_element(const GroupCtx& ctx, std::vector<std::int64_t> payload) {
  switch (ctx.kind) {
    case GroupKind::ZLattice:
      if (payload.size() != static_cast<std::size_t>(ctx.param))
        throw std::invalid_argument("make_element: lattice coordinate count mismatch");
      return Element{std::move(payload)};
    case GroupKind::CyclicZ:
      if (payload.size() != 1)
        throw std::invalid_argument("make_element: cyclic element takes one residue");
      return Element{{mod_floor(payload[0], ctx.param)}};
    case GroupKind::FreeGroup: {
      std::vector<std::int64_t> word;
      word.reserve(payload.size());
      for (std::int64_t x : payload) {
        if (x == 0 || x > ctx.param || x < -ctx.param)
          throw std::invalid_argument("make_element: letter outside free-group rank");
        push_reduced(word, x);
      }
      check_word_cap(word);
      return Element{std::move(word)};
    }
    case GroupKind::Heisenberg3:
      if (payload.size() != 3)
        throw std::invalid_argument("make_element: Heisenberg element takes three coordinates");
      return Element{std::move(payload)};
  }
  throw std::invalid_argument("make_element: unknown group kind");
}

Element mul(const GroupCtx& ctx, const Element& g, const Element& h) {
  check_arity(ctx, g, "mul");
  check_arity(ctx, h, "mul");
  switch (ctx.kind) {
    case GroupKind::ZLattice: {
      Element r = g;
      for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += h.v[i];
      return r;
    }
    case GroupKind::CyclicZ:
      return Element{{mod_floor(g.v[0] + h.v[0], ctx.param)}};
    case GroupKind::FreeGroup: {
      std::vector<std::int64_t> word = g.v;
      for (std::int64_t x : h.v) push_reduced(word, x);
      check_word_cap(word);
      return Element{std::move(word)};
    }
    case GroupKind::Heisenberg3:
      // (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')
      return Element{{g.v[0] + h.v[0], g.v[1] + h.v[1], g.v[2] + h.v[2] + g.v[0] * h.v[1]}};
  }
  throw std::invalid_argument("mul: unknown group kind");
}

Element inverse(const GroupCtx& ctx, const Element& g) {
  check_arity(ctx, g, "inverse");
  switch (ctx.kind) {
    case GroupKind::ZLattice: {
      Element r = g;
      for (auto& x : r.v) x = -x;
      return r;
    }
    case GroupKind::CyclicZ:
      return Element{{mod_floor(-g.v[0], ctx.param)}};
    case GroupKind::FreeGroup: {
      Element r;
      r.v.reserve(g.v.size());
      for (auto it = g.v.rbegin(); it != g.v.rend(); ++it) r.v.push_back(-*it);
      return r;
    }
    case GroupKind::Heisenberg3:
      return Element{{-g.v[0], -g.v[1], g.v[0] * g.v[1] - g.v[2]}};
  }
  throw std::invalid_argument("inverse: unknown group kind");
}

Element parse_element(const GroupCtx& ctx, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::int64_t> payload;
  std::string tok;
  while (in >> tok) {
    if (tok == "e" && ctx.kind == GroupKind::FreeGroup && payload.empty()) {
      return identity(ctx);
    }
    std::size_t used = 0;
    std::int64_t x = 0;
    try {
      x = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_element: bad integer '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("parse_element: bad integer '" + tok + "'");
    payload.push_back(x);
  }
  if (payload.empty() && ctx.kind != GroupKind::FreeGroup)
    throw std::invalid_argument("parse_element: empty coordinate list");
  return make_element(ctx, std::move(payload));
}

std::string format_element(const GroupCtx& ctx, const Element& g) {
  if (ctx.kind == GroupKind::FreeGroup && g.v.empty()) return "e";
  std::ostringstream out;
  for (std::size_t i = 0; i < g.v.size(); ++i) {
    if (i) out << ' ';
    out << g.v[i];
  }
  return out.str();
}

}  // namespace sgid
