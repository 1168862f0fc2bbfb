#include "sgid/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

namespace sgid {

namespace {

void validate_family(const Instance& inst, const OverlapFamily& fam) {
  if (fam.shapes.empty()) throw std::invalid_argument("overlap family: no shapes");
  for (const Shape& F : fam.shapes) {
    if (F.empty()) throw std::invalid_argument("overlap family: empty shape");
    for (const Element& f : F)
      if (!inst.K.contains(f))
        throw std::invalid_argument("overlap family: shape is not a subset of K");
  }
}

bool is_subset(const Shape& A, const Shape& B) {
  for (const Element& a : A)
    if (!B.contains(a)) return false;
  return true;
}

/// Finds (g, shape index) with gF ⊆ I, or nullopt.  Candidates are I·f0^{-1}.
std::optional<std::pair<Element, std::uint32_t>> find_witness(const GroupCtx& ctx,
                                                              const OverlapFamily& fam,
                                                              const Shape& I) {
  for (std::uint32_t fi = 0; fi < fam.shapes.size(); ++fi) {
    const Shape& F = fam.shapes[fi];
    const Element f0_inv = inverse(ctx, F[0]);
    for (const Element& u : I) {
      const Element g = mul(ctx, u, f0_inv);
      if (is_subset(translate_shape(ctx, g, F), I)) return std::make_pair(g, fi);
    }
  }
  return std::nullopt;
}

}  // namespace

OverlapFamily make_overlap_family(const Instance& inst, std::vector<Shape> shapes) {
  OverlapFamily fam{std::move(shapes)};
  validate_family(inst, fam);
  return fam;
}

OverlapGraph build_overlap_graph(const Instance& inst, const OverlapFamily& fam) {
  validate_family(inst, fam);
  const GroupCtx& ctx = inst.ctx;
  OverlapGraph graph;
  graph.n_centers = inst.C.size();

  // Adjacency requires c1K ∩ c2K nonempty, i.e. c2 ∈ c1·KK^{-1}, so only those
  // neighbor offsets are scanned.  By left-invariance the edge test and witness
  // depend on the offset δ = c1^{-1}c2 alone: gF ⊆ c1K ∩ c2K = c1(K ∩ δK)
  // iff (c1^{-1}g)F ⊆ K ∩ δK — so each offset is solved once and reused.
  const Shape offsets = set_product(ctx, inst.K, set_inverse(ctx, inst.K));
  std::map<Element, std::optional<std::pair<Element, std::uint32_t>>> memo;

  for (std::uint32_t i = 0; i < inst.C.size(); ++i) {
    const Element& c1 = inst.C[i];
    for (const Element& delta : offsets) {
      const Element c2 = mul(ctx, c1, delta);
      const std::ptrdiff_t j = inst.C.index_of(c2);
      if (j < 0 || static_cast<std::uint32_t>(j) <= i) continue;
      auto it = memo.find(delta);
      if (it == memo.end()) {
        const Shape I = set_intersection(inst.K, translate_shape(ctx, delta, inst.K));
        it = memo.emplace(delta, find_witness(ctx, fam, I)).first;
      }
      if (it->second) {
        graph.edges.push_back(OverlapEdge{i, static_cast<std::uint32_t>(j),
                                          mul(ctx, c1, it->second->first), it->second->second});
      }
    }
  }
  return graph;
}

bool is_connected(const OverlapGraph& graph) {
  if (graph.n_centers <= 1) return true;
  std::vector<std::vector<std::uint32_t>> adj(graph.n_centers);
  for (const OverlapEdge& e : graph.edges) {
    adj[e.c1].push_back(e.c2);
    adj[e.c2].push_back(e.c1);
  }
  std::vector<char> seen(graph.n_centers, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++visited;
        stack.push_back(u);
      }
  }
  return visited == graph.n_centers;
}

WindowPlan make_window_plan(const Instance& inst, const OverlapFamily& fam) {
  validate_family(inst, fam);
  const GroupCtx& ctx = inst.ctx;
  WindowPlan plan;
  plan.connected = is_connected(build_overlap_graph(inst, fam));
  plan.windows.resize(fam.shapes.size());
  for (std::size_t fi = 0; fi < fam.shapes.size(); ++fi) {
    const Shape& F = fam.shapes[fi];
    // T(F) = {g : gF ⊆ CK}; candidates CK·f0^{-1} (g·f0 must land in CK).
    const Element f0_inv = inverse(ctx, F[0]);
    std::vector<Element> candidates;
    candidates.reserve(inst.CK.size());
    for (const Element& u : inst.CK) candidates.push_back(mul(ctx, u, f0_inv));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Element& g : candidates) {
      std::vector<std::uint32_t> cells;
      cells.reserve(F.size());
      bool inside = true;
      for (const Element& f : F) {
        const std::ptrdiff_t idx = inst.CK.index_of(mul(ctx, g, f));
        if (idx < 0) {
          inside = false;
          break;
        }
        cells.push_back(static_cast<std::uint32_t>(idx));
      }
      if (inside) plan.windows[fi].push_back(std::move(cells));
    }
  }
  return plan;
}

bool unique_labeling_certified(const WindowPlan& plan, const std::vector<Symbol>& cells) {
  if (!plan.connected) return false;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> fps;
  for (const auto& windows : plan.windows) {
    fps.clear();
    fps.reserve(windows.size());
    for (std::uint32_t wi = 0; wi < windows.size(); ++wi) {
      std::uint64_t fp = 0xCBF29CE484222325ULL;
      for (std::uint32_t ci : windows[wi]) fp = (fp ^ cells[ci]) * 0x100000001B3ULL;
      fps.emplace_back(fp, wi);
    }
    std::sort(fps.begin(), fps.end());
    for (std::size_t i = 0; i + 1 < fps.size(); ++i) {
      if (fps[i].first != fps[i + 1].first) continue;
      // Exact confirmation across the whole colliding run.
      for (std::size_t j = i + 1; j < fps.size() && fps[j].first == fps[i].first; ++j) {
        const auto& wa = windows[fps[i].second];
        const auto& wb = windows[fps[j].second];
        bool equal = true;
        for (std::size_t t = 0; t < wa.size() && equal; ++t) equal = cells[wa[t]] == cells[wb[t]];
        if (equal) return false;
      }
    }
  }
  return true;
}

UniqueLabelingResult unique_labeling_certificate(const Instance& inst, const OverlapFamily& fam,
                                                 const Pattern& w) {
  if (w.shape != inst.CK)
    throw std::invalid_argument("unique_labeling_certificate: pattern shape is not CK");
  const WindowPlan plan = make_window_plan(inst, fam);
  if (!plan.connected) return {false, "overlap graph is disconnected"};
  if (!unique_labeling_certified(plan, w.symbols))
    return {false, "duplicate translate of an overlap shape"};
  return {true, ""};
}

bool subfamily_connectivity_check(const Instance& inst, const OverlapFamily& famA,
                                  const OverlapFamily& famB) {
  validate_family(inst, famA);
  validate_family(inst, famB);
  for (const Shape& F : famA.shapes) {
    bool refined = false;
    for (const Shape& Fp : famB.shapes)
      if (is_subset(Fp, F)) {
        refined = true;
        break;
      }
    if (!refined)
      throw std::invalid_argument(
          "subfamily_connectivity_check: second family does not refine the first");
  }
  const bool conn_a = is_connected(build_overlap_graph(inst, famA));
  const bool conn_b = is_connected(build_overlap_graph(inst, famB));
  return !conn_a || conn_b;
}

IConditionReport check_I_conditions(const Instance& inst, const OverlapFamily& fam,
                                    const ProbVector& p, double eps) {
  validate_family(inst, fam);
  if (eps <= 0.0) throw std::invalid_argument("check_I_conditions: eps must be > 0");
  IConditionReport rep;
  rep.i1_connected = is_connected(build_overlap_graph(inst, fam));
  const double log_ck = std::log(static_cast<double>(inst.CK.size()));
  rep.i2_ratio =
      fam.shapes.size() == 1 ? 0.0 : std::log(static_cast<double>(fam.shapes.size())) / log_ck;
  const double needed = (1.0 + eps) * (2.0 / renyi2(p)) * log_ck;
  rep.i3 = true;
  for (const Shape& F : fam.shapes)
    if (static_cast<double>(F.size()) < needed) rep.i3 = false;
  return rep;
}

double identifiability_lower_bound(const Instance& inst, const OverlapFamily& fam,
                                   const ProbVector& p) {
  validate_family(inst, fam);
  const double log_ck = std::log(static_cast<double>(inst.CK.size()));
  const double log_pi2 = std::log(pi_i(p, 2));
  double loss = 0.0;
  for (const Shape& F : fam.shapes) {
    const auto fsz = static_cast<double>(F.size());
    const Shape ffinv = set_product(inst.ctx, F, set_inverse(inst.ctx, F));
    loss += std::exp(2.0 * log_ck + fsz * log_pi2);
    loss += std::exp(log_ck + std::log(static_cast<double>(ffinv.size())) + 0.5 * fsz * log_pi2);
  }
  return 1.0 - loss;
}

}  // namespace sgid
