#include "sgid/shells.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sgid/reads.hpp"

namespace sgid {

namespace {

void check_in_ck(const Instance& inst, const Shape& A, const char* op) {
  for (const Element& a : A)
    if (!inst.CK.contains(a)) throw std::invalid_argument(std::string(op) + ": set is not inside CK");
}

/// CK indices of the closed shell S̄_h = C_h K, sorted and deduplicated.
std::vector<std::uint32_t> closed_shell_indices(const Instance& inst, const Element& h) {
  const Shape k_inv = set_inverse(inst.ctx, inst.K);
  std::vector<std::uint32_t> out;
  for (const Element& ki : k_inv) {
    const Element c = mul(inst.ctx, h, ki);
    if (!inst.C.contains(c)) continue;
    for (const Element& k : inst.K)
      out.push_back(static_cast<std::uint32_t>(inst.CK.index_of(mul(inst.ctx, c, k))));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ShellInfo shell_info(const Instance& inst, const Element& h) {
  if (!inst.CK.contains(h)) throw std::invalid_argument("shell_info: position is not in CK");
  ShellInfo info;
  info.h = h;
  info.C_h = set_intersection(inst.C, translate_shape(inst.ctx, h, set_inverse(inst.ctx, inst.K)));
  info.S_bar_h = set_product(inst.ctx, info.C_h, inst.K);
  info.S_h = set_difference(info.S_bar_h, Shape{{h}});
  info.shell_type = translate_shape(inst.ctx, inverse(inst.ctx, h), info.C_h);
  return info;
}

std::map<Shape, Shape> shell_type_index(const Instance& inst, const Shape& A) {
  check_in_ck(inst, A, "shell_type_index");
  std::map<Shape, std::vector<Element>> groups;
  for (const Element& a : A) groups[shell_info(inst, a).shell_type].push_back(a);
  std::map<Shape, Shape> out;
  for (auto& [type, members] : groups) out.emplace(type, Shape::of(std::move(members)));
  return out;
}

Pattern phi_swap(const Pattern& w, const Element& a, const Element& b) {
  if (a == b) throw std::invalid_argument("phi_swap: positions must differ");
  const std::ptrdiff_t ia = w.shape.index_of(a);
  const std::ptrdiff_t ib = w.shape.index_of(b);
  if (ia < 0 || ib < 0) throw std::invalid_argument("phi_swap: position outside the pattern shape");
  Pattern out = w;
  std::swap(out.symbols[static_cast<std::size_t>(ia)], out.symbols[static_cast<std::size_t>(ib)]);
  return out;
}

ShellPlan make_shell_plan(const Instance& inst) {
  const GroupCtx& ctx = inst.ctx;
  const Shape k_inv = set_inverse(ctx, inst.K);
  const std::size_t n = inst.CK.size();

  ShellPlan plan;
  plan.type_id.resize(n);
  plan.shell_cells.resize(n);
  plan.center_ids.resize(n);

  std::map<Shape, std::uint32_t> type_registry;
  std::vector<Shape> shell_offsets;  // per type: the normalized shell (type·K) \ {e}

  for (std::size_t i = 0; i < n; ++i) {
    const Element& h = inst.CK[i];
    std::vector<std::uint32_t> centers;
    std::vector<Element> type_members;
    for (const Element& ki : k_inv) {
      const Element c = mul(ctx, h, ki);
      const std::ptrdiff_t cid = inst.C.index_of(c);
      if (cid < 0) continue;
      centers.push_back(static_cast<std::uint32_t>(cid));
      type_members.push_back(ki);  // h^{-1}·(h·ki) = ki
    }
    std::sort(centers.begin(), centers.end());
    Shape type = Shape::of(std::move(type_members));

    auto [it, fresh] = type_registry.emplace(std::move(type), static_cast<std::uint32_t>(type_registry.size()));
    if (fresh) {
      const Shape norm_shell =
          set_difference(set_product(ctx, it->first, inst.K), Shape{{identity(ctx)}});
      shell_offsets.push_back(norm_shell);
      plan.cells_by_type.emplace_back();
    }
    const std::uint32_t tid = it->second;
    plan.type_id[i] = tid;
    plan.cells_by_type[tid].push_back(static_cast<std::uint32_t>(i));
    plan.center_ids[i] = std::move(centers);
    auto& cells = plan.shell_cells[i];
    cells.reserve(shell_offsets[tid].size());
    for (const Element& u : shell_offsets[tid])
      cells.push_back(static_cast<std::uint32_t>(inst.CK.index_of(mul(ctx, h, u))));
  }

  for (const Element& g : inst.G_C) {
    const Element g_inv = inverse(ctx, g);
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
      perm[i] = static_cast<std::uint32_t>(inst.CK.index_of(mul(ctx, g_inv, inst.CK[i])));
    plan.class_perm.push_back(std::move(perm));
  }
  return plan;
}

namespace {

/// Whether phi_swap(w, a, b) equals translate(w, g^{-1}) for some g in G_C —
/// the exceptional case in which the swap stays identifiable.
bool swap_in_class(const ShellPlan& plan, const std::vector<Symbol>& cells, std::uint32_t a,
                   std::uint32_t b) {
  const auto swapped = [&](std::uint32_t i) -> Symbol {
    if (i == a) return cells[b];
    if (i == b) return cells[a];
    return cells[i];
  };
  for (const auto& perm : plan.class_perm) {
    // Class member v(i) = w(perm[i]).  The swap differs from w exactly at a and
    // b, so probe those positions before paying for the full scan (the identity
    // permutation is rejected right there).
    bool equal = swapped(a) == cells[perm[a]] && swapped(b) == cells[perm[b]];
    for (std::size_t i = 0; i < cells.size() && equal; ++i)
      equal = swapped(static_cast<std::uint32_t>(i)) == cells[perm[i]];
    if (equal) return true;
  }
  return false;
}

/// Enumerates verified repeated-shell pairs per type bucket.  The callback
/// returns true to stop early.
template <typename Emit>
void scan_blocking_pairs(const ShellPlan& plan, const std::vector<Symbol>& cells, Emit emit) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> fps;
  for (const auto& bucket : plan.cells_by_type) {
    if (bucket.size() < 2) continue;
    fps.clear();
    fps.reserve(bucket.size());
    for (std::uint32_t ci : bucket) {
      std::uint64_t fp = 0xCBF29CE484222325ULL;
      for (std::uint32_t si : plan.shell_cells[ci]) fp = (fp ^ cells[si]) * 0x100000001B3ULL;
      fps.emplace_back(fp, ci);
    }
    std::sort(fps.begin(), fps.end());
    for (std::size_t lo = 0; lo < fps.size();) {
      std::size_t hi = lo + 1;
      while (hi < fps.size() && fps[hi].first == fps[lo].first) ++hi;
      for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = i + 1; j < hi; ++j) {
          const std::uint32_t a = fps[i].second, b = fps[j].second;
          if (cells[a] == cells[b]) continue;  // center labels must differ
          const auto& sa = plan.shell_cells[a];
          const auto& sb = plan.shell_cells[b];
          bool match = true;
          for (std::size_t t = 0; t < sa.size() && match; ++t) match = cells[sa[t]] == cells[sb[t]];
          if (!match) continue;
          // center sets must be disjoint (sorted id lists)
          const auto& ca = plan.center_ids[a];
          const auto& cb = plan.center_ids[b];
          std::size_t x = 0, y = 0;
          bool disjoint = true;
          while (x < ca.size() && y < cb.size()) {
            if (ca[x] == cb[y]) {
              disjoint = false;
              break;
            }
            (ca[x] < cb[y] ? x : y) += 1;
          }
          if (!disjoint) continue;
          if (emit(a, b)) return;
        }
      lo = hi;
    }
  }
}

}  // namespace

std::vector<BlockingPair> find_repeated_shells(const Instance& inst, const Pattern& w) {
  if (w.shape != inst.CK)
    throw std::invalid_argument("find_repeated_shells: pattern shape is not CK");
  const ShellPlan plan = make_shell_plan(inst);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> hits;
  scan_blocking_pairs(plan, w.symbols, [&](std::uint32_t a, std::uint32_t b) {
    hits.emplace_back(std::min(a, b), std::max(a, b));
    return false;
  });
  std::sort(hits.begin(), hits.end());
  std::vector<BlockingPair> out;
  out.reserve(hits.size());
  for (auto [a, b] : hits)
    out.push_back(BlockingPair{inst.CK[a], inst.CK[b], phi_swap(w, inst.CK[a], inst.CK[b])});
  return out;
}

NonIdCertificate certify_nonidentifiable(const Instance& inst, const Pattern& w) {
  if (w.shape != inst.CK)
    throw std::invalid_argument("certify_nonidentifiable: pattern shape is not CK");
  const ShellPlan plan = make_shell_plan(inst);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> hits;
  scan_blocking_pairs(plan, w.symbols, [&](std::uint32_t a, std::uint32_t b) {
    hits.emplace_back(std::min(a, b), std::max(a, b));
    return false;
  });
  std::sort(hits.begin(), hits.end());
  for (auto [a, b] : hits) {
    if (swap_in_class(plan, w.symbols, a, b)) continue;  // exceptional pattern
    return NonIdCertificate{
        true, BlockingPair{inst.CK[a], inst.CK[b], phi_swap(w, inst.CK[a], inst.CK[b])}};
  }
  return NonIdCertificate{false, std::nullopt};
}

bool certified_nonidentifiable(const ShellPlan& plan, const std::vector<Symbol>& cells) {
  bool certified = false;
  scan_blocking_pairs(plan, cells, [&](std::uint32_t a, std::uint32_t b) {
    if (swap_in_class(plan, cells, a, b)) return false;
    certified = true;
    return true;
  });
  return certified;
}

Shape dsc_greedy(const Instance& inst, const Shape& B) {
  check_in_ck(inst, B, "dsc_greedy");
  std::vector<char> used(inst.CK.size(), 0);
  std::vector<Element> kept;
  for (const Element& b : B) {
    const std::vector<std::uint32_t> shell = closed_shell_indices(inst, b);
    bool free = true;
    for (std::uint32_t i : shell)
      if (used[i]) {
        free = false;
        break;
      }
    if (!free) continue;
    for (std::uint32_t i : shell) used[i] = 1;
    kept.push_back(b);
  }
  return Shape{std::move(kept)};
}

NConditionReport check_N_conditions(const Instance& inst, const Shape& B, const ProbVector& p,
                                    double eps) {
  check_in_ck(inst, B, "check_N_conditions");
  if (eps <= 0.0) throw std::invalid_argument("check_N_conditions: eps must be > 0");
  const double log_ck = std::log(static_cast<double>(inst.CK.size()));
  NConditionReport rep;
  rep.n1_ratio = std::log(static_cast<double>(shell_type_index(inst, B).size())) / log_ck;
  rep.n2_ratio = std::log(static_cast<double>(B.size())) / log_ck;
  const Shape kk = set_product(inst.ctx, set_inverse(inst.ctx, inst.K), inst.K);
  rep.n3 = static_cast<double>(kk.size()) <= (1.0 - eps) * (2.0 / renyi2(p)) * log_ck;
  return rep;
}

RsLowerBound rs_lower_bound(const Instance& inst, const Shape& D, const ProbVector& p) {
  check_in_ck(inst, D, "rs_lower_bound");
  if (D.empty()) throw std::invalid_argument("rs_lower_bound: D must be nonempty");

  // Disjoint Shell Condition: closed shells pairwise disjoint — equivalently,
  // no CK cell appears in two of them.
  std::vector<std::uint32_t> all;
  for (const Element& d : D) {
    const auto shell = closed_shell_indices(inst, d);
    all.insert(all.end(), shell.begin(), shell.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("rs_lower_bound: D violates the disjoint shell condition");

  const auto types = shell_type_index(inst, D);
  for (const auto& [type, members] : types)
    if (members.size() < 2)
      throw std::invalid_argument("rs_lower_bound: a shell type is represented only once in D");

  const double pi2 = pi_i(p, 2);
  const Shape kk = set_product(inst.ctx, set_inverse(inst.ctx, inst.K), inst.K);
  const double sqrt_i = std::sqrt(static_cast<double>(types.size()));
  const double denom =
      static_cast<double>(D.size()) * std::exp(0.5 * static_cast<double>(kk.size()) * std::log(pi2));

  RsLowerBound out;
  if (denom <= 0.0) {
    out.value = -HUGE_VAL;
    out.vacuous = true;
    return out;
  }
  out.value = 1.0 - (4.0 * sqrt_i / (1.0 - pi2) / denom) * (sqrt_i / denom + 2.0);
  out.vacuous = !(out.value > 0.0) || !std::isfinite(out.value);
  return out;
}

}  // namespace sgid
