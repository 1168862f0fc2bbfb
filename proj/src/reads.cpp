#include "sgid/reads.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "sgid/error.hpp"

namespace sgid {

namespace {

/// FNV-1a over a byte, folded into a 128-bit state held as two words.
void fp_mix(std::uint64_t& lo, std::uint64_t& hi, std::uint8_t byte) {
  lo = (lo ^ byte) * 0x100000001B3ULL;
  hi = (hi ^ lo) * 0xC6A4A7935BD1E995ULL;
  hi ^= hi >> 29;
}

void check_on_ck(const Instance& inst, const Pattern& w, const char* op) {
  if (w.shape != inst.CK)
    throw std::invalid_argument(std::string(op) + ": pattern shape is not CK");
}

}  // namespace

ReadMultiset reads(const Instance& inst, const Pattern& w) {
  check_on_ck(inst, w, "reads");
  // Cell index of c·k for each center and each K cell, in K's canonical order.
  ReadMultiset rm;
  rm.K = inst.K;
  rm.reads.reserve(inst.C.size());
  for (const Element& c : inst.C) {
    std::vector<Symbol> read(inst.K.size());
    for (std::size_t j = 0; j < inst.K.size(); ++j)
      read[j] = w.symbols[static_cast<std::size_t>(inst.CK.index_of(mul(inst.ctx, c, inst.K[j])))];
    rm.reads.push_back(std::move(read));
  }
  std::sort(rm.reads.begin(), rm.reads.end());
  rm.fp_lo = 0xCBF29CE484222325ULL;
  rm.fp_hi = 0x9E3779B97F4A7C15ULL;
  for (const auto& read : rm.reads) {
    for (Symbol s : read) fp_mix(rm.fp_lo, rm.fp_hi, s);
    fp_mix(rm.fp_lo, rm.fp_hi, 0xFF);  // entry separator
  }
  return rm;
}

bool multiset_equal(const ReadMultiset& r1, const ReadMultiset& r2) {
  if (r1.K != r2.K) throw std::invalid_argument("multiset_equal: reads live on different shapes");
  if (r1.fp_lo != r2.fp_lo || r1.fp_hi != r2.fp_hi) return false;
  return r1.reads == r2.reads;
}

std::vector<Pattern> identifiability_class(const Instance& inst, const Pattern& w) {
  check_on_ck(inst, w, "identifiability_class");
  std::set<std::vector<Symbol>> seen;
  for (const Element& g : inst.G_C)
    seen.insert(translate(inst.ctx, w, inverse(inst.ctx, g)).symbols);
  std::vector<Pattern> out;
  out.reserve(seen.size());
  for (auto& sym : seen) out.push_back(Pattern{inst.CK, sym});
  return out;
}

namespace {

/// Backtracking state for the preimage enumeration.
struct PreimageSearch {
  const Instance& inst;
  std::vector<std::vector<std::size_t>> footprint;    // per center: CK indices of cK, K order
  std::vector<std::vector<Symbol>> distinct_reads;    // sorted
  std::vector<int> multiplicity;                      // remaining copies per distinct read
  std::vector<int> cells;                             // CK index -> symbol or -1
  std::uint64_t nodes = 0;
  std::uint64_t budget;
  std::set<std::vector<Symbol>> found;

  void run(std::size_t center) {
    if (++nodes > budget)
      throw BudgetExceeded("preimage_patterns: search budget exceeded");
    if (center == footprint.size()) {
      std::vector<Symbol> full(cells.size());
      for (std::size_t i = 0; i < cells.size(); ++i) full[i] = static_cast<Symbol>(cells[i]);
      found.insert(std::move(full));
      return;
    }
    const auto& cell_idx = footprint[center];
    for (std::size_t r = 0; r < distinct_reads.size(); ++r) {
      if (multiplicity[r] == 0) continue;
      const auto& read = distinct_reads[r];
      // Check consistency against already-assigned cells, then assign.
      std::vector<std::size_t> newly;
      bool ok = true;
      for (std::size_t j = 0; j < cell_idx.size(); ++j) {
        int& cell = cells[cell_idx[j]];
        if (cell < 0) {
          cell = read[j];
          newly.push_back(cell_idx[j]);
        } else if (cell != read[j]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        --multiplicity[r];
        run(center + 1);
        ++multiplicity[r];
      }
      for (std::size_t i : newly) cells[i] = -1;
    }
  }
};

}  // namespace

std::vector<Pattern> preimage_patterns(const Instance& inst, const Pattern& w, std::uint64_t budget) {
  check_on_ck(inst, w, "preimage_patterns");
  const ReadMultiset rm = reads(inst, w);

  PreimageSearch s{inst, {}, {}, {}, {}, 0, budget, {}};
  for (const Element& c : inst.C) {
    std::vector<std::size_t> idx(inst.K.size());
    for (std::size_t j = 0; j < inst.K.size(); ++j)
      idx[j] = static_cast<std::size_t>(inst.CK.index_of(mul(inst.ctx, c, inst.K[j])));
    s.footprint.push_back(std::move(idx));
  }
  for (const auto& read : rm.reads) {
    if (s.distinct_reads.empty() || s.distinct_reads.back() != read) {
      s.distinct_reads.push_back(read);
      s.multiplicity.push_back(1);
    } else {
      ++s.multiplicity.back();
    }
  }
  s.cells.assign(inst.CK.size(), -1);
  s.run(0);

  std::vector<Pattern> out;
  out.reserve(s.found.size());
  for (auto& sym : s.found) out.push_back(Pattern{inst.CK, sym});
  return out;
}

OracleResult oracle_identifiable(const Instance& inst, const Pattern& w, std::uint64_t budget) {
  const std::vector<Pattern> preimage = preimage_patterns(inst, w, budget);
  const std::vector<Pattern> cls = identifiability_class(inst, w);
  // Both lists are sorted in pattern order; the first preimage member missing
  // from the class is the canonical witness.
  for (const Pattern& v : preimage) {
    const bool in_class = std::binary_search(
        cls.begin(), cls.end(), v,
        [](const Pattern& a, const Pattern& b) { return a.symbols < b.symbols; });
    if (!in_class) return OracleResult{false, v};
  }
  return OracleResult{true, std::nullopt};
}

}  // namespace sgid
