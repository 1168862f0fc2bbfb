#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "sgid/reads.hpp"
#include "sgid/shells.hpp"

using namespace sgid;
using namespace sgid::testing;

namespace {

Pattern pat(const Instance& inst, const std::string& s) {
  std::vector<Symbol> sym;
  sym.reserve(s.size());
  for (char ch : s) sym.push_back(static_cast<Symbol>(ch - '0'));
  return make_pattern(inst.CK, std::move(sym), inst.alphabet);
}

bool subset(const Shape& A, const Shape& B) {
  for (const Element& a : A)
    if (!B.contains(a)) return false;
  return true;
}

Instance seven() {  // C = [0,6], K = {0,1}, CK = [0,7]
  const GroupCtx z = z_lattice(1);
  return make_instance(z, interval(z, 0, 6), interval(z, 0, 1), 2);
}

bool in_class(const Instance& inst, const Pattern& w, const Pattern& v) {
  const std::vector<Pattern> cls = identifiability_class(inst, w);
  return std::find(cls.begin(), cls.end(), v) != cls.end();
}

}  // namespace

TEST_CASE("shell geometry on a line") {
  const Instance inst = seven();
  const GroupCtx& z = inst.ctx;

  const ShellInfo edge = shell_info(inst, el(z, {0}));
  CHECK(edge.C_h == Shape{{el(z, {0})}});
  CHECK(edge.S_bar_h == interval(z, 0, 1));
  CHECK(edge.S_h == Shape{{el(z, {1})}});
  CHECK(edge.shell_type == Shape{{el(z, {0})}});

  const ShellInfo inner = shell_info(inst, el(z, {1}));
  CHECK(inner.C_h == interval(z, 0, 1));
  CHECK(inner.S_bar_h == interval(z, 0, 2));
  CHECK(inner.S_h == shape_of(z, {{0}, {2}}));
  CHECK(inner.shell_type == interval(z, -1, 0));

  // every inner position shares that type; the far edge has its own
  for (std::int64_t h = 1; h <= 6; ++h)
    CHECK(shell_info(inst, el(z, {h})).shell_type == interval(z, -1, 0));
  CHECK(shell_info(inst, el(z, {7})).shell_type == Shape{{el(z, {-1})}});

  CHECK_THROWS_AS(shell_info(inst, el(z, {8})), std::invalid_argument);
}

TEST_CASE("shell type index") {
  const Instance inst = seven();
  const GroupCtx& z = inst.ctx;

  const std::map<Shape, Shape> by_type = shell_type_index(inst, inst.CK);
  REQUIRE(by_type.size() == 3);
  CHECK(by_type.at(Shape{{el(z, {0})}}) == Shape{{el(z, {0})}});
  CHECK(by_type.at(Shape{{el(z, {-1})}}) == Shape{{el(z, {7})}});
  CHECK(by_type.at(interval(z, -1, 0)) == interval(z, 1, 6));

  // an interior window sees a single type
  CHECK(shell_type_index(inst, interval(z, 2, 5)).size() == 1);
  CHECK(shell_type_index(inst, Shape{}).empty());
  CHECK_THROWS_AS(shell_type_index(inst, interval(z, 7, 8)), std::invalid_argument);
}

TEST_CASE("label swap") {
  const Instance inst = seven();
  const GroupCtx& z = inst.ctx;
  const Pattern w = pat(inst, "01011110");

  const Pattern swapped = phi_swap(w, el(z, {2}), el(z, {4}));
  CHECK(swapped.symbols == std::vector<Symbol>{0, 1, 1, 1, 0, 1, 1, 0});
  CHECK(phi_swap(swapped, el(z, {2}), el(z, {4})) == w);

  CHECK_THROWS_AS(phi_swap(w, el(z, {2}), el(z, {2})), std::invalid_argument);
  CHECK_THROWS_AS(phi_swap(w, el(z, {2}), el(z, {9})), std::invalid_argument);

  for (int which = 0; which < 5; ++which) {
    CounterRng rng(401, static_cast<std::uint64_t>(which));
    const GroupCtx ctx = random_ctx(rng, which);
    for (int i = 0; i < 200; ++i) {
      const Shape A = random_shape(rng, ctx, 8, 4);
      if (A.size() < 2) continue;
      CounterRng srng(402, static_cast<std::uint64_t>(i));
      const Pattern v = sample(srng, A, ProbVector::uniform(3));
      const std::size_t ia = rng.next_below(A.size());
      std::size_t ib = rng.next_below(A.size());
      if (ib == ia) ib = (ia + 1) % A.size();
      REQUIRE(phi_swap(phi_swap(v, A[ia], A[ib]), A[ia], A[ib]) == v);
    }
  }
}

TEST_CASE("repeated shells of a line pattern") {
  const Instance inst = seven();
  const GroupCtx& z = inst.ctx;
  const Pattern w = pat(inst, "01011110");

  const std::vector<BlockingPair> pairs = find_repeated_shells(inst, w);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].a == el(z, {2}));
  CHECK(pairs[0].b == el(z, {4}));
  CHECK(pairs[1].a == el(z, {2}));
  CHECK(pairs[1].b == el(z, {5}));

  const ReadMultiset rw = reads(inst, w);
  for (const BlockingPair& bp : pairs) {
    CHECK(bp.swap_witness == phi_swap(w, bp.a, bp.b));
    CHECK(multiset_equal(rw, reads(inst, bp.swap_witness)));
    // the defining shell conditions
    const ShellInfo sa = shell_info(inst, bp.a);
    const ShellInfo sb = shell_info(inst, bp.b);
    CHECK(sa.shell_type == sb.shell_type);
    CHECK(set_intersection(sa.C_h, sb.C_h).empty());
    CHECK(w.at(bp.a) != w.at(bp.b));
  }

  CHECK(find_repeated_shells(inst, pat(inst, "00000000")).empty());
  CHECK(find_repeated_shells(inst, pat(inst, "11111111")).empty());

  // two positions of different types can never block
  const GroupCtx z1 = z_lattice(1);
  const Instance two = make_instance(z1, Shape{{identity(z1)}}, interval(z1, 0, 1), 2);
  CHECK(find_repeated_shells(two, pat(two, "01")).empty());
}

TEST_CASE("non-identifiability certificate on a line") {
  const Instance inst = seven();
  const GroupCtx& z = inst.ctx;

  const NonIdCertificate cert = certify_nonidentifiable(inst, pat(inst, "01011110"));
  REQUIRE(cert.certified);
  REQUIRE(cert.pair.has_value());
  CHECK(cert.pair->a == el(z, {2}));
  CHECK(cert.pair->b == el(z, {4}));
  CHECK_FALSE(oracle_identifiable(inst, pat(inst, "01011110")).identifiable);

  CHECK_FALSE(certify_nonidentifiable(inst, pat(inst, "00000000")).certified);
}

TEST_CASE("exceptional swaps are filtered") {
  // full cyclic orbit: some swaps are mere rotations and prove nothing
  const GroupCtx c4 = cyclic_z(4);
  const Instance inst = make_instance(c4, ball(c4, 2), Shape{{identity(c4)}}, 2);
  REQUIRE(inst.G_C.size() == 4);
  const Pattern w = pat(inst, "0110");

  const std::vector<BlockingPair> pairs = find_repeated_shells(inst, w);
  REQUIRE(pairs.size() == 4);
  int exceptional = 0;
  for (const BlockingPair& bp : pairs) exceptional += in_class(inst, w, bp.swap_witness);
  CHECK(exceptional == 2);  // the two antipodal swaps are rotations of w

  const NonIdCertificate cert = certify_nonidentifiable(inst, w);
  REQUIRE(cert.certified);
  CHECK(cert.pair->a == el(c4, {0}));
  CHECK(cert.pair->b == el(c4, {1}));
  CHECK_FALSE(in_class(inst, w, cert.pair->swap_witness));
  CHECK_FALSE(oracle_identifiable(inst, w).identifiable);

  // on two centers every swap is a rotation: blocked pair, but no certificate
  const GroupCtx c2 = cyclic_z(2);
  const Instance tiny = make_instance(c2, ball(c2, 1), Shape{{identity(c2)}}, 2);
  const Pattern v = pat(tiny, "01");
  CHECK(find_repeated_shells(tiny, v).size() == 1);
  CHECK_FALSE(certify_nonidentifiable(tiny, v).certified);
  CHECK(oracle_identifiable(tiny, v).identifiable);
}

TEST_CASE("certificate is sound against the oracle") {
  const GroupCtx z = z_lattice(1);
  const GroupCtx c4 = cyclic_z(4);
  const GroupCtx c6 = cyclic_z(6);
  std::vector<Instance> insts;
  insts.push_back(make_instance(z, interval(z, 0, 2), interval(z, 0, 1), 2));
  insts.push_back(make_instance(z, interval(z, 0, 1), interval(z, 0, 2), 2));
  insts.push_back(make_instance(c6, ball(c6, 2), ball(c6, 1), 2));
  insts.push_back(make_instance(c4, ball(c4, 2), Shape{{identity(c4)}}, 2));
  insts.push_back(seven());

  int n_certified = 0;
  for (const Instance& inst : insts) {
    for (const Pattern& w : all_patterns(inst)) {
      const ReadMultiset r = reads(inst, w);
      for (const BlockingPair& bp : find_repeated_shells(inst, w))
        REQUIRE(multiset_equal(r, reads(inst, bp.swap_witness)));

      const NonIdCertificate cert = certify_nonidentifiable(inst, w);
      if (cert.certified) {
        ++n_certified;
        REQUIRE(cert.pair.has_value());
        REQUIRE_FALSE(in_class(inst, w, cert.pair->swap_witness));
        REQUIRE_FALSE(oracle_identifiable(inst, w).identifiable);
      }
    }
  }
  CHECK(n_certified > 0);
}

TEST_CASE("shell containment properties") {
  for (int which = 0; which < 5; ++which) {
    CounterRng rng(409, static_cast<std::uint64_t>(which));
    const GroupCtx ctx = random_ctx(rng, which);
    for (int i = 0; i < 100; ++i) {
      const Shape C = random_shape(rng, ctx, 6, 3);
      const Shape K = random_shape(rng, ctx, 4, 2);
      const Instance inst = make_instance(ctx, C, K, 2);
      const Shape k_inv_k = set_product(ctx, set_inverse(ctx, K), K);
      const Element h = inst.CK[rng.next_below(inst.CK.size())];

      const ShellInfo info = shell_info(inst, h);
      REQUIRE(!info.C_h.empty());
      REQUIRE(info.C_h ==
              set_intersection(inst.C, translate_shape(ctx, h, set_inverse(ctx, K))));
      REQUIRE(info.S_bar_h == set_product(ctx, info.C_h, K));
      REQUIRE(info.S_bar_h.contains(h));
      REQUIRE(info.S_h == set_difference(info.S_bar_h, Shape{{h}}));
      REQUIRE(subset(info.S_bar_h, translate_shape(ctx, h, k_inv_k)));
      REQUIRE(info.shell_type == translate_shape(ctx, inverse(ctx, h), info.C_h));
    }
  }
}

TEST_CASE("greedy disjoint shell subsets") {
  const GroupCtx z = z_lattice(1);
  const Instance inst = make_instance(z, interval(z, 0, 9), interval(z, 0, 1), 2);

  const Shape D = dsc_greedy(inst, inst.C);
  CHECK(D == shape_of(z, {{0}, {3}, {6}, {9}}));

  CHECK(dsc_greedy(inst, Shape{{el(z, {4})}}) == Shape{{el(z, {4})}});

  const Instance point_k = make_instance(z, interval(z, 0, 9), Shape{{identity(z)}}, 2);
  CHECK(dsc_greedy(point_k, point_k.C) == point_k.C);  // singleton shells never clash

  CHECK_THROWS_AS(dsc_greedy(inst, interval(z, 5, 20)), std::invalid_argument);

  for (int which = 0; which < 5; ++which) {
    CounterRng rng(419, static_cast<std::uint64_t>(which));
    const GroupCtx ctx = random_ctx(rng, which);
    for (int i = 0; i < 60; ++i) {
      const Shape C = random_shape(rng, ctx, 8, 4);
      const Shape K = random_shape(rng, ctx, 3, 2);
      const Instance rnd = make_instance(ctx, C, K, 2);
      const Shape B = rnd.CK;
      const Shape kept = dsc_greedy(rnd, B);

      REQUIRE(subset(kept, B));
      Shape covered;  // closed shells must be pairwise disjoint
      for (const Element& b : kept) {
        const Shape sb = shell_info(rnd, b).S_bar_h;
        REQUIRE(set_intersection(covered, sb).empty());
        covered = set_union(covered, sb);
      }
      const Shape kk = set_product(ctx, set_inverse(ctx, K), K);
      REQUIRE(kept.size() * set_product(ctx, kk, kk).size() >= B.size());
    }
  }
}

TEST_CASE("shell growth conditions") {
  const GroupCtx z = z_lattice(1);
  const ProbVector half = ProbVector::uniform(2);

  const Instance inst = seven();
  const NConditionReport rep = check_N_conditions(inst, inst.CK, half, 0.1);
  CHECK(rep.n1_ratio == doctest::Approx(std::log(3.0) / std::log(8.0)));
  CHECK(rep.n2_ratio == doctest::Approx(1.0));

  const auto wide = [&](std::int64_t r) {
    return make_instance(z, interval(z, 0, 5000 - r), interval(z, 0, r - 1), 2);
  };
  const Instance narrow_k = wide(8);
  CHECK(check_N_conditions(narrow_k, narrow_k.CK, half, 0.1).n3);  // 15 <= 0.9·(2/ln 2)·ln 5000
  const Instance wide_k = wide(35);
  CHECK_FALSE(check_N_conditions(wide_k, wide_k.CK, half, 0.1).n3);  // 69 is too wide

  CHECK_THROWS_AS(check_N_conditions(inst, inst.CK, half, 0.0), std::invalid_argument);
}

TEST_CASE("repeated-shell probability bound") {
  const GroupCtx z = z_lattice(1);
  const ProbVector half = ProbVector::uniform(2);

  // 10^4 interior positions with step-3 disjoint shells on a 30011-center line
  const Instance big = make_instance(z, interval(z, 0, 30010), interval(z, 0, 1), 2);
  std::vector<Element> ds;
  for (std::int64_t b = 1; b <= 29998; b += 3) ds.push_back(el(z, {b}));
  REQUIRE(ds.size() == 10000);
  const RsLowerBound rs = rs_lower_bound(big, Shape{std::move(ds)}, half);
  CHECK_FALSE(rs.vacuous);
  const double denom = 1e4 * std::pow(0.5, 1.5);
  CHECK(rs.value == doctest::Approx(1.0 - (4.0 * 2.0 / denom) * (1.0 / denom + 2.0)).epsilon(1e-12));
  CHECK(rs.value == doctest::Approx(0.9954739).epsilon(1e-6));

  // a tiny D drives the bound negative: reported, but flagged vacuous
  const Instance small = make_instance(z, interval(z, 0, 10), interval(z, 0, 1), 2);
  const RsLowerBound weak = rs_lower_bound(small, shape_of(z, {{1}, {4}}), half);
  CHECK(weak.vacuous);
  CHECK(weak.value < 0.0);

  CHECK_THROWS_AS(rs_lower_bound(small, Shape{}, half), std::invalid_argument);
  // overlapping closed shells violate the disjointness precondition
  CHECK_THROWS_AS(rs_lower_bound(small, shape_of(z, {{1}, {2}}), half), std::invalid_argument);
  // a type represented once cannot witness a repeat
  CHECK_THROWS_AS(rs_lower_bound(small, shape_of(z, {{0}, {5}}), half), std::invalid_argument);
}

TEST_CASE("shell plan matches the canonical certificate") {
  const GroupCtx z = z_lattice(1);
  const GroupCtx c4 = cyclic_z(4);
  const GroupCtx c6 = cyclic_z(6);
  std::vector<Instance> insts;
  insts.push_back(make_instance(z, interval(z, 0, 2), interval(z, 0, 1), 2));
  insts.push_back(make_instance(z, interval(z, 0, 1), interval(z, 0, 2), 2));
  insts.push_back(make_instance(c6, ball(c6, 2), ball(c6, 1), 2));
  insts.push_back(make_instance(c4, ball(c4, 2), Shape{{identity(c4)}}, 2));

  for (const Instance& inst : insts) {
    const ShellPlan plan = make_shell_plan(inst);
    REQUIRE(plan.type_id.size() == inst.CK.size());
    REQUIRE(plan.class_perm.size() == inst.G_C.size());
    for (const auto& perm : plan.class_perm) {
      std::vector<std::uint32_t> sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      for (std::uint32_t i = 0; i < sorted.size(); ++i) REQUIRE(sorted[i] == i);
    }
    for (const Pattern& w : all_patterns(inst))
      REQUIRE(certified_nonidentifiable(plan, w.symbols) ==
              certify_nonidentifiable(inst, w).certified);
  }

  // spot-check a long line with random ternary samples
  const Instance line = make_instance(z, interval(z, 0, 40), interval(z, 0, 2), 3);
  const ShellPlan plan = make_shell_plan(line);
  int certified = 0;
  for (int t = 0; t < 200; ++t) {
    CounterRng rng(421, static_cast<std::uint64_t>(t));
    const Pattern w = sample(rng, line.CK, ProbVector::uniform(3));
    const bool fast = certified_nonidentifiable(plan, w.symbols);
    REQUIRE(fast == certify_nonidentifiable(line, w).certified);
    certified += fast;
  }
  CHECK(certified > 0);  // K^{-1}K covers 5 cells: repeats are common at 3^{-5/2}
}
