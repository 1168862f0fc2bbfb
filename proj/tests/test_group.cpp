#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"

using namespace sgid;
using namespace sgid::testing;

namespace {

/// 3x3 upper-unitriangular integer matrix, the reference model for Heisenberg3:
/// rows/cols (1, x, z; 0, 1, y; 0, 0, 1).
struct HeisMatrix {
  std::int64_t x = 0, y = 0, z = 0;
  friend HeisMatrix operator*(const HeisMatrix& a, const HeisMatrix& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z + a.x * b.y};
  }
};

}  // namespace

TEST_CASE("lattice and cyclic multiplication") {
  const GroupCtx z2 = z_lattice(2);
  CHECK(mul(z2, el(z2, {1, 2}), el(z2, {3, -1})) == el(z2, {4, 1}));
  CHECK(inverse(z2, el(z2, {3, -1})) == el(z2, {-3, 1}));

  const GroupCtx c5 = cyclic_z(5);
  CHECK(mul(c5, el(c5, {3}), el(c5, {4})) == el(c5, {2}));
  CHECK(el(c5, {-1}) == el(c5, {4}));  // canonicalization wraps residues
  CHECK(inverse(c5, el(c5, {2})) == el(c5, {3}));
}

TEST_CASE("free group word reduction") {
  const GroupCtx f2 = free_group(2);
  const Element ab = el(f2, {1, 2});
  CHECK(mul(f2, ab, el(f2, {-2})) == el(f2, {1}));  // ab·b⁻¹ = a
  CHECK(mul(f2, ab, inverse(f2, ab)) == identity(f2));
  CHECK(inverse(f2, ab) == el(f2, {-2, -1}));  // (ab)⁻¹ = b⁻¹a⁻¹
  CHECK(el(f2, {1, -1, 2}) == el(f2, {2}));    // canonicalization reduces
  CHECK_THROWS_AS(el(f2, {0}), std::invalid_argument);
  CHECK_THROWS_AS(el(f2, {3}), std::invalid_argument);
}

TEST_CASE("free group word length cap") {
  const GroupCtx f2 = free_group(2);
  Element g = identity(f2);
  const Element a = el(f2, {1});
  for (int i = 0; i < 64; ++i) g = mul(f2, g, a);
  CHECK(g.v.size() == 64);
  CHECK_THROWS_AS(mul(f2, g, a), std::length_error);
}

TEST_CASE("heisenberg law matches the matrix model") {
  const GroupCtx h = heisenberg3();
  CHECK(mul(h, el(h, {1, 0, 0}), el(h, {0, 1, 0})) == el(h, {1, 1, 1}));

  CounterRng rng(2024, 0);
  for (int i = 0; i < 200; ++i) {
    const Element g1 = random_element(rng, h, 6);
    const Element g2 = random_element(rng, h, 6);
    const HeisMatrix m1{g1.v[0], g1.v[1], g1.v[2]};
    const HeisMatrix m2{g2.v[0], g2.v[1], g2.v[2]};
    const HeisMatrix m = m1 * m2;
    CHECK(mul(h, g1, g2) == el(h, {m.x, m.y, m.z}));
    CHECK(mul(h, g1, inverse(h, g1)) == identity(h));
  }
}

TEST_CASE("associativity on random triples per kind") {
  for (int which = 0; which < 5; ++which) {
    CounterRng rng(7, static_cast<std::uint64_t>(which));
    const GroupCtx ctx = random_ctx(rng, which);
    for (int i = 0; i < 1000; ++i) {
      const Element g = random_element(rng, ctx, 8);
      const Element h = random_element(rng, ctx, 8);
      const Element k = random_element(rng, ctx, 8);
      REQUIRE(mul(ctx, mul(ctx, g, h), k) == mul(ctx, g, mul(ctx, h, k)));
      REQUIRE(mul(ctx, g, identity(ctx)) == g);
      REQUIRE(mul(ctx, identity(ctx), g) == g);
      REQUIRE(is_identity(ctx, mul(ctx, inverse(ctx, g), g)));
    }
  }
}

TEST_CASE("element text round-trip") {
  const GroupCtx f2 = free_group(2);
  CHECK(format_element(f2, identity(f2)) == "e");
  CHECK(parse_element(f2, "e") == identity(f2));
  CHECK(parse_element(f2, "1 -2") == el(f2, {1, -2}));
  const GroupCtx z2 = z_lattice(2);
  CHECK(parse_element(z2, format_element(z2, el(z2, {-3, 5}))) == el(z2, {-3, 5}));
  CHECK_THROWS_AS(parse_element(z2, "1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element(z2, "1 x"), std::invalid_argument);
}

TEST_CASE("set product and inverse") {
  const GroupCtx z = z_lattice(1);
  CHECK(set_product(z, interval(z, 0, 1), interval(z, 0, 1)) == interval(z, 0, 2));
  CHECK(set_inverse(z, interval(z, 0, 2)) == interval(z, -2, 0));

  const GroupCtx f2 = free_group(2);
  const Shape ab = shape_of(f2, {{1}, {2}});
  CHECK(set_product(f2, ab, shape_of(f2, {{-1}})) ==
        Shape::of({identity(f2), el(f2, {2, -1})}));
  CHECK(set_inverse(f2, shape_of(f2, {{1, 2}})) == shape_of(f2, {{-2, -1}}));

  for (int which = 0; which < 5; ++which) {
    CounterRng rng(11, static_cast<std::uint64_t>(which));
    const GroupCtx ctx = random_ctx(rng, which);
    for (int i = 0; i < 100; ++i) {
      const Shape A = random_shape(rng, ctx, 8, 6);
      const Shape B = random_shape(rng, ctx, 8, 6);
      const Element g = random_element(rng, ctx, 6);
      CHECK(set_product(ctx, A, Shape{{identity(ctx)}}) == A);
      CHECK(set_inverse(ctx, set_inverse(ctx, A)) == A);
      CHECK(set_product(ctx, A, B).size() <= A.size() * B.size());
      CHECK(translate_shape(ctx, g, A).size() == A.size());
    }
  }
}

TEST_CASE("balls by breadth-first closure") {
  const GroupCtx f2 = free_group(2);
  CHECK(growth(f2, 0) == 1);
  CHECK(growth(f2, 1) == 5);
  CHECK(growth(f2, 2) == 17);
  CHECK(ball(z_lattice(1), 3) == interval(z_lattice(1), -3, 3));
  CHECK_THROWS_AS(ball(f2, -1), std::invalid_argument);

  // monotone and submultiplicative growth
  const std::array<GroupCtx, 4> ctxs{z_lattice(1), z_lattice(2), free_group(2), heisenberg3()};
  for (const GroupCtx& ctx : ctxs) {
    std::vector<std::int64_t> gamma;
    for (int r = 0; r <= 6; ++r) gamma.push_back(growth(ctx, r));
    for (int r = 0; r < 6; ++r) CHECK(gamma[r] <= gamma[r + 1]);
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; n + m <= 6; ++m) CHECK(gamma[n + m] <= gamma[n] * gamma[m]);
    for (int r = 1; r <= 5; ++r) {
      const Shape inner = ball(ctx, r - 1);
      const Shape outer_int = interior_T(ctx, ball(ctx, r));
      CHECK(set_difference(inner, outer_int).empty());  // T_{r-1} ⊆ int_T(T_r)
    }
  }
}

TEST_CASE("cyclic balls saturate at the whole group") {
  const GroupCtx c6 = cyclic_z(6);
  CHECK(growth(c6, 1) == 3);
  CHECK(growth(c6, 2) == 5);
  CHECK(growth(c6, 3) == 6);
  CHECK(growth(c6, 9) == 6);
}

TEST_CASE("stabilizers") {
  const GroupCtx z = z_lattice(1);
  CHECK(stabilizer(z, interval(z, 0, 2)) == Shape{{identity(z)}});
  CHECK(stabilizer(z, shape_of(z, {{0}, {2}})) == Shape{{identity(z)}});
  CHECK_THROWS_AS(stabilizer(z, Shape{}), std::invalid_argument);

  const GroupCtx c4 = cyclic_z(4);
  CHECK(stabilizer(c4, interval(c4, 0, 3)).size() == 4);  // full group fixes itself
  CHECK(stabilizer(c4, shape_of(c4, {{0}, {2}})) == shape_of(c4, {{0}, {2}}));

  for (int which = 0; which < 5; ++which) {
    CounterRng rng(13, static_cast<std::uint64_t>(which));
    const GroupCtx ctx = random_ctx(rng, which);
    for (int i = 0; i < 500; ++i) {
      const Shape A = random_shape(rng, ctx, 7, 5);
      const Shape st = stabilizer(ctx, A);
      REQUIRE(st.size() <= A.size());
      REQUIRE(st.contains(identity(ctx)));
      for (const Element& g : st) {
        REQUIRE(st.contains(inverse(ctx, g)));
        REQUIRE(translate_shape(ctx, g, A) == A);
      }
    }
  }
}

TEST_CASE("interiors and diameter") {
  const GroupCtx z = z_lattice(1);
  const GroupCtx z2 = z_lattice(2);

  CHECK(interior_1(z, interval(z, 0, 4)) == interval(z, 1, 3));
  const Shape box = set_product(z2, shape_of(z2, {{0, 0}, {1, 0}, {2, 0}}),
                                shape_of(z2, {{0, 0}, {0, 1}, {0, 2}}));
  CHECK(interior_1(z2, box) == shape_of(z2, {{1, 1}}));
  CHECK(interior_1(z2, shape_of(z2, {{0, 0}, {1, 0}, {0, 1}})).empty());
  CHECK_THROWS_AS(interior_1(cyclic_z(4), interval(cyclic_z(4), 0, 3)), std::invalid_argument);

  CHECK(interior_T(z, interval(z, 0, 4)) == interval(z, 1, 3));
  CHECK(interior_T(z, Shape{{identity(z)}}).empty());
  const GroupCtx f2 = free_group(2);
  const Shape it = interior_T(f2, ball(f2, 2));
  CHECK(it.size() >= 5);
  CHECK(set_difference(ball(f2, 1), it).empty());

  CHECK(diameter_inf(z2, box) == 2);
  CHECK(diameter_inf(z2, shape_of(z2, {{3, 1}})) == 0);
  CHECK(diameter_inf(z, shape_of(z, {{0}, {7}})) == 7);
  CHECK_THROWS_AS(diameter_inf(z, Shape{}), std::invalid_argument);
}

TEST_CASE("custom generating sets must be symmetric") {
  const GroupCtx z = z_lattice(1);
  CHECK_THROWS_AS(with_generators(z, {el(z, {1})}), std::invalid_argument);
  const GroupCtx z3 = with_generators(z, {el(z, {3}), el(z, {-3})});
  CHECK(growth(z3, 2) == 5);  // {-6,-3,0,3,6}
}

TEST_CASE("arity mismatches are rejected") {
  const GroupCtx z2 = z_lattice(2);
  CHECK_THROWS_AS(el(z2, {1}), std::invalid_argument);
  CHECK_THROWS_AS(el(heisenberg3(), {1, 2}), std::invalid_argument);
  const GroupCtx z = z_lattice(1);
  CHECK_THROWS_AS(mul(z, el(z, {1}), el(z2, {1, 2})), std::invalid_argument);
}
