// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/expand.hpp"

#include "oracles.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace teamc;
using teamc::testing::random_mask;

namespace {

bool subset(const BinaryMask& a, const BinaryMask& b) {
    for (Index i = 0; i < a.grid().total(); ++i)
        if (a.test(i) && !b.test(i))
            return false;
    return true;
}

}  // namespace

TEST_CASE("density map of an empty mask is zero") {
    const DensityMap f = density_map(BinaryMask(PatchGrid(2, 4, 4)), 3);
    for (int c : f.counts())
        CHECK(c == 0);
}

TEST_CASE("density map of a single bit is its 3x3 block") {
    BinaryMask m(PatchGrid(1, 4, 4));
    m.set(0, 1, 1);
    const DensityMap f = density_map(m, 3);
    for (Index r = 0; r < 4; ++r)
        for (Index c = 0; c < 4; ++c)
            CHECK(f.at(0, r, c) == ((r <= 2 && c <= 2) ? 1 : 0));
}

TEST_CASE("density map for two adjacent bits on 5x5") {
    BinaryMask m(PatchGrid(1, 5, 5));
    m.set(0, 1, 1);
    m.set(0, 1, 2);
    const DensityMap f = density_map(m, 3);
    // Frozen from a direct sliding-window count.
    const int expected[5][5] = {
        {1, 2, 2, 1, 0}, {1, 2, 2, 1, 0}, {1, 2, 2, 1, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}};
    for (Index r = 0; r < 5; ++r)
        for (Index c = 0; c < 5; ++c)
            CHECK(f.at(0, r, c) == expected[r][c]);
    CHECK(f.at(0, 1, 1) == 2);
    CHECK(f.at(0, 3, 4) == 0);
}

TEST_CASE("density map matches the direct count on random masks") {
    Rng rng(1);
    for (int trial = 0; trial < 60; ++trial) {
        const PatchGrid g(1 + static_cast<Index>(rng.uniform_index(2)), 1 + static_cast<Index>(rng.uniform_index(9)),
                          1 + static_cast<Index>(rng.uniform_index(9)));
        const int k = 1 + 2 * static_cast<int>(rng.uniform_index(3));
        const BinaryMask m = random_mask(rng, g, rng.uniform_real());
        const DensityMap f = density_map(m, k);
        const auto ref = oracle::density(oracle::to_grid(m), k);
        for (Index i = 0; i < g.total(); ++i) {
            const GridCoord at = unflatten_index(g, i);
            REQUIRE(f.at(i) == ref[at.view][at.row][at.col]);
            REQUIRE(f.at(i) <= k * k);
        }
    }
}

TEST_CASE("even or non-positive kernels are rejected") {
    const BinaryMask m(PatchGrid(1, 3, 3));
    CHECK_THROWS_AS(density_map(m, 2), ParameterError);
    CHECK_THROWS_AS(density_map(m, 0), ParameterError);
    Rng rng(0);
    CHECK_THROWS_AS(expand_mask(m, {4, 1}, rng), ParameterError);
    CHECK_THROWS_AS(expand_mask(m, {3, -1}, rng), ParameterError);
}

TEST_CASE("expanding an empty mask yields an empty mask") {
    Rng rng(0);
    for (int k : {1, 3, 5})
        for (int tau : {0, 1, 2, 5})
            CHECK(expand_mask(BinaryMask(PatchGrid(2, 6, 6)), {k, tau}, rng).count() == 0);
}

TEST_CASE("single seed with tau=0 dilates around every cell of its window") {
    BinaryMask m(PatchGrid(1, 7, 7));
    m.set(0, 3, 3);
    Rng rng(0);
    const BinaryMask out = expand_mask(m, {3, 0}, rng);
    // Every window cell has F=1 > 0 and dilates its own window, giving the 5x5 block.
    for (Index r = 0; r < 7; ++r)
        for (Index c = 0; c < 7; ++c)
            CHECK(out.test(0, r, c) == (std::abs(r - 3) <= 2 && std::abs(c - 3) <= 2));
    for (Index r = 2; r <= 4; ++r)
        for (Index c = 2; c <= 4; ++c)
            CHECK(out.test(0, r, c));
    CHECK(rng.counter() == 0);
}

TEST_CASE("single seed with tau=1 is left unchanged") {
    for (int k : {1, 3, 5, 7}) {
        BinaryMask m(PatchGrid(1, 9, 9));
        m.set(0, 4, 4);
        Rng rng(123);
        CHECK(expand_mask(m, {k, 1}, rng) == m);
    }
}

TEST_CASE("two adjacent seeds with tau=1 dilate the F>=2 region") {
    BinaryMask m(PatchGrid(1, 5, 5));
    m.set(0, 1, 1);
    m.set(0, 1, 2);
    BinaryMask first;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const BinaryMask out = expand_mask(m, {3, 1}, rng);
        Rng oracle_rng(seed);
        REQUIRE(out == oracle::expand(m, 3, 1, oracle_rng));
        // Dense cells are rows 0-2, cols 1-2; their windows cover rows 0-3, cols 0-3.
        CHECK(out.count() == 16);
        for (Index r = 0; r < 5; ++r)
            for (Index c = 0; c < 5; ++c)
                CHECK(out.test(0, r, c) == (r <= 3 && c <= 3));
        if (seed == 0)
            first = out;
        CHECK(out == first);
    }
}

TEST_CASE("cells at exactly tau trigger no rule") {
    // Two seeds far apart: F never exceeds 1, tau=1 means F==tau cells are inert.
    BinaryMask m(PatchGrid(1, 8, 8));
    m.set(0, 1, 1);
    m.set(0, 6, 6);
    Rng rng(4);
    CHECK(expand_mask(m, {3, 1}, rng) == m);
    CHECK(rng.counter() == 0);
}

TEST_CASE("sparse cells flip exactly one unset neighbor each") {
    BinaryMask m(PatchGrid(1, 9, 9));
    m.set(0, 4, 4);
    Rng rng(77);
    const BinaryMask out = expand_mask(m, {3, 2}, rng);
    // 9 sparse cells (F=1 < 2), each flips one unset cell of its window while one exists.
    CHECK(out.count() > m.count());
    CHECK(out.count() <= m.count() + 9);
    CHECK(rng.counter() <= 9);
    for (Index i : out.indices()) {
        const GridCoord at = unflatten_index(out.grid(), i);
        CHECK(std::abs(at.row - 4) <= 2);
        CHECK(std::abs(at.col - 4) <= 2);
    }
}

TEST_CASE("expansion matches the rule oracle on random masks") {
    Rng gen(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const PatchGrid g(1 + static_cast<Index>(gen.uniform_index(2)), 3 + static_cast<Index>(gen.uniform_index(10)),
                          3 + static_cast<Index>(gen.uniform_index(10)));
        const int k = gen.uniform_index(2) ? 5 : 3;
        const int tau = static_cast<int>(gen.uniform_index(4));
        const BinaryMask m = random_mask(gen, g, 0.2 * gen.uniform_real());
        const std::uint64_t seed = gen.next_u64();
        Rng a(seed), b(seed);
        REQUIRE(expand_mask(m, {k, tau}, a) == oracle::expand(m, k, tau, b));
        REQUIRE(a.counter() == b.counter());
    }
}

TEST_CASE("expansion properties: monotone, bounded, deterministic, per-view") {
    Rng gen(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const PatchGrid g(2, 8, 8);
        const int k = gen.uniform_index(2) ? 5 : 3;
        const int tau = static_cast<int>(gen.uniform_index(4));
        const BinaryMask m = random_mask(gen, g, 0.15);
        const std::uint64_t seed = gen.next_u64();

        Rng r1(seed), r2(seed);
        const BinaryMask out = expand_mask(m, {k, tau}, r1);
        REQUIRE(out == expand_mask(m, {k, tau}, r2));
        REQUIRE(subset(m, out));

        const DensityMap f = density_map(m, k);
        const Index bound = m.count() + dense_region(f, tau).count() + sparse_cells(f, tau).size();
        REQUIRE(out.count() <= bound);

        // Each view expanded on its own with its own stream reproduces the dense part exactly.
        const BinaryMask dense = dense_region(f, tau);
        for (Index v = 0; v < 2; ++v) {
            Rng rv(seed);
            const BinaryMask alone = expand_mask(m.view(v), {k, tau}, rv);
            REQUIRE(subset(dense.view(v), alone));
            REQUIRE(subset(dense.view(v), out.view(v)));
        }
    }
}

TEST_CASE("per-view expansion equals expanding views separately when no flips occur") {
    Rng gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        const PatchGrid g(2, 10, 10);
        const BinaryMask m = random_mask(gen, g, 0.2);
        for (int tau : {0, 1}) {  // tau <= 1 leaves no sparse cells
            Rng r(1), r0(1), r1(1);
            const BinaryMask joint = expand_mask(m, {3, tau}, r);
            const BinaryMask split =
                BinaryMask::stack({expand_mask(m.view(0), {3, tau}, r0), expand_mask(m.view(1), {3, tau}, r1)});
            REQUIRE(joint == split);
        }
    }
}

TEST_CASE("raising tau never enlarges the dense region") {
    Rng gen(8);
    for (int trial = 0; trial < 100; ++trial) {
        const BinaryMask m = random_mask(gen, PatchGrid(1, 12, 12), 0.3 * gen.uniform_real());
        for (int k : {3, 5}) {
            const DensityMap f = density_map(m, k);
            for (int tau = 0; tau < k * k; ++tau) {
                REQUIRE(subset(dense_region(f, tau + 1), dense_region(f, tau)));
                REQUIRE(dense_region(f, tau) == oracle::dense_only(m, k, tau));
            }
        }
    }
}

TEST_CASE("planted-block recall equals the rule oracle") {
    for (Index r : {3, 4, 5}) {
        double recall_impl = 0.0, recall_oracle = 0.0;
        for (std::uint64_t trial = 0; trial < 100; ++trial) {
            Rng rng(trial * 7919 + static_cast<std::uint64_t>(r));
            const PatchGrid g(1, 16, 16);
            const Index top = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(16 - r + 1)));
            const Index left = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(16 - r + 1)));
            BinaryMask block(g), seeds(g);
            for (Index i = top; i < top + r; ++i)
                for (Index j = left; j < left + r; ++j) {
                    block.set(0, i, j);
                    if (rng.uniform_real() < 0.3)
                        seeds.set(0, i, j);
                }
            const std::uint64_t seed = rng.next_u64();
            Rng a(seed), b(seed);
            const BinaryMask out = expand_mask(seeds, {3, 1}, a);
            const BinaryMask ref = oracle::expand(seeds, 3, 1, b);
            auto recall = [&](const BinaryMask& x) {
                Index hit = 0;
                for (Index i : block.indices())
                    hit += x.test(i) ? 1 : 0;
                return static_cast<double>(hit) / static_cast<double>(block.count());
            };
            REQUIRE(recall(out) == recall(ref));
            recall_impl += recall(out);
            recall_oracle += recall(ref);
        }
        CHECK(recall_impl / 100.0 >= recall_oracle / 100.0);
    }
}
