// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/core.hpp"

#include <doctest.h>

#include <set>

using namespace teamc;

TEST_CASE("flatten_index follows view-major row-major layout") {
    CHECK(flatten_index(PatchGrid(1, 4, 4), 0, 0, 0) == 0);
    CHECK(flatten_index(PatchGrid(2, 16, 16), 1, 0, 0) == 256);
    CHECK(unflatten_index(PatchGrid(2, 16, 16), 256) == GridCoord{1, 0, 0});
    CHECK(unflatten_index(PatchGrid(2, 3, 4), 0) == GridCoord{0, 0, 0});
    CHECK(unflatten_index(PatchGrid(2, 3, 4), 23) == GridCoord{1, 2, 3});
}

TEST_CASE("flatten enumerates a 2x3x4 grid exactly once") {
    const PatchGrid g(2, 3, 4);
    std::multiset<Index> seen;
    for (Index v = 0; v < 2; ++v)
        for (Index r = 0; r < 3; ++r)
            for (Index c = 0; c < 4; ++c)
                seen.insert(flatten_index(g, v, r, c));
    REQUIRE(seen.size() == 24);
    for (Index i = 0; i < 24; ++i)
        CHECK(seen.count(i) == 1);
}

TEST_CASE("flatten/unflatten round trip on small grids") {
    for (Index v = 1; v <= 3; ++v)
        for (Index h = 1; h <= 5; ++h)
            for (Index w = 1; w <= 5; ++w) {
                const PatchGrid g(v, h, w);
                for (Index i = 0; i < g.total(); ++i) {
                    const GridCoord at = unflatten_index(g, i);
                    REQUIRE(flatten_index(g, at.view, at.row, at.col) == i);
                }
            }
}

TEST_CASE("out-of-range coordinates name the axis") {
    const PatchGrid g(2, 3, 4);
    auto message = [&](Index v, Index r, Index c) {
        try {
            flatten_index(g, v, r, c);
        } catch (const RangeError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(2, 0, 0).find("view") != std::string::npos);
    CHECK(message(0, 3, 0).find("row") != std::string::npos);
    CHECK(message(0, 0, -1).find("col") != std::string::npos);
    CHECK_THROWS_AS(unflatten_index(g, 24), RangeError);
    CHECK_THROWS_AS(unflatten_index(g, -1), RangeError);
    CHECK_THROWS_AS(PatchGrid(0, 3, 3), ParameterError);
}

TEST_CASE("IndexSet keeps sorted unique indices") {
    const auto s = IndexSet::from_unsorted({7, 3, 7, 9, 3});
    CHECK(s.values() == std::vector<Index>{3, 7, 9});
    CHECK(s.contains(7));
    CHECK_FALSE(s.contains(4));
    CHECK_THROWS_AS(IndexSet::from_sorted({1, 1}), RangeError);
    CHECK_THROWS_AS(IndexSet::from_sorted({2, 1}), RangeError);
    CHECK_THROWS_AS(s.check_bound(9, "t"), RangeError);
    CHECK_NOTHROW(s.check_bound(10, "t"));
    CHECK(s.unite(IndexSet::from_unsorted({1, 9})).values() == std::vector<Index>{1, 3, 7, 9});
    CHECK(s.complement(6).values() == std::vector<Index>{0, 1, 2, 4, 5});
}

TEST_CASE("BinaryMask views stack back to the original") {
    BinaryMask m(PatchGrid(2, 2, 3));
    m.set(0, 1, 2);
    m.set(1, 0, 0);
    CHECK(m.count() == 2);
    CHECK(m.indices().values() == std::vector<Index>{5, 6});
    CHECK(BinaryMask::stack({m.view(0), m.view(1)}) == m);
    CHECK(m.view(1).test(0, 0, 0));
}

TEST_CASE("Rng is a pure function of seed and draw count") {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 1'000'000; ++i) {
        const auto x = a.next_u64();
        REQUIRE(x == b.next_u64());
        differs |= x != c.next_u64();
    }
    CHECK(differs);
    // Counter-based: draw n depends only on (seed, n).
    Rng d(42);
    for (int i = 0; i < 9; ++i)
        d.next_u64();
    CHECK(d.next_u64() == Rng::mix(42 + 10 * 0x9E3779B97F4A7C15ULL));
}

TEST_CASE("Rng bounded draws stay in range and cover it") {
    Rng r(7);
    std::vector<int> hits(9, 0);
    for (int i = 0; i < 9000; ++i) {
        const auto x = r.uniform_index(9);
        REQUIRE(x < 9);
        ++hits[x];
    }
    for (int h : hits)
        CHECK(h > 800);
    CHECK_THROWS_AS(r.uniform_index(0), ParameterError);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform_real();
        REQUIRE((u >= 0.0 && u < 1.0));
    }
}

TEST_CASE("require_tokens rejects non-finite values") {
    TokenMatrix m = TokenMatrix::Ones(2, 2);
    CHECK_NOTHROW(require_tokens(m, "m"));
    m(1, 1) = std::numeric_limits<float>::quiet_NaN();
    CHECK_THROWS_AS(require_tokens(m, "m"), ParameterError);
    CHECK_THROWS_AS(require_tokens(TokenMatrix(2, 0), "m"), ShapeError);
}
