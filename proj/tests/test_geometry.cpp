// Projective geometry: point numbering, subspace enumeration against a
// brute-force span oracle, RREF canonicality, duality, and incidence counts.
#include <doctest.h>

#include "qmms/gaussian.hpp"
#include "qmms/geometry.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

using namespace qmms;

TEST_CASE("geometry: point counts and id round-trips") {
    for (auto [n, q] : {std::pair{2, 2}, {4, 2}, {5, 2}, {3, 3}, {4, 3}, {3, 4}}) {
        GeometryContext ctx(FiniteField(q), n);
        CAPTURE(n);
        CAPTURE(q);
        CHECK(BigInt(ctx.num_points()) == gaussm(n, q));
        for (int id = 0; id < ctx.num_points(); ++id)
            CHECK(ctx.point_id(ctx.point(id)) == id);
    }
}

TEST_CASE("geometry: point ids are scale-invariant") {
    GeometryContext ctx(FiniteField(4), 3);
    const FiniteField& f = ctx.field();
    for (int id = 0; id < ctx.num_points(); ++id)
        for (int lambda = 2; lambda < 4; ++lambda) {
            std::vector<int> scaled = ctx.point(id);
            for (int& c : scaled) c = f.mul(lambda, c);
            CHECK(ctx.point_id(scaled) == id);
        }
    CHECK_THROWS_AS(ctx.point_id(std::vector<int>{0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(ctx.point_id(std::vector<int>{1, 0}), std::invalid_argument);
}

TEST_CASE("geometry: points sort lexicographically, leading-zero block first") {
    GeometryContext ctx(FiniteField(3), 5);
    for (int id = 0; id + 1 < ctx.num_points(); ++id)
        CHECK(ctx.point(id) < ctx.point(id + 1));
    // Points on the coordinate hyperplane v[0] = 0 occupy a prefix of the ids.
    long inner = gaussm(4, 3).convert_to<long>();
    for (int id = 0; id < ctx.num_points(); ++id)
        CHECK(ctx.point(id)[0] == (id < inner ? 0 : 1));
}

TEST_CASE("geometry: subspace counts match gaussian") {
    for (auto [n, k, q] :
         {std::tuple{4, 2, 2}, {5, 2, 2}, {5, 3, 2}, {4, 2, 3}, {3, 2, 4}, {4, 0, 2}, {4, 4, 2}}) {
        GeometryContext ctx(FiniteField(q), n);
        ctx.enumerate_subspaces(k);
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(q);
        CHECK(BigInt(ctx.num_subspaces(k)) == gaussian(n, k, q));
    }
}

// Oracle: every 2-subspace of F_2^4 arises as the span of two distinct
// points; collect them independently of the enumeration order.
TEST_CASE("geometry: brute-force span oracle at (4,2,2)") {
    GeometryContext ctx(FiniteField(2), 4);
    ctx.enumerate_subspaces(2);
    std::set<std::vector<int>> bases;
    for (int a = 0; a < ctx.num_points(); ++a)
        for (int b = a + 1; b < ctx.num_points(); ++b)
            bases.insert(make_subspace(ctx, {ctx.point(a), ctx.point(b)}).basis);
    CHECK(bases.size() == 35);
    std::set<std::vector<int>> enumerated;
    for (long id = 0; id < ctx.num_subspaces(2); ++id)
        enumerated.insert(ctx.subspace(2, id).basis);
    CHECK(bases == enumerated);
}

TEST_CASE("geometry: enumeration is deterministic with frozen endpoints") {
    GeometryContext ctx(FiniteField(2), 4);
    ctx.enumerate_subspaces(2);
    std::vector<std::int16_t> first(ctx.subspace_basis(2, 0).begin(),
                                    ctx.subspace_basis(2, 0).end());
    std::vector<std::int16_t> last(ctx.subspace_basis(2, 34).begin(),
                                   ctx.subspace_basis(2, 34).end());
    CHECK(first == std::vector<std::int16_t>{1, 0, 0, 0, 0, 1, 0, 0});
    CHECK(last == std::vector<std::int16_t>{0, 0, 1, 0, 0, 0, 0, 1});
    Subspace e34 = make_subspace(ctx, {{0, 0, 1, 0}, {0, 0, 0, 1}});
    CHECK(ctx.subspace_id(e34) == 34);
}

TEST_CASE("geometry: subspace ids round-trip") {
    for (auto [n, k, q] : {std::tuple{4, 2, 2}, {5, 2, 3}}) {
        GeometryContext ctx(FiniteField(q), n);
        ctx.enumerate_subspaces(k);
        for (long id = 0; id < ctx.num_subspaces(k); ++id)
            CHECK(ctx.subspace_id(ctx.subspace(k, id)) == id);
    }
}

TEST_CASE("geometry: rref ranks and idempotence") {
    GeometryContext ctx(FiniteField(4), 3);
    const FiniteField& f = ctx.field();
    std::vector<std::vector<int>> rows = {{2, 1, 0}, {3, 2, 1}, {1, 3, 1}};
    std::vector<std::vector<int>> copy = rows;
    int rank = rref(f, copy);
    std::vector<std::vector<int>> again = copy;
    CHECK(rref(f, again) == rank);
    CHECK(again == copy);
    // Dependent rows collapse: row2 = 2 * row1.
    std::vector<std::vector<int>> dep = {{1, 2, 3}, {2, 3, 1}};  // 2*(1,2,3) = (2, 2*2, 2*3)
    dep[1] = {f.mul(2, 1), f.mul(2, 2), f.mul(2, 3)};
    CHECK(rref(f, dep) == 1);
    std::vector<std::vector<int>> zero = {{0, 0, 0}, {0, 0, 0}};
    CHECK(rref(f, zero) == 0);
}

TEST_CASE("geometry: duality is an involution reversing dimension") {
    GeometryContext ctx(FiniteField(2), 4);
    ctx.enumerate_subspaces(2);
    for (long id = 0; id < ctx.num_subspaces(2); ++id) {
        Subspace s = ctx.subspace(2, id);
        Subspace d = dual_subspace(ctx, s);
        CHECK(d.dim == 2);
        CHECK(dual_subspace(ctx, d) == s);
    }
    GeometryContext c3(FiniteField(3), 5);
    c3.enumerate_subspaces(2);
    for (long id : {0L, 7L, 100L, 1209L}) {
        Subspace s = c3.subspace(2, id);
        Subspace d = dual_subspace(c3, s);
        CHECK(d.dim == 3);
        CHECK(dual_subspace(c3, d) == s);
        // The annihilator relation itself: every basis pair is orthogonal.
        const FiniteField& f = c3.field();
        for (int r = 0; r < s.dim; ++r)
            for (int t = 0; t < d.dim; ++t) {
                int dot = 0;
                for (int j = 0; j < 5; ++j)
                    dot = f.add(dot, f.mul(s.basis[r * 5 + j], d.basis[t * 5 + j]));
                CHECK(dot == 0);
            }
    }
}

TEST_CASE("geometry: intersection and span dimensions") {
    GeometryContext ctx(FiniteField(3), 5);
    ctx.enumerate_subspaces(2);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> pick(0, ctx.num_subspaces(2) - 1);
    for (int trial = 0; trial < 200; ++trial) {
        Subspace a = ctx.subspace(2, pick(rng));
        Subspace b = ctx.subspace(2, pick(rng));
        int d = intersect_dim(ctx, a, b);
        CHECK(d == intersect_dim(ctx, b, a));
        Subspace i = intersection(ctx, a, b);
        CHECK(i.dim == d);
        CHECK(intersect_dim(ctx, i, a) == d);
        CHECK(intersect_dim(ctx, i, b) == d);
        Subspace s = span_of(ctx, a, b);
        CHECK(s.dim == a.dim + b.dim - d);
        CHECK(intersect_dim(ctx, s, a) == a.dim);
        CHECK(intersect_dim(ctx, s, b) == b.dim);
    }
}

TEST_CASE("geometry: flat intersection agrees with the subspace form") {
    GeometryContext ctx(FiniteField(3), 5);
    ctx.enumerate_subspaces(2);
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> pick(0, ctx.num_subspaces(2) - 1);
    for (int trial = 0; trial < 500; ++trial) {
        long a = pick(rng), b = pick(rng);
        CHECK(intersect_dim_flat(ctx.field(), 5, 2, ctx.subspace_basis(2, a), 2,
                                 ctx.subspace_basis(2, b)) ==
              intersect_dim(ctx, ctx.subspace(2, a), ctx.subspace(2, b)));
    }
}

TEST_CASE("geometry: pencils and inner subspaces") {
    GeometryContext ctx(FiniteField(2), 4);
    ctx.enumerate_subspaces(2);
    for (int p : {0, 7, 14}) {
        std::vector<long> pencil = subspaces_through_point(ctx, 2, p);
        CHECK(BigInt(pencil.size()) == gaussian(3, 1, 2));
        CHECK(std::is_sorted(pencil.begin(), pencil.end()));
        for (long id : pencil)
            CHECK(subspace_contains_point(ctx, ctx.subspace(2, id), p));
        // Definitional cross-check via a full scan.
        std::vector<long> scan;
        for (long id = 0; id < ctx.num_subspaces(2); ++id)
            if (subspace_contains_point(ctx, ctx.subspace(2, id), p)) scan.push_back(id);
        CHECK(scan == pencil);
    }
    Subspace h = dual_subspace(ctx, make_subspace(ctx, {ctx.point(0)}));
    CHECK(h.dim == 3);
    CHECK(BigInt(subspaces_inside(ctx, 2, h).size()) == gaussian(3, 2, 2));
    CHECK(BigInt(subspaces_inside(ctx, 1, h).size()) == gaussm(3, 2));
}

TEST_CASE("geometry: point sets match subspace_points") {
    GeometryContext ctx(FiniteField(3), 5);
    ctx.enumerate_subspaces(2);
    ctx.materialize_point_sets(2);
    REQUIRE(ctx.point_sets_ready(2));
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> pick(0, ctx.num_subspaces(2) - 1);
    for (int trial = 0; trial < 100; ++trial) {
        long id = pick(rng);
        const Bitset& bits = ctx.point_set(2, id);
        std::vector<int> listed = ctx.subspace_points(ctx.subspace(2, id));
        CHECK(bits.count() == listed.size());
        for (int p : listed) CHECK(bits.test(p));
        CHECK(BigInt(listed.size()) == gaussm(2, 3));
    }
    // Common points of a pair = points of the intersection.
    for (int trial = 0; trial < 100; ++trial) {
        long a = pick(rng), b = pick(rng);
        int d = intersect_dim(ctx, ctx.subspace(2, a), ctx.subspace(2, b));
        CHECK(BigInt(ctx.point_set(2, a).and_count(ctx.point_set(2, b))) == gaussm(d, 3));
    }
}

TEST_CASE("geometry: containment queries") {
    GeometryContext ctx(FiniteField(2), 4);
    ctx.enumerate_subspaces(2);
    Subspace s = ctx.subspace(2, 0);  // span(e1, e2)
    CHECK(subspace_contains(ctx, s, std::vector<int>{1, 1, 0, 0}));
    CHECK_FALSE(subspace_contains(ctx, s, std::vector<int>{0, 0, 1, 0}));
    std::vector<int> pts = ctx.subspace_points(s);
    CHECK(pts.size() == 3);
    for (int p = 0; p < ctx.num_points(); ++p)
        CHECK(subspace_contains_point(ctx, s, p) ==
              (std::find(pts.begin(), pts.end(), p) != pts.end()));
}

TEST_CASE("geometry: enumeration guards") {
    GeometryContext ctx(FiniteField(2), 18);
    CHECK_THROWS_AS(ctx.enumerate_subspaces(9), std::length_error);
    CHECK_THROWS_AS(ctx.enumerate_subspaces(-1), std::invalid_argument);
    CHECK_THROWS_AS(ctx.enumerate_subspaces(19), std::invalid_argument);
}
