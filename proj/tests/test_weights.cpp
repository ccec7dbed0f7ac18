// Weightings: sum-zero validation, the pencil/hyperplane/dual constructions
// with their exact nonnegative counts, the duality identity, and JSON I/O.
#include <doctest.h>

#include "qmms/gaussian.hpp"
#include "qmms/weights.hpp"
#include "qmms/weights_io.hpp"

#include <random>
#include <stdexcept>

using namespace qmms;

TEST_CASE("weights: sum-zero validation with exact residual") {
    GeometryContext ctx(FiniteField(2), 3);
    std::vector<Rational> vals(ctx.num_points(), Rational(0));
    vals[0] = Rational(1);
    vals[1] = Rational(-1, 2);
    bool threw = false;
    try {
        WeightFunction::from_values(ctx, vals);
    } catch (const SumZeroError& e) {
        threw = true;
        CHECK(e.residual == Rational(1, 2));
        CHECK(std::string(e.what()).find("1/2") != std::string::npos);
    }
    CHECK(threw);
    CHECK_THROWS_AS(WeightFunction::from_values(ctx, std::vector<Rational>(3, Rational(0))),
                    std::invalid_argument);
    vals[1] = Rational(-1);
    WeightFunction f = WeightFunction::from_values(ctx, vals);
    CHECK(f[0] == Rational(1));
    CHECK(f[1] == Rational(-1));
}

TEST_CASE("weights: zero weighting marks every subspace nonnegative") {
    GeometryContext ctx(FiniteField(2), 4);
    WeightFunction f = WeightFunction::zero(ctx);
    Family fam = nonneg_family(ctx, f, 2);
    CHECK(fam.k == 2);
    CHECK(BigInt(fam.members.size()) == gaussian(4, 2, 2));
}

TEST_CASE("weights: point pencil example") {
    GeometryContext ctx(FiniteField(2), 4);
    WeightFunction f = point_pencil_example(ctx, 0);
    CHECK(f[0] == Rational(14));
    for (int p = 1; p < ctx.num_points(); ++p) CHECK(f[p] == Rational(-1));
    for (int k : {1, 2, 3}) {
        Family fam = nonneg_family(ctx, f, k);
        CHECK(fam.members == subspaces_through_point(ctx, k, 0));
        CHECK(BigInt(fam.members.size()) == gaussian(3, k - 1, 2));
    }
    // A non-prime instance of the same shape.
    GeometryContext c3(FiniteField(3), 5);
    Family fam = nonneg_family(c3, point_pencil_example(c3, 5), 2);
    CHECK(fam.members == subspaces_through_point(c3, 2, 5));
    CHECK(BigInt(fam.members.size()) == gaussian(4, 1, 3));
}

TEST_CASE("weights: hyperplane example") {
    GeometryContext ctx(FiniteField(2), 4);
    Subspace h = dual_subspace(ctx, make_subspace(ctx, {ctx.point(3)}));
    REQUIRE(h.dim == 3);
    WeightFunction f = hyperplane_example(ctx, h);
    Family fam = nonneg_family(ctx, f, 2);
    std::vector<long> inside = subspaces_inside(ctx, 2, h);
    CHECK(fam.members == inside);
    CHECK(BigInt(fam.members.size()) == gaussian(3, 1, 2));
    // No common point: the members' point sets have empty intersection.
    ctx.materialize_point_sets(2);
    Bitset common = ctx.point_set(2, fam.members[0]);
    for (long id : fam.members) common &= ctx.point_set(2, id);
    CHECK(common.count() == 0);
    // On-hyperplane value is q^(n-1)/gaussm(n-1), off-hyperplane -1.
    for (int p = 0; p < ctx.num_points(); ++p)
        CHECK(f[p] == (subspace_contains_point(ctx, h, p) ? Rational(8, 7) : Rational(-1)));
    CHECK_THROWS_AS(hyperplane_example(ctx, ctx.subspace(2, 0)), std::invalid_argument);
}

TEST_CASE("weights: random sum-zero weightings") {
    GeometryContext ctx(FiniteField(3), 4);
    std::mt19937_64 rng(5);
    WeightFunction f = random_sum_zero(ctx, rng);
    Rational total = 0;
    for (int p = 0; p < ctx.num_points(); ++p) total += f[p];
    CHECK(total == 0);
    std::mt19937_64 r1(9), r2(9);
    CHECK(random_sum_zero(ctx, r1).values() == random_sum_zero(ctx, r2).values());
    std::mt19937_64 r3(10);
    CHECK_THROWS_AS(random_sum_zero(ctx, r3, 0), std::invalid_argument);
}

TEST_CASE("weights: subspace weights sum point weights") {
    GeometryContext ctx(FiniteField(2), 4);
    ctx.enumerate_subspaces(2);
    std::mt19937_64 rng(6);
    WeightFunction f = random_sum_zero(ctx, rng);
    WeightVector b = weight_vector(ctx, f, 2);
    REQUIRE(b.values.size() == 35);
    for (long id = 0; id < 35; ++id) {
        Subspace s = ctx.subspace(2, id);
        Rational direct = 0;
        for (int p : ctx.subspace_points(s)) direct += f[p];
        CHECK(b.values[id] == direct);
        CHECK(subspace_weight(f, s) == direct);
        CHECK(subspace_weight(f, 2, id) == direct);
    }
    Family fam = nonneg_family(b);
    for (long id = 0; id < 35; ++id) {
        bool member =
            std::find(fam.members.begin(), fam.members.end(), id) != fam.members.end();
        CHECK(member == (b.values[id] >= 0));
    }
}

TEST_CASE("weights: dual transform identity and count transport") {
    for (auto [n, k, q] : {std::tuple{4, 2, 2}, {5, 2, 2}, {4, 2, 3}}) {
        GeometryContext ctx(FiniteField(q), n);
        ctx.enumerate_subspaces(k);
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 5; ++trial) {
            WeightFunction f = random_sum_zero(ctx, rng);
            DualWeighting dual = dual_transform(f);
            BigInt scale = int_pow(q, static_cast<unsigned>(n - k - 1));
            for (long id = 0; id < ctx.num_subspaces(k); ++id) {
                Subspace u = ctx.subspace(k, id);
                CHECK(subspace_weight(dual.g, dual_subspace(*dual.context, u)) ==
                      Rational(scale) * subspace_weight(f, u));
            }
            Family primal = nonneg_family(ctx, f, k);
            Family transported = nonneg_family(*dual.context, dual.g, n - k);
            CHECK(primal.members.size() == transported.members.size());
        }
    }
}

TEST_CASE("weights: dual example beats the pencil count for k < n < 2k") {
    GeometryContext ctx(FiniteField(2), 5);
    WeightFunction f = point_pencil_example(ctx, 0);
    DualWeighting dual = dual_transform(f);
    Family fam = nonneg_family(*dual.context, dual.g, 3);
    CHECK(BigInt(fam.members.size()) == gaussian(4, 3, 2));
    CHECK(gaussian(4, 3, 2) < gaussian(4, 2, 2));
    // Pull the weighting back onto a caller-owned context.
    GeometryContext fresh(FiniteField(2), 5);
    WeightFunction g = WeightFunction::from_values(fresh, dual.g.values());
    CHECK(nonneg_family(fresh, g, 3).members == fam.members);
}

TEST_CASE("weights_io: round-trip") {
    GeometryContext ctx(FiniteField(2), 4);
    std::mt19937_64 rng(23);
    WeightFunction f = random_sum_zero(ctx, rng);
    LoadedWeighting loaded = weighting_from_json(weighting_to_json(f));
    CHECK(loaded.context->n() == 4);
    CHECK(loaded.context->q() == 2);
    CHECK(loaded.f.values() == f.values());
}

TEST_CASE("weights_io: extension fields carry their modulus") {
    GeometryContext ctx(FiniteField(4), 3);
    std::mt19937_64 rng(29);
    WeightFunction f = random_sum_zero(ctx, rng);
    std::string doc = weighting_to_json(f);
    CHECK(doc.find("modulus") != std::string::npos);
    LoadedWeighting loaded = weighting_from_json(doc);
    CHECK(loaded.context->field().modulus() == std::vector<int>{1, 1, 1});
    CHECK(loaded.f.values() == f.values());

    GeometryContext custom(FiniteField(49, {3, 1, 1}), 2);
    std::mt19937_64 rng2(31);
    WeightFunction g = random_sum_zero(custom, rng2);
    LoadedWeighting back = weighting_from_json(weighting_to_json(g));
    CHECK(back.context->field().modulus() == std::vector<int>{3, 1, 1});
    CHECK(back.f.values() == g.values());
}

TEST_CASE("weights_io: diagnostics") {
    CHECK_THROWS_WITH_AS(weighting_from_json("{"),
                         doctest::Contains("JSON syntax error at line"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(weighting_from_json("[1, 2]"),
                         doctest::Contains("must be a JSON object"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(weighting_from_json(R"({"n": 3, "q": 2})"),
                         doctest::Contains("missing required key"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        weighting_from_json(R"({"n": 3, "q": 2, "weights": [["1","1"]]})"),
        doctest::Contains("\"weights\" has 1 entries"), std::invalid_argument);
    // Element-indexed diagnostics.
    std::string bad_pair = R"({"n": 2, "q": 2, "weights": [["1","1"], ["1","0"], ["-2","1"]]})";
    CHECK_THROWS_WITH_AS(weighting_from_json(bad_pair), doctest::Contains("weights[1]"),
                         std::invalid_argument);
    // A nonzero total propagates as SumZeroError with the exact residual.
    std::string off = R"({"n": 2, "q": 2, "weights": [["1","1"], ["1","2"], ["-1","1"]]})";
    bool threw = false;
    try {
        weighting_from_json(off);
    } catch (const SumZeroError& e) {
        threw = true;
        CHECK(e.residual == Rational(1, 2));
    }
    CHECK(threw);
    // Invalid geometry parameters surface as the field/geometry errors.
    CHECK_THROWS_AS(weighting_from_json(R"({"n": 2, "q": 6, "weights": []})"),
                    std::invalid_argument);
}
