// Exact LP feasibility: hand-checkable systems, a single-variable interval
// oracle, witness exactness, and the arbitrary-precision fallback path.
#include <doctest.h>

#include "qmms/lp.hpp"

#include <optional>
#include <random>
#include <vector>

using namespace qmms;

namespace {

bool satisfies(const std::vector<Rational>& witness, const LinearConstraint& c) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < c.coeffs.size(); ++j) lhs += c.coeffs[j] * witness[j];
    switch (c.sense) {
        case Sense::LE: return lhs <= c.rhs;
        case Sense::GE: return lhs >= c.rhs;
        case Sense::EQ: return lhs == c.rhs;
    }
    return false;
}

LinearConstraint row(std::vector<Rational> coeffs, Sense sense, Rational rhs) {
    return LinearConstraint{std::move(coeffs), sense, std::move(rhs)};
}

}  // namespace

TEST_CASE("lp: trivial systems") {
    LpResult empty = lp_feasibility(2, std::vector<LinearConstraint>{});
    CHECK(empty.feasible);
    CHECK(empty.witness == std::vector<Rational>{0, 0});

    LpResult none = lp_feasibility(0, std::vector<LinearConstraint>{});
    CHECK(none.feasible);
    CHECK(none.witness.empty());

    // 0 == 0 and 0 >= -1 hold; 0 == 1 and 0 <= -1 cannot.
    CHECK(lp_feasibility(1, {row({Rational(0)}, Sense::EQ, 0)}).feasible);
    CHECK(lp_feasibility(1, {row({Rational(0)}, Sense::GE, -1)}).feasible);
    CHECK_FALSE(lp_feasibility(1, {row({Rational(0)}, Sense::EQ, 1)}).feasible);
    CHECK_FALSE(lp_feasibility(1, {row({Rational(0)}, Sense::LE, -1)}).feasible);
}

TEST_CASE("lp: interval logic on one variable") {
    CHECK_FALSE(lp_feasibility(1, {row({Rational(1)}, Sense::GE, 3),
                                   row({Rational(1)}, Sense::LE, 2)})
                    .feasible);
    LpResult r = lp_feasibility(1, {row({Rational(1)}, Sense::GE, 3),
                                    row({Rational(1)}, Sense::LE, 5)});
    REQUIRE(r.feasible);
    CHECK(r.witness[0] >= 3);
    CHECK(r.witness[0] <= 5);
    // Negative-direction bound: x <= -5.
    LpResult neg = lp_feasibility(1, {row({Rational(1)}, Sense::LE, -5)});
    REQUIRE(neg.feasible);
    CHECK(neg.witness[0] <= -5);
}

TEST_CASE("lp: unique solutions are reproduced exactly") {
    // 2x + 3y = 7, x - y = 1  =>  x = 2, y = 1.
    LpResult r = lp_feasibility(2, {row({Rational(2), Rational(3)}, Sense::EQ, 7),
                                    row({Rational(1), Rational(-1)}, Sense::EQ, 1)});
    REQUIRE(r.feasible);
    CHECK(r.witness == std::vector<Rational>{2, 1});

    // Rational data: x = 1/3 consistent with 3x = 1, inconsistent with x = 1/4.
    LpResult ok = lp_feasibility(1, {row({Rational(1)}, Sense::EQ, Rational(1, 3)),
                                     row({Rational(3)}, Sense::EQ, 1)});
    REQUIRE(ok.feasible);
    CHECK(ok.witness[0] == Rational(1, 3));
    CHECK_FALSE(lp_feasibility(1, {row({Rational(1)}, Sense::EQ, Rational(1, 3)),
                                   row({Rational(1)}, Sense::EQ, Rational(1, 4))})
                    .feasible);
}

TEST_CASE("lp: huge coefficients take the arbitrary-precision path") {
    BigInt big = int_pow(BigInt(10), 30);
    LpResult r = lp_feasibility(1, {row({Rational(1)}, Sense::EQ, Rational(big)),
                                    row({Rational(1)}, Sense::GE, Rational(big - 1))});
    REQUIRE(r.feasible);
    CHECK(r.witness[0] == Rational(big));
    CHECK_FALSE(lp_feasibility(1, {row({Rational(1)}, Sense::EQ, Rational(big)),
                                   row({Rational(1)}, Sense::LE, Rational(big - 1))})
                    .feasible);
    // Tiny magnitudes likewise stay exact.
    Rational eps(1, big);
    LpResult tiny = lp_feasibility(1, {row({Rational(1)}, Sense::EQ, eps)});
    REQUIRE(tiny.feasible);
    CHECK(tiny.witness[0] == eps);
}

TEST_CASE("lp: one-variable fuzz against the interval oracle") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> coeff(-6, 6), bound(-12, 12), pick_sense(0, 2);
    for (int trial = 0; trial < 300; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 5);
        std::vector<LinearConstraint> sys;
        std::optional<Rational> lo, hi;  // running interval; nullopt = unbounded
        bool contradictory = false;
        for (int i = 0; i < rows; ++i) {
            int a = coeff(rng);
            int b = bound(rng);
            Sense s = static_cast<Sense>(pick_sense(rng));
            sys.push_back(row({Rational(a)}, s, b));
            if (a == 0) {
                bool holds = s == Sense::LE ? 0 <= b : s == Sense::GE ? 0 >= b : b == 0;
                contradictory = contradictory || !holds;
                continue;
            }
            Rational v = a > 0 ? Rational(b, a) : Rational(-b, -a);
            // ax <= b divides by a, flipping the sense when a < 0.
            bool upper = (s == Sense::LE) == (a > 0);
            if (s == Sense::EQ) {
                if (!lo || *lo < v) lo = v;
                if (!hi || *hi > v) hi = v;
            } else if (upper) {
                if (!hi || *hi > v) hi = v;
            } else {
                if (!lo || *lo < v) lo = v;
            }
        }
        bool oracle = !contradictory && (!lo || !hi || *lo <= *hi);
        LpResult r = lp_feasibility(1, sys);
        CAPTURE(trial);
        CHECK(r.feasible == oracle);
        if (r.feasible)
            for (const LinearConstraint& c : sys) CHECK(satisfies(r.witness, c));
    }
}

TEST_CASE("lp: witnesses satisfy every constraint, int and rational forms agree") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> coeff(-5, 5), bound(-10, 10), pick_sense(0, 2);
    for (int trial = 0; trial < 150; ++trial) {
        int vars = 2 + static_cast<int>(rng() % 3);
        int rows = 1 + static_cast<int>(rng() % 6);
        std::vector<LinearConstraint> rational_sys;
        std::vector<IntConstraint> int_sys;
        for (int i = 0; i < rows; ++i) {
            std::vector<int> c(vars);
            for (int& v : c) v = coeff(rng);
            Sense s = static_cast<Sense>(pick_sense(rng));
            long b = bound(rng);
            int_sys.push_back(IntConstraint{c, s, b});
            std::vector<Rational> cr(c.begin(), c.end());
            rational_sys.push_back(row(std::move(cr), s, b));
        }
        LpResult ri = lp_feasibility(vars, int_sys);
        LpResult rr = lp_feasibility(vars, rational_sys);
        CAPTURE(trial);
        CHECK(ri.feasible == rr.feasible);
        if (ri.feasible) {
            for (const LinearConstraint& c : rational_sys) {
                CHECK(satisfies(ri.witness, c));
                CHECK(satisfies(rr.witness, c));
            }
        }
    }
}

TEST_CASE("lp: scaling a system preserves feasibility") {
    std::vector<LinearConstraint> base = {
        row({Rational(2), Rational(-1), Rational(1)}, Sense::GE, 1),
        row({Rational(1), Rational(1), Rational(0)}, Sense::EQ, 3),
        row({Rational(0), Rational(1), Rational(-2)}, Sense::LE, 2),
    };
    LpResult original = lp_feasibility(3, base);
    std::vector<LinearConstraint> scaled = base;
    for (LinearConstraint& c : scaled) {
        for (Rational& v : c.coeffs) v *= 10000;
        c.rhs *= 10000;
    }
    LpResult big = lp_feasibility(3, scaled);
    CHECK(original.feasible == big.feasible);
    REQUIRE(original.feasible);
    for (const LinearConstraint& c : scaled) CHECK(satisfies(big.witness, c));
}
