// Gaussian binomials: frozen values, an independent recurrence-built table as
// oracle, symmetry, and the growth estimates the certificates rely on.
#include <doctest.h>

#include "qmms/gaussian.hpp"

#include <stdexcept>
#include <vector>

using namespace qmms;

TEST_CASE("gaussian: frozen small values") {
    CHECK(gaussian(4, 2, 2) == 35);
    CHECK(gaussian(5, 2, 2) == 155);
    CHECK(gaussian(5, 3, 2) == 155);
    CHECK(gaussian(6, 3, 2) == 1395);
    CHECK(gaussian(4, 2, 3) == 130);
    CHECK(gaussian(5, 2, 3) == 1210);
    CHECK(gaussian(6, 2, 3) == 11011);
    CHECK(gaussian(7, 3, 3) == 925771);
    CHECK(gaussian(3, 1, 4) == 21);
    CHECK(gaussm(2, 2) == 3);
    CHECK(gaussm(4, 2) == 15);
    CHECK(gaussm(5, 2) == 31);
    CHECK(gaussm(4, 3) == 40);
    CHECK(gaussm(5, 3) == 121);
    CHECK(gaussm(0, 7) == 0);
}

TEST_CASE("gaussian: edges and validation") {
    CHECK(gaussian(0, 0, 2) == 1);
    CHECK(gaussian(5, 0, 2) == 1);
    CHECK(gaussian(5, 5, 3) == 1);
    CHECK(gaussian(5, 6, 3) == 0);
    CHECK(gaussian(5, -1, 3) == 0);
    CHECK_THROWS_AS(gaussian(5, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(gaussian(5, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian(-1, 0, 2), std::invalid_argument);
}

// Independent oracle: rebuild the whole triangle from the first recurrence
// alone and compare against the product-formula implementation.
TEST_CASE("gaussian: recurrence-table oracle") {
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
        std::vector<std::vector<BigInt>> t(16, std::vector<BigInt>(17, 0));
        for (int n = 0; n < 16; ++n) {
            t[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                t[n][k] = t[n - 1][k] * int_pow(q, static_cast<unsigned>(k)) + t[n - 1][k - 1];
        }
        for (int n = 0; n < 16; ++n)
            for (int k = 0; k <= n; ++k) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(t[n][k] == gaussian(n, k, q));
            }
    }
}

TEST_CASE("gaussian: complement symmetry and second recurrence") {
    for (int q : {2, 3, 5, 9})
        for (int n = 1; n <= 12; ++n)
            for (int k = 0; k <= n; ++k) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(gaussian(n, k, q) == gaussian(n, n - k, q));
                if (k >= 1)
                    CHECK(gaussian(n, k, q) ==
                          gaussian(n - 1, k, q) +
                              gaussian(n - 1, k - 1, q) * int_pow(q, static_cast<unsigned>(n - k)));
            }
}

TEST_CASE("gaussian: growth bounds") {
    for (int q : {3, 4, 5, 7, 8, 9})
        for (int n = 1; n <= 12; ++n)
            for (int k = 0; k <= n; ++k) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(gaussian(n, k, q) <= 2 * int_pow(q, static_cast<unsigned>(k * (n - k))));
                // The pencil-size lower bound is strict for 2 <= k < n and
                // degenerates to equality at k = 1.
                if (k >= 2 && k < n)
                    CHECK(gaussian(n - 1, k - 1, q) >
                          int_pow(q, static_cast<unsigned>((k - 1) * (n - k))));
                if (k == 1) CHECK(gaussian(n - 1, 0, q) == 1);
            }
}

TEST_CASE("gaussian: truncated-pencil lower bound") {
    // q^(a(k-1)) [n-a-1, k-1] >= (1 - 2 q^-(n-k-a+1)) [n-1, k-1]
    for (int q : {2, 3, 4, 5})
        for (int n = 2; n <= 12; ++n)
            for (int k = 1; 2 * k <= n; ++k)
                for (int a = k; a <= n - k; ++a) {
                    Rational lhs = Rational(int_pow(q, static_cast<unsigned>(a * (k - 1))) *
                                            gaussian(n - a - 1, k - 1, q));
                    Rational rhs =
                        (Rational(1) -
                         Rational(2, int_pow(q, static_cast<unsigned>(n - k - a + 1)))) *
                        Rational(gaussian(n - 1, k - 1, q));
                    CAPTURE(q);
                    CAPTURE(n);
                    CAPTURE(k);
                    CAPTURE(a);
                    CHECK(lhs >= rhs);
                }
}

TEST_CASE("numbers: rational parsing") {
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(rational_to_string(Rational(-1, 2)) == "-1/2");
    CHECK(rational_to_string(Rational(4)) == "4");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}
