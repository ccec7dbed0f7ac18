#include "qmms/lp.hpp"

#include <cstdint>
#include <exception>
#include <stdexcept>

namespace qmms {
namespace {

// ---------------------------------------------------------------------------
// Word-sized exact rationals with overflow detection.

struct RatOverflow : std::exception {
    const char* what() const noexcept override { return "word-sized rational overflow"; }
};

using int128 = __int128;

inline int128 abs128(int128 v) { return v < 0 ? -v : v; }

inline int128 gcd128(int128 a, int128 b) {
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Canonical: den > 0, gcd(|num|, den) == 1.
struct Rat64 {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat64() = default;
    Rat64(int v) : num(v) {}
    Rat64(long v) : num(v) {}
    Rat64(long long v) : num(v) {}

    static Rat64 reduce(int128 n, int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) return {};
        int128 g = gcd128(abs128(n), d);
        n /= g;
        d /= g;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw RatOverflow{};
        Rat64 r;
        r.num = static_cast<std::int64_t>(n);
        r.den = static_cast<std::int64_t>(d);
        return r;
    }

    int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }
    bool is_zero() const { return num == 0; }

    friend Rat64 operator+(const Rat64& a, const Rat64& b) {
        if (a.den == 1 && b.den == 1) {
            int128 n = int128(a.num) + b.num;
            if (n > INT64_MAX || n < INT64_MIN) throw RatOverflow{};
            Rat64 r;
            r.num = static_cast<std::int64_t>(n);
            return r;
        }
        return reduce(int128(a.num) * b.den + int128(b.num) * a.den, int128(a.den) * b.den);
    }
    friend Rat64 operator-(const Rat64& a, const Rat64& b) {
        if (a.den == 1 && b.den == 1) {
            int128 n = int128(a.num) - b.num;
            if (n > INT64_MAX || n < INT64_MIN) throw RatOverflow{};
            Rat64 r;
            r.num = static_cast<std::int64_t>(n);
            return r;
        }
        return reduce(int128(a.num) * b.den - int128(b.num) * a.den, int128(a.den) * b.den);
    }
    friend Rat64 operator*(const Rat64& a, const Rat64& b) {
        if (a.num == 0 || b.num == 0) return {};
        return reduce(int128(a.num) * b.num, int128(a.den) * b.den);
    }
    friend Rat64 operator/(const Rat64& a, const Rat64& b) {
        if (b.num == 0) throw std::domain_error("division by zero");
        return reduce(int128(a.num) * b.den, int128(a.den) * b.num);
    }
    Rat64 operator-() const {
        Rat64 r = *this;
        r.num = -r.num;
        return r;
    }
    Rat64& operator+=(const Rat64& o) { return *this = *this + o; }
    Rat64& operator-=(const Rat64& o) { return *this = *this - o; }

    friend bool operator==(const Rat64& a, const Rat64& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rat64& a, const Rat64& b) {
        return int128(a.num) * b.den < int128(b.num) * a.den;
    }
};

// Scalar adapters shared by both instantiations of the solver.

inline int sign_of(const Rat64& v) { return v.sign(); }
inline int sign_of(const Rational& v) { return v.sign(); }
inline bool is_zero(const Rat64& v) { return v.is_zero(); }
inline bool is_zero(const Rational& v) { return v.is_zero(); }

inline Rational to_rational(const Rat64& v) { return Rational(v.num, v.den); }
inline const Rational& to_rational(const Rational& v) { return v; }

template <typename Num>
Num convert(const Rational& v);

template <>
Rat64 convert<Rat64>(const Rational& v) {
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    if (num < INT64_MIN || num > INT64_MAX || den > INT64_MAX) throw RatOverflow{};
    Rat64 r;
    r.num = static_cast<std::int64_t>(num);
    r.den = static_cast<std::int64_t>(den);
    return r;
}

template <>
Rational convert<Rational>(const Rational& v) {
    return v;
}

template <typename Num>
Num convert(int v) {
    return Num(v);
}

template <typename Num>
Num convert(long v) {
    return Num(v);
}

// ---------------------------------------------------------------------------
// Phase-1 simplex on a dense tableau.
//
// Free variables are split as x = u - v; every constraint row gets a slack
// column (coefficient +1 for LE, -1 for GE, 0 for EQ), rows are normalized to
// nonnegative right-hand sides, and rows whose slack cannot serve as the
// initial basic variable receive an artificial column. Phase 1 minimizes the
// sum of artificials; the system is feasible exactly when the minimum is 0.

template <typename Num>
class Simplex {
public:
    Simplex(int num_vars, const std::vector<std::vector<Num>>& rows,
            const std::vector<Sense>& senses, const std::vector<Num>& rhs)
        : d_(num_vars), m_(static_cast<int>(rows.size())) {
        int num_cols = 2 * d_ + m_;  // artificials appended below
        tab_.assign(m_, {});
        rhs_.resize(m_);
        basis_.resize(m_);
        std::vector<int> needs_artificial;
        for (int r = 0; r < m_; ++r) {
            std::vector<Num>& row = tab_[r];
            row.assign(num_cols, Num(0));
            for (int j = 0; j < d_; ++j) {
                row[j] = rows[r][j];
                row[d_ + j] = -rows[r][j];
            }
            int slack = 0;
            if (senses[r] == Sense::LE) slack = 1;
            if (senses[r] == Sense::GE) slack = -1;
            row[2 * d_ + r] = Num(slack);
            rhs_[r] = rhs[r];
            if (sign_of(rhs_[r]) < 0) {
                for (Num& cell : row) cell = -cell;
                rhs_[r] = -rhs_[r];
                slack = -slack;
            }
            if (slack == 1) {
                basis_[r] = 2 * d_ + r;
            } else {
                basis_[r] = -1;
                needs_artificial.push_back(r);
            }
        }
        first_artificial_ = num_cols;
        num_cols += static_cast<int>(needs_artificial.size());
        for (int r = 0; r < m_; ++r) tab_[r].resize(num_cols, Num(0));
        int next = first_artificial_;
        for (int r : needs_artificial) {
            tab_[r][next] = Num(1);
            basis_[r] = next++;
        }

        // Phase-1 cost row (reduced costs), priced out over the initial basis:
        // artificial columns cost 1, everything else 0.
        cost_.assign(num_cols, Num(0));
        objective_ = Num(0);
        for (int r : needs_artificial) {
            for (int j = 0; j < num_cols; ++j) cost_[j] -= tab_[r][j];
            objective_ -= rhs_[r];
        }
        for (int j = first_artificial_; j < num_cols; ++j) cost_[j] += Num(1);
    }

    // Runs phase 1 to optimality; true iff the original system is feasible.
    bool solve() {
        const int num_cols = static_cast<int>(cost_.size());
        for (long iter = 0; iter < kMaxIterations; ++iter) {
            int entering = -1;
            for (int j = 0; j < num_cols; ++j)
                if (sign_of(cost_[j]) < 0) {
                    entering = j;
                    break;
                }
            if (entering < 0) return is_zero(objective_);

            int leaving = -1;
            Num best_ratio(0);
            for (int r = 0; r < m_; ++r) {
                if (sign_of(tab_[r][entering]) <= 0) continue;
                Num ratio = rhs_[r] / tab_[r][entering];
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leaving])) {
                    leaving = r;
                    best_ratio = ratio;
                }
            }
            if (leaving < 0)
                throw std::logic_error("phase-1 objective unbounded below");  // impossible
            pivot(leaving, entering);
        }
        throw std::logic_error("simplex iteration limit exceeded");
    }

    std::vector<Rational> witness() const {
        std::vector<Rational> x(d_, Rational(0));
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < d_)
                x[basis_[r]] += to_rational(rhs_[r]);
            else if (basis_[r] < 2 * d_)
                x[basis_[r] - d_] -= to_rational(rhs_[r]);
        }
        return x;
    }

private:
    static constexpr long kMaxIterations = 2'000'000;

    void pivot(int row, int col) {
        const int num_cols = static_cast<int>(cost_.size());
        std::vector<Num>& prow = tab_[row];
        const Num p = prow[col];
        if (!(p == Num(1))) {
            for (int j = 0; j < num_cols; ++j)
                if (!is_zero(prow[j])) prow[j] = prow[j] / p;
            rhs_[row] = rhs_[row] / p;
        }
        prow[col] = Num(1);
        for (int r = 0; r < m_; ++r) {
            if (r == row) continue;
            const Num factor = tab_[r][col];
            if (is_zero(factor)) continue;
            std::vector<Num>& target = tab_[r];
            for (int j = 0; j < num_cols; ++j)
                if (!is_zero(prow[j])) target[j] -= factor * prow[j];
            target[col] = Num(0);
            rhs_[r] -= factor * rhs_[row];
        }
        const Num cfactor = cost_[col];
        if (!is_zero(cfactor)) {
            for (int j = 0; j < num_cols; ++j)
                if (!is_zero(prow[j])) cost_[j] -= cfactor * prow[j];
            cost_[col] = Num(0);
            objective_ -= cfactor * rhs_[row];
        }
        basis_[row] = col;
    }

    int d_;
    int m_;
    int first_artificial_ = 0;
    std::vector<std::vector<Num>> tab_;
    std::vector<Num> rhs_;
    std::vector<Num> cost_;
    std::vector<int> basis_;
    Num objective_{0};
};

template <typename Num, typename Constraint>
LpResult solve_with(int num_vars, const std::vector<Constraint>& constraints) {
    std::vector<std::vector<Num>> rows;
    std::vector<Sense> senses;
    std::vector<Num> rhs;
    rows.reserve(constraints.size());
    senses.reserve(constraints.size());
    rhs.reserve(constraints.size());
    for (const auto& c : constraints) {
        if (static_cast<int>(c.coeffs.size()) != num_vars)
            throw std::invalid_argument("constraint arity does not match the variable count");
        std::vector<Num> row;
        row.reserve(num_vars);
        for (const auto& v : c.coeffs) row.push_back(convert<Num>(v));
        rows.push_back(std::move(row));
        senses.push_back(c.sense);
        rhs.push_back(convert<Num>(c.rhs));
    }
    Simplex<Num> simplex(num_vars, rows, senses, rhs);
    LpResult result;
    result.feasible = simplex.solve();
    if (result.feasible) result.witness = simplex.witness();
    return result;
}

}  // namespace

LpResult lp_feasibility(int num_vars, const std::vector<LinearConstraint>& constraints) {
    try {
        return solve_with<Rat64>(num_vars, constraints);
    } catch (const RatOverflow&) {
        return solve_with<Rational>(num_vars, constraints);
    }
}

LpResult lp_feasibility(int num_vars, const std::vector<IntConstraint>& constraints) {
    try {
        return solve_with<Rat64>(num_vars, constraints);
    } catch (const RatOverflow&) {
        return solve_with<Rational>(num_vars, constraints);
    }
}

}  // namespace qmms
