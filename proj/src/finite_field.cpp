#include "qmms/finite_field.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qmms {
namespace {

constexpr int kMaxQ = 1024;

// Built-in irreducible moduli (coefficients c0..ce, least significant first).
const std::map<int, std::vector<int>>& builtin_moduli() {
    static const std::map<int, std::vector<int>> table = {
        {4, {1, 1, 1}},        // x^2 + x + 1 over F_2
        {8, {1, 1, 0, 1}},     // x^3 + x + 1 over F_2
        {9, {2, 2, 1}},        // x^2 + 2x + 2 over F_3
        {16, {1, 1, 0, 0, 1}}, // x^4 + x + 1 over F_2
        {25, {2, 4, 1}},       // x^2 + 4x + 2 over F_5
        {27, {1, 2, 0, 1}},    // x^3 + 2x + 1 over F_3
    };
    return table;
}

bool is_prime(int m) {
    if (m < 2) return false;
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

// Factors q as p^e with p prime; returns false if q is not a prime power.
bool prime_power(int q, int& p, int& e) {
    if (q < 2) return false;
    int base = 2;
    while (q % base != 0) {
        ++base;
        if (base * base > q) {
            base = q;
            break;
        }
    }
    if (!is_prime(base)) return false;
    int m = q, exp = 0;
    while (m % base == 0) {
        m /= base;
        ++exp;
    }
    if (m != 1) return false;
    p = base;
    e = exp;
    return true;
}

using Poly = std::vector<int>;  // coefficients over F_p, least significant first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int mod_inv(int a, int p) {
    int result = 1, base = a % p, exp = p - 2;
    while (exp > 0) {
        if (exp & 1) result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return result;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, int p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    // Reduce modulo the monic polynomial `mod` of degree d.
    int d = static_cast<int>(mod.size()) - 1;
    for (int i = static_cast<int>(prod.size()) - 1; i >= d; --i) {
        int c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < d; ++j)
            prod[i - d + j] = ((prod[i - d + j] - c * mod[j]) % p + p) % p;
    }
    prod.resize(d);
    trim(prod);
    return prod;
}

Poly poly_pow_x_mod(long long exp, const Poly& mod, int p) {
    // x^exp mod `mod`
    Poly result = {1};
    Poly base = poly_mul_mod({0, 1}, {1}, mod, p);
    while (exp > 0) {
        if (exp & 1) result = poly_mul_mod(result, base, mod, p);
        base = poly_mul_mod(base, base, mod, p);
        exp >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        int db = static_cast<int>(b.size()) - 1;
        int lead_inv = mod_inv(b.back(), p);
        Poly r = a;
        for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
            int c = r[i];
            if (c == 0) continue;
            int factor = c * lead_inv % p;
            for (int j = 0; j <= db; ++j)
                r[i - db + j] = ((r[i - db + j] - factor * b[j]) % p + p) % p;
        }
        trim(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

bool poly_irreducible(const std::vector<int>& poly, int p) {
    // Rabin's test: f of degree d is irreducible over F_p iff x^(p^d) == x
    // (mod f) and gcd(x^(p^(d/r)) - x, f) = 1 for every prime r dividing d.
    int d = static_cast<int>(poly.size()) - 1;
    if (d < 1 || poly.back() != 1) return false;
    if (d == 1) return true;

    auto x_power_minus_x = [&](long long exp) {
        Poly g = poly_pow_x_mod(exp, poly, p);
        if (g.size() < 2) g.resize(2, 0);
        g[1] = ((g[1] - 1) % p + p) % p;
        trim(g);
        return g;
    };

    long long pd = 1;
    for (int i = 0; i < d; ++i) pd *= p;
    if (!x_power_minus_x(pd).empty()) return false;

    for (int r = 2; r <= d; ++r) {
        if (d % r != 0 || !is_prime(r)) continue;
        long long sub = 1;
        for (int i = 0; i < d / r; ++i) sub *= p;
        Poly g = poly_gcd(x_power_minus_x(sub), poly, p);
        if (g.size() != 1) return false;
    }
    return true;
}

FiniteField::FiniteField(int q) : q_(q) {
    if (!prime_power(q, p_, e_))
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power >= 2");
    if (q > kMaxQ)
        throw std::invalid_argument("q = " + std::to_string(q) + " exceeds the supported limit " +
                                    std::to_string(kMaxQ));
    if (e_ > 1) {
        auto it = builtin_moduli().find(q);
        if (it == builtin_moduli().end())
            throw std::invalid_argument("no built-in modulus for q = " + std::to_string(q) +
                                        "; supply an irreducible modulus explicitly");
        modulus_ = it->second;
    }
    build_tables();
}

FiniteField::FiniteField(int q, const std::vector<int>& modulus) : q_(q), modulus_(modulus) {
    if (!prime_power(q, p_, e_))
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power >= 2");
    if (q > kMaxQ)
        throw std::invalid_argument("q = " + std::to_string(q) + " exceeds the supported limit " +
                                    std::to_string(kMaxQ));
    if (e_ == 1)
        throw std::invalid_argument("a modulus polynomial only applies to extension fields");
    if (static_cast<int>(modulus.size()) != e_ + 1)
        throw std::invalid_argument("modulus must have degree " + std::to_string(e_));
    if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
    for (int c : modulus)
        if (c < 0 || c >= p_)
            throw std::invalid_argument("modulus coefficients must lie in 0.." +
                                        std::to_string(p_ - 1));
    if (!poly_irreducible(modulus, p_))
        throw std::invalid_argument("modulus is not irreducible over F_" + std::to_string(p_));
    build_tables();
}

int FiniteField::raw_add(int a, int b) const {
    // Digit-wise mod-p addition of the base-p encodings.
    int result = 0, place = 1;
    for (int i = 0; i < e_; ++i) {
        int sum = ((a / place) % p_ + (b / place) % p_) % p_;
        result += sum * place;
        place *= p_;
    }
    return result;
}

int FiniteField::raw_mul(int a, int b) const {
    if (e_ == 1) return a * b % p_;
    auto digits = [this](int v) {
        Poly d;
        while (v != 0) {
            d.push_back(v % p_);
            v /= p_;
        }
        return d;
    };
    Poly prod = poly_mul_mod(digits(a), digits(b), modulus_, p_);
    int result = 0, place = 1;
    for (int c : prod) {
        result += c * place;
        place *= p_;
    }
    return result;
}

void FiniteField::build_tables() {
    add_tab_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_tab_.assign(static_cast<std::size_t>(q_) * q_, 0);
    neg_tab_.assign(q_, 0);
    inv_tab_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) {
        for (int b = 0; b < q_; ++b) {
            int s = raw_add(a, b);
            int m = raw_mul(a, b);
            add_tab_[a * q_ + b] = s;
            mul_tab_[a * q_ + b] = m;
            if (s == 0) neg_tab_[a] = b;
            if (m == 1) inv_tab_[a] = b;
        }
    }
}

int FiniteField::inv(int a) const {
    if (a == 0) throw std::domain_error("0 has no multiplicative inverse");
    return inv_tab_[a];
}

}  // namespace qmms
