#pragma once

#include <cstdint>
#include <vector>

namespace qmms {

// Irreducibility test for a monic polynomial over F_p (coefficients c0..cd,
// least significant first). Exposed for validation and tests.
bool poly_irreducible(const std::vector<int>& poly, int p);

// Arithmetic in the finite field F_q, q = p^e. Elements are encoded as the
// integers 0..q-1: the base-p digits of an element are the coefficients of its
// polynomial representative, least significant digit = constant term, so 0 and
// 1 are always the additive and multiplicative identities and for prime q the
// encoding is plain mod-p arithmetic.
//
// Extension fields are built modulo a fixed irreducible polynomial: a built-in
// modulus is provided for q in {4, 8, 9, 16, 25, 27}; any other extension
// field requires an explicit modulus. Operation tables are precomputed for
// small q, so add/mul/inv are O(1) lookups in all hot paths.
class FiniteField {
public:
    // Built-in modulus (or prime field). Throws std::invalid_argument if q is
    // not a prime power in range, or is an extension field without a built-in
    // modulus.
    explicit FiniteField(int q);

    // Extension field with a caller-supplied modulus: coefficients c0..ce,
    // least significant first, monic of degree e, irreducible over F_p.
    FiniteField(int q, const std::vector<int>& modulus);

    int q() const { return q_; }
    int p() const { return p_; }
    int e() const { return e_; }

    // Modulus polynomial coefficients c0..ce (empty for prime fields).
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_tab_[a * q_ + b]; }
    int mul(int a, int b) const { return mul_tab_[a * q_ + b]; }
    int neg(int a) const { return neg_tab_[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }

    // Multiplicative inverse; throws std::domain_error for 0.
    int inv(int a) const;

    bool operator==(const FiniteField& other) const {
        return q_ == other.q_ && modulus_ == other.modulus_;
    }

private:
    void build_tables();
    int raw_add(int a, int b) const;
    int raw_mul(int a, int b) const;

    int q_ = 0;
    int p_ = 0;
    int e_ = 0;
    std::vector<int> modulus_;
    std::vector<int> add_tab_;
    std::vector<int> mul_tab_;
    std::vector<int> neg_tab_;
    std::vector<int> inv_tab_;
};

}  // namespace qmms
