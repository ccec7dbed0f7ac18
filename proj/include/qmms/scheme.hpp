#pragma once

#include "qmms/weights.hpp"

#include <cstdint>
#include <vector>

namespace qmms {

// Precomputed intersection classes for all pairs of k-subspaces: entry (a, b)
// is i = k - dim(S_a ∩ S_b), the distance in the association scheme on
// k-subspaces. Quadratic memory; guarded against oversize geometries.
class PairDistances {
public:
    PairDistances(GeometryContext& ctx, int k);

    int k() const { return k_; }
    long count() const { return count_; }
    int cls(long a, long b) const { return tab_[a * count_ + b]; }

private:
    int k_;
    long count_;
    std::vector<std::uint8_t> tab_;
};

// Distance-i adjacency operator applied to a vector indexed by k-subspace
// ids: (A_i v)_S = sum of v_R over R with dim(S ∩ R) = k - i.
std::vector<Rational> apply_adjacency(GeometryContext& ctx, int k, int i,
                                      const std::vector<Rational>& v,
                                      const PairDistances* distances = nullptr);

// Eigenvalue of A_i on the subspace-weight image of sum-zero point
// weightings:
//   gaussian(n-k-1, i) gaussian(k-1, i) q^(i(i+1))
//     - gaussian(n-k-1, i-1) gaussian(k-1, i-1) q^(i(i-1)).
BigInt scheme_eigenvalue(int n, int k, int q, int i);

// Number of k-subspaces at distance i from a fixed one:
// gaussian(k, i) gaussian(n-k, i) q^(i^2).
BigInt scheme_valency(int n, int k, int q, int i);

// Certifies that the subspace-weight vector of f is an eigenvector of every
// A_i, 0 <= i <= k, with the predicted eigenvalues; reports the first failure
// exactly.
struct EigencheckReport {
    bool pass = true;
    std::vector<BigInt> eigenvalues;  // indexed by distance i
    int failed_distance = -1;
    long failed_id = -1;
    Rational expected;
    Rational actual;
};
EigencheckReport eigencheck(GeometryContext& ctx, const WeightFunction& f, int k,
                            const PairDistances* distances = nullptr);

// Sum of b over the k-subspaces meeting the subspace with the given id in
// dimension exactly 1 (scheme distance k-1).
Rational distance_one_sum(GeometryContext& ctx, int k, long id, const WeightVector& b);

}  // namespace qmms
