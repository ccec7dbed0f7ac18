#include "qmms/scheme.hpp"

#include "qmms/gaussian.hpp"

#include <stdexcept>

namespace qmms {

PairDistances::PairDistances(GeometryContext& ctx, int k) : k_(k) {
    ctx.enumerate_subspaces(k);
    count_ = ctx.num_subspaces(k);
    if (count_ > 16384)  // quadratic table, 256 MB ceiling
        throw std::length_error("pairwise distance table exceeds the memory budget");
    tab_.assign(static_cast<std::size_t>(count_) * count_, 0);
    int n = ctx.n();
    const FiniteField& field = ctx.field();
    for (long a = 0; a < count_; ++a) {
        auto basis_a = ctx.subspace_basis(k, a);
        for (long b = a + 1; b < count_; ++b) {
            int dim = intersect_dim_flat(field, n, k, basis_a, k, ctx.subspace_basis(k, b));
            auto cls = static_cast<std::uint8_t>(k - dim);
            tab_[a * count_ + b] = cls;
            tab_[b * count_ + a] = cls;
        }
    }
}

std::vector<Rational> apply_adjacency(GeometryContext& ctx, int k, int i,
                                      const std::vector<Rational>& v,
                                      const PairDistances* distances) {
    if (i < 0 || i > k) throw std::invalid_argument("scheme distance must lie in 0..k");
    ctx.enumerate_subspaces(k);
    long count = ctx.num_subspaces(k);
    if (static_cast<long>(v.size()) != count)
        throw std::invalid_argument("vector length does not match the subspace count");
    std::vector<Rational> result(count, Rational(0));
    if (i == 0) return std::vector<Rational>(v);

    if (distances != nullptr) {
        for (long a = 0; a < count; ++a)
            for (long b = a + 1; b < count; ++b)
                if (distances->cls(a, b) == i) {
                    result[a] += v[b];
                    result[b] += v[a];
                }
        return result;
    }
    int n = ctx.n();
    const FiniteField& field = ctx.field();
    int target_dim = k - i;
    for (long a = 0; a < count; ++a) {
        auto basis_a = ctx.subspace_basis(k, a);
        for (long b = a + 1; b < count; ++b) {
            if (intersect_dim_flat(field, n, k, basis_a, k, ctx.subspace_basis(k, b)) ==
                target_dim) {
                result[a] += v[b];
                result[b] += v[a];
            }
        }
    }
    return result;
}

BigInt scheme_eigenvalue(int n, int k, int q, int i) {
    if (i < 0 || i > k) throw std::invalid_argument("scheme distance must lie in 0..k");
    BigInt head = gaussian(n - k - 1, i, q) * gaussian(k - 1, i, q) *
                  int_pow(q, static_cast<unsigned>(i * (i + 1)));
    if (i == 0) return head;
    BigInt tail = gaussian(n - k - 1, i - 1, q) * gaussian(k - 1, i - 1, q) *
                  int_pow(q, static_cast<unsigned>(i * (i - 1)));
    return head - tail;
}

BigInt scheme_valency(int n, int k, int q, int i) {
    if (i < 0 || i > k) throw std::invalid_argument("scheme distance must lie in 0..k");
    return gaussian(k, i, q) * gaussian(n - k, i, q) * int_pow(q, static_cast<unsigned>(i * i));
}

EigencheckReport eigencheck(GeometryContext& ctx, const WeightFunction& f, int k,
                            const PairDistances* distances) {
    WeightVector b = weight_vector(ctx, f, k);
    long count = ctx.num_subspaces(k);
    int n = ctx.n(), q = ctx.q();

    EigencheckReport report;
    for (int i = 0; i <= k; ++i) report.eigenvalues.push_back(scheme_eigenvalue(n, k, q, i));

    // One pass over unordered pairs accumulates every (A_i b)_S at once.
    std::vector<std::vector<Rational>> sums(k + 1,
                                            std::vector<Rational>(count, Rational(0)));
    sums[0] = b.values;
    const FiniteField& field = ctx.field();
    for (long a = 0; a < count; ++a) {
        auto basis_a = ctx.subspace_basis(k, a);
        for (long c = a + 1; c < count; ++c) {
            int i = distances != nullptr
                        ? distances->cls(a, c)
                        : k - intersect_dim_flat(field, n, k, basis_a,
                                                 k, ctx.subspace_basis(k, c));
            sums[i][a] += b.values[c];
            sums[i][c] += b.values[a];
        }
    }
    for (int i = 0; i <= k && report.pass; ++i) {
        Rational lambda(report.eigenvalues[i]);
        for (long id = 0; id < count; ++id) {
            Rational expected = lambda * b.values[id];
            if (sums[i][id] != expected) {
                report.pass = false;
                report.failed_distance = i;
                report.failed_id = id;
                report.expected = expected;
                report.actual = sums[i][id];
                break;
            }
        }
    }
    return report;
}

Rational distance_one_sum(GeometryContext& ctx, int k, long id, const WeightVector& b) {
    ctx.enumerate_subspaces(k);
    long count = ctx.num_subspaces(k);
    if (static_cast<long>(b.values.size()) != count)
        throw std::invalid_argument("weight vector length does not match the subspace count");
    int n = ctx.n();
    const FiniteField& field = ctx.field();
    auto basis_c = ctx.subspace_basis(k, id);
    Rational total = 0;
    for (long s = 0; s < count; ++s) {
        if (s == id) continue;
        if (intersect_dim_flat(field, n, k, basis_c, k, ctx.subspace_basis(k, s)) == 1)
            total += b.values[s];
    }
    return total;
}

}  // namespace qmms
