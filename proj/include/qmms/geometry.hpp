#pragma once

#include "qmms/bitset.hpp"
#include "qmms/finite_field.hpp"
#include "qmms/numbers.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qmms {

// A k-dimensional subspace of F_q^n, represented by the unique reduced
// row-echelon basis (row-major, dim x ambient). Two Subspace values are equal
// iff they are the same subspace.
struct Subspace {
    int ambient = 0;
    int dim = 0;
    std::vector<int> basis;

    bool operator==(const Subspace&) const = default;
};

// The projective geometry PG(n-1, q) together with enumerations of its
// subspaces. Points are 1-dimensional subspaces, identified by their
// normalized coordinate vector (first nonzero coordinate = 1) and numbered
// 0..gaussm(n)-1 in lexicographic order of the coordinate tuple.
//
// Subspace enumerations and point-set materializations are lazy and cached;
// call them up front before sharing a context across threads — afterwards all
// accessors are const and safe to use concurrently.
class GeometryContext {
public:
    GeometryContext(FiniteField field, int n);

    const FiniteField& field() const { return field_; }
    int n() const { return n_; }
    int q() const { return field_.q(); }

    int num_points() const { return static_cast<int>(points_.size()); }
    const std::vector<std::vector<int>>& points() const { return points_; }
    const std::vector<int>& point(int id) const { return points_[id]; }

    // Id of the point spanned by an arbitrary nonzero vector (normalizes
    // internally); throws std::invalid_argument on the zero vector or a
    // dimension mismatch.
    int point_id(std::span<const int> coords) const;

    // Enumerates all k-dimensional subspaces in a deterministic order
    // (ascending pivot-column patterns, then lexicographic free entries).
    // Idempotent. Throws std::invalid_argument for k outside 0..n and
    // std::length_error if the enumeration would exceed the memory budget.
    void enumerate_subspaces(int k);
    bool enumerated(int k) const { return levels_[k].done; }
    long num_subspaces(int k) const;

    // Flat row-major basis of an enumerated subspace (dim*ambient entries).
    std::span<const std::int16_t> subspace_basis(int k, long id) const;
    Subspace subspace(int k, long id) const;

    // Index of a subspace within the enumeration of its dimension; builds a
    // lookup table on first use. Throws std::invalid_argument if the basis is
    // not a valid RREF basis from this geometry.
    long subspace_id(const Subspace& s) const;

    // Point-incidence bitsets for all k-subspaces (points() positions set).
    void materialize_point_sets(int k);
    bool point_sets_ready(int k) const { return levels_[k].point_sets_done; }
    const Bitset& point_set(int k, long id) const { return levels_[k].point_sets[id]; }

    // Point ids of a subspace, ascending; works without materialization.
    std::vector<int> subspace_points(const Subspace& s) const;

private:
    struct Level {
        bool done = false;
        std::vector<std::int16_t> bases;  // flat, count * k * n entries
        long count = 0;
        bool point_sets_done = false;
        std::vector<Bitset> point_sets;
        mutable bool lookup_done = false;
        mutable std::unordered_map<std::string, long> lookup;
    };

    void build_points();

    FiniteField field_;
    int n_;
    std::vector<std::vector<int>> points_;
    std::vector<Level> levels_;  // indexed by dimension 0..n
};

// Reduced row-echelon form over the context's field, in place; returns the
// rank (nonzero rows are moved to the top).
int rref(const FiniteField& field, std::vector<std::vector<int>>& rows);

// Subspace spanned by arbitrary generator rows (each of length ctx.n()).
Subspace make_subspace(const GeometryContext& ctx, const std::vector<std::vector<int>>& generators);

// Smallest subspace containing both arguments.
Subspace span_of(const GeometryContext& ctx, const Subspace& a, const Subspace& b);

// dim(a ∩ b) = dim a + dim b - rank of the stacked bases.
int intersect_dim(const GeometryContext& ctx, const Subspace& a, const Subspace& b);

// Same, reading flat row-major bases directly (hot path for large scans).
int intersect_dim_flat(const FiniteField& field, int n, int dim_a,
                       std::span<const std::int16_t> basis_a, int dim_b,
                       std::span<const std::int16_t> basis_b);

Subspace intersection(const GeometryContext& ctx, const Subspace& a, const Subspace& b);

// Annihilator of s under the standard dot product; an (n-dim s)-dimensional
// subspace. Involution: dual(dual(s)) == s.
Subspace dual_subspace(const GeometryContext& ctx, const Subspace& s);

bool subspace_contains(const GeometryContext& ctx, const Subspace& s, std::span<const int> coords);
bool subspace_contains_point(const GeometryContext& ctx, const Subspace& s, int point_id);

// Ids of all enumerated k-subspaces containing the given point (the pencil
// through the point when k is fixed); enumerates k-subspaces if needed.
std::vector<long> subspaces_through_point(GeometryContext& ctx, int k, int point_id);

// Ids of all enumerated k-subspaces contained in the subspace s.
std::vector<long> subspaces_inside(GeometryContext& ctx, int k, const Subspace& s);

}  // namespace qmms
