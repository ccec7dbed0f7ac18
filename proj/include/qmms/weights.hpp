#pragma once

#include "qmms/geometry.hpp"
#include "qmms/numbers.hpp"

#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

namespace qmms {

// Raised when a weighting does not sum to zero; carries the exact residual.
struct SumZeroError : std::runtime_error {
    explicit SumZeroError(Rational residual_)
        : std::runtime_error("weighting does not sum to zero (residual " +
                             rational_to_string(residual_) + ")"),
          residual(std::move(residual_)) {}
    Rational residual;
};

// A rational weighting of the points of a geometry with total weight zero
// (enforced at construction).
class WeightFunction {
public:
    static WeightFunction zero(const GeometryContext& ctx) {
        return WeightFunction(ctx, std::vector<Rational>(ctx.num_points(), Rational(0)));
    }

    // Validates the length and the zero sum; throws SumZeroError otherwise.
    static WeightFunction from_values(const GeometryContext& ctx, std::vector<Rational> values);

    const GeometryContext& context() const { return *ctx_; }
    const Rational& operator[](int point_id) const { return values_[point_id]; }
    const std::vector<Rational>& values() const { return values_; }

private:
    WeightFunction(const GeometryContext& ctx, std::vector<Rational> values)
        : ctx_(&ctx), values_(std::move(values)) {}

    const GeometryContext* ctx_;
    std::vector<Rational> values_;
};

// Total weight of the points of a subspace.
Rational subspace_weight(const WeightFunction& f, const Subspace& s);
Rational subspace_weight(const WeightFunction& f, int k, long id);

// Weights of all k-subspaces, indexed by enumeration id.
struct WeightVector {
    int k = 0;
    std::vector<Rational> values;
};
WeightVector weight_vector(GeometryContext& ctx, const WeightFunction& f, int k);

// A family of k-subspaces, as sorted enumeration ids.
struct Family {
    int k = 0;
    std::vector<long> members;

    bool operator==(const Family&) const = default;
};

// Ids of the k-subspaces with nonnegative weight.
Family nonneg_family(const WeightVector& b);
Family nonneg_family(GeometryContext& ctx, const WeightFunction& f, int k);

// The weighting assigning gaussm(n)-1 to one point and -1 elsewhere. Its
// nonnegative k-subspaces are exactly those through the point, for k < n.
WeightFunction point_pencil_example(const GeometryContext& ctx, int point_id);

// The weighting assigning q^(n-1)/gaussm(n-1) on a hyperplane and -1 off it.
// Throws std::invalid_argument unless dim s == n-1.
WeightFunction hyperplane_example(const GeometryContext& ctx, const Subspace& s);

// Uniform integer weights in [-magnitude, magnitude] recentered by their
// exact mean; magnitude must be positive.
WeightFunction random_sum_zero(const GeometryContext& ctx, std::mt19937_64& rng,
                               int magnitude = 50);

// The induced weighting on the dual geometry: g at a dual point with normal
// vector v is the f-weight of the hyperplane v.x = 0. Bundles the fresh
// context the result lives on.
struct DualWeighting {
    std::shared_ptr<GeometryContext> context;
    WeightFunction g;
};
DualWeighting dual_transform(const WeightFunction& f);

}  // namespace qmms
