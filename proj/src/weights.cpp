#include "qmms/weights.hpp"

#include "qmms/gaussian.hpp"

#include <algorithm>

namespace qmms {

WeightFunction WeightFunction::from_values(const GeometryContext& ctx,
                                           std::vector<Rational> values) {
    if (static_cast<int>(values.size()) != ctx.num_points())
        throw std::invalid_argument("weighting must assign one value per point (" +
                                    std::to_string(ctx.num_points()) + " expected, " +
                                    std::to_string(values.size()) + " given)");
    Rational sum = 0;
    for (const Rational& v : values) sum += v;
    if (sum != 0) throw SumZeroError(sum);
    return WeightFunction(ctx, std::move(values));
}

Rational subspace_weight(const WeightFunction& f, const Subspace& s) {
    Rational total = 0;
    for (int pid : f.context().subspace_points(s)) total += f[pid];
    return total;
}

Rational subspace_weight(const WeightFunction& f, int k, long id) {
    const GeometryContext& ctx = f.context();
    if (ctx.point_sets_ready(k)) {
        const Bitset& bits = ctx.point_set(k, id);
        Rational total = 0;
        for (int pid = 0; pid < ctx.num_points(); ++pid)
            if (bits.test(pid)) total += f[pid];
        return total;
    }
    return subspace_weight(f, ctx.subspace(k, id));
}

WeightVector weight_vector(GeometryContext& ctx, const WeightFunction& f, int k) {
    if (&ctx != &f.context())
        throw std::logic_error("weight function belongs to a different context");
    ctx.enumerate_subspaces(k);
    WeightVector b{k, {}};
    long count = ctx.num_subspaces(k);
    b.values.reserve(count);
    for (long id = 0; id < count; ++id) b.values.push_back(subspace_weight(f, k, id));
    return b;
}

Family nonneg_family(const WeightVector& b) {
    Family fam{b.k, {}};
    for (long id = 0; id < static_cast<long>(b.values.size()); ++id)
        if (b.values[id] >= 0) fam.members.push_back(id);
    return fam;
}

Family nonneg_family(GeometryContext& ctx, const WeightFunction& f, int k) {
    return nonneg_family(weight_vector(ctx, f, k));
}

WeightFunction point_pencil_example(const GeometryContext& ctx, int point_id) {
    if (point_id < 0 || point_id >= ctx.num_points())
        throw std::invalid_argument("point id out of range");
    std::vector<Rational> values(ctx.num_points(), Rational(-1));
    values[point_id] = Rational(gaussm(ctx.n(), ctx.q()) - 1);
    return WeightFunction::from_values(ctx, std::move(values));
}

WeightFunction hyperplane_example(const GeometryContext& ctx, const Subspace& s) {
    if (s.ambient != ctx.n() || s.dim != ctx.n() - 1)
        throw std::invalid_argument("hyperplane example requires a subspace of dimension n-1");
    int n = ctx.n(), q = ctx.q();
    Rational on_weight(int_pow(q, static_cast<unsigned>(n - 1)), gaussm(n - 1, q));
    std::vector<Rational> values(ctx.num_points(), Rational(-1));
    for (int pid : ctx.subspace_points(s)) values[pid] = on_weight;
    return WeightFunction::from_values(ctx, std::move(values));
}

WeightFunction random_sum_zero(const GeometryContext& ctx, std::mt19937_64& rng, int magnitude) {
    if (magnitude <= 0) throw std::invalid_argument("magnitude must be positive");
    std::uniform_int_distribution<int> dist(-magnitude, magnitude);
    std::vector<Rational> values;
    values.reserve(ctx.num_points());
    Rational sum = 0;
    for (int i = 0; i < ctx.num_points(); ++i) {
        values.emplace_back(dist(rng));
        sum += values.back();
    }
    Rational mean = sum / ctx.num_points();
    for (Rational& v : values) v -= mean;
    return WeightFunction::from_values(ctx, std::move(values));
}

DualWeighting dual_transform(const WeightFunction& f) {
    const GeometryContext& ctx = f.context();
    auto dual_ctx = std::make_shared<GeometryContext>(ctx.field(), ctx.n());
    const FiniteField& field = ctx.field();
    int n = ctx.n();
    std::vector<Rational> values;
    values.reserve(dual_ctx->num_points());
    for (const auto& v : dual_ctx->points()) {
        Rational total = 0;
        for (int pid = 0; pid < ctx.num_points(); ++pid) {
            const auto& pt = ctx.point(pid);
            int dot = 0;
            for (int j = 0; j < n; ++j) dot = field.add(dot, field.mul(v[j], pt[j]));
            if (dot == 0) total += f[pid];
        }
        values.push_back(std::move(total));
    }
    WeightFunction g = WeightFunction::from_values(*dual_ctx, std::move(values));
    return DualWeighting{std::move(dual_ctx), std::move(g)};
}

}  // namespace qmms
