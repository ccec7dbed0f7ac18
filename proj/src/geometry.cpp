#include "qmms/geometry.hpp"

#include "qmms/gaussian.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qmms {
namespace {

constexpr long kMaxPoints = 50'000'000;
constexpr long long kMaxEnumerationBytes = 600'000'000;

// Advances c to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& c, int n, int k) {
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

std::string basis_key(std::span<const std::int16_t> flat) {
    return std::string(reinterpret_cast<const char*>(flat.data()), flat.size_bytes());
}

}  // namespace

GeometryContext::GeometryContext(FiniteField field, int n) : field_(std::move(field)), n_(n) {
    if (n < 1 || n > 24)
        throw std::invalid_argument("ambient dimension must lie in 1..24");
    if (gaussm(n, q()) > kMaxPoints)
        throw std::length_error("geometry has too many points for in-memory enumeration");
    build_points();
    levels_.resize(n + 1);
}

void GeometryContext::build_points() {
    // Descending first-nonzero position gives ascending lexicographic order
    // of the normalized coordinate tuples.
    for (int j = n_ - 1; j >= 0; --j) {
        std::vector<int> v(n_, 0);
        v[j] = 1;
        while (true) {
            points_.push_back(v);
            int pos = n_ - 1;
            while (pos > j && v[pos] == q() - 1) v[pos--] = 0;
            if (pos == j) break;
            ++v[pos];
        }
    }
}

int GeometryContext::point_id(std::span<const int> coords) const {
    if (static_cast<int>(coords.size()) != n_)
        throw std::invalid_argument("point coordinate count does not match the ambient dimension");
    std::vector<int> v(coords.begin(), coords.end());
    int lead = -1;
    for (int i = 0; i < n_; ++i) {
        if (v[i] < 0 || v[i] >= q())
            throw std::invalid_argument("point coordinate outside 0..q-1");
        if (lead < 0 && v[i] != 0) lead = i;
    }
    if (lead < 0) throw std::invalid_argument("the zero vector spans no projective point");
    int scale = field_.inv(v[lead]);
    if (scale != 1)
        for (int i = lead; i < n_; ++i) v[i] = field_.mul(v[i], scale);
    auto it = std::lower_bound(points_.begin(), points_.end(), v);
    if (it == points_.end() || *it != v) throw std::logic_error("normalized point not found");
    return static_cast<int>(it - points_.begin());
}

void GeometryContext::enumerate_subspaces(int k) {
    if (k < 0 || k > n_) throw std::invalid_argument("subspace dimension must lie in 0..n");
    Level& level = levels_[k];
    if (level.done) return;

    BigInt expected = gaussian(n_, k, q());
    BigInt bytes = expected * k * n_ * static_cast<int>(sizeof(std::int16_t));
    if (bytes > kMaxEnumerationBytes)
        throw std::length_error("subspace enumeration exceeds the memory budget");
    level.bases.reserve(static_cast<std::size_t>(expected) * k * n_);

    std::vector<int> pivots(k);
    for (int i = 0; i < k; ++i) pivots[i] = i;
    std::vector<std::int16_t> row_buf(static_cast<std::size_t>(k) * n_);
    do {
        // Free slots: positions (row, col) right of the row's pivot and not a
        // pivot column, in row-major order; the last slot varies fastest.
        std::vector<std::pair<int, int>> slots;
        std::vector<bool> is_pivot(n_, false);
        for (int c : pivots) is_pivot[c] = true;
        for (int i = 0; i < k; ++i)
            for (int j = pivots[i] + 1; j < n_; ++j)
                if (!is_pivot[j]) slots.emplace_back(i, j);

        std::fill(row_buf.begin(), row_buf.end(), std::int16_t{0});
        for (int i = 0; i < k; ++i) row_buf[i * n_ + pivots[i]] = 1;
        std::vector<int> values(slots.size(), 0);
        while (true) {
            level.bases.insert(level.bases.end(), row_buf.begin(), row_buf.end());
            ++level.count;
            int pos = static_cast<int>(slots.size()) - 1;
            while (pos >= 0 && values[pos] == q() - 1) {
                values[pos] = 0;
                row_buf[slots[pos].first * n_ + slots[pos].second] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++values[pos];
            row_buf[slots[pos].first * n_ + slots[pos].second] =
                static_cast<std::int16_t>(values[pos]);
        }
    } while (next_combination(pivots, n_, k));

    if (BigInt(level.count) != expected)
        throw std::logic_error("subspace enumeration count mismatch");
    level.done = true;
}

long GeometryContext::num_subspaces(int k) const {
    if (k < 0 || k > n_) throw std::invalid_argument("subspace dimension must lie in 0..n");
    if (levels_[k].done) return levels_[k].count;
    BigInt expected = gaussian(n_, k, q());
    if (expected > std::numeric_limits<long>::max())
        throw std::length_error("subspace count does not fit a machine integer");
    return static_cast<long>(expected);
}

std::span<const std::int16_t> GeometryContext::subspace_basis(int k, long id) const {
    const Level& level = levels_[k];
    std::size_t stride = static_cast<std::size_t>(k) * n_;
    return {level.bases.data() + static_cast<std::size_t>(id) * stride, stride};
}

Subspace GeometryContext::subspace(int k, long id) const {
    auto flat = subspace_basis(k, id);
    Subspace s{n_, k, std::vector<int>(flat.begin(), flat.end())};
    return s;
}

long GeometryContext::subspace_id(const Subspace& s) const {
    if (s.ambient != n_) throw std::invalid_argument("subspace from a different geometry");
    if (s.dim < 0 || s.dim > n_ || !levels_[s.dim].done)
        throw std::invalid_argument("subspace dimension not enumerated");
    const Level& level = levels_[s.dim];
    if (!level.lookup_done) {
        std::size_t stride = static_cast<std::size_t>(s.dim) * n_;
        level.lookup.reserve(level.count);
        for (long id = 0; id < level.count; ++id)
            level.lookup.emplace(
                basis_key({level.bases.data() + static_cast<std::size_t>(id) * stride, stride}),
                id);
        level.lookup_done = true;
    }
    std::vector<std::int16_t> flat(s.basis.begin(), s.basis.end());
    auto it = level.lookup.find(basis_key(flat));
    if (it == level.lookup.end()) {
        // Forgive a non-canonical basis by reducing it first.
        std::vector<std::vector<int>> rows(s.dim, std::vector<int>(n_));
        for (int i = 0; i < s.dim; ++i)
            for (int j = 0; j < n_; ++j) rows[i][j] = s.basis[i * n_ + j];
        if (rref(field_, rows) != s.dim)
            throw std::invalid_argument("basis rows are linearly dependent");
        for (int i = 0; i < s.dim; ++i)
            for (int j = 0; j < n_; ++j) flat[i * n_ + j] = static_cast<std::int16_t>(rows[i][j]);
        it = level.lookup.find(basis_key(flat));
        if (it == level.lookup.end())
            throw std::invalid_argument("subspace not found in the enumeration");
    }
    return it->second;
}

void GeometryContext::materialize_point_sets(int k) {
    enumerate_subspaces(k);
    Level& level = levels_[k];
    if (level.point_sets_done) return;
    level.point_sets.reserve(level.count);
    for (long id = 0; id < level.count; ++id) {
        Bitset bits(points_.size());
        for (int pid : subspace_points(subspace(k, id))) bits.set(pid);
        level.point_sets.push_back(std::move(bits));
    }
    level.point_sets_done = true;
}

std::vector<int> GeometryContext::subspace_points(const Subspace& s) const {
    std::vector<int> ids;
    if (s.dim == 0) return ids;
    // Normalized coefficient tuples (first nonzero = 1) hit each point once.
    std::vector<int> lambda(s.dim);
    std::vector<int> coords(n_);
    for (int lead = 0; lead < s.dim; ++lead) {
        std::fill(lambda.begin(), lambda.end(), 0);
        lambda[lead] = 1;
        while (true) {
            for (int j = 0; j < n_; ++j) {
                int acc = 0;
                for (int i = lead; i < s.dim; ++i)
                    acc = field_.add(acc, field_.mul(lambda[i], s.basis[i * n_ + j]));
                coords[j] = acc;
            }
            ids.push_back(point_id(coords));
            int pos = s.dim - 1;
            while (pos > lead && lambda[pos] == q() - 1) lambda[pos--] = 0;
            if (pos == lead) break;
            ++lambda[pos];
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

int rref(const FiniteField& field, std::vector<std::vector<int>>& rows) {
    if (rows.empty()) return 0;
    int m = static_cast<int>(rows.size());
    int n = static_cast<int>(rows[0].size());
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pivot = -1;
        for (int i = rank; i < m; ++i)
            if (rows[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        int scale = field.inv(rows[rank][col]);
        if (scale != 1)
            for (int j = col; j < n; ++j) rows[rank][j] = field.mul(rows[rank][j], scale);
        for (int i = 0; i < m; ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            int c = rows[i][col];
            for (int j = col; j < n; ++j)
                rows[i][j] = field.sub(rows[i][j], field.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

Subspace make_subspace(const GeometryContext& ctx,
                       const std::vector<std::vector<int>>& generators) {
    for (const auto& g : generators)
        if (static_cast<int>(g.size()) != ctx.n())
            throw std::invalid_argument("generator length does not match the ambient dimension");
    std::vector<std::vector<int>> rows = generators;
    int rank = rref(ctx.field(), rows);
    Subspace s{ctx.n(), rank, {}};
    s.basis.reserve(static_cast<std::size_t>(rank) * ctx.n());
    for (int i = 0; i < rank; ++i)
        s.basis.insert(s.basis.end(), rows[i].begin(), rows[i].end());
    return s;
}

Subspace span_of(const GeometryContext& ctx, const Subspace& a, const Subspace& b) {
    std::vector<std::vector<int>> rows;
    rows.reserve(a.dim + b.dim);
    for (int i = 0; i < a.dim; ++i)
        rows.emplace_back(a.basis.begin() + i * a.ambient, a.basis.begin() + (i + 1) * a.ambient);
    for (int i = 0; i < b.dim; ++i)
        rows.emplace_back(b.basis.begin() + i * b.ambient, b.basis.begin() + (i + 1) * b.ambient);
    return make_subspace(ctx, rows);
}

int intersect_dim(const GeometryContext& ctx, const Subspace& a, const Subspace& b) {
    std::vector<std::int16_t> fa(a.basis.begin(), a.basis.end());
    std::vector<std::int16_t> fb(b.basis.begin(), b.basis.end());
    return intersect_dim_flat(ctx.field(), ctx.n(), a.dim, fa, b.dim, fb);
}

int intersect_dim_flat(const FiniteField& field, int n, int dim_a,
                       std::span<const std::int16_t> basis_a, int dim_b,
                       std::span<const std::int16_t> basis_b) {
    // Rank of the stacked bases via forward elimination on a stack buffer.
    constexpr int kMaxRows = 48, kMaxCols = 24;
    int m = dim_a + dim_b;
    if (m > kMaxRows || n > kMaxCols) throw std::length_error("stacked basis too large");
    int buf[kMaxRows][kMaxCols];
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < n; ++j) buf[i][j] = basis_a[i * n + j];
    for (int i = 0; i < dim_b; ++i)
        for (int j = 0; j < n; ++j) buf[dim_a + i][j] = basis_b[i * n + j];

    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pivot = -1;
        for (int i = rank; i < m; ++i)
            if (buf[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = col; j < n; ++j) std::swap(buf[rank][j], buf[pivot][j]);
        int scale = field.inv(buf[rank][col]);
        for (int i = rank + 1; i < m; ++i) {
            int c = buf[i][col];
            if (c == 0) continue;
            int factor = field.mul(c, scale);
            buf[i][col] = 0;
            for (int j = col + 1; j < n; ++j)
                buf[i][j] = field.sub(buf[i][j], field.mul(factor, buf[rank][j]));
        }
        ++rank;
    }
    return dim_a + dim_b - rank;
}

Subspace intersection(const GeometryContext& ctx, const Subspace& a, const Subspace& b) {
    return dual_subspace(ctx, span_of(ctx, dual_subspace(ctx, a), dual_subspace(ctx, b)));
}

Subspace dual_subspace(const GeometryContext& ctx, const Subspace& s) {
    const FiniteField& field = ctx.field();
    int n = ctx.n();
    if (s.ambient != n) throw std::invalid_argument("subspace from a different geometry");
    // Pivot columns of the RREF basis; every free column yields one vector of
    // the null space of basis * x^T = 0.
    std::vector<int> pivot_of_col(n, -1);
    for (int i = 0; i < s.dim; ++i) {
        int lead = 0;
        while (lead < n && s.basis[i * n + lead] == 0) ++lead;
        pivot_of_col[lead] = i;
    }
    std::vector<std::vector<int>> rows;
    rows.reserve(n - s.dim);
    for (int f = 0; f < n; ++f) {
        if (pivot_of_col[f] >= 0) continue;
        std::vector<int> v(n, 0);
        v[f] = 1;
        for (int c = 0; c < n; ++c)
            if (pivot_of_col[c] >= 0) v[c] = field.neg(s.basis[pivot_of_col[c] * n + f]);
        rows.push_back(std::move(v));
    }
    int rank = rref(field, rows);
    if (rank != n - s.dim) throw std::logic_error("annihilator has unexpected dimension");
    Subspace d{n, rank, {}};
    d.basis.reserve(static_cast<std::size_t>(rank) * n);
    for (int i = 0; i < rank; ++i) d.basis.insert(d.basis.end(), rows[i].begin(), rows[i].end());
    return d;
}

bool subspace_contains(const GeometryContext& ctx, const Subspace& s,
                       std::span<const int> coords) {
    const FiniteField& field = ctx.field();
    int n = ctx.n();
    if (static_cast<int>(coords.size()) != n)
        throw std::invalid_argument("point coordinate count does not match the ambient dimension");
    std::vector<int> v(coords.begin(), coords.end());
    for (int i = 0; i < s.dim; ++i) {
        int lead = 0;
        while (lead < n && s.basis[i * n + lead] == 0) ++lead;
        if (lead == n) continue;
        int c = v[lead];
        if (c == 0) continue;
        for (int j = lead; j < n; ++j) v[j] = field.sub(v[j], field.mul(c, s.basis[i * n + j]));
    }
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool subspace_contains_point(const GeometryContext& ctx, const Subspace& s, int point_id) {
    return subspace_contains(ctx, s, ctx.point(point_id));
}

std::vector<long> subspaces_through_point(GeometryContext& ctx, int k, int point_id) {
    ctx.enumerate_subspaces(k);
    std::vector<long> ids;
    long count = ctx.num_subspaces(k);
    for (long id = 0; id < count; ++id) {
        if (ctx.point_sets_ready(k)
                ? ctx.point_set(k, id).test(point_id)
                : subspace_contains_point(ctx, ctx.subspace(k, id), point_id))
            ids.push_back(id);
    }
    return ids;
}

std::vector<long> subspaces_inside(GeometryContext& ctx, int k, const Subspace& s) {
    ctx.enumerate_subspaces(k);
    std::vector<long> ids;
    long count = ctx.num_subspaces(k);
    std::vector<int> row(ctx.n());
    for (long id = 0; id < count; ++id) {
        auto flat = ctx.subspace_basis(k, id);
        bool inside = true;
        for (int i = 0; inside && i < k; ++i) {
            for (int j = 0; j < ctx.n(); ++j) row[j] = flat[i * ctx.n() + j];
            inside = subspace_contains(ctx, s, row);
        }
        if (inside) ids.push_back(id);
    }
    return ids;
}

}  // namespace qmms
