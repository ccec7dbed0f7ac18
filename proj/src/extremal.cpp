#include "qmms/extremal.hpp"

#include "qmms/gaussian.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace qmms {
namespace {

// The unique projective point of a 1-dimensional intersection.
int intersection_point(const GeometryContext& ctx, const Subspace& a, const Subspace& b) {
    Subspace cut = intersection(ctx, a, b);
    if (cut.dim != 1) throw std::logic_error("expected a 1-dimensional intersection");
    std::vector<int> coords(cut.basis.begin(), cut.basis.end());
    return ctx.point_id(coords);
}

std::string rational_text(const Rational& r) { return rational_to_string(r); }

}  // namespace

bool is_bad_configuration(const GeometryContext& ctx, const std::vector<Subspace>& members) {
    int x = static_cast<int>(members.size());
    if (x <= 1) return true;
    std::vector<std::vector<int>> cut_point(x, std::vector<int>(x, -1));
    for (int i = 0; i < x; ++i)
        for (int j = i + 1; j < x; ++j) {
            if (intersect_dim(ctx, members[i], members[j]) != 1) return false;
            cut_point[i][j] = intersection_point(ctx, members[i], members[j]);
        }
    for (int i = 0; i < x; ++i)
        for (int j = i + 1; j < x; ++j)
            for (int t = 0; t < x; ++t) {
                if (t == i || t == j) continue;
                if (subspace_contains_point(ctx, members[t], cut_point[i][j])) return false;
            }
    return true;
}

bool meets_badly(const GeometryContext& ctx, const std::vector<Subspace>& members,
                 const Subspace& candidate) {
    std::vector<int> points;
    points.reserve(members.size());
    for (const Subspace& m : members) {
        if (intersect_dim(ctx, m, candidate) != 1) return false;
        points.push_back(intersection_point(ctx, m, candidate));
    }
    std::sort(points.begin(), points.end());
    return std::adjacent_find(points.begin(), points.end()) == points.end();
}

long count_badly_meeting(GeometryContext& ctx, int k, const std::vector<long>& member_ids) {
    ctx.enumerate_subspaces(k);
    long count = ctx.num_subspaces(k);
    int x = static_cast<int>(member_ids.size());
    if (x == 0) return count;

    // Point-incidence bitsets make the badly-meeting test a handful of word
    // operations per candidate; materialize when the memory budget allows.
    long long bitset_bytes = static_cast<long long>(count) * ((ctx.num_points() + 63) / 8);
    if (!ctx.point_sets_ready(k) && bitset_bytes <= 300'000'000) ctx.materialize_point_sets(k);

    if (ctx.point_sets_ready(k)) {
        std::vector<const Bitset*> member_bits;
        member_bits.reserve(x);
        for (long id : member_ids) member_bits.push_back(&ctx.point_set(k, id));
        long result = 0;
        std::vector<std::size_t> points(x);
        Bitset cut;
        for (long id = 0; id < count; ++id) {
            const Bitset& candidate = ctx.point_set(k, id);
            bool bad = true;
            for (int i = 0; bad && i < x; ++i) {
                if (member_bits[i]->and_count(candidate) != 1) {
                    bad = false;
                    break;
                }
                cut = *member_bits[i];
                cut &= candidate;
                std::size_t point = 0;
                for (std::size_t p = 0; p < cut.size(); ++p)
                    if (cut.test(p)) {
                        point = p;
                        break;
                    }
                points[i] = point;
                for (int j = 0; j < i; ++j)
                    if (points[j] == point) {
                        bad = false;
                        break;
                    }
            }
            if (bad) ++result;
        }
        return result;
    }

    std::vector<Subspace> members;
    members.reserve(x);
    for (long id : member_ids) members.push_back(ctx.subspace(k, id));
    long result = 0;
    for (long id = 0; id < count; ++id)
        if (meets_badly(ctx, members, ctx.subspace(k, id))) ++result;
    return result;
}

Rational bad_config_bound(int x, int n, int k, int q, int delta) {
    if (x <= 1) throw std::domain_error("x > 1 required");
    if (x > k) throw std::domain_error("x <= k required");
    if (q < 3) throw std::domain_error("q >= 3 required");
    if (delta < 1) throw std::domain_error("delta >= 1 required");
    if (n < 2 * k + delta) throw std::domain_error("n >= 2k + delta required");
    if (static_cast<long>(x - 1) * n < static_cast<long>(2 * x - 1) * k - x + delta)
        throw std::domain_error("(x-1)n >= (2x-1)k - x + delta required");
    BigInt numerator = BigInt(x) * x * int_pow(2, static_cast<unsigned>(x)) *
                       gaussian(n - 1, k - 1, q);
    return Rational(numerator, int_pow(q, static_cast<unsigned>(delta)));
}

std::vector<std::vector<long>> find_bad_configurations(GeometryContext& ctx, int k, int x,
                                                       int count, std::uint64_t seed) {
    if (x < 1) throw std::invalid_argument("configuration size must be positive");
    ctx.enumerate_subspaces(k);
    long total = ctx.num_subspaces(k);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> pick(0, total - 1);

    std::set<std::vector<long>> found;
    const int max_restarts = 20000;
    const int max_candidate_tries = 4000;
    for (int attempt = 0; attempt < max_restarts && static_cast<int>(found.size()) < count;
         ++attempt) {
        std::vector<long> ids{pick(rng)};
        std::vector<Subspace> members{ctx.subspace(k, ids[0])};
        bool complete = true;
        while (static_cast<int>(ids.size()) < x) {
            bool extended = false;
            for (int t = 0; t < max_candidate_tries; ++t) {
                long id = pick(rng);
                if (std::find(ids.begin(), ids.end(), id) != ids.end()) continue;
                Subspace candidate = ctx.subspace(k, id);
                if (!meets_badly(ctx, members, candidate)) continue;
                ids.push_back(id);
                members.push_back(std::move(candidate));
                extended = true;
                break;
            }
            if (!extended) {
                complete = false;
                break;
            }
        }
        if (complete) {
            std::sort(ids.begin(), ids.end());
            found.insert(ids);
        }
    }
    return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------

namespace {

struct LemmaContext {
    GeometryContext* ctx;
    int k, n, q;
    BigInt big_g;                    // gaussian(n-1, k-1)
    Rational g;                      // same, as a rational
    WeightVector b;
    std::vector<long> nonneg;        // ids with b >= 0
    std::vector<long> negative;      // ids with b < 0
    long a_id = -1;                  // smallest id of maximum weight
    Rational b_a;
    std::vector<long> ladder;        // ids with dim(S ∩ A) = 1, weight-descending
};

int flat_intersect_dim(const LemmaContext& lc, long s, long t) {
    return intersect_dim_flat(lc.ctx->field(), lc.n, lc.k, lc.ctx->subspace_basis(lc.k, s),
                              lc.k, lc.ctx->subspace_basis(lc.k, t));
}

long count_nonneg_through_point(const LemmaContext& lc, int point_id) {
    long result = 0;
    for (long s : lc.nonneg) {
        bool contains = lc.ctx->point_sets_ready(lc.k)
                            ? lc.ctx->point_set(lc.k, s).test(point_id)
                            : subspace_contains_point(*lc.ctx, lc.ctx->subspace(lc.k, s),
                                                      point_id);
        if (contains) ++result;
    }
    return result;
}

// Resolves the ladder constant for prefix size x: an explicit option wins;
// otherwise the canonical (x-2)!*2^(x+1) clamped into [3, q] when that range
// is nonempty. Returns unset when no admissible value exists.
std::optional<Rational> resolve_c(const LemmaOptions& options, int x, int q) {
    if (options.c) {
        const Rational& c = *options.c;
        if (c < 3 || c > q) return std::nullopt;
        return c;
    }
    if (q < 3) return std::nullopt;
    Rational canonical(factorial(static_cast<unsigned>(std::max(0, x - 2))) *
                       int_pow(2, static_cast<unsigned>(x + 1)));
    if (canonical < 3) return Rational(3);
    if (canonical > q) return Rational(q);
    return canonical;
}

}  // namespace

LemmaReport verify_lemma_bounds(GeometryContext& ctx, const WeightFunction& f, int k,
                                const LemmaOptions& options) {
    if (&ctx != &f.context())
        throw std::logic_error("weight function belongs to a different context");
    LemmaReport report;
    auto add = [&report](std::string check, std::string instance, LemmaCheckItem::Status status,
                         std::string detail) {
        if (status == LemmaCheckItem::Status::violated) report.pass = false;
        report.items.push_back(
            {std::move(check), std::move(instance), status, std::move(detail)});
    };

    LemmaContext lc;
    lc.ctx = &ctx;
    lc.k = k;
    lc.n = ctx.n();
    lc.q = ctx.q();
    lc.big_g = gaussian(lc.n - 1, k - 1, lc.q);
    lc.g = Rational(lc.big_g);
    lc.b = weight_vector(ctx, f, k);
    long count = ctx.num_subspaces(k);
    for (long id = 0; id < count; ++id) {
        const Rational& w = lc.b.values[id];
        (w >= 0 ? lc.nonneg : lc.negative).push_back(id);
        if (lc.a_id < 0 || w > lc.b_a) {
            lc.a_id = id;
            lc.b_a = w;
        }
    }
    for (long id = 0; id < count; ++id)
        if (id != lc.a_id && flat_intersect_dim(lc, lc.a_id, id) == 1) lc.ladder.push_back(id);
    std::stable_sort(lc.ladder.begin(), lc.ladder.end(), [&lc](long a, long b) {
        return lc.b.values[a] > lc.b.values[b];
    });

    const bool count_hypothesis = BigInt(lc.nonneg.size()) <= lc.big_g;
    const int gap = lc.n - 2 * k + 1;  // exponent n - 2k + 1

    // --- Meet-count lower bound: every nonnegative C meets enough
    // nonnegative subspaces in dimension exactly 1.
    if (lc.n < 2 * k + 1) {
        add("meet-count lower bound", "all nonnegative C", LemmaCheckItem::Status::skipped,
            "requires n >= 2k+1");
    } else if (lc.b_a == 0) {
        add("meet-count lower bound", "all nonnegative C", LemmaCheckItem::Status::skipped,
            "all subspace weights vanish (b_A = 0)");
    } else {
        Rational scale = (Rational(1) - Rational(3, int_pow(lc.q, static_cast<unsigned>(gap)))) *
                         lc.g / lc.b_a;
        long violations = 0;
        for (long c_id : lc.nonneg) {
            long meet = 0;
            for (long s : lc.nonneg)
                if (s != c_id && flat_intersect_dim(lc, c_id, s) == 1) ++meet;
            Rational bound = scale * lc.b.values[c_id];
            if (Rational(meet) < bound) {
                ++violations;
                add("meet-count lower bound", "C = " + std::to_string(c_id),
                    LemmaCheckItem::Status::violated,
                    "count " + std::to_string(meet) + " < bound " + rational_text(bound));
            }
        }
        if (violations == 0)
            add("meet-count lower bound",
                "every nonnegative C (" + std::to_string(lc.nonneg.size()) + " cases)",
                LemmaCheckItem::Status::checked, "");
    }

    // --- Top-weight ladder: the leading subspaces meeting A in a point keep
    // nearly the maximum weight.
    {
        std::optional<Rational> c = resolve_c(options, 2, lc.q);
        if (lc.n < 2 * k + 1)
            add("top-weight ladder", "", LemmaCheckItem::Status::skipped, "requires n >= 2k+1");
        else if (!count_hypothesis)
            add("top-weight ladder", "", LemmaCheckItem::Status::skipped,
                "more than gaussian(n-1,k-1) nonnegative subspaces");
        else if (!c)
            add("top-weight ladder", "", LemmaCheckItem::Status::skipped,
                "no admissible c in [3, q]");
        else if (lc.b_a == 0)
            add("top-weight ladder", "", LemmaCheckItem::Status::skipped,
                "all subspace weights vanish (b_A = 0)");
        else {
            Rational imax_rat = (*c - 3) / lc.q * lc.g + 1;
            long imax = static_cast<long>(
                boost::multiprecision::numerator(imax_rat) /
                boost::multiprecision::denominator(imax_rat));
            long limit = std::min<long>(imax, static_cast<long>(lc.ladder.size()));
            Rational floor_val = (Rational(1) - *c / lc.q) * lc.b_a;
            long violations = 0;
            for (long i = 1; i <= limit; ++i) {
                const Rational& w = lc.b.values[lc.ladder[i - 1]];
                if (!(w > floor_val)) {
                    ++violations;
                    add("top-weight ladder", "i = " + std::to_string(i),
                        LemmaCheckItem::Status::violated,
                        "weight " + rational_text(w) + " <= floor " + rational_text(floor_val));
                }
            }
            if (violations == 0)
                add("top-weight ladder", "i = 1.." + std::to_string(limit),
                    LemmaCheckItem::Status::checked, "c = " + rational_text(*c));
        }
    }

    // --- Common-meeting prefix: many nonnegative subspaces meet every member
    // of {A, C_1, ..., C_m} in a point (a), and when that prefix is a bad
    // configuration some pairwise intersection point is popular (b).
    {
        int delta = lc.n - 2 * k;
        if (delta < 1)
            add("common-meeting prefix", "", LemmaCheckItem::Status::skipped,
                "requires n >= 2k+1");
        else if (lc.q < 3)
            add("common-meeting prefix", "", LemmaCheckItem::Status::skipped, "requires q >= 3");
        else if (!count_hypothesis)
            add("common-meeting prefix", "", LemmaCheckItem::Status::skipped,
                "more than gaussian(n-1,k-1) nonnegative subspaces");
        else {
            for (int m = 1; m <= k - 1; ++m) {
                int x = m + 1;
                std::optional<Rational> c = resolve_c(options, x, lc.q);
                std::string tag = "prefix size x = " + std::to_string(x);
                if (!c) {
                    add("common-meeting prefix", tag, LemmaCheckItem::Status::skipped,
                        "no admissible c in [3, q]");
                    continue;
                }
                Rational imax_rat = (*c - 3) / lc.q * lc.g + 1;
                long imax = static_cast<long>(
                    boost::multiprecision::numerator(imax_rat) /
                    boost::multiprecision::denominator(imax_rat));
                if (m > imax || m > static_cast<long>(lc.ladder.size())) {
                    add("common-meeting prefix", tag, LemmaCheckItem::Status::skipped,
                        "ladder shorter than the prefix");
                    continue;
                }
                std::vector<long> member_ids{lc.a_id};
                for (int i = 0; i < m; ++i) member_ids.push_back(lc.ladder[i]);
                std::vector<Subspace> members;
                for (long id : member_ids) members.push_back(ctx.subspace(k, id));

                long meet_all = 0;
                for (long s : lc.nonneg) {
                    bool all_one = true;
                    for (long mid : member_ids)
                        if (flat_intersect_dim(lc, s, mid) != 1) {
                            all_one = false;
                            break;
                        }
                    if (all_one) ++meet_all;
                }
                Rational bound_a = (Rational(1) - Rational(x - 1) * *c / lc.q -
                                    Rational(3 * x, int_pow(lc.q, static_cast<unsigned>(gap)))) *
                                   lc.g;
                if (Rational(meet_all) < bound_a)
                    add("common-meeting prefix", tag + " (a)", LemmaCheckItem::Status::violated,
                        "count " + std::to_string(meet_all) + " < bound " +
                            rational_text(bound_a));
                else
                    add("common-meeting prefix", tag + " (a)", LemmaCheckItem::Status::checked,
                        "c = " + rational_text(*c));

                long delta_b = std::min<long>(
                    delta, static_cast<long>(x - 1) * lc.n -
                               (static_cast<long>(2 * x - 1) * k - x));
                if (!is_bad_configuration(ctx, members)) {
                    add("common-meeting prefix", tag + " (b)", LemmaCheckItem::Status::skipped,
                        "prefix is not a bad configuration");
                } else if (delta_b < 1) {
                    add("common-meeting prefix", tag + " (b)", LemmaCheckItem::Status::skipped,
                        "no delta satisfies (x-1)n >= (2x-1)k - x + delta >= 1");
                } else {
                    Rational bound_b =
                        (Rational(1) - Rational(x - 1) * *c / lc.q -
                         Rational(3 * x, int_pow(lc.q, static_cast<unsigned>(gap))) -
                         Rational(BigInt(x) * x * int_pow(2, static_cast<unsigned>(x)),
                                  int_pow(lc.q, static_cast<unsigned>(delta_b)))) *
                        lc.g / Rational(BigInt(x) * (x - 1) / 2);
                    long best = -1;
                    for (std::size_t i = 0; i < members.size(); ++i)
                        for (std::size_t j = i + 1; j < members.size(); ++j) {
                            int p = intersection_point(ctx, members[i], members[j]);
                            best = std::max(best, count_nonneg_through_point(lc, p));
                        }
                    if (Rational(best) < bound_b)
                        add("common-meeting prefix", tag + " (b)",
                            LemmaCheckItem::Status::violated,
                            "best pair-point count " + std::to_string(best) + " < bound " +
                                rational_text(bound_b));
                    else
                        add("common-meeting prefix", tag + " (b)",
                            LemmaCheckItem::Status::checked, "delta = " + std::to_string(delta_b));
                }
            }
        }
    }

    // --- Bad-configuration existence inside the leading candidate set.
    {
        for (int x = 2; x <= k; ++x) {
            std::string tag = "x = " + std::to_string(x);
            BigInt q_floor = factorial(static_cast<unsigned>(x - 1)) *
                             int_pow(2, static_cast<unsigned>(x + 2));
            if (lc.n < 2 * k + 1) {
                add("bad-configuration existence", tag, LemmaCheckItem::Status::skipped,
                    "requires n >= 2k+1");
                continue;
            }
            if (BigInt(lc.q) <= q_floor) {
                add("bad-configuration existence", tag, LemmaCheckItem::Status::skipped,
                    "requires q > " + q_floor.str());
                continue;
            }
            if (!count_hypothesis) {
                add("bad-configuration existence", tag, LemmaCheckItem::Status::skipped,
                    "more than gaussian(n-1,k-1) nonnegative subspaces");
                continue;
            }
            Rational cap = options.point_cap / lc.q * lc.g;
            bool cap_ok = true;
            for (int p = 0; cap_ok && p < ctx.num_points(); ++p)
                if (Rational(count_nonneg_through_point(lc, p)) > cap) cap_ok = false;
            if (!cap_ok) {
                add("bad-configuration existence", tag, LemmaCheckItem::Status::skipped,
                    "a point exceeds the per-point cap");
                continue;
            }
            Rational size_rat =
                (Rational(factorial(static_cast<unsigned>(std::max(0, x - 2))) *
                          int_pow(2, static_cast<unsigned>(x + options.existence_margin))) -
                 3) /
                    lc.q * lc.g +
                1;
            long take = static_cast<long>(boost::multiprecision::numerator(size_rat) /
                                          boost::multiprecision::denominator(size_rat));
            take = std::min<long>(take, static_cast<long>(lc.ladder.size()));
            std::vector<Subspace> pool{ctx.subspace(k, lc.a_id)};
            for (long i = 0; i < take; ++i) pool.push_back(ctx.subspace(k, lc.ladder[i]));

            // Depth-first search for x members including A (pool[0]).
            std::vector<Subspace> chosen{pool[0]};
            long budget = 2'000'000;
            std::function<bool(std::size_t)> extend = [&](std::size_t from) -> bool {
                if (static_cast<int>(chosen.size()) == x) return true;
                for (std::size_t i = from; i < pool.size(); ++i) {
                    if (--budget <= 0) return false;
                    if (!meets_badly(ctx, chosen, pool[i])) continue;
                    chosen.push_back(pool[i]);
                    if (extend(i + 1)) return true;
                    chosen.pop_back();
                }
                return false;
            };
            bool found = extend(1);
            if (budget <= 0 && !found)
                add("bad-configuration existence", tag, LemmaCheckItem::Status::skipped,
                    "search budget exhausted");
            else if (found)
                add("bad-configuration existence", tag, LemmaCheckItem::Status::checked, "");
            else
                add("bad-configuration existence", tag, LemmaCheckItem::Status::violated,
                    "candidate set of size " + std::to_string(pool.size()) +
                        " contains no bad configuration of size " + std::to_string(x));
        }
    }

    // --- Disjoint-from-negative bound.
    {
        int delta = lc.n - 2 * k;
        if (delta < 0 || delta >= k) {
            add("disjoint-from-negative bound", "", LemmaCheckItem::Status::skipped,
                "requires n = 2k + delta with 0 <= delta < k");
        } else {
            Rational bound = (Rational(1) - Rational(2, lc.q)) * lc.g;
            long violations = 0;
            for (long t : lc.negative) {
                long disjoint = 0;
                for (long s : lc.nonneg)
                    if (flat_intersect_dim(lc, s, t) == 0) ++disjoint;
                if (Rational(disjoint) < bound) {
                    ++violations;
                    add("disjoint-from-negative bound", "T = " + std::to_string(t),
                        LemmaCheckItem::Status::violated,
                        "count " + std::to_string(disjoint) + " < bound " +
                            rational_text(bound));
                }
            }
            if (violations == 0)
                add("disjoint-from-negative bound",
                    "every negative T (" + std::to_string(lc.negative.size()) + " cases)",
                    LemmaCheckItem::Status::checked, "");
        }
    }

    return report;
}

// ---------------------------------------------------------------------------

TheoremCertificate theorem_certificate(int n, int k, int q) {
    if (k < 1 || n < k || q < 2)
        throw std::invalid_argument("requires n >= k >= 1 and q >= 2");
    TheoremCertificate cert;
    cert.n = n;
    cert.k = k;
    cert.q = q;

    for (int x = 2; x <= k; ++x) {
        BigInt a_threshold = factorial(static_cast<unsigned>(x - 1)) *
                             int_pow(2, static_cast<unsigned>(x + 2));
        std::vector<CertificateCondition> conds_a = {
            {"(x-1)n >= (2x-1)k - x + 2",
             static_cast<long>(x - 1) * n >= static_cast<long>(2 * x - 1) * k - x + 2},
            {"n >= 2k+2", n >= 2 * k + 2},
            {"q >= (x-1)! * 2^(x+2) = " + a_threshold.str(), BigInt(q) >= a_threshold},
        };
        if (std::all_of(conds_a.begin(), conds_a.end(),
                        [](const CertificateCondition& c) { return c.satisfied; })) {
            cert.clause = CertificateClause::a;
            cert.x = x;
            cert.conditions = std::move(conds_a);
            return cert;
        }
        BigInt b_threshold = factorial(static_cast<unsigned>(x - 1)) *
                             int_pow(2, static_cast<unsigned>(2 * x + 1));
        std::vector<CertificateCondition> conds_b = {
            {"(x-1)n >= (2x-1)k - x + 1",
             static_cast<long>(x - 1) * n >= static_cast<long>(2 * x - 1) * k - x + 1},
            {"n >= 2k+1", n >= 2 * k + 1},
            {"q >= (x-1)! * 2^(2x+1) = " + b_threshold.str(), BigInt(q) >= b_threshold},
        };
        if (std::all_of(conds_b.begin(), conds_b.end(),
                        [](const CertificateCondition& c) { return c.satisfied; })) {
            cert.clause = CertificateClause::b;
            cert.x = x;
            cert.conditions = std::move(conds_b);
            return cert;
        }
    }

    std::vector<CertificateCondition> conds_c = {
        {"n >= 3k or n = k", n >= 3 * k || n == k},
        {"q >= 2", q >= 2},
    };
    if (std::all_of(conds_c.begin(), conds_c.end(),
                    [](const CertificateCondition& c) { return c.satisfied; })) {
        cert.clause = CertificateClause::c;
        cert.conditions = std::move(conds_c);
        return cert;
    }
    cert.clause = CertificateClause::none;
    cert.conditions = std::move(conds_c);
    cert.conditions.push_back({"some x in 2..k satisfies clause a or b", false});
    return cert;
}

std::vector<TableRow> table_rows() {
    std::vector<TableRow> rows;
    for (int x = 2; x <= 6; ++x) {
        TableRow row;
        row.x = x;
        row.a_n_bound = x == 2 ? "3k"
                               : std::to_string(2 * x - 1) + "k/" + std::to_string(x - 1);
        row.a_q_min = factorial(static_cast<unsigned>(x - 1)) *
                      int_pow(2, static_cast<unsigned>(x + 2));
        row.b_k_max = 2 * (x - 1);
        row.b_q_min = factorial(static_cast<unsigned>(x - 1)) *
                      int_pow(2, static_cast<unsigned>(2 * x + 1));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qmms
