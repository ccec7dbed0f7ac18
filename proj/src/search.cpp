#include "qmms/search.hpp"

#include "qmms/gaussian.hpp"
#include "qmms/lp.hpp"
#include "qmms/scheme.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

namespace qmms {
namespace {

std::vector<long> normalized_members(const Family& family, long count) {
    std::vector<long> members = family.members;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && (members.front() < 0 || members.back() >= count))
        throw std::invalid_argument("family member id out of range");
    return members;
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

FeasibilityResult lp_feasible(GeometryContext& ctx, const Family& family) {
    int k = family.k;
    ctx.enumerate_subspaces(k);
    long count = ctx.num_subspaces(k);
    std::vector<long> members = normalized_members(family, count);
    if (!ctx.point_sets_ready(k)) ctx.materialize_point_sets(k);

    int num_points = ctx.num_points();
    std::vector<char> in_family(count, 0);
    for (long id : members) in_family[id] = 1;

    std::vector<IntConstraint> constraints;
    constraints.reserve(count + 1);
    constraints.push_back({std::vector<int>(num_points, 1), Sense::EQ, 0});
    for (long id = 0; id < count; ++id) {
        const Bitset& pts = ctx.point_set(k, id);
        std::vector<int> row(num_points, 0);
        for (int p = 0; p < num_points; ++p)
            if (pts.test(p)) row[p] = 1;
        if (in_family[id])
            constraints.push_back({std::move(row), Sense::GE, 0});
        else
            constraints.push_back({std::move(row), Sense::LE, -1});
    }

    LpResult lp = lp_feasibility(num_points, constraints);
    FeasibilityResult result;
    result.feasible = lp.feasible;
    if (lp.feasible)
        result.witness = WeightFunction::from_values(ctx, std::move(lp.witness));
    else
        result.certificate = "phase-1 simplex optimum is positive";
    return result;
}

// --- Symmetry reduction -----------------------------------------------------

std::vector<std::vector<long>> monomial_subspace_permutations(GeometryContext& ctx, int k,
                                                              long max_group_order) {
    int n = ctx.n();
    int q = ctx.q();
    long order = 1;
    for (int i = 2; i <= n; ++i) {
        order *= i;
        if (order > max_group_order) throw std::length_error("monomial group too large");
    }
    for (int i = 0; i < n; ++i) {
        order *= q - 1;
        if (order > max_group_order) throw std::length_error("monomial group too large");
    }

    ctx.enumerate_subspaces(k);
    long count = ctx.num_subspaces(k);
    const FiniteField& field = ctx.field();

    std::vector<int> perm(n);
    std::set<std::vector<long>> images;
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        std::vector<int> diag(n, 1);
        while (true) {
            std::vector<long> image(count);
            std::vector<std::vector<int>> rows;
            for (long id = 0; id < count; ++id) {
                std::span<const std::int16_t> basis = ctx.subspace_basis(k, id);
                rows.assign(k, std::vector<int>(n, 0));
                for (int r = 0; r < k; ++r)
                    for (int j = 0; j < n; ++j)
                        rows[r][j] = field.mul(diag[j], basis[r * n + perm[j]]);
                image[id] = ctx.subspace_id(make_subspace(ctx, rows));
            }
            images.insert(std::move(image));

            int slot = n - 1;
            while (slot >= 0 && diag[slot] == q - 1) diag[slot--] = 1;
            if (slot < 0) break;
            ++diag[slot];
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return {images.begin(), images.end()};
}

std::vector<long> canonical_family(const std::vector<long>& members,
                                   const std::vector<std::vector<long>>& perms) {
    std::vector<long> best = members;
    std::vector<long> image(members.size());
    for (const std::vector<long>& perm : perms) {
        for (std::size_t i = 0; i < members.size(); ++i) image[i] = perm[members[i]];
        std::sort(image.begin(), image.end());
        if (image < best) best = image;
    }
    return best;
}

bool is_canonical_family(const std::vector<long>& members,
                         const std::vector<std::vector<long>>& perms) {
    std::vector<long> image(members.size());
    for (const std::vector<long>& perm : perms) {
        for (std::size_t i = 0; i < members.size(); ++i) image[i] = perm[members[i]];
        std::sort(image.begin(), image.end());
        if (image < members) return false;
    }
    return true;
}

std::vector<std::vector<long>> family_orbit(const std::vector<long>& members,
                                            const std::vector<std::vector<long>>& perms) {
    std::set<std::vector<long>> orbit;
    std::vector<long> image(members.size());
    for (const std::vector<long>& perm : perms) {
        for (std::size_t i = 0; i < members.size(); ++i) image[i] = perm[members[i]];
        std::sort(image.begin(), image.end());
        orbit.insert(image);
    }
    return {orbit.begin(), orbit.end()};
}

// --- Run persistence --------------------------------------------------------

SearchLedger::SearchLedger(std::string path) : path_(std::move(path)) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open ledger " + path_);
}

void SearchLedger::record(int n, int q, const Family& family, bool feasible,
                          std::uint64_t seed) {
    nlohmann::ordered_json entry;
    entry["n"] = n;
    entry["k"] = family.k;
    entry["q"] = q;
    entry["members"] = family.members;
    entry["feasible"] = feasible;
    entry["timestamp"] = utc_timestamp();
    entry["seed"] = seed;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open ledger " + path_);
    out << entry.dump() << '\n';
}

std::vector<LedgerRecord> SearchLedger::read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ledger " + path);
    std::vector<LedgerRecord> records;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json entry;
        try {
            entry = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& err) {
            throw std::invalid_argument("ledger line " + std::to_string(line_no) + ": " +
                                        err.what());
        }
        LedgerRecord rec;
        rec.n = entry.at("n").get<int>();
        rec.k = entry.at("k").get<int>();
        rec.q = entry.at("q").get<int>();
        rec.members = entry.at("members").get<std::vector<long>>();
        rec.feasible = entry.at("feasible").get<bool>();
        rec.timestamp = entry.at("timestamp").get<std::string>();
        rec.seed = entry.at("seed").get<std::uint64_t>();
        records.push_back(std::move(rec));
    }
    return records;
}

ReplayReport replay_ledger(const std::string& path) {
    std::vector<LedgerRecord> records = SearchLedger::read(path);
    ReplayReport report;
    report.records = static_cast<long>(records.size());
    std::map<std::pair<int, int>, std::unique_ptr<GeometryContext>> contexts;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const LedgerRecord& rec = records[i];
        auto key = std::make_pair(rec.n, rec.q);
        auto it = contexts.find(key);
        if (it == contexts.end())
            it = contexts
                     .emplace(key, std::make_unique<GeometryContext>(FiniteField(rec.q), rec.n))
                     .first;
        FeasibilityResult result = lp_feasible(*it->second, Family{rec.k, rec.members});
        if (result.feasible != rec.feasible) {
            report.consistent = false;
            report.mismatches.push_back("record " + std::to_string(i + 1) + ": logged " +
                                        (rec.feasible ? "feasible" : "infeasible") +
                                        ", replay says the opposite");
        }
        if (result.feasible) {
            long size = static_cast<long>(rec.members.size());
            if (report.min_feasible < 0 || size < report.min_feasible)
                report.min_feasible = size;
        }
    }
    return report;
}

// --- Minimum-count search ---------------------------------------------------

EigenvalueFilter::EigenvalueFilter(GeometryContext& ctx, int k) {
    ctx.enumerate_subspaces(k);
    count_ = ctx.num_subspaces(k);
    if (count_ > 4096) return;
    PairDistances dist(ctx, k);
    int n = ctx.n();
    int q = ctx.q();
    at_dist_.assign(k + 1, {});
    for (int i = 1; i <= k; ++i) {
        BigInt lambda = scheme_eigenvalue(n, k, q, i);
        if (lambda > 0)
            positive_.push_back(i);
        else if (lambda < 0)
            negative_.push_back(i);
        else
            continue;
        at_dist_[i].assign(count_, Bitset(static_cast<std::size_t>(count_)));
        for (long a = 0; a < count_; ++a)
            for (long b = 0; b < count_; ++b)
                if (a != b && dist.cls(a, b) == i) at_dist_[i][a].set(b);
    }
    built_ = true;
}

bool EigenvalueFilter::admits(const std::vector<long>& members) const {
    if (!built_) return true;
    Bitset member_bits(static_cast<std::size_t>(count_));
    for (long m : members) member_bits.set(m);
    return admits(members, member_bits);
}

bool EigenvalueFilter::admits(const std::vector<long>& members, const Bitset& member_bits) const {
    if (!built_) return true;
    for (int i : positive_)
        for (long m : members)
            if (!at_dist_[i][m].intersects(member_bits)) return false;
    if (!negative_.empty())
        for (long t = 0; t < count_; ++t) {
            if (member_bits.test(t)) continue;
            for (int i : negative_)
                if (!at_dist_[i][t].intersects(member_bits)) return false;
        }
    return true;
}

namespace {

bool next_combination(std::vector<long>& comb, long limit) {
    int s = static_cast<int>(comb.size());
    for (int i = s - 1; i >= 0; --i) {
        if (comb[i] < limit - (s - i)) {
            ++comb[i];
            for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Runs the oracle over the batch, fanning out to a worker pool when asked;
// results are positionally ordered, so the outcome is worker-count invariant.
std::vector<char> batch_feasible(GeometryContext& ctx, int k,
                                 const std::vector<std::vector<long>>& batch, int workers) {
    std::vector<char> feasible(batch.size(), 0);
    auto run_range = [&ctx, k, &batch, &feasible](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            feasible[i] = lp_feasible(ctx, Family{k, batch[i]}).feasible ? 1 : 0;
    };
    if (workers <= 1 || batch.size() < 2) {
        run_range(0, batch.size());
        return feasible;
    }
    int used = std::min<int>(workers, static_cast<int>(batch.size()));
    std::vector<std::thread> pool;
    std::size_t chunk = (batch.size() + used - 1) / used;
    for (int w = 0; w < used; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(batch.size(), begin + chunk);
        if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (std::thread& t : pool) t.join();
    return feasible;
}

}  // namespace

ExhaustiveResult exhaustive_min(GeometryContext& ctx, int k, int cap,
                                const SearchOptions& options) {
    ctx.enumerate_subspaces(k);
    long count = ctx.num_subspaces(k);
    if (cap < 1) throw std::invalid_argument("cap must be positive");
    cap = static_cast<int>(std::min<long>(cap, count));
    if (!ctx.point_sets_ready(k)) ctx.materialize_point_sets(k);

    // Reject infeasible instances before any heavy setup; the group order
    // bounds the symmetry reduction from above.
    BigInt group_order = factorial(static_cast<unsigned>(ctx.n())) *
                         int_pow(ctx.q() - 1, static_cast<unsigned>(ctx.n()));
    BigInt families = 0;
    for (int s = 1; s <= cap; ++s) {
        BigInt binom = 1;
        for (int i = 0; i < s; ++i) {
            binom *= count - i;
            binom /= i + 1;
        }
        families += binom;
    }
    BigInt estimate = families / group_order;
    if (estimate > 2'000'000)
        throw std::runtime_error("exhaustive budget exceeded: about " + estimate.str() +
                                 " canonical families");

    std::vector<std::vector<long>> perms = monomial_subspace_permutations(ctx, k);

    std::optional<EigenvalueFilter> filter;
    if (options.prefilter) filter.emplace(ctx, k);

    ExhaustiveResult result;
    result.cap = cap;
    std::vector<std::vector<long>> feasible_at_min;

    for (int s = 1; s <= cap && result.min_count < 0; ++s) {
        std::vector<std::vector<long>> batch;
        std::vector<long> comb(s);
        for (int i = 0; i < s; ++i) comb[i] = i;
        Bitset member_bits(static_cast<std::size_t>(count));
        do {
            if (!is_canonical_family(comb, perms)) continue;
            ++result.canonical_tested;
            if (filter && filter->built()) {
                member_bits.clear();
                for (long m : comb) member_bits.set(m);
                if (!filter->admits(comb, member_bits)) continue;
            }
            batch.push_back(comb);
        } while (next_combination(comb, count));

        std::vector<char> feasible = batch_feasible(ctx, k, batch, options.workers);
        result.lp_calls += static_cast<long>(batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (options.ledger)
                options.ledger->record(ctx.n(), ctx.q(), Family{k, batch[i]}, feasible[i],
                                       options.seed);
            if (feasible[i]) {
                result.min_count = s;
                feasible_at_min.push_back(batch[i]);
            }
        }
    }

    std::set<std::vector<long>> expanded;
    for (const std::vector<long>& members : feasible_at_min)
        for (std::vector<long>& image : family_orbit(members, perms))
            expanded.insert(std::move(image));
    for (const std::vector<long>& members : expanded)
        result.extremal.push_back(Family{k, members});
    return result;
}

HeuristicResult heuristic_min(GeometryContext& ctx, int k, long budget, std::uint64_t seed,
                              SearchLedger* ledger) {
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    int n = ctx.n();
    ctx.enumerate_subspaces(k);
    long count = ctx.num_subspaces(k);
    if (!ctx.point_sets_ready(k)) ctx.materialize_point_sets(k);
    std::mt19937_64 rng(seed);

    HeuristicResult result;
    auto offer = [&](const Family& family, std::optional<WeightFunction> witness) {
        long size = static_cast<long>(family.members.size());
        if (ledger) ledger->record(n, ctx.q(), family, true, seed);
        if (result.best_count < 0 || size < result.best_count) {
            result.best_count = size;
            result.best = family;
            result.witness = std::move(witness);
        }
    };

    // Constructed starts: each weighting realizes its own nonnegative family.
    WeightFunction pencil = point_pencil_example(ctx, 0);
    offer(nonneg_family(ctx, pencil, k), pencil);
    if (k < n) {
        Subspace hyperplane = dual_subspace(ctx, make_subspace(ctx, {ctx.point(0)}));
        WeightFunction on_hyperplane = hyperplane_example(ctx, hyperplane);
        offer(nonneg_family(ctx, on_hyperplane, k), on_hyperplane);
    }
    if (k < n && n < 2 * k) {
        DualWeighting dual = dual_transform(point_pencil_example(ctx, 0));
        WeightFunction pulled = WeightFunction::from_values(ctx, dual.g.values());
        offer(nonneg_family(ctx, pulled, k), pulled);
    }
    for (int r = 0; r < 3; ++r) {
        WeightFunction f = random_sum_zero(ctx, rng);
        offer(nonneg_family(ctx, f, k), f);
    }

    // Local descent: drop one member when the oracle allows it; otherwise
    // swap to a sibling family of the same size and keep trying.
    Family current = result.best;
    while (result.lp_calls < budget) {
        bool improved = false;
        std::vector<long> order = current.members;
        std::shuffle(order.begin(), order.end(), rng);
        for (long drop : order) {
            if (result.lp_calls >= budget) break;
            Family candidate{k, {}};
            for (long m : current.members)
                if (m != drop) candidate.members.push_back(m);
            FeasibilityResult fr = lp_feasible(ctx, candidate);
            ++result.lp_calls;
            if (ledger) ledger->record(n, ctx.q(), candidate, fr.feasible, seed);
            if (fr.feasible) {
                current = candidate;
                offer(candidate, std::move(fr.witness));
                improved = true;
                break;
            }
        }
        if (improved) continue;
        if (result.lp_calls >= budget || current.members.empty()) break;
        Family candidate = current;
        std::uniform_int_distribution<std::size_t> pick_member(0, candidate.members.size() - 1);
        std::uniform_int_distribution<long> pick_any(0, count - 1);
        candidate.members.erase(candidate.members.begin() + pick_member(rng));
        long add = pick_any(rng);
        while (std::find(candidate.members.begin(), candidate.members.end(), add) !=
               candidate.members.end())
            add = pick_any(rng);
        candidate.members.push_back(add);
        std::sort(candidate.members.begin(), candidate.members.end());
        FeasibilityResult fr = lp_feasible(ctx, candidate);
        ++result.lp_calls;
        if (ledger) ledger->record(n, ctx.q(), candidate, fr.feasible, seed);
        if (fr.feasible) {
            current = candidate;
            if (static_cast<long>(candidate.members.size()) <= result.best_count)
                offer(candidate, std::move(fr.witness));
        }
    }

    if (!result.witness) throw std::logic_error("search ended without a witness");
    Family check = nonneg_family(ctx, *result.witness, k);
    if (!(check == result.best))
        throw std::logic_error("witness does not reproduce the reported family");
    return result;
}

// --- Conjecture checks ------------------------------------------------------

bool is_pencil_family(GeometryContext& ctx, int k, const std::vector<long>& members) {
    if (members.empty()) return false;
    ctx.enumerate_subspaces(k);
    if (!ctx.point_sets_ready(k)) ctx.materialize_point_sets(k);
    Bitset common = ctx.point_set(k, members[0]);
    for (std::size_t i = 1; i < members.size(); ++i) common &= ctx.point_set(k, members[i]);
    std::vector<long> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    for (int p = 0; p < ctx.num_points(); ++p) {
        if (!common.test(p)) continue;
        if (subspaces_through_point(ctx, k, p) == sorted) return true;
    }
    return false;
}

bool is_hyperplane_family(GeometryContext& ctx, int k, const std::vector<long>& members) {
    if (members.empty()) return false;
    ctx.enumerate_subspaces(k);
    int n = ctx.n();
    std::vector<std::vector<int>> rows;
    for (long id : members) {
        std::span<const std::int16_t> basis = ctx.subspace_basis(k, id);
        for (int r = 0; r < k; ++r)
            rows.emplace_back(basis.begin() + r * n, basis.begin() + (r + 1) * n);
    }
    Subspace span = make_subspace(ctx, rows);
    if (span.dim != n - 1) return false;
    std::vector<long> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    return subspaces_inside(ctx, k, span) == sorted;
}

ConjectureReport verify_conjecture(GeometryContext& ctx, int k, const std::string& mode,
                                   const SearchOptions& options) {
    int n = ctx.n();
    int q = ctx.q();
    ConjectureReport report;
    if (k < n && n < 2 * k) {
        report.regime = 'a';
        report.claimed = gaussian(n - 1, k, q);
    } else if (n == 2 * k) {
        report.regime = 'b';
        report.claimed = gaussian(n - 1, k - 1, q);
    } else {
        report.regime = 'c';
        report.claimed = gaussian(n - 1, k - 1, q);
    }

    if (mode == "exhaustive") {
        long cap = report.claimed.convert_to<long>();
        ExhaustiveResult scan = exhaustive_min(ctx, k, static_cast<int>(cap), options);
        report.best_found = scan.min_count;
        report.extremal = scan.extremal;
        if (scan.min_count >= 0 && BigInt(scan.min_count) < report.claimed) {
            report.status = ConjectureStatus::refuted;
            report.detail = "a family of size " + std::to_string(scan.min_count) +
                            " is realizable, below the conjectured minimum";
            return report;
        }
        if (scan.min_count < 0 || BigInt(scan.min_count) != report.claimed) {
            report.status = ConjectureStatus::refuted;
            report.detail = "no family of the conjectured minimum size is realizable";
            return report;
        }
        long pencils = 0, hyperplanes = 0, other = 0;
        for (const Family& family : scan.extremal) {
            if (is_pencil_family(ctx, k, family.members))
                ++pencils;
            else if (report.regime == 'b' && is_hyperplane_family(ctx, k, family.members))
                ++hyperplanes;
            else
                ++other;
        }
        if (report.regime == 'b' && other == 0) {
            report.status = ConjectureStatus::confirmed;
            report.detail = "minimum " + report.claimed.str() + "; extremal families: " +
                            std::to_string(pencils) + " pencils + " +
                            std::to_string(hyperplanes) + " hyperplane-families";
        } else if (report.regime == 'c' && other == 0 && hyperplanes == 0) {
            report.status = ConjectureStatus::confirmed;
            report.detail = "minimum " + report.claimed.str() + "; extremal families: " +
                            std::to_string(pencils) + " pencils, none other";
        } else if (report.regime == 'a') {
            report.status = ConjectureStatus::confirmed;
            report.detail = "minimum " + report.claimed.str() + " attained";
        } else {
            report.status = ConjectureStatus::refuted;
            report.detail = std::to_string(other) +
                            " extremal families fall outside the conjectured classification";
        }
        return report;
    }

    if (mode != "heuristic") throw std::invalid_argument("mode must be exhaustive or heuristic");

    HeuristicResult best = heuristic_min(ctx, k, options.budget, options.seed, options.ledger);
    report.best_found = best.best_count;
    if (BigInt(best.best_count) < report.claimed) {
        report.status = ConjectureStatus::refuted;
        report.detail = "a family of size " + std::to_string(best.best_count) +
                        " is realizable, below the conjectured minimum";
    } else if (BigInt(best.best_count) == report.claimed) {
        if (report.claimed == 1) {
            report.status = ConjectureStatus::confirmed;
            report.detail =
                "minimum 1: the empty family is never realizable (weights sum to zero)";
        } else {
            report.status = ConjectureStatus::unresolved;
            report.detail = "best found matches the conjectured minimum " +
                            report.claimed.str() + "; not an exhaustive proof";
        }
    } else {
        report.status = ConjectureStatus::unresolved;
        report.detail = "best found " + std::to_string(best.best_count) +
                        " exceeds the conjectured minimum";
    }
    return report;
}

}  // namespace qmms
