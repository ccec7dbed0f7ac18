#pragma once

#include "qmms/weights.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qmms {

// A bad configuration is a set of k-subspaces that pairwise intersect in
// dimension exactly 1 while every triple intersects in dimension 0. Sets of
// size 0 or 1 are trivially bad.
bool is_bad_configuration(const GeometryContext& ctx, const std::vector<Subspace>& members);

// Whether the candidate meets every member in dimension exactly 1 with all
// those intersection points distinct (equivalently: adding no common point,
// every pair {member, candidate} meets in dim 1 and every triple through the
// candidate meets in dim 0).
bool meets_badly(const GeometryContext& ctx, const std::vector<Subspace>& members,
                 const Subspace& candidate);

// Exact count of enumerated k-subspaces meeting the configuration badly.
long count_badly_meeting(GeometryContext& ctx, int k, const std::vector<long>& member_ids);

// Upper bound x^2 * 2^x * q^(-delta) * gaussian(n-1, k-1) on that count.
// Rejects parameter sets violating its hypotheses (1 < x <= k, q >= 3,
// n >= 2k+delta >= 2k+1, (x-1)n >= (2x-1)k - x + delta) via std::domain_error
// naming the failed hypothesis.
Rational bad_config_bound(int x, int n, int k, int q, int delta);

// Randomized greedy search for bad configurations of x distinct k-subspaces;
// returns up to `count` distinct configurations (sorted id lists),
// deterministic for a fixed seed.
std::vector<std::vector<long>> find_bad_configurations(GeometryContext& ctx, int k, int x,
                                                       int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Structural inequality suite on a concrete weighting.

struct LemmaOptions {
    // Ladder constant c (must satisfy 3 <= c <= q to apply). Unset = pick the
    // canonical value (x-2)! * 2^(x+1) for the prefix size at hand, clamped
    // into the admissible range when possible.
    std::optional<Rational> c;
    // The candidate-set size in the existence check uses the factor
    // (x-2)! * 2^(x+margin) - 3; both margin 1 and 2 appear in the source
    // analysis, so the choice is a parameter rather than hard-coded.
    int existence_margin = 1;
    // Per-point cap hypothesis of the existence check: no point lies on more
    // than (point_cap / q) * gaussian(n-1, k-1) nonnegative k-subspaces. The
    // analysis states 3 in one place and establishes 2 in another; exposed.
    Rational point_cap = Rational(3);
};

struct LemmaCheckItem {
    enum class Status { checked, skipped, violated };
    std::string check;     // which inequality family
    std::string instance;  // which concrete case of it
    Status status = Status::checked;
    std::string detail;    // skip reason or violation certificate
};

struct LemmaReport {
    bool pass = true;  // no item violated
    std::vector<LemmaCheckItem> items;
};

// Verifies, exactly, the structural inequalities behind the main bound on the
// given weighting: the meet-count lower bound per nonnegative subspace, the
// top-weight ladder, the common-meeting prefix bounds, the bad-configuration
// existence statement, and the disjoint-from-negative bound. Instances
// outside a check's hypotheses are reported as skips, never errors.
LemmaReport verify_lemma_bounds(GeometryContext& ctx, const WeightFunction& f, int k,
                                const LemmaOptions& options = {});

// ---------------------------------------------------------------------------
// Parameter certificates.

enum class CertificateClause { a, b, c, none };

struct CertificateCondition {
    std::string name;
    bool satisfied = false;
};

struct TheoremCertificate {
    int n = 0, k = 0, q = 0;
    CertificateClause clause = CertificateClause::none;
    int x = 0;  // witness for clauses a and b
    std::vector<CertificateCondition> conditions;
};

// Finds the smallest x in 2..k satisfying clause a — (x-1)n >= (2x-1)k-x+2,
// n >= 2k+2, q >= (x-1)!*2^(x+2) — or clause b — (x-1)n >= (2x-1)k-x+1,
// n >= 2k+1, q >= (x-1)!*2^(2x+1) — trying a before b at each x; falls back
// to clause c (n >= 3k or n = k, q >= 2); otherwise `none` with the reason
// recorded in `conditions`. Deterministic.
TheoremCertificate theorem_certificate(int n, int k, int q);

// The q-threshold table rows for x = 2..6: clause-a thresholds with their
// n-bounds, clause-b thresholds with their k-bounds at n = 2k+1.
struct TableRow {
    int x = 0;
    std::string a_n_bound;  // "3k", "5k/2", ...
    BigInt a_q_min;         // (x-1)! * 2^(x+2)
    int b_k_max = 0;        // 2(x-1)
    BigInt b_q_min;         // (x-1)! * 2^(2x+1)
};
std::vector<TableRow> table_rows();

}  // namespace qmms
