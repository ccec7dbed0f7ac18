#pragma once

#include "qmms/numbers.hpp"
#include "qmms/weights.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qmms {

// Realizability of a family as an exact nonnegative set: is there a sum-zero
// weighting whose nonnegative k-subspaces are precisely the members? Strict
// negativity off the family is normalized to <= -1 (scale invariance keeps
// the feasible region closed).
struct FeasibilityResult {
    bool feasible = false;
    std::optional<WeightFunction> witness;  // reproduces the family exactly
    std::string certificate;                // infeasibility marker otherwise
};

FeasibilityResult lp_feasible(GeometryContext& ctx, const Family& family);

// --- Symmetry reduction -----------------------------------------------------

// Permutations of the k-subspace ids induced by the monomial group
// (coordinate permutations composed with invertible diagonal maps), a cheap
// sound subgroup of the full collineation group. Throws std::length_error if
// the group order exceeds max_group_order.
std::vector<std::vector<long>> monomial_subspace_permutations(GeometryContext& ctx, int k,
                                                              long max_group_order = 200000);

// Lexicographically least image of a sorted member list under the group.
std::vector<long> canonical_family(const std::vector<long>& members,
                                   const std::vector<std::vector<long>>& perms);

bool is_canonical_family(const std::vector<long>& members,
                         const std::vector<std::vector<long>>& perms);

// All distinct images of a sorted member list under the group.
std::vector<std::vector<long>> family_orbit(const std::vector<long>& members,
                                            const std::vector<std::vector<long>>& perms);

// --- Eigenvalue pruning -----------------------------------------------------

// Sound rejection test from the eigenvector identity sum_{dist(S,C)=i} b_S =
// lambda_i b_C: a positive lambda_i forces every member to have a member at
// distance i, and a negative lambda_i forces every non-member (weight <= -1)
// a member at each such distance. A realizable family is never rejected, so
// filtering can thin LP calls but cannot change a search minimum.
class EigenvalueFilter {
public:
    // Builds distance bitsets when the k-level is small enough (<= 4096
    // subspaces); otherwise stays unbuilt and admits everything.
    EigenvalueFilter(GeometryContext& ctx, int k);

    bool built() const { return built_; }
    bool admits(const std::vector<long>& members) const;
    // Hot-path variant: member_bits must be the indicator of `members`.
    bool admits(const std::vector<long>& members, const Bitset& member_bits) const;

private:
    bool built_ = false;
    long count_ = 0;
    std::vector<int> positive_, negative_;     // distance classes by sign
    std::vector<std::vector<Bitset>> at_dist_;  // [i][id] -> ids at distance i
};

// --- Run persistence --------------------------------------------------------

struct LedgerRecord {
    int n = 0, k = 0, q = 0;
    std::vector<long> members;
    bool feasible = false;
    std::string timestamp;
    std::uint64_t seed = 0;
};

// Append-only JSON-lines log of tested families. Replaying a ledger re-runs
// the feasibility oracle on every record and reproduces the reported minimum.
class SearchLedger {
public:
    explicit SearchLedger(std::string path);

    void record(int n, int q, const Family& family, bool feasible, std::uint64_t seed);
    const std::string& path() const { return path_; }

    static std::vector<LedgerRecord> read(const std::string& path);

private:
    std::string path_;
};

struct ReplayReport {
    bool consistent = true;
    long records = 0;
    long min_feasible = -1;  // smallest feasible family size seen, -1 if none
    std::vector<std::string> mismatches;
};

ReplayReport replay_ledger(const std::string& path);

// --- Minimum-count search ---------------------------------------------------

struct SearchOptions {
    SearchLedger* ledger = nullptr;
    int workers = 1;
    std::uint64_t seed = 0;
    long budget = 500;         // heuristic LP-call budget
    bool prefilter = true;     // eigenvalue-based pruning in the exhaustive scan
};

struct ExhaustiveResult {
    int cap = 0;
    long min_count = -1;          // -1: no feasible family of size <= cap
    std::vector<Family> extremal;  // all feasible families at the minimum, orbit-expanded
    long canonical_tested = 0;
    long lp_calls = 0;
};

// Scans all families of size 1..cap up to monomial symmetry, deciding each by
// the exact feasibility oracle. Throws std::runtime_error("exhaustive budget
// exceeded...") when the instance is out of reach rather than degrading.
ExhaustiveResult exhaustive_min(GeometryContext& ctx, int k, int cap,
                                const SearchOptions& options = {});

struct HeuristicResult {
    long best_count = -1;
    Family best;
    std::optional<WeightFunction> witness;
    long lp_calls = 0;
};

// Seeded local search: starts from the pencil and hyperplane constructions
// (and the dual construction when k < n < 2k, plus random sum-zero
// weightings), then tries single-member removals and swaps, each verified by
// the oracle. Deterministic for a fixed seed; never reports a count without a
// verified witness.
HeuristicResult heuristic_min(GeometryContext& ctx, int k, long budget, std::uint64_t seed,
                              SearchLedger* ledger = nullptr);

// --- Conjecture checks ------------------------------------------------------

// The family of all k-subspaces through a common point, as ids.
bool is_pencil_family(GeometryContext& ctx, int k, const std::vector<long>& members);

// The family of all k-subspaces inside a common hyperplane.
bool is_hyperplane_family(GeometryContext& ctx, int k, const std::vector<long>& members);

enum class ConjectureStatus { confirmed, unresolved, refuted };

struct ConjectureReport {
    char regime = '?';       // a: k < n < 2k, b: n = 2k, c: n > 2k
    BigInt claimed;          // conjectured minimum nonnegative count
    long best_found = -1;
    ConjectureStatus status = ConjectureStatus::unresolved;
    std::string detail;
    std::vector<Family> extremal;  // exhaustive mode only
};

ConjectureReport verify_conjecture(GeometryContext& ctx, int k, const std::string& mode,
                                   const SearchOptions& options = {});

}  // namespace qmms
