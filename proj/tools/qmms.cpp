#include "qmms/extremal.hpp"
#include "qmms/gaussian.hpp"
#include "qmms/scheme.hpp"
#include "qmms/search.hpp"
#include "qmms/weights_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qmms;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

GeometryContext make_context(int n, int q, const std::vector<int>& modulus) {
    FiniteField field = modulus.empty() ? FiniteField(q) : FiniteField(q, modulus);
    return GeometryContext(std::move(field), n);
}

int default_workers() {
    if (const char* env = std::getenv("QMMS_WORKERS")) {
        int value = std::atoi(env);
        if (value >= 1) return value;
    }
    return 1;
}

const char* clause_name(CertificateClause clause) {
    switch (clause) {
        case CertificateClause::a: return "a";
        case CertificateClause::b: return "b";
        case CertificateClause::c: return "c";
        default: return "none";
    }
}

const char* status_name(LemmaCheckItem::Status status) {
    switch (status) {
        case LemmaCheckItem::Status::checked: return "CHECKED";
        case LemmaCheckItem::Status::skipped: return "SKIPPED";
        default: return "VIOLATED";
    }
}

void write_witness(const std::string& path, const WeightFunction& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << weighting_to_json(f);
}

struct GeometryArgs {
    int n = 0, k = 0, q = 0;
    std::vector<int> modulus;

    void attach(CLI::App* cmd) {
        cmd->add_option("n", n, "ambient dimension")->required();
        cmd->add_option("k", k, "subspace dimension")->required();
        cmd->add_option("q", q, "field order")->required();
        cmd->add_option("--modulus", modulus,
                        "irreducible modulus coefficients c0,c1,...,ce (ascending degree)")
            ->delimiter(',');
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for minimum nonnegative-subspace problems over F_q"};
    app.require_subcommand(1);
    int exit_code = 0;

    // gauss
    {
        auto args = std::make_shared<std::vector<int>>(3);
        CLI::App* cmd = app.add_subcommand("gauss", "Gaussian binomial [n over k]_q");
        cmd->add_option("n", (*args)[0], "n")->required();
        cmd->add_option("k", (*args)[1], "k")->required();
        cmd->add_option("q", (*args)[2], "q")->required();
        cmd->callback([args]() {
            std::cout << gaussian((*args)[0], (*args)[1], (*args)[2]).str() << "\n";
        });
    }

    // enumerate
    {
        auto geo = std::make_shared<GeometryArgs>();
        auto count_only = std::make_shared<bool>(false);
        CLI::App* cmd = app.add_subcommand("enumerate", "enumerate k-subspaces of F_q^n");
        geo->attach(cmd);
        cmd->add_flag("--count-only", *count_only, "print counts instead of bases");
        cmd->callback([geo, count_only]() {
            GeometryContext ctx = make_context(geo->n, geo->q, geo->modulus);
            ctx.enumerate_subspaces(geo->k);
            long count = ctx.num_subspaces(geo->k);
            if (*count_only) {
                nlohmann::ordered_json line;
                line["points"] = ctx.num_points();
                line["k"] = geo->k;
                line["subspaces"] = count;
                std::cout << line.dump() << "\n";
                return;
            }
            for (long id = 0; id < count; ++id) {
                Subspace s = ctx.subspace(geo->k, id);
                nlohmann::ordered_json line;
                line["id"] = id;
                nlohmann::ordered_json basis = nlohmann::ordered_json::array();
                for (int r = 0; r < s.dim; ++r) {
                    nlohmann::ordered_json row = nlohmann::ordered_json::array();
                    for (int j = 0; j < s.ambient; ++j) row.push_back(s.basis[r * s.ambient + j]);
                    basis.push_back(std::move(row));
                }
                line["basis"] = std::move(basis);
                std::cout << line.dump() << "\n";
            }
        });
    }

    // weight-eval
    {
        auto file = std::make_shared<std::string>();
        auto k = std::make_shared<int>(0);
        CLI::App* cmd = app.add_subcommand("weight-eval", "weights of all k-subspaces as CSV");
        cmd->add_option("file", *file, "weighting JSON file")->required();
        cmd->add_option("--k", *k, "subspace dimension")->required();
        cmd->callback([file, k]() {
            LoadedWeighting lw = weighting_from_json(read_file(*file));
            WeightVector b = weight_vector(*lw.context, lw.f, *k);
            std::cout << "id,weight\n";
            for (std::size_t id = 0; id < b.values.size(); ++id)
                std::cout << id << "," << rational_to_string(b.values[id]) << "\n";
            std::cout << "nonneg_count," << nonneg_family(b).members.size() << "\n";
        });
    }

    // eigen-check
    {
        auto geo = std::make_shared<GeometryArgs>();
        auto trials = std::make_shared<int>(20);
        auto seed = std::make_shared<std::uint64_t>(0);
        CLI::App* cmd =
            app.add_subcommand("eigen-check", "certify scheme eigenvalues on random weightings");
        geo->attach(cmd);
        cmd->add_option("--trials", *trials, "number of random weightings");
        cmd->add_option("--seed", *seed, "random seed");
        cmd->callback([geo, trials, seed, &exit_code]() {
            GeometryContext ctx = make_context(geo->n, geo->q, geo->modulus);
            ctx.enumerate_subspaces(geo->k);
            for (int i = 0; i <= geo->k; ++i)
                std::cout << "lambda_" << i << " = "
                          << scheme_eigenvalue(geo->n, geo->k, geo->q, i).str() << "\n";
            PairDistances distances(ctx, geo->k);
            std::mt19937_64 rng(*seed);
            for (int t = 0; t < *trials; ++t) {
                WeightFunction f = random_sum_zero(ctx, rng);
                EigencheckReport report = eigencheck(ctx, f, geo->k, &distances);
                if (!report.pass) {
                    std::cout << "trial " << t << ": A_" << report.failed_distance
                              << " mismatch at id " << report.failed_id << ": expected "
                              << rational_to_string(report.expected) << ", got "
                              << rational_to_string(report.actual) << "\n";
                    std::cout << "FAIL\n";
                    exit_code = 1;
                    return;
                }
            }
            std::cout << "PASS\n";
        });
    }

    // bounds
    {
        auto args = std::make_shared<std::vector<int>>(3);
        CLI::App* cmd = app.add_subcommand("bounds", "parameter certificate as JSON");
        cmd->add_option("n", (*args)[0], "n")->required();
        cmd->add_option("k", (*args)[1], "k")->required();
        cmd->add_option("q", (*args)[2], "q")->required();
        cmd->callback([args]() {
            TheoremCertificate cert = theorem_certificate((*args)[0], (*args)[1], (*args)[2]);
            nlohmann::ordered_json doc;
            doc["n"] = cert.n;
            doc["k"] = cert.k;
            doc["q"] = cert.q;
            doc["clause"] = clause_name(cert.clause);
            if (cert.clause == CertificateClause::a || cert.clause == CertificateClause::b)
                doc["x"] = cert.x;
            nlohmann::ordered_json conditions = nlohmann::ordered_json::array();
            for (const CertificateCondition& cond : cert.conditions) {
                nlohmann::ordered_json entry;
                entry["name"] = cond.name;
                entry["satisfied"] = cond.satisfied;
                conditions.push_back(std::move(entry));
            }
            doc["conditions"] = std::move(conditions);
            std::cout << doc.dump(2) << "\n";
        });
    }

    // tables
    {
        CLI::App* cmd = app.add_subcommand("tables", "q-threshold tables as CSV");
        cmd->callback([]() {
            std::cout << "x,a_n_bound,a_q_min,b_k_max,b_q_min\n";
            for (const TableRow& row : table_rows())
                std::cout << row.x << "," << row.a_n_bound << "," << row.a_q_min.str() << ","
                          << row.b_k_max << "," << row.b_q_min.str() << "\n";
        });
    }

    // bad-config
    {
        auto geo = std::make_shared<GeometryArgs>();
        auto ids = std::make_shared<std::vector<long>>();
        auto delta = std::make_shared<int>(-1);
        CLI::App* cmd =
            app.add_subcommand("bad-config", "badly-meeting count versus its upper bound");
        geo->attach(cmd);
        cmd->add_option("--config", *ids, "k-subspace ids of the configuration")
            ->delimiter(',')
            ->required();
        cmd->add_option("--delta", *delta, "bound parameter delta (default n-2k)");
        cmd->callback([geo, ids, delta, &exit_code]() {
            GeometryContext ctx = make_context(geo->n, geo->q, geo->modulus);
            ctx.enumerate_subspaces(geo->k);
            std::vector<Subspace> members;
            for (long id : *ids) members.push_back(ctx.subspace(geo->k, id));
            if (!is_bad_configuration(ctx, members))
                throw std::invalid_argument("the given ids are not a bad configuration");
            int d = *delta >= 0 ? *delta : geo->n - 2 * geo->k;
            long count = count_badly_meeting(ctx, geo->k, *ids);
            Rational bound =
                bad_config_bound(static_cast<int>(ids->size()), geo->n, geo->k, geo->q, d);
            std::cout << "count " << count << "\n";
            std::cout << "bound " << rational_to_string(bound) << "\n";
            if (Rational(count) <= bound) {
                std::cout << "OK\n";
            } else {
                std::cout << "VIOLATION\n";
                exit_code = 1;
            }
        });
    }

    // search-min
    {
        auto geo = std::make_shared<GeometryArgs>();
        auto mode = std::make_shared<std::string>();
        auto cap = std::make_shared<int>(0);
        auto budget = std::make_shared<long>(500);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto ledger_path = std::make_shared<std::string>();
        auto witness_path = std::make_shared<std::string>();
        auto workers = std::make_shared<int>(default_workers());
        CLI::App* cmd = app.add_subcommand("search-min", "search minimum nonnegative counts");
        geo->attach(cmd);
        cmd->add_option("--mode", *mode, "exhaustive or heuristic")
            ->required()
            ->check(CLI::IsMember({"exhaustive", "heuristic"}));
        cmd->add_option("--cap", *cap, "largest family size scanned (exhaustive)");
        cmd->add_option("--budget", *budget, "LP-call budget (heuristic)");
        cmd->add_option("--seed", *seed, "random seed");
        cmd->add_option("--ledger", *ledger_path, "append JSON-lines ledger here");
        cmd->add_option("--witness", *witness_path, "save the best witness weighting here");
        cmd->add_option("--workers", *workers, "worker thread count");
        cmd->callback([geo, mode, cap, budget, seed, ledger_path, witness_path, workers,
                       &exit_code]() {
            GeometryContext ctx = make_context(geo->n, geo->q, geo->modulus);
            std::unique_ptr<SearchLedger> ledger;
            if (!ledger_path->empty()) ledger = std::make_unique<SearchLedger>(*ledger_path);
            SearchOptions options;
            options.ledger = ledger.get();
            options.workers = *workers;
            options.seed = *seed;
            options.budget = *budget;
            if (*mode == "exhaustive") {
                int limit = *cap > 0
                                ? *cap
                                : gaussian(geo->n - 1, geo->k - 1, geo->q).convert_to<int>();
                ExhaustiveResult result = exhaustive_min(ctx, geo->k, limit, options);
                std::cout << "min " << result.min_count << "\n";
                std::cout << "extremal_families " << result.extremal.size() << "\n";
                std::cout << "canonical_tested " << result.canonical_tested << "\n";
                std::cout << "lp_calls " << result.lp_calls << "\n";
                if (!witness_path->empty() && !result.extremal.empty()) {
                    FeasibilityResult fr = lp_feasible(ctx, result.extremal.front());
                    if (fr.feasible) write_witness(*witness_path, *fr.witness);
                }
                if (result.min_count < 0) exit_code = 1;
            } else {
                HeuristicResult result =
                    heuristic_min(ctx, geo->k, *budget, *seed, ledger.get());
                std::cout << "best " << result.best_count << "\n";
                std::cout << "members";
                for (long id : result.best.members) std::cout << " " << id;
                std::cout << "\n";
                std::cout << "lp_calls " << result.lp_calls << "\n";
                if (!witness_path->empty()) write_witness(*witness_path, *result.witness);
            }
        });
    }

    // verify-conjecture
    {
        auto geo = std::make_shared<GeometryArgs>();
        auto mode = std::make_shared<std::string>("heuristic");
        auto budget = std::make_shared<long>(500);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto ledger_path = std::make_shared<std::string>();
        auto workers = std::make_shared<int>(default_workers());
        CLI::App* cmd =
            app.add_subcommand("verify-conjecture", "check the minimum-count conjecture");
        geo->attach(cmd);
        cmd->add_option("--mode", *mode, "exhaustive or heuristic")
            ->check(CLI::IsMember({"exhaustive", "heuristic"}));
        cmd->add_option("--budget", *budget, "LP-call budget (heuristic)");
        cmd->add_option("--seed", *seed, "random seed");
        cmd->add_option("--ledger", *ledger_path, "append JSON-lines ledger here");
        cmd->add_option("--workers", *workers, "worker thread count");
        cmd->callback([geo, mode, budget, seed, ledger_path, workers, &exit_code]() {
            GeometryContext ctx = make_context(geo->n, geo->q, geo->modulus);
            std::unique_ptr<SearchLedger> ledger;
            if (!ledger_path->empty()) ledger = std::make_unique<SearchLedger>(*ledger_path);
            SearchOptions options;
            options.ledger = ledger.get();
            options.workers = *workers;
            options.seed = *seed;
            options.budget = *budget;
            ConjectureReport report = verify_conjecture(ctx, geo->k, *mode, options);
            std::cout << "regime " << report.regime << "\n";
            std::cout << "claimed " << report.claimed.str() << "\n";
            std::cout << "best " << report.best_found << "\n";
            const char* status = report.status == ConjectureStatus::confirmed ? "CONFIRMED"
                                 : report.status == ConjectureStatus::refuted ? "REFUTED"
                                                                             : "UNRESOLVED";
            std::cout << "status " << status << "\n";
            std::cout << "detail " << report.detail << "\n";
            if (report.status == ConjectureStatus::refuted) exit_code = 1;
        });
    }

    // verify-lemmas
    {
        auto file = std::make_shared<std::string>();
        auto k = std::make_shared<int>(0);
        auto c_text = std::make_shared<std::string>();
        auto margin = std::make_shared<int>(1);
        auto cap_text = std::make_shared<std::string>("3");
        CLI::App* cmd = app.add_subcommand(
            "verify-lemmas", "exact structural inequalities on a concrete weighting");
        cmd->add_option("file", *file, "weighting JSON file")->required();
        cmd->add_option("--k", *k, "subspace dimension")->required();
        cmd->add_option("--c", *c_text, "ladder constant (rational, in [3, q])");
        cmd->add_option("--existence-margin", *margin, "existence candidate-set margin");
        cmd->add_option("--point-cap", *cap_text, "per-point cap numerator (rational)");
        cmd->callback([file, k, c_text, margin, cap_text, &exit_code]() {
            LoadedWeighting lw = weighting_from_json(read_file(*file));
            LemmaOptions options;
            if (!c_text->empty()) options.c = parse_rational(*c_text);
            options.existence_margin = *margin;
            options.point_cap = parse_rational(*cap_text);
            LemmaReport report = verify_lemma_bounds(*lw.context, lw.f, *k, options);
            for (const LemmaCheckItem& item : report.items) {
                std::cout << status_name(item.status) << " | " << item.check;
                if (!item.instance.empty()) std::cout << " | " << item.instance;
                if (!item.detail.empty()) std::cout << " | " << item.detail;
                std::cout << "\n";
            }
            std::cout << (report.pass ? "PASS" : "FAIL") << "\n";
            if (!report.pass) exit_code = 1;
        });
    }

    // dualize
    {
        auto file = std::make_shared<std::string>();
        CLI::App* cmd =
            app.add_subcommand("dualize", "transform a weighting to the dual geometry");
        cmd->add_option("file", *file, "weighting JSON file")->required();
        cmd->callback([file]() {
            LoadedWeighting lw = weighting_from_json(read_file(*file));
            DualWeighting dual = dual_transform(lw.f);
            std::cout << weighting_to_json(dual.g);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
