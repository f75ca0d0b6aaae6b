// Command-line front end: exact minimum-depth solving, Shannon-style tables,
// strategy constructions, classification reports, and table/tree export.
//
// Exit codes: 0 ok, 2 usage, 3 parse, 4 budget, 5 internal assertion.

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "hyptree/canonical.hpp"
#include "hyptree/classify.hpp"
#include "hyptree/io.hpp"
#include "hyptree/solver.hpp"
#include "hyptree/strategies.hpp"
#include "hyptree/trees.hpp"

namespace {

using namespace hyptree;

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitBudget = 4;
constexpr int kExitInternal = 5;

struct SystemChoice {
    std::string system;  // u1..u7
    std::string table;
    int n = 0;

    void add_options(CLI::App* cmd, bool need_n = true) {
        auto* sys_opt = cmd->add_option("--system", system, "Canonical system u1..u7");
        auto* table_opt =
            cmd->add_option("--table", table, "CSV table path (element,<attr>,... rows of 0/1)");
        sys_opt->excludes(table_opt);
        auto* n_opt = cmd->add_option("--n", n, "Size parameter for --system");
        if (need_n) n_opt->needs(sys_opt);
    }

    InformationSystem load() const {
        if (!system.empty()) {
            if (n < 1)
                throw CLI::ValidationError("--system requires --n >= 1");
            return canonical_system(canonical_kind_from_string(system), n);
        }
        if (!table.empty()) return read_csv_file(table);
        throw CLI::ValidationError("one of --system or --table is required");
    }

    std::string label() const {
        if (!system.empty()) return system;
        return std::filesystem::path(table).stem().string();
    }
};

std::vector<QueryModel> parse_models(const std::string& s) {
    if (s == "all")
        return {QueryModel::m1, QueryModel::m2, QueryModel::m3, QueryModel::m4,
                QueryModel::m5};
    return {query_model_from_string(s)};
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << content;
}

// Strict bound b on the depth: the largest integer depth still below b.
int strict_cap(double b) {
    double f = std::floor(b);
    return static_cast<int>(f == b ? f - 1 : f);
}

// ---------------------------------------------------------------------------

int cmd_solve(const SystemChoice& choice, const std::string& model_arg, bool dot,
              const std::string& out, std::uint64_t budget) {
    InformationSystem sys = choice.load();
    Problem z = Problem::all_attributes(sys);
    auto models = parse_models(model_arg);
    if (dot && models.size() != 1)
        throw CLI::ValidationError("--dot needs a single --model");
    if (dot && out.empty()) throw CLI::ValidationError("--dot needs --out");

    std::ostringstream csv;
    csv << "system,n,model,depth,nodes,memo_hits,time_ms\n";
    for (auto m : models) {
        SolveOptions opts;
        opts.extract = dot;
        opts.node_budget = budget;
        auto res = min_depth(sys, z, m, opts);
        csv << choice.label() << ',' << z.dim() << ',' << to_string(m) << ',' << res.depth
            << ',' << res.stats.nodes << ',' << res.stats.memo_hits << ',' << std::fixed
            << std::setprecision(3) << res.stats.time_ms << '\n';
        if (dot) write_output(out, to_dot(*res.tree));
    }
    std::cout << csv.str();
    return 0;
}

int cmd_shannon(const SystemChoice& choice, const std::string& model_arg, int max_n,
                int jobs, const std::string& out, std::uint64_t budget) {
    InformationSystem sys = choice.load();
    if (max_n < 1) throw CLI::ValidationError("--n must be >= 1");
    auto models = parse_models(model_arg);

    struct Cell {
        int n;
        QueryModel model;
        std::string depth;
        std::string witness;
    };
    std::vector<Cell> cells;
    for (int n = 1; n <= max_n; ++n)
        for (auto m : models) cells.push_back({n, m, "", ""});

    auto run_cell = [&](Cell& cell) {
        try {
            auto res = shannon_estimate(sys, cell.model, cell.n, budget);
            cell.depth = std::to_string(res.depth);
            std::string names;
            for (auto a : res.witness_attrs) {
                if (!names.empty()) names += '+';
                names += sys.attribute_name(a);
            }
            cell.witness = names;
        } catch (const BudgetError&) {
            cell.depth = "budget_exceeded";
        }
    };

    if (jobs <= 1) {
        for (auto& cell : cells) run_cell(cell);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size();
                     i = next.fetch_add(1))
                    run_cell(cells[i]);
            });
        for (auto& th : pool) th.join();
    }

    std::ostringstream csv;
    csv << "system,n,model,depth,witness\n";
    for (const auto& cell : cells)
        csv << choice.label() << ',' << cell.n << ',' << to_string(cell.model) << ','
            << cell.depth << ',' << cell.witness << '\n';
    write_output(out, csv.str());
    return 0;
}

int cmd_strategy(const SystemChoice& choice, const std::string& kind, int r_flag, int d_flag,
                 int cap, bool dot, const std::string& out) {
    InformationSystem sys = choice.load();
    Problem z = Problem::all_attributes(sys);
    std::ostringstream line;
    line << "kind=" << kind << " system=" << choice.label() << " n=" << z.dim();
    std::optional<DecisionTree> tree;

    auto verified = [&](const DecisionTree& t, QueryModel m) {
        if (!verify_solves(sys, z, t, m))
            throw CertificateError("strategy output failed verification");
        return true;
    };

    if (kind == "sequential") {
        tree = sequential_proper(sys, z);
        line << " bound=" << z.dim() << " depth=" << depth(*tree)
             << " verified=" << verified(*tree, QueryModel::m4);
    } else if (kind == "halving") {
        ReducednessCertificate cert;
        if (r_flag > 0) {
            cert.r = r_flag;
            cert.kind = ReducednessCertificate::Kind::i_reduced;
        } else {
            cert = certify_i_reduced(sys);
            if (cert.r < 2) cert.r = 2;
        }
        int i_dim = independence_dimension(sys).dimension;
        tree = halving_proper(sys, z, cert);
        double bound = halving_depth_bound(cert.r, i_dim, z.dim());
        line << " r=" << cert.r << " i_dim=" << i_dim << " bound=" << strict_cap(bound)
             << " depth=" << depth(*tree) << " verified=" << verified(*tree, QueryModel::m4);
    } else if (kind == "ksystem") {
        ReducednessCertificate cert;
        if (r_flag > 0) {
            cert.r = r_flag;
            cert.kind = ReducednessCertificate::Kind::i_reduced;
        } else {
            cert = certify_i_reduced(sys);
        }
        int k = 0;
        tree = k_system_tree(sys, z, cert, &k);
        line << " r=" << cert.r << " k=" << k << " bound=" << cert.r * k
             << " depth=" << depth(*tree) << " verified=" << verified(*tree, QueryModel::m5);
    } else if (kind == "toproper") {
        SolveOptions opts;
        opts.extract = true;
        auto res = min_depth(sys, z, QueryModel::m5, opts);
        tree = to_proper_only(sys, z, *res.tree);
        line << " m5_depth=" << res.depth << " bound=" << ((1 << res.depth) - 1)
             << " depth=" << depth(*tree) << " verified=" << verified(*tree, QueryModel::m4);
    } else if (kind == "dcomplete") {
        if (d_flag < 1) throw CLI::ValidationError("--d >= 1 is required for dcomplete");
        auto g = find_d_complete_tree(sys, z.attrs, d_flag);
        line << " d=" << d_flag << " found=" << (g.has_value() ? 1 : 0);
        if (g) {
            line << " h2_lower_bound=" << lower_bound_h2(sys, z, *g);
            if (dot || !out.empty()) write_output(out, to_dot(*g, sys));
        }
        std::cout << line.str() << "\n";
        return 0;
    } else if (kind == "witness") {
        std::vector<std::size_t> pool;
        for (std::size_t a = 0; a < sys.attribute_count(); ++a) pool.push_back(a);
        auto w = minimal_inconsistent_witness(sys, pool, cap);
        line << " cap=" << cap << " found=" << (w.has_value() ? 1 : 0);
        if (w) {
            Problem zw(sys, w->attrs);
            int need = static_cast<int>(w->system.eqs.size()) - 1;
            int h4 = min_depth(sys, zw, QueryModel::m4).depth;
            int h5 = min_depth(sys, zw, QueryModel::m5).depth;
            line << " size=" << w->system.eqs.size() << " witness=\""
                 << to_string(sys, w->system) << "\" h4=" << h4 << " h5=" << h5
                 << " lower_bound_ok=" << (h4 >= need && h5 >= need ? 1 : 0);
        }
        std::cout << line.str() << "\n";
        return 0;
    } else {
        throw CLI::ValidationError("unknown --kind: " + kind);
    }

    std::cout << line.str() << "\n";
    if ((dot || !out.empty()) && tree) write_output(out, to_dot(*tree));
    return 0;
}

int cmd_classify(const SystemChoice& choice, int cap, int kcap, const std::string& out,
                 std::uint64_t budget) {
    InformationSystem sys = choice.load();
    ClassifyOptions opts;
    if (cap > 0) opts.subsystem_cap = cap;
    if (kcap > 0) opts.k_cap = kcap;
    opts.budget = budget;
    std::string label = choice.label();
    if (!choice.system.empty()) label += "(" + std::to_string(choice.n) + ")";
    auto rep = classify_system(sys, label, opts);
    std::cout << summary(rep);
    if (!out.empty()) write_output(out, to_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_export(const SystemChoice& choice, bool dot, const std::string& model_arg,
               const std::string& out, bool random, std::uint64_t seed, int universe,
               int attrs) {
    if (random) {
        if (universe < 1 || attrs < 1)
            throw CLI::ValidationError("--random needs --universe and --attrs >= 1");
        std::mt19937_64 rng(seed);
        auto sys = random_system(rng, static_cast<std::size_t>(universe),
                                 static_cast<std::size_t>(attrs));
        write_output(out, to_csv(sys));
        return 0;
    }
    InformationSystem sys = choice.load();
    if (!dot) {
        write_output(out, to_csv(sys));
        return 0;
    }
    Problem z = Problem::all_attributes(sys);
    auto models = parse_models(model_arg.empty() ? "m1" : model_arg);
    if (models.size() != 1) throw CLI::ValidationError("--dot needs a single --model");
    SolveOptions opts;
    opts.extract = true;
    auto res = min_depth(sys, z, models[0], opts);
    write_output(out, to_dot(*res.tree));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-depth decision trees over binary tables under five query models"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value config file; flags take precedence");

    std::uint64_t budget = 10'000'000;
    app.add_option("--budget", budget, "Combinatorial budget (nodes / enumerated problems)")
        ->envname("HYPTREE_BUDGET");

    SystemChoice solve_sys, shannon_sys, strat_sys, classify_sys, export_sys;
    std::string solve_model = "all", shannon_model = "all", export_model;
    std::string solve_out, shannon_out, strat_out, classify_out, export_out;
    bool solve_dot = false, strat_dot = false, export_dot = false, export_random = false;
    int shannon_jobs = 1;
    std::string strat_kind;
    int strat_r = 0, strat_d = 0, strat_cap = 4;
    int classify_cap = 0, classify_kcap = 0;
    std::uint64_t export_seed = 0;
    int export_universe = 0, export_attrs = 0;

    auto* solve = app.add_subcommand("solve", "Exact minimum depth per query model (CSV)");
    solve_sys.add_options(solve);
    solve->add_option("--model", solve_model, "m1..m5 or all")->capture_default_str();
    solve->add_flag("--dot", solve_dot, "Also write the optimal tree as DOT (needs --out)");
    solve->add_option("--out", solve_out, "DOT output path");

    auto* shannon =
        app.add_subcommand("shannon", "Worst case over attribute subsets of size <= n (CSV)");
    shannon_sys.add_options(shannon, /*need_n=*/false);
    shannon->add_option("--model", shannon_model, "m1..m5 or all")->capture_default_str();
    shannon->add_option("--jobs", shannon_jobs, "Parallel (n, model) cells")
        ->capture_default_str();
    shannon->add_option("--out", shannon_out, "CSV output path (default stdout)");

    auto* strategy = app.add_subcommand("strategy", "Constructive strategies with bounds");
    strat_sys.add_options(strategy);
    strategy
        ->add_option("--kind", strat_kind,
                     "sequential|halving|ksystem|toproper|dcomplete|witness")
        ->required();
    strategy->add_option("--r", strat_r, "Certificate r (default: exact from the table)");
    strategy->add_option("--d", strat_d, "Depth for dcomplete");
    strategy->add_option("--cap", strat_cap, "Witness size cap")->capture_default_str();
    strategy->add_flag("--dot", strat_dot, "Write the tree as DOT to --out");
    strategy->add_option("--out", strat_out, "DOT output path");

    auto* classify = app.add_subcommand("classify", "Classification report");
    classify_sys.add_options(classify);
    classify->add_option("--cap", classify_cap, "Subsystem sweep cap (default 3)");
    classify->add_option("--kcap", classify_kcap, "k-level report cap (default 6)");
    classify->add_option("--out", classify_out, "JSON report path");

    auto* exp = app.add_subcommand("export", "Emit a table as CSV or an optimal tree as DOT");
    export_sys.add_options(exp, false);
    exp->add_flag("--dot", export_dot, "Export the optimal decision tree instead of CSV");
    exp->add_option("--model", export_model, "Model for --dot (default m1)");
    exp->add_option("--out", export_out, "Output path (default stdout)");
    exp->add_flag("--random", export_random, "Generate a random table instead");
    exp->add_option("--seed", export_seed, "Seed for --random");
    exp->add_option("--universe", export_universe, "Universe size for --random");
    exp->add_option("--attrs", export_attrs, "Attribute count for --random");

    try {
        app.parse(argc, argv);
        if (*solve) return cmd_solve(solve_sys, solve_model, solve_dot, solve_out, budget);
        if (*shannon)
            return cmd_shannon(shannon_sys, shannon_model, shannon_sys.n, shannon_jobs,
                               shannon_out, budget);
        if (*strategy)
            return cmd_strategy(strat_sys, strat_kind, strat_r, strat_d, strat_cap,
                                strat_dot, strat_out);
        if (*classify)
            return cmd_classify(classify_sys, classify_cap, classify_kcap, classify_out,
                                budget);
        if (*exp)
            return cmd_export(export_sys, export_dot, export_model, export_out,
                              export_random, export_seed, export_universe, export_attrs);
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const CertificateError& e) {
        std::cerr << "certificate violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const StructureError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
