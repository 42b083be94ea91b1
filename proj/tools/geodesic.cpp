// geodesic: distance distributions, IGL / Wiener, and MinH on trees.
//
// Exit codes:
//   0  success (YES when --tau is given)
//   1  NO: the optimum exceeds --tau
//   2  unreadable input, parse error, bad arguments, k > n
//   3  method does not fit the input (tree method on a non-tree, invalid decomposition)
//   4  trim bound above --trim-cap under --strict, or above the DP's hard limit
//   5  no deletion set meets the trim bound

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "geodesic/decomposition.hpp"
#include "geodesic/distribution.hpp"
#include "geodesic/graph.hpp"
#include "geodesic/measure.hpp"
#include "geodesic/minh.hpp"
#include "geodesic/rational.hpp"
#include "geodesic/redblue.hpp"
#include "geodesic/tree_distance.hpp"
#include "geodesic/treewidth_distance.hpp"

namespace {

using namespace geodesic;

enum Exit : int {
    kOk = 0,
    kNo = 1,
    kParse = 2,
    kMismatch = 3,
    kTrimCap = 4,
    kInfeasible = 5,
};

struct Failure {
    int code;
    std::string message;
};

struct Config {
    std::string input;
    std::string td;
    std::string method = "auto";
    std::optional<std::uint64_t> prefix;
    std::string format = "tsv";
    unsigned threads = 1;
    bool debug_checks = false;

    std::size_t k = 0;
    std::string tau;
    std::optional<std::size_t> trim;
    std::string c_h;
    std::string t_h;
    std::string measure = "igl";
    bool brute = false;
    bool strict = false;
    std::size_t trim_cap = 12;
};

std::string read_source(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Failure{kParse, "cannot read '" + path + "'"};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Graph load_graph(const std::string& path) {
    const std::string text = read_source(path);
    try {
        return parse_edge_list(text);
    } catch (const ParseError& e) {
        throw Failure{kParse, path + ": " + e.what()};
    } catch (const GraphError& e) {
        throw Failure{kParse, path + ": " + e.what()};
    }
}

std::optional<TreeDecomposition> load_decomposition(const std::string& path) {
    if (path.empty()) {
        return std::nullopt;
    }
    const std::string text = read_source(path);
    try {
        return parse_decomposition(text);
    } catch (const InvalidDecomposition&) {
        throw;
    } catch (const std::exception& e) {
        throw Failure{kParse, path + ": " + e.what()};
    }
}

Rational parse_rational_flag(const std::string& text, const char* flag) {
    try {
        return parse_rational(text);
    } catch (const std::exception& e) {
        throw Failure{kParse, std::string(flag) + ": " + e.what()};
    }
}

DistanceDistribution compute_distribution(const Config& cfg, const Graph& g) {
    std::string method = cfg.method;
    if (method == "auto") {
        method = !cfg.td.empty() ? "treewidth" : (Tree::is_tree(g) ? "tree" : "treewidth");
    }
    if (!cfg.td.empty() && method != "treewidth") {
        throw Failure{kMismatch, "--td only applies to --method treewidth"};
    }
    if (method == "tree") {
        if (!Tree::is_tree(g)) {
            throw Failure{kMismatch, "--method tree needs a connected unit-weight tree"};
        }
        TreeDistanceOptions opts;
        opts.prefix = cfg.prefix;
        opts.threads = cfg.threads;
        opts.debug_checks = opts.debug_checks || cfg.debug_checks;
        return tree_distance_distribution(Tree(g), opts);
    }
    if (method == "treewidth") {
        const auto td = load_decomposition(cfg.td);
        TreewidthOptions opts;
        opts.threads = cfg.threads;
        opts.debug_checks = opts.debug_checks || cfg.debug_checks;
        if (cfg.prefix) {
            return tw_distance_prefix(g, td, *cfg.prefix, opts);
        }
        return tw_distance_distribution(g, td, opts);
    }
    if (method == "oracle") {
        const auto d = distance_distribution_oracle(g);
        return cfg.prefix ? d.truncated(*cfg.prefix) : d;
    }
    throw Failure{kParse, "unknown method '" + method + "'"};
}

nlohmann::ordered_json big_to_json(const BigInt& z) {
    if (z.fits_ulong_p()) {
        return z.get_ui();
    }
    return z.get_str();
}

int cmd_distdist(const Config& cfg) {
    const Graph g = load_graph(cfg.input);
    const DistanceDistribution d = compute_distribution(cfg, g);
    // Derived measures describe the whole distribution, so a prefix omits them.
    const bool whole = !cfg.prefix.has_value();
    if (cfg.format == "json") {
        auto doc = nlohmann::ordered_json::parse(to_json(d));
        if (whole) {
            const Rational igl = igl_from_distribution(d);
            doc["igl"] = to_string(igl);
            doc["igl_approx"] = to_double(igl);
            doc["wiener"] = big_to_json(wiener_from_distribution(d));
        }
        std::cout << doc.dump() << '\n';
    } else {
        std::cout << to_tsv(d);
        if (whole) {
            std::cout << "#igl\t" << to_string(igl_from_distribution(d)) << '\n';
            std::cout << "#wiener\t" << wiener_from_distribution(d).get_str() << '\n';
        }
    }
    return kOk;
}

int cmd_measure(const Config& cfg, bool igl) {
    const Graph g = load_graph(cfg.input);
    const DistanceDistribution d = compute_distribution(cfg, g);
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        doc["n"] = g.num_vertices();
        if (igl) {
            const Rational value = igl_from_distribution(d);
            doc["igl"] = to_string(value);
            doc["igl_approx"] = to_double(value);
        } else {
            doc["wiener"] = big_to_json(wiener_from_distribution(d));
        }
        std::cout << doc.dump() << '\n';
    } else if (igl) {
        std::cout << to_string(igl_from_distribution(d)) << '\n';
    } else {
        std::cout << wiener_from_distribution(d).get_str() << '\n';
    }
    return kOk;
}

int cmd_minh(const Config& cfg) {
    const Graph g = load_graph(cfg.input);
    if (!Tree::is_tree(g)) {
        throw Failure{kMismatch, "minh needs a connected unit-weight tree"};
    }
    const Tree t(g);
    const std::size_t n = t.num_vertices();
    if (cfg.k > n) {
        throw Failure{kParse, "-k " + std::to_string(cfg.k) + " exceeds n = " + std::to_string(n)};
    }
    const Measure m = Measure::by_name(cfg.measure);
    std::optional<Rational> tau;
    if (!cfg.tau.empty()) {
        tau = parse_rational_flag(cfg.tau, "--tau");
    }

    std::optional<BalanceParams> params;
    if (!cfg.c_h.empty() || !cfg.t_h.empty()) {
        if (cfg.c_h.empty() || cfg.t_h.empty()) {
            throw Failure{kParse, "--c-h and --t-h must be given together"};
        }
        params = BalanceParams{parse_rational_flag(cfg.c_h, "--c-h"), parse_rational_flag(cfg.t_h, "--t-h")};
        try {
            params->validate();
        } catch (const std::invalid_argument& e) {
            throw Failure{kParse, e.what()};
        }
    } else if (cfg.measure == "igl") {
        params = BalanceParams::igl_defaults();
    } else if (!cfg.trim && !cfg.brute) {
        std::cerr << "warning: no balance constants are known for " << cfg.measure
                  << "; using brute force (pass --c-h/--t-h or --trim to use the trim DP)\n";
    }

    // Trim bound the run will use, if it reaches the DP at all.
    std::optional<std::size_t> trim;
    if (!cfg.brute) {
        if (cfg.trim) {
            trim = std::min(*cfg.trim, n);
        } else if (params && static_cast<double>(cfg.k) > minh_k_star(n, to_double(params->t_h))) {
            trim = params->trim_bound(n, cfg.k);
        }
    }
    if (trim && *trim > cfg.trim_cap) {
        std::cerr << "warning: trim bound L = " << *trim << " exceeds --trim-cap " << cfg.trim_cap
                  << "; the ordered-shape enumeration grows like 4^L\n";
        if (cfg.strict) {
            return kTrimCap;
        }
    }

    MinhOutcome outcome;
    try {
        if (cfg.brute) {
            outcome.solution = minh_bruteforce(t, m, cfg.k);
            outcome.k_star = 0.0;
        } else if (cfg.trim) {
            auto solved = minh_trim_dp(t, m, cfg.k, *cfg.trim);
            if (!solved) {
                throw MinhInfeasible("no " + std::to_string(cfg.k) +
                                     "-vertex deletion leaves components of at most " +
                                     std::to_string(*trim) + " vertices");
            }
            outcome.solution = std::move(*solved);
            outcome.trim_bound = *trim;
        } else {
            outcome = minh_solve(t, m, cfg.k, params, std::nullopt);
        }
    } catch (const TrimBoundTooLarge& e) {
        throw Failure{kTrimCap, e.what()};
    } catch (const MinhInfeasible& e) {
        throw Failure{kInfeasible, e.what()};
    }
    if (tau) {
        outcome.decision = outcome.solution.value <= *tau;
    }
    std::cout << to_json(outcome) << '\n';
    return outcome.decision.value_or(true) ? kOk : kNo;
}

int cmd_redblue(const Config& cfg) {
    const std::string text = read_source(cfg.input);
    RedBlueInstance inst;
    try {
        inst = redblue_from_json(text);
    } catch (const std::exception& e) {
        throw Failure{kParse, cfg.input + ": " + e.what()};
    }
    const CoeffPoly result = cfg.brute ? redblue_bruteforce(inst) : redblue_solve(inst, cfg.debug_checks);
    std::cout << redblue_result_json(result) << '\n';
    return kOk;
}

int cmd_validate_td(const Config& cfg) {
    const Graph g = load_graph(cfg.input);
    const auto td = load_decomposition(cfg.td);
    const std::size_t width = validate_decomposition(g, *td);
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        doc["valid"] = true;
        doc["width"] = width;
        doc["nodes"] = td->num_nodes();
        std::cout << doc.dump() << '\n';
    } else {
        std::cout << "width\t" << width << '\n';
    }
    return kOk;
}

void add_graph_options(CLI::App& sub, Config& cfg, bool with_prefix) {
    sub.add_option("--input,-i", cfg.input, "Edge list file, '-' for stdin")->required();
    sub.add_option("--td", cfg.td, "Tree decomposition file (treewidth method)");
    sub.add_option("--method", cfg.method, "tree | treewidth | oracle | auto")
        ->check(CLI::IsMember({"auto", "tree", "treewidth", "oracle"}));
    if (with_prefix) {
        sub.add_option("--prefix,-p", cfg.prefix, "Only count distances 1..p")->check(CLI::PositiveNumber);
    }
    sub.add_option("--format", cfg.format, "tsv | json")->check(CLI::IsMember({"tsv", "json"}));
    sub.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distance distributions, IGL / Wiener index and MinH on trees"};
    app.require_subcommand(1);
    Config cfg;
    app.add_flag("--debug-checks", cfg.debug_checks, "Per-level structural assertions (also GEODESIC_DEBUG_ASSERT=1)");

    auto* distdist = app.add_subcommand("distdist", "Distance distribution with IGL and Wiener index");
    add_graph_options(*distdist, cfg, true);
    auto* igl = app.add_subcommand("igl", "Inverse geodesic length as an exact fraction");
    add_graph_options(*igl, cfg, false);
    auto* wiener = app.add_subcommand("wiener", "Wiener index");
    add_graph_options(*wiener, cfg, false);

    auto* minh = app.add_subcommand("minh", "Delete k tree vertices to minimise IGL or Wiener");
    minh->add_option("--input,-i", cfg.input, "Tree edge list, '-' for stdin")->required();
    minh->add_option("-k", cfg.k, "Number of vertices to delete")->required();
    minh->add_option("--tau", cfg.tau, "Decision threshold, 'p/q' or decimal");
    minh->add_option("--trim", cfg.trim, "Run the trim DP with this component bound L")->check(CLI::PositiveNumber);
    minh->add_option("--c-h", cfg.c_h, "Balance constant c_H (rational)");
    minh->add_option("--t-h", cfg.t_h, "Balance exponent t_H (rational)");
    minh->add_option("--measure", cfg.measure, "igl | wiener")->check(CLI::IsMember({"igl", "wiener"}));
    minh->add_flag("--brute", cfg.brute, "Exhaustive search over all k-subsets");
    minh->add_flag("--strict", cfg.strict, "Fail with exit 4 when L exceeds --trim-cap");
    minh->add_option("--trim-cap", cfg.trim_cap, "Largest L accepted without a warning");
    minh->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* redblue = app.add_subcommand("redblue", "RedBluePolynomial from a JSON instance");
    redblue->add_option("--input,-i", cfg.input, "Instance JSON, '-' for stdin")->required();
    redblue->add_flag("--brute", cfg.brute, "Quadratic pair check");
    redblue->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate-td", "Check a tree decomposition and print its width");
    validate->add_option("--input,-i", cfg.input, "Edge list file")->required();
    validate->add_option("--td", cfg.td, "Decomposition file")->required();
    validate->add_option("--format", cfg.format, "tsv | json")->check(CLI::IsMember({"tsv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*distdist) {
            return cmd_distdist(cfg);
        }
        if (*igl) {
            return cmd_measure(cfg, true);
        }
        if (*wiener) {
            return cmd_measure(cfg, false);
        }
        if (*minh) {
            return cmd_minh(cfg);
        }
        if (*redblue) {
            return cmd_redblue(cfg);
        }
        if (*validate) {
            return cmd_validate_td(cfg);
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    } catch (const InvalidDecomposition& e) {
        std::cerr << "error: invalid decomposition: " << e.what() << '\n';
        return kMismatch;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    }
    return kParse;
}
