// cobra_lab: simulate, exact, bounds and experiment subcommands writing versioned CSV.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cobra/cobra.hpp"

namespace {

using cobra::ErrorKind;
using cobra::fail;
using cobra::require;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Common {
    std::string config;
    std::string out;
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    std::uint64_t cap = 0;
    std::size_t workers = 1;
};

void add_common(CLI::App* sub, Common& c, bool with_trials = true) {
    sub->add_option("--config", c.config, "JSON file with option values; flags override it");
    sub->add_option("--out", c.out, "CSV output path (default stdout)");
    sub->add_option("--seed", c.seed, "master seed (default $COBRA_LAB_SEED, else 1)");
    if (with_trials) {
        sub->add_option("--trials", c.trials, "trials per estimate");
        sub->add_option("--cap", c.cap, "round cap per trial (default 64 n^3)");
        sub->add_option("--workers", c.workers, "worker threads; output does not depend on it")
            ->check(CLI::PositiveNumber);
    }
}

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    fail(ErrorKind::ConfigError, "config key '" + key + "' must be a string, number, boolean or array of those");
}

/// Feeds config-file values into options the command line left unset.
void merge_config(CLI::App* sub, const std::string& path, const std::string& command) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::ConfigError, "cannot read config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ConfigError, "config file " + path + ": " + e.what());
    }
    require(j.is_object(), ErrorKind::ConfigError, "config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "command") {
            require(value == command, ErrorKind::ConfigError,
                    "config is for command '" + value.dump() + "', not '" + command + "'");
            continue;
        }
        require(key != "config", ErrorKind::ConfigError, "config files cannot nest");
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        require(opt != nullptr, ErrorKind::ConfigError, "unknown config key '" + key + "' for " + command);
        if (opt->count() > 0) continue;
        if (value.is_array()) {
            for (const auto& item : value) opt->add_result(json_scalar(item, key));
        } else {
            opt->add_result(json_scalar(value, key));
        }
        try {
            opt->run_callback();
        } catch (const CLI::Error& e) {
            fail(ErrorKind::ConfigError, "config key '" + key + "': " + e.what());
        }
    }
}

std::uint64_t resolve_seed(const Common& c) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("COBRA_LAB_SEED")) {
        try {
            std::size_t used = 0;
            const auto s = std::stoull(env, &used, 0);
            if (used == std::string(env).size()) return s;
        } catch (const std::logic_error&) {
        }
        fail(ErrorKind::ConfigError, std::string("COBRA_LAB_SEED is not an integer: ") + env);
    }
    return 1;
}

void need(bool present, const std::string& flag, const std::string& command) {
    require(present, ErrorKind::ConfigError, command + ": missing required option " + flag);
}

void emit(const Common& c, const std::vector<cobra::ResultRow>& rows) {
    if (c.out.empty()) {
        cobra::write_csv(std::cout, rows);
        return;
    }
    std::ofstream f(c.out);
    require(static_cast<bool>(f), ErrorKind::IoError, "cannot open " + c.out + " for writing");
    cobra::write_csv(f, rows);
    f.close();
    require(!f.fail(), ErrorKind::IoError, "failed writing " + c.out);
}

cobra::TrialOptions trial_options(const Common& c, std::uint64_t default_trials) {
    cobra::TrialOptions t;
    t.trials = c.trials ? c.trials : default_trials;
    t.master_seed = resolve_seed(c);
    t.cap = c.cap;
    t.workers = c.workers;
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cobra_lab: cobra walk simulation and verification"};
    app.require_subcommand(1);

    // simulate / exact
    Common sim_c, ex_c;
    std::string sim_graph, sim_process = "cobra:k=2", sim_quantity;
    std::string ex_graph, ex_process = "cobra:k=2", ex_quantity;
    cobra::Vertex sim_start = 0, ex_start = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of one quantity");
    add_common(simulate, sim_c);
    simulate->add_option("--graph", sim_graph, "graph spec, e.g. cycle:8 or file:g.edges");
    simulate->add_option("--process", sim_process, "cobra:k=K | walt:delta=D[,lazy|nonlazy] | srw | biased:metropolis");
    simulate->add_option("--quantity", sim_quantity, "cover | hit:U,V");
    simulate->add_option("--start", sim_start, "start vertex for cover");

    auto* exact = app.add_subcommand("exact", "exact value from the subset-chain and linear-system oracles");
    add_common(exact, ex_c, false);
    exact->add_option("--graph", ex_graph, "graph spec");
    exact->add_option("--process", ex_process, "cobra:k=K | srw | biased:metropolis");
    exact->add_option("--quantity", ex_quantity, "cover | hit:U,V");
    exact->add_option("--start", ex_start, "start vertex for cover");

    // bounds
    Common b_c;
    std::string b_which, b_graph;
    std::vector<cobra::Vertex> b_set;
    std::optional<cobra::Vertex> b_u, b_v;
    double b_eps = 0.0, b_phi = 0.0;
    std::size_t b_n = 0, b_delta = 0, b_d = 0;
    auto* bounds = app.add_subcommand("bounds", "closed-form bound calculators");
    add_common(bounds, b_c, false);
    bounds->add_option("--which", b_which, "azar | inverse | regular | pathsum | epoch");
    bounds->add_option("--graph", b_graph, "graph spec");
    bounds->add_option("--set", b_set, "target vertices (comma separated)")->delimiter(',');
    bounds->add_option("--u", b_u, "source vertex");
    bounds->add_option("--v", b_v, "target vertex");
    bounds->add_option("--eps", b_eps, "bias probability");
    bounds->add_option("--n", b_n, "vertex count");
    bounds->add_option("--delta", b_delta, "regular degree");
    bounds->add_option("--phi", b_phi, "conductance");
    bounds->add_option("--d", b_d, "degree");

    // experiment
    Common x_c;
    std::string x_name;
    cobra::ExperimentOptions xo;
    auto* experiment = app.add_subcommand("experiment", "named campaign with a size sweep");
    add_common(experiment, x_c);
    experiment->add_option("name", x_name, "grid-linear | expander-polylog | regular-hitting | general-hitting | "
                                           "dominance | tensor-stationary | matthews | drift | star-nlogn");
    experiment->add_option("--sides,--sizes", xo.sizes, "size sweep (comma separated)")->delimiter(',');
    experiment->add_option("--degree", xo.degree, "degree or grid dimension");
    experiment->add_option("--graph-seed", xo.graph_seed, "seed for random regular graphs");
    experiment->add_option("--graph", xo.graphs, "explicit graph specs")->delimiter(';');
    experiment->add_option("--corpus", xo.corpus, "standard");
    experiment->add_option("--max-n", xo.max_n, "dominance over all connected graphs up to this size (<= 8)");
    experiment->add_option("--steps", xo.steps, "tensor-stationary steps (default epoch length)");
    experiment->add_option("--policy", xo.policy, "drift: leaving-alignment | unmatched-dimension");
    experiment->add_option("--scenario", xo.scenario, "drift: aligned | offaxis");
    experiment->add_option("--side", xo.side, "drift grid side");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        std::vector<cobra::ResultRow> rows;
        const Common* common = nullptr;
        if (simulate->parsed()) {
            common = &sim_c;
            if (!sim_c.config.empty()) merge_config(simulate, sim_c.config, "simulate");
            need(!sim_graph.empty(), "--graph", "simulate");
            need(!sim_quantity.empty(), "--quantity", "simulate");
            const auto p = cobra::parse_process(sim_process);
            const auto q = cobra::parse_quantity(sim_quantity);
            const auto g = cobra::make_graph(sim_graph);
            if (p.kind == cobra::ProcessSpec::Kind::Walt)
                if (auto w = cobra::regularity_warning(g)) std::cerr << "warning: " << *w << '\n';
            rows.push_back(cobra::simulate(g, p, q, trial_options(sim_c, 1000), sim_start));
        } else if (exact->parsed()) {
            common = &ex_c;
            if (!ex_c.config.empty()) merge_config(exact, ex_c.config, "exact");
            need(!ex_graph.empty(), "--graph", "exact");
            need(!ex_quantity.empty(), "--quantity", "exact");
            const auto p = cobra::parse_process(ex_process);
            const auto q = cobra::parse_quantity(ex_quantity);
            rows.push_back(cobra::exact(cobra::make_graph(ex_graph), p, q, ex_start));
        } else if (bounds->parsed()) {
            common = &b_c;
            if (!b_c.config.empty()) merge_config(bounds, b_c.config, "bounds");
            need(!b_which.empty(), "--which", "bounds");
            std::optional<cobra::Graph> g;
            if (!b_graph.empty()) g = cobra::make_graph(b_graph);
            auto graph = [&]() -> const cobra::Graph& {
                need(g.has_value(), "--graph", "bounds --which " + b_which);
                return *g;
            };
            if (b_which == "azar") {
                need(!b_set.empty(), "--set", "bounds --which azar");
                rows.push_back(cobra::bound_row(cobra::azar_bound(graph(), b_set, b_eps), g));
            } else if (b_which == "inverse") {
                if (b_v) rows.push_back(cobra::bound_row(cobra::inverse_bound(graph(), *b_v), g));
                else if (b_set.size() == 1) rows.push_back(cobra::bound_row(cobra::inverse_bound(graph(), b_set[0]), g));
                else if (!b_set.empty()) rows.push_back(cobra::bound_row(cobra::inverse_set_bound(graph(), b_set), g));
                else need(false, "--v or --set", "bounds --which inverse");
            } else if (b_which == "regular") {
                need(b_n > 0, "--n", "bounds --which regular");
                need(b_delta > 0, "--delta", "bounds --which regular");
                auto r = cobra::bound_row(cobra::regular_bound(b_n, b_delta).report);
                r.n = b_n;
                r.d = b_delta;
                rows.push_back(r);
            } else if (b_which == "pathsum") {
                need(b_u.has_value(), "--u", "bounds --which pathsum");
                need(b_v.has_value(), "--v", "bounds --which pathsum");
                rows.push_back(cobra::bound_row(cobra::path_sum_bound(graph(), *b_u, *b_v), g));
            } else if (b_which == "epoch") {
                double phi = b_phi;
                std::size_t d = b_d, n = b_n;
                if (g) {
                    require(g->is_regular(), ErrorKind::RegularityRequired, "epoch length needs a regular graph");
                    if (phi == 0.0) phi = cobra::epoch_conductance(*g);
                    if (d == 0) d = g->max_degree();
                    if (n == 0) n = g->num_vertices();
                }
                need(phi > 0.0, "--phi", "bounds --which epoch");
                need(d > 0, "--d", "bounds --which epoch");
                need(n > 0, "--n", "bounds --which epoch");
                auto r = cobra::bound_row(cobra::epoch_report(phi, d, n, cobra::epoch_length(phi, d, n)), g);
                r.n = n;
                r.d = d;
                rows.push_back(r);
            } else {
                fail(ErrorKind::ConfigError, "unknown bound '" + b_which + "' (azar|inverse|regular|pathsum|epoch)");
            }
        } else {
            common = &x_c;
            if (!x_c.config.empty()) merge_config(experiment, x_c.config, "experiment");
            need(!x_name.empty(), "name", "experiment");
            xo.trials = x_c.trials;
            xo.seed = resolve_seed(x_c);
            xo.cap = x_c.cap;
            xo.workers = x_c.workers;
            rows = cobra::run_experiment(x_name, xo);
        }
        emit(*common, rows);
    } catch (const cobra::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool usage = e.kind() == ErrorKind::ConfigError || e.kind() == ErrorKind::UnknownExperiment;
        return usage ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
