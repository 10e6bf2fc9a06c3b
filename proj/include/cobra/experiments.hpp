#pragma once

// Process/quantity parsing, the simulate and exact drivers, and the named campaigns.
// Everything here returns ResultRows; the CLI only parses flags and writes CSV.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cobra/biased.hpp"
#include "cobra/csv.hpp"
#include "cobra/enumerate.hpp"
#include "cobra/error.hpp"
#include "cobra/generators.hpp"
#include "cobra/graph.hpp"
#include "cobra/grid_tracker.hpp"
#include "cobra/harness.hpp"
#include "cobra/io.hpp"
#include "cobra/metrics.hpp"
#include "cobra/oracle.hpp"
#include "cobra/parallel.hpp"
#include "cobra/stats.hpp"
#include "cobra/walks.hpp"
#include "cobra/walt.hpp"

namespace cobra {

// ---- process and quantity specs --------------------------------------------------------

struct ProcessSpec {
    enum class Kind { Cobra, Walt, Srw, Metropolis };
    Kind kind = Kind::Cobra;
    std::size_t k = 2;
    double delta = 0.5;
    bool lazy = true;
    std::string text;
};

/// "cobra", "cobra:k=3", "walt:delta=0.5,lazy", "walt:nonlazy", "srw", "biased:metropolis".
inline ProcessSpec parse_process(std::string_view text) {
    ProcessSpec p;
    p.text = std::string(text);
    const auto colon = text.find(':');
    const std::string name(text.substr(0, colon));
    std::vector<std::string> parts;
    if (colon != std::string_view::npos) parts = detail::split(text.substr(colon + 1), ',');
    auto bad = [&](const std::string& why) { fail(ErrorKind::ConfigError, "process '" + p.text + "': " + why); };
    auto number = [&](const std::string& v) {
        try {
            std::size_t used = 0;
            const double x = std::stod(v, &used);
            if (used != v.size()) bad("bad number '" + v + "'");
            return x;
        } catch (const std::logic_error&) {
            bad("bad number '" + v + "'");
        }
        return 0.0;
    };
    if (name == "cobra") {
        p.kind = ProcessSpec::Kind::Cobra;
        for (const auto& part : parts) {
            if (part.starts_with("k=")) {
                const double k = number(part.substr(2));
                if (k < 1 || k != std::floor(k)) bad("k must be a positive integer");
                p.k = static_cast<std::size_t>(k);
            } else if (!part.empty()) {
                bad("unknown option '" + part + "'");
            }
        }
    } else if (name == "walt") {
        p.kind = ProcessSpec::Kind::Walt;
        for (const auto& part : parts) {
            if (part.starts_with("delta=")) p.delta = number(part.substr(6));
            else if (part == "lazy") p.lazy = true;
            else if (part == "nonlazy" || part == "lazy=0") p.lazy = false;
            else if (!part.empty()) bad("unknown option '" + part + "'");
        }
        if (!(p.delta > 0.0 && p.delta <= 0.5)) bad("delta must lie in (0, 1/2]");
    } else if (name == "srw") {
        p.kind = ProcessSpec::Kind::Srw;
        p.k = 1;
        if (!parts.empty()) bad("srw takes no options");
    } else if (name == "biased") {
        if (parts.size() != 1 || parts[0] != "metropolis") bad("only biased:metropolis is supported");
        p.kind = ProcessSpec::Kind::Metropolis;
    } else {
        bad("unknown process");
    }
    return p;
}

struct QuantitySpec {
    bool cover = true;
    Vertex u = 0, v = 0;
    std::string text;
};

/// "cover" or "hit:U,V".
inline QuantitySpec parse_quantity(std::string_view text) {
    QuantitySpec q;
    q.text = std::string(text);
    if (text == "cover") return q;
    if (text.starts_with("hit:")) {
        const auto parts = detail::split(text.substr(4), ',');
        require(parts.size() == 2, ErrorKind::ConfigError, "quantity must be hit:U,V");
        try {
            q.u = static_cast<Vertex>(detail::to_int(parts[0], "hit source"));
            q.v = static_cast<Vertex>(detail::to_int(parts[1], "hit target"));
        } catch (const Error& e) {
            fail(ErrorKind::ConfigError, e.what());
        }
        q.cover = false;
        return q;
    }
    fail(ErrorKind::ConfigError, "unknown quantity '" + q.text + "' (expected cover or hit:U,V)");
}

inline void check_vertices(const Graph& g, const QuantitySpec& q, Vertex start) {
    const auto n = g.num_vertices();
    if (q.cover) require(start < n, ErrorKind::InvalidParams, "start vertex out of range");
    else require(q.u < n && q.v < n, ErrorKind::InvalidParams, "hit endpoints out of range");
}

inline ResultRow base_row(std::string experiment, const Graph& g, std::optional<std::size_t> k,
                          std::uint64_t seed, std::string quantity) {
    ResultRow r;
    r.experiment = std::move(experiment);
    r.set_graph(g);
    r.k = k;
    r.seed = seed;
    r.quantity = std::move(quantity);
    return r;
}

inline std::optional<std::size_t> branching(const ProcessSpec& p) {
    if (p.kind == ProcessSpec::Kind::Cobra || p.kind == ProcessSpec::Kind::Srw) return p.k;
    return std::nullopt;
}

/// Monte Carlo estimate of one quantity for one process.
inline ResultRow simulate(const Graph& g, const ProcessSpec& p, const QuantitySpec& q, const TrialOptions& opt,
                          Vertex start = 0) {
    check_vertices(g, q, start);
    TrialOptions o = opt;
    if (o.cap == 0) o.cap = default_cap(g.num_vertices());
    const std::uint64_t cap = o.cap;
    ResultRow row = base_row("simulate", g, branching(p), opt.master_seed, q.text);
    row.add("process", p.text);
    SampleStats st;
    switch (p.kind) {
        case ProcessSpec::Kind::Cobra:
        case ProcessSpec::Kind::Srw: {
            const CobraConfig cfg{p.k, q.cover ? start : q.u, 0};
            if (q.cover)
                st = run_trials(o, [&](Rng& rng, std::size_t) { return run_cobra_cover(g, cfg, cap, rng); });
            else
                st = run_trials(o, [&](Rng& rng, std::size_t) { return run_cobra_hitting(g, cfg, q.v, cap, rng); });
            break;
        }
        case ProcessSpec::Kind::Walt: {
            require(q.cover, ErrorKind::ConfigError, "walt supports the cover quantity only");
            WaltConfig wc;
            wc.delta = p.delta;
            wc.lazy = p.lazy;
            wc.start = start;
            st = run_trials(o, [&](Rng& rng, std::size_t) { return run_walt_cover(g, wc, cap, rng); });
            row.add("pebbles", static_cast<double>(pebble_count(p.delta, g.num_vertices())));
            if (auto w = regularity_warning(g)) row.add("warning", "nonregular");
            break;
        }
        case ProcessSpec::Kind::Metropolis: {
            require(!q.cover, ErrorKind::ConfigError, "biased walks support hit:U,V only");
            const auto ctl = build_metropolis_controller(g, q.v);
            const ChainSampler sampler(ctl.p.chain);
            st = run_trials(o, [&](Rng& rng, std::size_t) { return run_biased_walk(sampler, q.u, q.v, cap, rng); });
            break;
        }
    }
    if (q.cover) row.add("start", static_cast<double>(start));
    row.set_stats(st);
    row.add("cap", static_cast<double>(cap));
    return row;
}

/// Exact value from the oracle module; trials = 0 and stderr = 0.
inline ResultRow exact(const Graph& g, const ProcessSpec& p, const QuantitySpec& q, Vertex start = 0) {
    check_vertices(g, q, start);
    ResultRow row = base_row("exact", g, branching(p), 0, q.text);
    row.add("process", p.text);
    double value = 0.0;
    switch (p.kind) {
        case ProcessSpec::Kind::Cobra:
            value = q.cover ? exact_cobra_cover(g, start, p.k) : exact_cobra_hitting(g, q.u, q.v, p.k);
            break;
        case ProcessSpec::Kind::Srw:
            if (q.cover) value = exact_cobra_cover(g, start, 1);
            else value = exact_hitting(srw_chain(g), q.v)[q.u];
            break;
        case ProcessSpec::Kind::Metropolis:
            require(!q.cover, ErrorKind::ConfigError, "biased walks support hit:U,V only");
            value = exact_hitting(build_metropolis_controller(g, q.v).p.chain, q.v)[q.u];
            break;
        case ProcessSpec::Kind::Walt:
            fail(ErrorKind::InvalidParams, "no exact solver for walt; use simulate");
    }
    if (q.cover) row.add("start", static_cast<double>(start));
    row.mean = value;
    return row;
}

inline ResultRow bound_row(const BoundReport& b, std::optional<Graph> g = std::nullopt) {
    ResultRow r;
    r.experiment = "bounds";
    if (g) r.set_graph(*g);
    r.quantity = b.name;
    r.mean = b.value;
    r.bound_value = b.value;
    for (const auto& [k, v] : b.inputs) r.add(k, v);
    for (const auto& [k, v] : b.extras) r.add(k, v);
    return r;
}

// ---- campaigns -----------------------------------------------------------------------

struct ExperimentOptions {
    std::uint64_t trials = 0;  // 0: the campaign default
    std::uint64_t seed = 1;
    std::uint64_t cap = 0;
    std::size_t workers = 1;
    std::vector<long long> sizes;       // sides, vertex counts or exponents, per campaign
    std::size_t degree = 0;             // 0: campaign default
    std::uint64_t graph_seed = 7;
    std::vector<std::string> graphs;    // explicit graph specs
    std::string corpus;                 // "standard" or empty
    std::size_t max_n = 0;              // dominance: enumerate connected graphs up to this size
    std::uint64_t steps = 0;            // tensor-stationary: 0 means epoch_length
    std::string policy = "leaving-alignment";
    std::string scenario = "aligned";
    std::int64_t side = 500;            // drift grid side
};

inline std::vector<std::string> standard_corpus() {
    return {"path:8", "cycle:8", "complete:5", "star:16", "petersen", "hypercube:4", "grid2d:8",
            "random-3-regular:64,seed=7"};
}

inline std::vector<Graph> campaign_graphs(const ExperimentOptions& o, const std::vector<std::string>& fallback) {
    std::vector<std::string> specs = o.graphs;
    if (o.corpus == "standard") {
        const auto c = standard_corpus();
        specs.insert(specs.end(), c.begin(), c.end());
    } else if (!o.corpus.empty()) {
        fail(ErrorKind::ConfigError, "unknown corpus '" + o.corpus + "'");
    }
    if (specs.empty()) specs = fallback;
    std::vector<Graph> out;
    for (const auto& s : specs) out.push_back(make_graph(s));
    return out;
}

inline TrialOptions trial_options(const ExperimentOptions& o, std::uint64_t default_trials) {
    TrialOptions t;
    t.trials = o.trials ? o.trials : default_trials;
    t.master_seed = o.seed;
    t.cap = o.cap;
    t.workers = o.workers;
    return t;
}

template <class T>
std::vector<T> sizes_or(const ExperimentOptions& o, std::vector<T> fallback) {
    if (o.sizes.empty()) return fallback;
    std::vector<T> out;
    for (auto s : o.sizes) {
        require(s > 0, ErrorKind::ConfigError, "sizes must be positive");
        out.push_back(static_cast<T>(s));
    }
    return out;
}

inline ResultRow fit_row(std::string experiment, std::string family, std::uint64_t seed, std::string quantity,
                         const ScalingFit& f) {
    ResultRow r;
    r.experiment = std::move(experiment);
    r.graph_family = std::move(family);
    r.seed = seed;
    r.quantity = "fit:" + std::move(quantity);
    r.mean = f.slope;
    r.add("transform", to_string(f.transform));
    r.add("slope", f.slope);
    r.add("intercept", f.intercept);
    r.add("r2", f.r_squared);
    r.add("points", static_cast<double>(f.points.size()));
    return r;
}

/// Cover of the 2D (or d-dimensional) grid from a corner against the side length.
inline std::vector<ResultRow> experiment_grid_linear(const ExperimentOptions& o) {
    const auto sides = sizes_or<std::int64_t>(o, {16, 32, 64, 128, 256});
    const std::size_t d = o.degree ? o.degree : 2;
    const auto opt = trial_options(o, 200);
    std::vector<ResultRow> rows;
    std::vector<ScalingPoint> pts;
    for (auto side : sides) {
        const Graph g = gen::grid(d, side);
        TrialOptions t = opt;
        if (!t.cap) t.cap = default_cap(g.num_vertices());
        const auto st = run_trials(t, [&](Rng& rng, std::size_t) {
            return run_cobra_cover(g, CobraConfig{2, 0, 0}, t.cap, rng);
        });
        ResultRow r = base_row("grid-linear", g, 2, o.seed, "cover");
        r.set_stats(st);
        r.add("side", static_cast<double>(side)).add("dim", static_cast<double>(d)).add("start", 0.0);
        rows.push_back(r);
        pts.push_back({static_cast<double>(side), st.mean});
    }
    if (pts.size() >= 4) {
        rows.push_back(fit_row("grid-linear", "grid:d=" + std::to_string(d), o.seed, "cover-vs-side",
                               fit_scaling(pts, FitTransform::LogLog)));
    }
    return rows;
}

/// 32 d⁴ ν₂⁻¹ ln² n
inline double expander_envelope(std::size_t d, double nu2, std::size_t n) {
    const double dd = static_cast<double>(d), ln = std::log(static_cast<double>(n));
    return 32.0 * dd * dd * dd * dd / nu2 * ln * ln;
}

/// Cover of random d-regular graphs against ln² n, with the constant envelope as bound_value.
inline std::vector<ResultRow> experiment_expander_polylog(const ExperimentOptions& o) {
    const auto ns = sizes_or<std::size_t>(o, {256, 512, 1024, 2048, 4096});
    const std::size_t d = o.degree ? o.degree : 3;
    const auto opt = trial_options(o, 200);
    std::vector<ResultRow> rows;
    std::vector<ScalingPoint> pts;
    for (auto n : ns) {
        const Graph g = gen::random_regular(n, d, o.graph_seed);
        const double nu2 = spectral_gap(g, 1e-9);
        TrialOptions t = opt;
        if (!t.cap) t.cap = default_cap(n);
        const auto st = run_trials(t, [&](Rng& rng, std::size_t) {
            return run_cobra_cover(g, CobraConfig{2, 0, 0}, t.cap, rng);
        });
        ResultRow r = base_row("expander-polylog", g, 2, o.seed, "cover");
        r.set_stats(st);
        r.bound_value = expander_envelope(d, nu2, n);
        r.add("graph_seed", static_cast<double>(o.graph_seed)).add("nu2", nu2).add("start", 0.0);
        r.add("within_bound", st.mean <= *r.bound_value);
        rows.push_back(r);
        pts.push_back({static_cast<double>(n), st.mean});
    }
    if (pts.size() >= 4) {
        rows.push_back(fit_row("expander-polylog", "regular:d=" + std::to_string(d), o.seed, "cover-vs-ln2n",
                               fit_scaling(pts, FitTransform::ValueVsLogSquared)));
    }
    return rows;
}

/// Worst-pair 2-cobra hitting on random δ-regular graphs next to the regular-graph envelope.
inline std::vector<ResultRow> experiment_regular_hitting(const ExperimentOptions& o) {
    const auto ns = sizes_or<std::size_t>(o, {32, 64, 128, 256});
    const std::size_t d = o.degree ? o.degree : 3;
    const auto t = trial_options(o, 1000);
    std::vector<ResultRow> rows;
    std::vector<ScalingPoint> pts;
    for (auto n : ns) {
        const Graph g = gen::random_regular(n, d, o.graph_seed);
        HmaxOptions h{2, t.trials, o.seed, o.cap, o.workers, {}};
        const auto est = estimate_hmax(g, h);
        const auto rb = regular_bound(n, d);
        ResultRow r = base_row("regular-hitting", g, 2, o.seed, "hmax");
        r.trials = t.trials;
        r.mean = est.hmax;
        r.std_error = est.pair(static_cast<std::size_t>(
                                   std::find(est.sources.begin(), est.sources.end(), est.u) - est.sources.begin()),
                               est.v, n)
                          .std_error;
        r.bound_value = rb.envelope;
        r.add("graph_seed", static_cast<double>(o.graph_seed)).add("u", static_cast<double>(est.u));
        r.add("v", static_cast<double>(est.v)).add("sources", static_cast<double>(est.sources.size()));
        r.add("L", rb.L).add("beta_pow_L", rb.beta_pow_L).add("beta_claim_holds", rb.beta_claim_holds);
        rows.push_back(r);
        pts.push_back({static_cast<double>(n), est.hmax});
    }
    if (pts.size() >= 4)
        rows.push_back(fit_row("regular-hitting", "regular:d=" + std::to_string(d), o.seed, "hmax-vs-n",
                               fit_scaling(pts, FitTransform::LogLog)));
    return rows;
}

/// Sources covering the hitting-time extremes of a lollipop: a generic clique vertex, the
/// junction, the middle and the end of the path. Other clique vertices are symmetric to 0.
inline std::vector<Vertex> lollipop_sources(std::size_t n) {
    const std::size_t clique = (2 * n + 2) / 3;
    std::vector<Vertex> s = {0, static_cast<Vertex>(clique - 1)};
    if (n > clique) {
        s.push_back(static_cast<Vertex>(clique + (n - clique) / 2));
        s.push_back(static_cast<Vertex>(n - 1));
    }
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

/// Exact max over ordered pairs of the simple-random-walk hitting time.
inline double exact_srw_hmax(const Graph& g, Vertex* argu = nullptr, Vertex* argv = nullptr) {
    const auto chain = srw_chain(g);
    double best = 0.0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const auto h = exact_hitting(chain, v);
        for (Vertex u = 0; u < g.num_vertices(); ++u) {
            if (h[u] > best) {
                best = h[u];
                if (argu) *argu = u;
                if (argv) *argv = v;
            }
        }
    }
    return best;
}

/// Lollipop worst-pair hitting: 2-cobra (Monte Carlo, lollipop_sources) and the exact SRW value.
inline std::vector<ResultRow> experiment_general_hitting(const ExperimentOptions& o) {
    const auto ns = sizes_or<std::size_t>(o, {32, 64, 128, 256});
    const auto t = trial_options(o, 1000);
    std::vector<ResultRow> rows;
    std::vector<ScalingPoint> cobra_pts, srw_pts;
    for (auto n : ns) {
        const Graph g = gen::lollipop(n);
        HmaxOptions h{2, t.trials, o.seed, o.cap, o.workers, lollipop_sources(n)};
        const auto est = estimate_hmax(g, h);
        const auto si = static_cast<std::size_t>(std::find(est.sources.begin(), est.sources.end(), est.u) -
                                                 est.sources.begin());
        ResultRow r = base_row("general-hitting", g, 2, o.seed, "hmax");
        r.trials = t.trials;
        r.mean = est.hmax;
        r.std_error = est.pair(si, est.v, n).std_error;
        r.add("u", static_cast<double>(est.u)).add("v", static_cast<double>(est.v));
        r.add("sources", static_cast<double>(est.sources.size()));
        rows.push_back(r);
        cobra_pts.push_back({static_cast<double>(n), est.hmax});

        Vertex su = 0, sv = 0;
        const double srw = exact_srw_hmax(g, &su, &sv);
        ResultRow s = base_row("general-hitting", g, 1, 0, "hmax-srw-exact");
        s.mean = srw;
        s.add("u", static_cast<double>(su)).add("v", static_cast<double>(sv));
        rows.push_back(s);
        srw_pts.push_back({static_cast<double>(n), srw});
    }
    if (cobra_pts.size() >= 4) {
        const auto fc = fit_scaling(cobra_pts, FitTransform::LogLog);
        const auto fs = fit_scaling(srw_pts, FitTransform::LogLog);
        auto rc = fit_row("general-hitting", "lollipop", o.seed, "cobra-hmax-vs-n", fc);
        rc.add("srw_slope", fs.slope).add("below_srw", fc.slope < fs.slope);
        rows.push_back(rc);
        rows.push_back(fit_row("general-hitting", "lollipop", 0, "srw-hmax-vs-n", fs));
    }
    return rows;
}

/// Per-pair comparison of the cobra hitting estimate with the Metropolis chain and the path sum.
struct HitChainCheck {
    double worst_z = -1e300;   // max over pairs of (cobra − H^P) / SE
    double worst_gap = -1e300; // max over pairs of H^P − path_sum
    Vertex zu = 0, zv = 0;
    std::size_t pairs = 0;
    bool lower_ok = true;
    bool upper_ok = true;
};

inline HitChainCheck hit_chain_check(const Graph& g, const HmaxOptions& opt, double z = 3.0) {
    const std::size_t n = g.num_vertices();
    HmaxOptions h = opt;
    h.sources.resize(n);
    for (Vertex v = 0; v < n; ++v) h.sources[v] = v;
    const auto est = estimate_hmax(g, h);
    HitChainCheck c;
    for (Vertex v = 0; v < n; ++v) {
        const auto ctl = build_metropolis_controller(g, v);
        const auto hp = exact_hitting(ctl.p.chain, v);
        for (Vertex u = 0; u < n; ++u) {
            if (u == v) continue;
            ++c.pairs;
            const auto& pe = est.pair(u, v, n);
            const double se = pe.std_error;
            const double diff = pe.mean - hp[u];
            const double zz = se > 0 ? diff / se : (diff > 0 ? 1e300 : (diff < 0 ? -1e300 : 0.0));
            if (pe.timeouts > 0 || diff > z * se + kBoundTol) c.lower_ok = false;
            if (zz > c.worst_z) {
                c.worst_z = zz;
                c.zu = u;
                c.zv = v;
            }
            const double ps = path_sum_bound(g, u, v).value;
            c.worst_gap = std::max(c.worst_gap, hp[u] - ps);
            if (hp[u] > ps + kBoundTol) c.upper_ok = false;
        }
    }
    return c;
}

/// Per graph: 2-cobra cover against W_alt cover, and the hitting chain
/// cobra H ≤ H^P ≤ path_sum over all ordered pairs.
inline std::vector<ResultRow> experiment_dominance(const ExperimentOptions& o) {
    std::vector<Graph> graphs;
    if (o.max_n) {
        require(o.max_n >= 2, ErrorKind::ConfigError, "max-n must be >= 2");
        graphs = enumerate::connected_graphs_up_to(2, o.max_n);
    } else {
        graphs = campaign_graphs(o, standard_corpus());
    }
    const auto t = trial_options(o, 10000);
    std::vector<ResultRow> rows;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = graphs[gi];
        TrialOptions tg = t;
        tg.master_seed = stream_seed(o.seed, gi);
        const auto dom = dominance_trial(g, 0, tg);
        ResultRow r = base_row("dominance", g, 2, o.seed, "walt-cover");
        r.set_stats(dom.cobra);
        r.bound_value = dom.walt.mean;
        r.add("walt_stderr", dom.walt.std_error).add("z", dom.z());
        r.add("pass", dom.cobra.mean <= dom.walt.mean + 3.0 * pooled_std_error(dom.cobra, dom.walt));
        rows.push_back(r);

        HmaxOptions h{2, t.trials, stream_seed(o.seed, gi + graphs.size()), o.cap, o.workers, {}};
        const auto c = hit_chain_check(g, h);
        ResultRow s = base_row("dominance", g, 2, o.seed, "hit-chain");
        s.trials = t.trials;
        s.mean = c.worst_z;
        s.add("worst_u", static_cast<double>(c.zu)).add("worst_v", static_cast<double>(c.zv));
        s.add("pairs", static_cast<double>(c.pairs)).add("max_hp_minus_pathsum", c.worst_gap);
        s.add("cobra_le_hp", c.lower_ok).add("hp_le_pathsum", c.upper_ok);
        s.add("pass", c.lower_ok && c.upper_ok);
        rows.push_back(s);
    }
    return rows;
}

/// Conductance used for the epoch length: exact when n <= 24, else the Cheeger lower bound ν₂/2.
inline double epoch_conductance(const Graph& g, std::string* method = nullptr) {
    if (g.num_vertices() <= kConductanceExactLimit) {
        if (method) *method = "exact";
        return conductance_exact(g).phi;
    }
    if (method) *method = "cheeger-lower";
    return spectral_gap(g) / 2.0;
}

/// Exact law of the pair chain after `steps` rounds, by sparse propagation.
inline std::vector<double> pair_law(const Graph& g, std::uint64_t steps, PebblePair start, bool lazy = true) {
    const std::size_t n = g.num_vertices();
    require(start.i < n && start.j < n, ErrorKind::InvalidParams, "start pair out of range");
    require(n * n <= 4096, ErrorKind::TooLarge, "exact pair law supports n <= 64");
    std::vector<std::vector<std::pair<std::uint32_t, double>>> next(n * n);
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = 0; j < n; ++j) {
            std::map<std::uint32_t, double> row;
            const double hold = lazy ? 0.5 : 0.0;
            if (lazy) row[i * n + j] += hold;
            const auto ni = g.neighbors(i), nj = g.neighbors(j);
            const double move = (1.0 - hold) / static_cast<double>(ni.size());
            for (Vertex di : ni) {
                if (i == j) {
                    row[di * n + di] += move * 0.5;
                    for (Vertex dj : nj) row[di * n + dj] += move * 0.5 / static_cast<double>(nj.size());
                } else {
                    for (Vertex dj : nj) row[di * n + dj] += move / static_cast<double>(nj.size());
                }
            }
            next[i * n + j].assign(row.begin(), row.end());
        }
    }
    std::vector<double> p(n * n, 0.0), q(n * n);
    p[start.i * n + start.j] = 1.0;
    for (std::uint64_t s = 0; s < steps; ++s) {
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t x = 0; x < n * n; ++x)
            if (p[x] != 0.0)
                for (const auto& [y, w] : next[x]) q[y] += p[x] * w;
        std::swap(p, q);
    }
    return p;
}

/// Occupancy of the two-pebble priority walk after the epoch length, against its stationary law.
inline std::vector<ResultRow> experiment_tensor_stationary(const ExperimentOptions& o) {
    const auto graphs = campaign_graphs(o, {"cycle:6"});
    const auto t = trial_options(o, 100000);
    std::vector<ResultRow> rows;
    for (const auto& g : graphs) {
        require(g.is_regular(), ErrorKind::RegularityRequired, "tensor-stationary needs a regular graph");
        const std::size_t n = g.num_vertices();
        std::string method;
        const double phi = epoch_conductance(g, &method);
        const std::uint64_t steps = o.steps ? o.steps : epoch_length(phi, g.max_degree(), n);
        const auto occ = tensor_pair_walk(g, steps, {0, 0}, t);
        const auto pi = tensor_stationary(n);
        ResultRow r = base_row("tensor-stationary", g, std::nullopt, o.seed, "pair-occupancy-tv");
        r.trials = t.trials;
        r.mean = total_variation(occ.per_state, pi);
        r.add("steps", static_cast<double>(steps)).add("phi", phi).add("phi_method", method);
        r.add("chi2", chi_square_distance(occ.per_state, pi));
        r.add("diag_mass", occ.diag_mass).add("pi_diag_mass", 2.0 / static_cast<double>(n + 1));
        if (n * n <= 4096 && steps * n * n <= 2'000'000'000ULL)
            r.add("exact_tv", total_variation(pair_law(g, steps, {0, 0}), pi));
        rows.push_back(r);
    }
    return rows;
}

/// cover / (h_max ln n) per graph.
inline std::vector<ResultRow> experiment_matthews(const ExperimentOptions& o) {
    const auto graphs = campaign_graphs(o, standard_corpus());
    const auto t = trial_options(o, 1000);
    std::vector<ResultRow> rows;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = graphs[gi];
        HmaxOptions h{2, t.trials, stream_seed(o.seed, gi), o.cap, o.workers, {}};
        const auto m = matthews_check(g, h);
        ResultRow r = base_row("matthews", g, 2, o.seed, "cover-over-hmax-logn");
        r.trials = t.trials;
        r.mean = m.ratio;
        r.bound_value = 4.0;
        r.add("cover_mean", m.cover_mean).add("cover_source", static_cast<double>(m.estimate.cover_source));
        r.add("hmax", m.hmax).add("hmax_u", static_cast<double>(m.estimate.u));
        r.add("hmax_v", static_cast<double>(m.estimate.v)).add("sources", static_cast<double>(m.estimate.sources.size()));
        r.add("ratio", m.ratio).add("pass", m.ratio <= 4.0);
        rows.push_back(r);
    }
    return rows;
}

/// Two-step distance changes of the tracked pebble: probabilities of -2, 0, +2.
struct DriftLaw {
    double minus2 = 0.0;
    double zero = 0.0;
    double plus2 = 0.0;
};

inline TrackPolicy parse_policy(std::string_view s) {
    if (s == "leaving-alignment") return TrackPolicy::PreferLeavingAlignment;
    if (s == "unmatched-dimension") return TrackPolicy::PreferUnmatchedDimension;
    fail(ErrorKind::ConfigError, "unknown policy '" + std::string(s) + "' (leaving-alignment|unmatched-dimension)");
}

/// Interior start state for a scenario on [0, side]²: "aligned" has offsets (0, 10),
/// "offaxis" has (10, 10).
inline TrackedGridState drift_start(std::string_view scenario, std::int64_t side) {
    const std::int64_t c = side / 2;
    require(side >= 40, ErrorKind::InvalidParams, "drift needs side >= 40");
    if (scenario == "aligned") return {{c, c}, {c, c - 10}};
    if (scenario == "offaxis") return {{c, c}, {c - 10, c - 10}};
    fail(ErrorKind::ConfigError, "unknown scenario '" + std::string(scenario) + "' (aligned|offaxis)");
}

/// Exact two-step law at an interior start: both clones pick one of 4 moves and ties take a
/// fair coin, so each (a, b, coin) triple of a round has weight 1/32.
inline DriftLaw exact_drift(const TrackedGridState& start, TrackPolicy policy) {
    static constexpr GridMove moves[4] = {{0, 1}, {0, -1}, {1, 1}, {1, -1}};
    auto step_law = [&](const TrackedGridState& s) {
        std::vector<TrackedGridState> out;
        for (const auto& a : moves)
            for (const auto& b : moves)
                for (bool coin : {false, true}) {
                    TrackedGridState t = s;
                    const GridMove& m = keep_first_clone(s, a, b, policy, [&] { return coin; }) ? a : b;
                    t.position[m.dim] += m.dir;
                    out.push_back(t);
                }
        return out;
    };
    DriftLaw law;
    const double w = 1.0 / (32.0 * 32.0);
    const auto d0 = start.distance();
    for (const auto& s1 : step_law(start))
        for (const auto& s2 : step_law(s1)) {
            const auto delta = s2.distance() - d0;
            if (delta == -2) law.minus2 += w;
            else if (delta == 2) law.plus2 += w;
            else law.zero += w;
        }
    return law;
}

inline std::vector<ResultRow> experiment_drift(const ExperimentOptions& o) {
    const auto policy = parse_policy(o.policy);
    const auto start = drift_start(o.scenario, o.side);
    const GridParams params{2, o.side};
    validate(params, start);
    const std::uint64_t samples = o.trials ? o.trials : 1'000'000;
    std::vector<std::int8_t> delta(samples);
    parallel_for(samples, o.workers, [&](std::size_t i) {
        Rng rng = trial_rng(o.seed, i);
        auto s = tracked_grid_step(params, start, rng, policy);
        s = tracked_grid_step(params, s, rng, policy);
        delta[i] = static_cast<std::int8_t>(s.distance() - start.distance());
    });
    std::uint64_t minus = 0, zero = 0, plus = 0;
    for (auto d : delta) (d < 0 ? minus : d > 0 ? plus : zero)++;
    const auto law = exact_drift(start, policy);
    std::vector<ResultRow> rows;
    auto emit = [&](const char* q, std::uint64_t count, double exact_p) {
        ResultRow r;
        r.experiment = "drift";
        r.graph_family = "grid:" + std::to_string(o.side) + ",d=2";
        r.n = static_cast<std::size_t>((o.side + 1) * (o.side + 1));
        r.d = 4;
        r.k = 2;
        r.seed = o.seed;
        r.quantity = q;
        r.trials = samples;
        r.mean = static_cast<double>(count) / static_cast<double>(samples);
        r.std_error = std::sqrt(r.mean * (1.0 - r.mean) / static_cast<double>(samples));
        r.bound_value = exact_p;
        r.add("scenario", o.scenario).add("policy", o.policy);
        r.add("z_offsets", std::to_string(start.z(0)) + " " + std::to_string(start.z(1)));
        rows.push_back(r);
    };
    emit("two-step:+2", plus, law.plus2);
    emit("two-step:0", zero, law.zero);
    emit("two-step:-2", minus, law.minus2);
    return rows;
}

/// Star cover from the center, normalized by n ln n.
inline std::vector<ResultRow> experiment_star_nlogn(const ExperimentOptions& o) {
    const auto ns = sizes_or<std::size_t>(o, {64, 256, 1024});
    const auto t = trial_options(o, 1000);
    std::vector<ResultRow> rows;
    std::vector<double> ratios;
    for (auto n : ns) {
        const Graph g = gen::star(n);
        TrialOptions tt = t;
        if (!tt.cap) tt.cap = default_cap(n);
        const auto st = run_trials(tt, [&](Rng& rng, std::size_t) {
            return run_cobra_cover(g, CobraConfig{2, 0, 0}, tt.cap, rng);
        });
        ResultRow r = base_row("star-nlogn", g, 2, o.seed, "cover");
        r.set_stats(st);
        const double nlogn = static_cast<double>(n) * std::log(static_cast<double>(n));
        r.add("start", 0.0).add("ratio", st.mean / nlogn);
        ratios.push_back(st.mean / nlogn);
        rows.push_back(r);
    }
    const double avg = std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(ratios.size());
    double spread = 0.0;
    for (double x : ratios) spread = std::max(spread, std::abs(x / avg - 1.0));
    ResultRow s;
    s.experiment = "star-nlogn";
    s.graph_family = "star";
    s.seed = o.seed;
    s.quantity = "ratio-spread";
    s.mean = spread;
    s.bound_value = 0.25;
    s.add("mean_ratio", avg);
    rows.push_back(s);
    return rows;
}

using ExperimentFn = std::function<std::vector<ResultRow>(const ExperimentOptions&)>;

inline const std::map<std::string, ExperimentFn>& experiment_registry() {
    static const std::map<std::string, ExperimentFn> reg = {
        {"grid-linear", experiment_grid_linear},
        {"expander-polylog", experiment_expander_polylog},
        {"regular-hitting", experiment_regular_hitting},
        {"general-hitting", experiment_general_hitting},
        {"dominance", experiment_dominance},
        {"tensor-stationary", experiment_tensor_stationary},
        {"matthews", experiment_matthews},
        {"drift", experiment_drift},
        {"star-nlogn", experiment_star_nlogn},
    };
    return reg;
}

inline std::vector<ResultRow> run_experiment(const std::string& name, const ExperimentOptions& o) {
    const auto& reg = experiment_registry();
    const auto it = reg.find(name);
    if (it == reg.end()) {
        std::string known;
        for (const auto& [k, v] : reg) known += (known.empty() ? "" : ", ") + k;
        fail(ErrorKind::UnknownExperiment, "unknown experiment '" + name + "' (known: " + known + ")");
    }
    return it->second(o);
}

}  // namespace cobra
