#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/graph.hpp"
#include "cobra/metrics.hpp"
#include "cobra/oracle.hpp"
#include "cobra/rng.hpp"
#include "cobra/walks.hpp"

namespace cobra {

enum class BiasKind { EpsilonBiased, Metropolis };

/// Transition matrix on the vertices of a graph, with its stationary law.
struct BiasedChain {
    FiniteChain chain;
    BiasKind kind = BiasKind::EpsilonBiased;
    double eps = 0.0;
    std::vector<Vertex> targets;
    std::vector<double> stationary;

    std::size_t size() const noexcept { return chain.size(); }
    double stationary_mass(std::span<const Vertex> set) const {
        double s = 0.0;
        for (Vertex v : set) s += stationary[v];
        return s;
    }
};

inline constexpr double kRowTol = 1e-12;
inline constexpr double kStationaryTol = 1e-10;
inline constexpr double kBoundTol = 1e-9;

inline void finalize(BiasedChain& c) {
    validate(c.chain, kRowTol);
    c.stationary = exact_stationary(c.chain);
    require(stationarity_residual(c.chain, c.stationary) <= kStationaryTol, ErrorKind::Singular,
            "stationary solve residual too large");
}

/// σ̂(x, S) for every x: min over v ∈ S of the best path product to v. Members of S get 1.
inline std::vector<double> sigma_hat_to_set(const Graph& g, std::span<const Vertex> set) {
    const std::size_t n = g.num_vertices();
    std::vector<double> sigma(n, std::numeric_limits<double>::infinity());
    for (Vertex v : set) {
        const auto pw = inverse_degree_paths(g, v);
        for (Vertex x = 0; x < n; ++x) sigma[x] = std::min(sigma[x], pw.sigma_hat[x]);
    }
    for (Vertex v : set) sigma[v] = 1.0;
    return sigma;
}

struct MetropolisController {
    std::vector<Vertex> targets;
    std::vector<double> sigma_hat;  // σ̂(x, S)
    std::vector<double> pi_m;       // target law of M
    FiniteChain m;                  // Metropolis chain, diagonal kept
    BiasedChain p;                  // M with the diagonal removed and rows renormalized
    double min_bias_slack = 0.0;    // min over x ∉ S, y ~ x of P_{x,y} − (1 − 1/d(x))/d(x)
};

inline MetropolisController build_metropolis_controller(const Graph& g, std::span<const Vertex> set) {
    const std::size_t n = g.num_vertices();
    require(!set.empty(), ErrorKind::InvalidParams, "target set is empty");
    require(n >= 2, ErrorKind::InvalidParams, "need at least two vertices");
    std::vector<char> in_set(n, 0);
    for (Vertex v : set) {
        require(v < n, ErrorKind::InvalidParams, "target out of range");
        in_set[v] = 1;
    }
    MetropolisController mc;
    mc.targets.assign(set.begin(), set.end());
    mc.sigma_hat = sigma_hat_to_set(g, set);
    for (Vertex x = 0; x < n; ++x)
        require(mc.sigma_hat[x] > 0.0, ErrorKind::DegenerateSigma,
                "sigma_hat(" + std::to_string(x) + ", S) is zero");

    mc.pi_m.resize(n);
    double total = 0.0;
    for (Vertex x = 0; x < n; ++x) {
        mc.pi_m[x] = mc.sigma_hat[x] * static_cast<double>(g.degree(x));
        total += mc.pi_m[x];
    }
    for (auto& w : mc.pi_m) w /= total;

    mc.m.transition = DenseMatrix(n, n);
    for (Vertex x = 0; x < n; ++x) {
        const double dx = static_cast<double>(g.degree(x));
        double off = 0.0;
        for (Vertex y : g.neighbors(x)) {
            const double dy = static_cast<double>(g.degree(y));
            const double myx = std::min(1.0 / dx, mc.pi_m[y] / (dy * mc.pi_m[x]));
            mc.m.transition(x, y) = myx;
            off += myx;
        }
        mc.m.transition(x, x) = std::max(0.0, 1.0 - off);
    }

    mc.p.kind = BiasKind::Metropolis;
    mc.p.targets = mc.targets;
    mc.p.chain.transition = DenseMatrix(n, n);
    mc.min_bias_slack = std::numeric_limits<double>::infinity();
    for (Vertex x = 0; x < n; ++x) {
        const double stay = mc.m.transition(x, x);
        const double dx = static_cast<double>(g.degree(x));
        for (Vertex y : g.neighbors(x)) {
            const double pxy = mc.m.transition(x, y) / (1.0 - stay);
            mc.p.chain.transition(x, y) = pxy;
            if (!in_set[x]) mc.min_bias_slack = std::min(mc.min_bias_slack, pxy - (1.0 - 1.0 / dx) / dx);
        }
    }
    require(mc.min_bias_slack >= -kBoundTol, ErrorKind::BiasViolation,
            "Metropolis chain violates the inverse-degree floor by " + std::to_string(-mc.min_bias_slack));
    finalize(mc.p);
    return mc;
}

inline MetropolisController build_metropolis_controller(const Graph& g, Vertex v) {
    return build_metropolis_controller(g, std::span<const Vertex>(&v, 1));
}

inline constexpr Vertex kNoChoice = std::numeric_limits<Vertex>::max();

/// With probability 1 − ε a uniform neighbor, with probability ε the controller's choice.
/// Vertices whose choice is kNoChoice move uniformly.
inline BiasedChain epsilon_biased_chain(const Graph& g, std::span<const Vertex> choice, double eps) {
    const std::size_t n = g.num_vertices();
    require(eps >= 0.0 && eps <= 1.0, ErrorKind::InvalidParams, "eps must lie in [0, 1]");
    require(choice.size() == n, ErrorKind::InvalidParams, "controller must give one choice per vertex");
    BiasedChain c;
    c.kind = BiasKind::EpsilonBiased;
    c.eps = eps;
    c.chain.transition = DenseMatrix(n, n);
    for (Vertex x = 0; x < n; ++x) {
        const double d = static_cast<double>(g.degree(x));
        const bool controlled = choice[x] != kNoChoice;
        if (controlled)
            require(g.has_edge(x, choice[x]), ErrorKind::InvalidParams, "controller picks a non-neighbor");
        for (Vertex y : g.neighbors(x))
            c.chain.transition(x, y) = (controlled ? 1.0 - eps : 1.0) / d + (controlled && y == choice[x] ? eps : 0.0);
    }
    finalize(c);
    return c;
}

struct ControllerSearch {
    double best_mass = 0.0;
    std::vector<Vertex> controller;
    std::uint64_t enumerated = 0;
};

inline constexpr std::uint64_t kControllerBudget = 20'000'000;

/// Exhaustive search over deterministic time-independent controllers (one neighbor per
/// vertex) for the largest stationary mass on the set.
inline ControllerSearch best_deterministic_controller(const Graph& g, std::span<const Vertex> set, double eps) {
    const std::size_t n = g.num_vertices();
    double count = 1.0;
    for (Vertex x = 0; x < n; ++x) count *= static_cast<double>(g.degree(x));
    require(count <= static_cast<double>(kControllerBudget), ErrorKind::TooLarge,
            "too many deterministic controllers to enumerate");
    std::vector<std::size_t> pick(n, 0);
    std::vector<Vertex> choice(n);
    ControllerSearch out;
    out.best_mass = -1.0;
    for (;;) {
        for (Vertex x = 0; x < n; ++x) choice[x] = g.neighbors(x)[pick[x]];
        const auto chain = epsilon_biased_chain(g, choice, eps);
        const double mass = chain.stationary_mass(set);
        ++out.enumerated;
        if (mass > out.best_mass) {
            out.best_mass = mass;
            out.controller = choice;
        }
        std::size_t x = 0;
        for (; x < n; ++x) {
            if (++pick[x] < g.degree(x)) break;
            pick[x] = 0;
        }
        if (x == n) break;
    }
    return out;
}

/// Row sampler for a dense chain: per-row support with cumulative weights.
class ChainSampler {
public:
    explicit ChainSampler(const FiniteChain& c) {
        const std::size_t m = c.size();
        rows_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                if (c(i, j) > 0.0) {
                    acc += c(i, j);
                    rows_[i].emplace_back(acc, j);
                }
            }
            rows_[i].back().first = 2.0;  // absorb rounding in the last bucket
        }
    }

    std::size_t next(std::size_t i, Rng& rng) const {
        const double u = rng.uniform();
        for (const auto& [cum, j] : rows_[i])
            if (u < cum) return j;
        return rows_[i].back().second;
    }

private:
    std::vector<std::vector<std::pair<double, std::size_t>>> rows_;
};

inline Rounds run_biased_walk(const ChainSampler& sampler, std::size_t start, std::size_t target,
                              std::uint64_t cap, Rng& rng) {
    std::size_t cur = start;
    for (std::uint64_t t = 0; t < cap; ++t) {
        if (cur == target) return t;
        cur = sampler.next(cur, rng);
    }
    return cur == target ? Rounds{cap} : std::nullopt;
}

// ---- closed-form bounds ---------------------------------------------------------------

inline std::string format_double(double x) {
    // shortest text that reads back to the same double
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

struct BoundReport {
    std::string name;
    double value = 0.0;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, double>> extras;

    double extra(const std::string& key) const {
        for (const auto& [k, v] : extras)
            if (k == key) return v;
        fail(ErrorKind::InvalidParams, "bound report has no field " + key);
    }

    /// "key=value;key=value" rendering of inputs then extras.
    std::string describe() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, v] : inputs) {
            os << (first ? "" : ";") << k << '=' << v;
            first = false;
        }
        for (const auto& [k, v] : extras) {
            os << (first ? "" : ";") << k << '=' << format_double(v);
            first = false;
        }
        return os.str();
    }
};

inline std::string join_vertices(std::span<const Vertex> vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + std::to_string(vs[i]);
    return s;
}


/// Lower bound on the stationary mass of S reachable by an ε-bias controller:
/// vol(S) / (vol(S) + Σ_{x∉S} β^{Δ(x,S)−1} d(x)), β = 1 − ε.
inline BoundReport azar_bound(const Graph& g, std::span<const Vertex> set, double eps) {
    require(eps > 0.0 && eps < 1.0, ErrorKind::InvalidParams, "eps must lie in (0, 1)");
    require(!set.empty(), ErrorKind::InvalidParams, "target set is empty");
    for (Vertex v : set) require(v < g.num_vertices(), ErrorKind::InvalidParams, "target out of range");
    const auto dist = bfs_distances(g, set);
    const double beta = 1.0 - eps;
    double vol_s = 0.0, rest = 0.0;
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        const double d = static_cast<double>(g.degree(x));
        if (dist[x] == 0) vol_s += d;
        else rest += std::pow(beta, static_cast<double>(dist[x] - 1)) * d;
    }
    BoundReport r;
    r.name = "eps_bias_stationary_mass";
    r.value = vol_s / (vol_s + rest);
    r.inputs = {{"graph", g.name()}, {"n", std::to_string(g.num_vertices())},
                {"set", join_vertices(set)}, {"eps", format_double(eps)}};
    return r;
}

/// Return-time bound for v under the best inverse-degree-biased walk:
/// (d(v) + Σ_{x≠v} σ̂(x,v) d(x)) / d(v). Extra "relaxed" uses e^{−p(x,v)} in place of σ̂.
inline BoundReport inverse_bound(const Graph& g, Vertex v) {
    require(v < g.num_vertices(), ErrorKind::InvalidParams, "vertex out of range");
    const auto pw = inverse_degree_paths(g, v);
    const double dv = static_cast<double>(g.degree(v));
    double sig = dv, relaxed = dv;
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        if (x == v) continue;
        const double dx = static_cast<double>(g.degree(x));
        sig += pw.sigma_hat[x] * dx;
        relaxed += std::exp(-pw.dist_p[x]) * dx;
    }
    BoundReport r;
    r.name = "inverse_degree_return_time";
    r.value = sig / dv;
    r.inputs = {{"graph", g.name()}, {"n", std::to_string(g.num_vertices())}, {"v", std::to_string(v)}};
    r.extras = {{"relaxed", relaxed / dv}};
    return r;
}

/// Stationary-mass form for a set: vol(S) / (vol(S) + Σ_{x∉S} σ̂(x,S) d(x)).
inline BoundReport inverse_set_bound(const Graph& g, std::span<const Vertex> set) {
    require(!set.empty(), ErrorKind::InvalidParams, "target set is empty");
    const auto sigma = sigma_hat_to_set(g, set);
    std::vector<char> in(g.num_vertices(), 0);
    for (Vertex v : set) in[v] = 1;
    double vol_s = 0.0, rest = 0.0;
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        const double d = static_cast<double>(g.degree(x));
        if (in[x]) vol_s += d;
        else rest += sigma[x] * d;
    }
    BoundReport r;
    r.name = "inverse_degree_stationary_mass";
    r.value = vol_s / (vol_s + rest);
    r.inputs = {{"graph", g.name()}, {"n", std::to_string(g.num_vertices())}, {"set", join_vertices(set)}};
    return r;
}

/// Quantities of the regular-graph hitting argument for degree δ >= 3.
struct RegularBound {
    double L = 0.0;
    double beta = 0.0;
    double beta_pow_L = 0.0;
    double n_pow = 0.0;  // n^{-1/δ}
    bool beta_claim_holds = false;
    double return_bound = 0.0;  // 1 + n^{1-1/δ}
    double C = 0.0;
    double envelope = 0.0;  // 2δC n^{2-1/δ}
    BoundReport report;
};

inline RegularBound regular_bound(std::size_t n, std::size_t delta) {
    require(delta >= 3, ErrorKind::InvalidParams, "regular bound needs delta >= 3");
    require(n >= 2, ErrorKind::InvalidParams, "n must be >= 2");
    const double nn = static_cast<double>(n), dd = static_cast<double>(delta);
    RegularBound b;
    b.L = std::log((nn - 1.0) * (dd - 2.0) / dd + 1.0) / std::log(dd - 1.0);
    b.beta = 1.0 - 1.0 / dd;
    b.beta_pow_L = std::pow(b.beta, b.L);
    b.n_pow = std::pow(nn, -1.0 / dd);
    b.beta_claim_holds = b.beta_pow_L < b.n_pow;
    b.return_bound = 1.0 + std::pow(nn, 1.0 - 1.0 / dd);
    b.C = dd / ((dd - 1.0) * b.beta - 1.0);
    b.envelope = 2.0 * dd * b.C * std::pow(nn, 2.0 - 1.0 / dd);
    b.report.name = "regular_hitting_envelope";
    b.report.value = b.envelope;
    b.report.inputs = {{"n", std::to_string(n)}, {"delta", std::to_string(delta)}};
    b.report.extras = {{"L", b.L},
                       {"beta", b.beta},
                       {"beta_pow_L", b.beta_pow_L},
                       {"n_pow_neg_inv_delta", b.n_pow},
                       {"beta_claim_holds", b.beta_claim_holds ? 1.0 : 0.0},
                       {"return_bound", b.return_bound},
                       {"C", b.C}};
    return b;
}

/// Σ_i d(u_i) R̂(u_i) along the shortest-hop path u = u_0, ..., u_m = v (i < m), with R̂
/// the inverse-degree return bound. Extras: "relaxed" (e^{−p} in place of σ̂) and
/// "rearranged" (3n + Σ_x d(x) Σ_i e^{−p(x,u_i)}), plus the path degree sum.
inline BoundReport path_sum_bound(const Graph& g, Vertex u, Vertex v) {
    require(u < g.num_vertices() && v < g.num_vertices(), ErrorKind::InvalidParams, "vertex out of range");
    BoundReport r;
    r.name = "path_sum_hitting";
    r.inputs = {{"graph", g.name()}, {"n", std::to_string(g.num_vertices())},
                {"u", std::to_string(u)}, {"v", std::to_string(v)}};
    const auto path = shortest_hop_path(g, u, v);
    double value = 0.0, relaxed = 0.0, tail = 0.0, degree_sum = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const Vertex ui = path[i];
        const double di = static_cast<double>(g.degree(ui));
        const auto rb = inverse_bound(g, ui);
        value += di * rb.value;
        relaxed += di * rb.extra("relaxed");
        degree_sum += di;
        const auto pw = inverse_degree_paths(g, ui);
        for (Vertex x = 0; x < g.num_vertices(); ++x)
            tail += static_cast<double>(g.degree(x)) * std::exp(-pw.dist_p[x]);
    }
    r.value = value;
    const double rearranged = path.size() > 1 ? 3.0 * static_cast<double>(g.num_vertices()) + tail : 0.0;
    r.extras = {{"relaxed", relaxed}, {"rearranged", rearranged}, {"path_degree_sum", degree_sum},
                {"path_length", static_cast<double>(path.size() - 1)}};
    return r;
}

struct ActivationProbability {
    double p_star = 0.0;  // 1 − (1 − 1/d)²
    double floor = 0.0;   // 1/d + (1 − 1/d)/d
};

/// Chance that a 2-cobra pebble at a vertex of degree d activates a given neighbor, next to
/// the floor an inverse-degree-biased walk must respect.
inline ActivationProbability activation_probability(std::size_t deg) {
    require(deg >= 1, ErrorKind::InvalidParams, "degree must be >= 1");
    const double inv = 1.0 / static_cast<double>(deg);
    ActivationProbability a;
    a.p_star = 1.0 - (1.0 - inv) * (1.0 - inv);
    a.floor = inv + (1.0 - inv) * inv;
    require(a.p_star >= a.floor - kBoundTol, ErrorKind::BiasViolation, "activation below floor");
    return a;
}

/// Report row for an epoch length computed by epoch_length.
inline BoundReport epoch_report(double phi, std::size_t d, std::size_t n, std::uint64_t s) {
    BoundReport r;
    r.name = "tensor_epoch_length";
    r.value = static_cast<double>(s);
    r.inputs = {{"phi", format_double(phi)}, {"d", std::to_string(d)}, {"n", std::to_string(n)}};
    return r;
}

}  // namespace cobra
