#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/graph.hpp"
#include "cobra/rng.hpp"

namespace cobra {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Hop distances from a set of sources (multi-source BFS).
inline std::vector<std::size_t> bfs_distances(const Graph& g, std::span<const Vertex> sources) {
    std::vector<std::size_t> dist(g.num_vertices(), kUnreachable);
    std::vector<Vertex> frontier;
    for (Vertex s : sources) {
        if (dist[s] != 0) {
            dist[s] = 0;
            frontier.push_back(s);
        }
    }
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        const Vertex u = frontier[head];
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                frontier.push_back(w);
            }
        }
    }
    return dist;
}

inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
    return bfs_distances(g, std::span<const Vertex>(&source, 1));
}

/// Minimum-hop path from u to v; among those, the lexicographically smallest vertex sequence.
inline std::vector<Vertex> shortest_hop_path(const Graph& g, Vertex u, Vertex v) {
    const auto to_target = bfs_distances(g, v);
    std::vector<Vertex> path{u};
    Vertex cur = u;
    while (cur != v) {
        // neighbors are sorted, so the first one that gets closer is the smallest
        for (Vertex w : g.neighbors(cur)) {
            if (to_target[w] + 1 == to_target[cur]) {
                cur = w;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

enum class ConductanceMethod { ExactEnumeration, SpectralLowerBound };

struct ConductanceReport {
    double phi = 0.0;
    std::size_t boundary = 0;  // |∂S| of the argmin
    std::size_t volume = 0;    // vol(S) of the argmin
    std::vector<Vertex> argmin_set;
    ConductanceMethod method = ConductanceMethod::ExactEnumeration;
};

inline constexpr std::size_t kConductanceExactLimit = 24;

/// Exact conductance by Gray-code enumeration of all subsets with vol(S) <= vol(V)/2.
/// Ties are broken toward the numerically smallest subset mask.
inline ConductanceReport conductance_exact(const Graph& g) {
    const std::size_t n = g.num_vertices();
    require(n <= kConductanceExactLimit, ErrorKind::TooLarge,
            "conductance_exact supports n <= 24, got " + std::to_string(n));
    require(n >= 2, ErrorKind::InvalidParams, "conductance needs at least two vertices");
    std::vector<std::uint32_t> nbmask(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(v)) nbmask[v] |= std::uint32_t{1} << w;

    const std::size_t total_vol = g.volume();
    std::uint32_t set = 0;
    std::size_t cut = 0, vol = 0;
    std::size_t best_cut = 1, best_vol = 0;  // best_vol == 0 means "none yet"
    std::uint32_t best_mask = 0;
    const std::uint64_t steps = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < steps; ++i) {
        const int bit = std::countr_zero(i);
        const std::uint32_t vbit = std::uint32_t{1} << bit;
        const auto deg = g.degree(static_cast<Vertex>(bit));
        if (set & vbit) {
            set &= ~vbit;
            const auto inside = static_cast<std::size_t>(std::popcount(nbmask[bit] & set));
            cut -= deg - 2 * inside;
            vol -= deg;
        } else {
            const auto inside = static_cast<std::size_t>(std::popcount(nbmask[bit] & set));
            cut += deg - 2 * inside;
            vol += deg;
            set |= vbit;
        }
        if (2 * vol > total_vol) continue;
        // compare cut/vol < best_cut/best_vol without rounding
        const auto lhs = static_cast<unsigned __int128>(cut) * best_vol;
        const auto rhs = static_cast<unsigned __int128>(best_cut) * vol;
        if (best_vol == 0 || lhs < rhs || (lhs == rhs && set < best_mask)) {
            best_cut = cut;
            best_vol = vol;
            best_mask = set;
        }
    }
    ConductanceReport r;
    r.boundary = best_cut;
    r.volume = best_vol;
    r.phi = static_cast<double>(best_cut) / static_cast<double>(best_vol);
    for (Vertex v = 0; v < n; ++v)
        if (best_mask & (std::uint32_t{1} << v)) r.argmin_set.push_back(v);
    return r;
}

/// φ(S) = |∂S| / vol(S) for an explicit vertex set.
inline double set_conductance(const Graph& g, std::span<const Vertex> set) {
    std::vector<char> in(g.num_vertices(), 0);
    for (Vertex v : set) in[v] = 1;
    std::size_t cut = 0, vol = 0;
    for (Vertex v : set) {
        vol += g.degree(v);
        for (Vertex w : g.neighbors(v)) cut += in[w] ? 0 : 1;
    }
    require(vol > 0, ErrorKind::InvalidParams, "set has zero volume");
    return static_cast<double>(cut) / static_cast<double>(vol);
}

/// Second-smallest eigenvalue ν₂ of the normalized Laplacian I - D^{-1/2} A D^{-1/2}.
///
/// Power iteration on the lazy operator (I + D^{-1/2} A D^{-1/2}) / 2, whose spectrum lies in
/// [0, 1], deflated against its top eigenvector √d. Stops when the eigen-residual of the
/// Rayleigh quotient drops below tol / 2, so the returned ν₂ = 2(1 - μ) is within tol of an
/// eigenvalue of the Laplacian.
inline double spectral_gap(const Graph& g, double tol = 1e-9, std::size_t max_iter = 2'000'000,
                           std::uint64_t seed = 1) {
    const std::size_t n = g.num_vertices();
    require(n >= 2, ErrorKind::InvalidParams, "spectral gap needs at least two vertices");
    std::vector<double> inv_sqrt_deg(n), top(n);
    double top_norm = 0.0;
    for (Vertex v = 0; v < n; ++v) {
        inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
        top[v] = std::sqrt(static_cast<double>(g.degree(v)));
        top_norm += top[v] * top[v];
    }
    top_norm = std::sqrt(top_norm);
    for (auto& t : top) t /= top_norm;

    auto deflate_normalize = [&](std::vector<double>& x) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += x[i] * top[i];
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] -= dot * top[i];
            norm += x[i] * x[i];
        }
        norm = std::sqrt(norm);
        if (norm > 0)
            for (auto& xi : x) xi /= norm;
        return norm;
    };
    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (Vertex v = 0; v < n; ++v) {
            double s = 0.0;
            for (Vertex w : g.neighbors(v)) s += x[w] * inv_sqrt_deg[w];
            y[v] = 0.5 * (x[v] + s * inv_sqrt_deg[v]);
        }
    };

    Rng rng(seed);
    std::vector<double> x(n), y(n);
    for (auto& xi : x) xi = rng.uniform() - 0.5;
    require(deflate_normalize(x) > 0, ErrorKind::NoConvergence, "degenerate start vector");
    for (std::size_t it = 0; it < max_iter; ++it) {
        apply(x, y);
        double mu = 0.0;
        for (std::size_t i = 0; i < n; ++i) mu += x[i] * y[i];
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
        if (std::sqrt(res) <= tol / 2) return 2.0 * (1.0 - mu);
        if (deflate_normalize(y) == 0.0) return 2.0;  // deflated operator is zero: μ = 0
        x.swap(y);
    }
    fail(ErrorKind::NoConvergence, "spectral_gap iteration budget exhausted");
}

/// Per-source inverse-degree path weights. Paths are weighed over their interior vertices
/// (the source and the target endpoint are excluded).
struct PathWeights {
    Vertex source = 0;
    std::vector<double> dist_p;     // min over paths of Σ 1/d(z)
    std::vector<double> sigma_hat;  // max over paths of Π (1 - 1/d(z))
};

namespace detail {

/// Dijkstra where stepping out of vertex z (other than the source) costs weight[z].
inline std::vector<double> interior_weighted_distances(const Graph& g, Vertex source,
                                                       std::span<const double> weight) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.num_vertices(), inf);
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.emplace(0.0, source);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        const double step = (u == source) ? 0.0 : weight[u];
        if (step == inf) continue;
        for (Vertex w : g.neighbors(u)) {
            const double cand = d + step;
            if (cand < dist[w]) {
                dist[w] = cand;
                pq.emplace(cand, w);
            }
        }
    }
    return dist;
}

}  // namespace detail

/// p(source, ·) and σ̂(source, ·). Paths are undirected so the same numbers serve as
/// p(·, source) and σ̂(·, source).
inline PathWeights inverse_degree_paths(const Graph& g, Vertex source) {
    const std::size_t n = g.num_vertices();
    std::vector<double> inv(n), neglog(n);
    for (Vertex v = 0; v < n; ++v) {
        const double d = static_cast<double>(g.degree(v));
        inv[v] = 1.0 / d;
        neglog[v] = g.degree(v) == 1 ? std::numeric_limits<double>::infinity() : -std::log1p(-1.0 / d);
    }
    PathWeights pw;
    pw.source = source;
    pw.dist_p = detail::interior_weighted_distances(g, source, inv);
    pw.sigma_hat = detail::interior_weighted_distances(g, source, neglog);
    for (auto& s : pw.sigma_hat) s = std::exp(-s);
    return pw;
}

}  // namespace cobra
