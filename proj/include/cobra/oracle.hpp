#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/graph.hpp"
#include "cobra/linalg.hpp"

namespace cobra {

/// Dense finite Markov chain.
struct FiniteChain {
    DenseMatrix transition;

    std::size_t size() const noexcept { return transition.rows(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return transition(i, j); }
};

inline void validate(const FiniteChain& c, double tol = 1e-12) {
    require(c.transition.rows() == c.transition.cols() && c.size() > 0, ErrorKind::InvalidParams,
            "transition matrix must be square and nonempty");
    for (std::size_t i = 0; i < c.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            require(c(i, j) >= 0.0, ErrorKind::InvalidParams, "negative transition probability");
            s += c(i, j);
        }
        require(std::abs(s - 1.0) <= tol, ErrorKind::InvalidParams,
                "row " + std::to_string(i) + " sums to " + std::to_string(s));
    }
}

inline FiniteChain srw_chain(const Graph& g) {
    const std::size_t n = g.num_vertices();
    FiniteChain c{DenseMatrix(n, n)};
    for (Vertex v = 0; v < n; ++v) {
        const double p = 1.0 / static_cast<double>(g.degree(v));
        for (Vertex w : g.neighbors(v)) c.transition(v, w) = p;
    }
    return c;
}

namespace detail {

/// States from which some target is reachable along positive-probability transitions.
inline std::vector<char> can_reach(const FiniteChain& c, const std::vector<char>& targets) {
    const std::size_t m = c.size();
    std::vector<char> ok = targets;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < m; ++i)
        if (ok[i]) stack.push_back(i);
    while (!stack.empty()) {
        const std::size_t j = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < m; ++i) {
            if (!ok[i] && c(i, j) > 0.0) {
                ok[i] = 1;
                stack.push_back(i);
            }
        }
    }
    return ok;
}

}  // namespace detail

inline constexpr double kSolveResidualTol = 1e-8;

/// Expected hitting time of the target set from every state; 0 on targets.
inline std::vector<double> exact_hitting(const FiniteChain& c, std::span<const std::size_t> targets) {
    const std::size_t m = c.size();
    require(!targets.empty(), ErrorKind::InvalidParams, "target set is empty");
    std::vector<char> is_target(m, 0);
    for (auto t : targets) {
        require(t < m, ErrorKind::InvalidParams, "target state out of range");
        is_target[t] = 1;
    }
    const auto ok = detail::can_reach(c, is_target);
    for (std::size_t i = 0; i < m; ++i)
        require(ok[i], ErrorKind::Unreachable, "targets unreachable from state " + std::to_string(i));
    std::vector<std::size_t> index(m, 0), transient;
    for (std::size_t i = 0; i < m; ++i) {
        if (!is_target[i]) {
            index[i] = transient.size();
            transient.push_back(i);
        }
    }
    std::vector<double> h(m, 0.0);
    if (transient.empty()) return h;
    const std::size_t k = transient.size();
    DenseMatrix a(k, k);
    std::vector<double> b(k, 1.0);
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t i = transient[r];
        a(r, r) = 1.0;
        for (std::size_t j = 0; j < m; ++j)
            if (!is_target[j]) a(r, index[j]) -= c(i, j);
    }
    const auto x = solve_linear(a, b);
    require(residual_inf(a, x, b) <= kSolveResidualTol * std::max(1.0, *std::max_element(x.begin(), x.end())),
            ErrorKind::Singular, "hitting solve residual too large");
    for (std::size_t r = 0; r < k; ++r) h[transient[r]] = x[r];
    return h;
}

inline std::vector<double> exact_hitting(const FiniteChain& c, std::size_t target) {
    return exact_hitting(c, std::span<const std::size_t>(&target, 1));
}

/// Expected return time to state v: 1 + Σ_w P(v, w) h_v(w).
inline double exact_return_time(const FiniteChain& c, std::size_t v) {
    const auto h = exact_hitting(c, v);
    double r = 1.0;
    for (std::size_t w = 0; w < c.size(); ++w) r += c(v, w) * h[w];
    return r;
}

inline bool is_irreducible(const FiniteChain& c) {
    std::vector<char> t(c.size(), 0);
    t[0] = 1;
    const auto back = detail::can_reach(c, t);
    for (char b : back)
        if (!b) return false;
    // and every state reachable from 0
    std::vector<char> fwd(c.size(), 0);
    std::vector<std::size_t> stack{0};
    fwd[0] = 1;
    while (!stack.empty()) {
        const auto i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (!fwd[j] && c(i, j) > 0.0) {
                fwd[j] = 1;
                stack.push_back(j);
            }
        }
    }
    for (char f : fwd)
        if (!f) return false;
    return true;
}

/// Solves πP = π with Σπ = 1 (the last balance equation is replaced by the normalization).
inline std::vector<double> exact_stationary(const FiniteChain& c) {
    require(is_irreducible(c), ErrorKind::Reducible, "chain is reducible");
    const std::size_t m = c.size();
    DenseMatrix a(m, m);
    std::vector<double> b(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = c(j, i) - (i == j ? 1.0 : 0.0);
    for (std::size_t j = 0; j < m; ++j) a(m - 1, j) = 1.0;
    b[m - 1] = 1.0;
    return solve_linear(a, b);
}

/// max_x |(πP)(x) − π(x)|
inline double stationarity_residual(const FiniteChain& c, std::span<const double> pi) {
    double r = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) s += pi[i] * c(i, j);
        r = std::max(r, std::abs(s - pi[j]));
    }
    return r;
}

// ---- cobra subset chain ---------------------------------------------------------------

using Subset = std::uint32_t;
using SubsetDistribution = std::map<Subset, double>;

inline constexpr std::size_t kSubsetVertexLimit = 20;
inline constexpr std::size_t kHittingVertexLimit = 12;
inline constexpr std::size_t kCoverVertexLimit = 8;
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;

inline Subset subset_of(std::span<const Vertex> vs) {
    Subset s = 0;
    for (Vertex v : vs) s |= Subset{1} << v;
    return s;
}

namespace detail {

/// Sparse distribution over subsets kept in a dense 2^n table plus a support list.
class SubsetTable {
public:
    explicit SubsetTable(std::size_t n) : prob_(std::size_t{1} << n, 0.0) {}
    void add(Subset s, double p) {
        if (prob_[s] == 0.0) support_.push_back(s);
        prob_[s] += p;
    }
    void clear() {
        for (Subset s : support_) prob_[s] = 0.0;
        support_.clear();
    }
    const std::vector<Subset>& support() const noexcept { return support_; }
    double operator[](Subset s) const noexcept { return prob_[s]; }

private:
    std::vector<double> prob_;
    std::vector<Subset> support_;
};

/// Law of the union of k uniform draws from the neighbors of v.
inline std::vector<std::pair<Subset, double>> vertex_union_law(const Graph& g, Vertex v, std::size_t k) {
    std::map<Subset, double> cur{{0, 1.0}};
    const auto nb = g.neighbors(v);
    const double p = 1.0 / static_cast<double>(nb.size());
    for (std::size_t draw = 0; draw < k; ++draw) {
        std::map<Subset, double> next;
        for (const auto& [s, q] : cur)
            for (Vertex w : nb) next[s | (Subset{1} << w)] += q * p;
        cur.swap(next);
    }
    return {cur.begin(), cur.end()};
}

}  // namespace detail

/// Exact law of the next active set, by folding in one active vertex at a time.
class CobraKernel {
public:
    CobraKernel(const Graph& g, std::size_t k) : g_(g), k_(k), a_(g.num_vertices()), b_(g.num_vertices()) {
        require(g.num_vertices() <= kSubsetVertexLimit, ErrorKind::TooLarge,
                "subset chain supports n <= 20");
        require(k >= 1, ErrorKind::InvalidParams, "k must be >= 1");
        laws_.reserve(g.num_vertices());
        for (Vertex v = 0; v < g.num_vertices(); ++v) laws_.push_back(detail::vertex_union_law(g, v, k));
    }

    std::size_t k() const noexcept { return k_; }

    /// Support and probabilities of the next active set; valid until the next call.
    std::vector<std::pair<Subset, double>> next(Subset s) {
        require(s != 0, ErrorKind::InvalidParams, "active set must be nonempty");
        a_.clear();
        a_.add(0, 1.0);
        for (Subset rest = s; rest; rest &= rest - 1) {
            const auto v = static_cast<Vertex>(std::countr_zero(rest));
            b_.clear();
            for (Subset x : a_.support()) {
                const double px = a_[x];
                for (const auto& [y, py] : laws_[v]) b_.add(x | y, px * py);
            }
            std::swap(a_, b_);
        }
        std::vector<std::pair<Subset, double>> out;
        out.reserve(a_.support().size());
        for (Subset x : a_.support()) out.emplace_back(x, a_[x]);
        return out;
    }

private:
    const Graph& g_;
    std::size_t k_;
    detail::SubsetTable a_, b_;
    std::vector<std::vector<std::pair<Subset, double>>> laws_;
};

inline SubsetDistribution cobra_transition_distribution(const Graph& g, Subset s, std::size_t k) {
    CobraKernel kernel(g, k);
    const auto out = kernel.next(s);
    return {out.begin(), out.end()};
}

/// Same law by listing every tuple of draws; the cross-check for the convolution.
inline SubsetDistribution cobra_transition_enumerate(const Graph& g, Subset s, std::size_t k) {
    require(s != 0, ErrorKind::InvalidParams, "active set must be nonempty");
    require(g.num_vertices() <= kSubsetVertexLimit, ErrorKind::TooLarge, "subset chain supports n <= 20");
    std::vector<Vertex> slots;  // one entry per draw
    double total = 1.0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (!(s >> v & 1U)) continue;
        for (std::size_t j = 0; j < k; ++j) {
            slots.push_back(v);
            total *= static_cast<double>(g.degree(v));
        }
    }
    require(total <= static_cast<double>(kEnumerationBudget), ErrorKind::TooLarge,
            "too many draw tuples to enumerate");
    const double p = 1.0 / total;
    SubsetDistribution out;
    std::vector<std::size_t> choice(slots.size(), 0);
    for (;;) {
        Subset x = 0;
        for (std::size_t i = 0; i < slots.size(); ++i) x |= Subset{1} << g.neighbors(slots[i])[choice[i]];
        out[x] += p;
        std::size_t i = 0;
        for (; i < slots.size(); ++i) {
            if (++choice[i] < g.degree(slots[i])) break;
            choice[i] = 0;
        }
        if (i == slots.size()) break;
    }
    return out;
}

/// Expected first round at which target is active, on the subset chain.
inline double exact_cobra_hitting(const Graph& g, Vertex start, Vertex target, std::size_t k) {
    const std::size_t n = g.num_vertices();
    require(n <= kHittingVertexLimit, ErrorKind::TooLarge,
            "exact cobra hitting supports n <= 12, got " + std::to_string(n));
    require(start < n && target < n, ErrorKind::InvalidParams, "vertex out of range");
    if (start == target) return 0.0;
    CobraKernel kernel(g, k);
    const Subset tbit = Subset{1} << target;
    // transient states reachable from {start}
    std::unordered_map<Subset, std::size_t> index;
    std::vector<Subset> states{Subset{1} << start};
    std::vector<std::vector<std::pair<Subset, double>>> rows;
    index[states[0]] = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        rows.push_back(kernel.next(states[i]));
        for (const auto& [x, p] : rows.back()) {
            if ((x & tbit) || index.count(x)) continue;
            index[x] = states.size();
            states.push_back(x);
        }
    }
    const std::size_t m = states.size();
    DenseMatrix a = DenseMatrix::identity(m);
    std::vector<double> b(m, 1.0);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [x, p] : rows[i])
            if (!(x & tbit)) a(i, index[x]) -= p;
    const auto h = solve_linear(a, b);
    require(residual_inf(a, h, b) <= kSolveResidualTol * std::max(1.0, h[0]), ErrorKind::Singular,
            "cobra hitting solve residual too large");
    return h[0];
}

/// Expected cover time on the (active, visited) chain. Visited sets only grow, so the chain
/// is solved one visited set at a time, larger sets first.
inline double exact_cobra_cover(const Graph& g, Vertex start, std::size_t k) {
    const std::size_t n = g.num_vertices();
    require(n <= kCoverVertexLimit, ErrorKind::TooLarge,
            "exact cobra cover supports n <= 8, got " + std::to_string(n));
    require(start < n, ErrorKind::InvalidParams, "start out of range");
    if (n == 1) return 0.0;
    const Subset full = (Subset{1} << n) - 1;
    CobraKernel kernel(g, k);
    std::vector<std::vector<std::pair<Subset, double>>> law(full + 1);
    auto transitions = [&](Subset a) -> const std::vector<std::pair<Subset, double>>& {
        if (law[a].empty()) law[a] = kernel.next(a);
        return law[a];
    };
    // cover[v][a]: expected remaining time from active a with visited v (a nonempty, a ⊆ v)
    std::vector<std::vector<double>> cover(full + 1);
    auto solve_block = [&](auto&& self, Subset v) -> const std::vector<double>& {
        if (!cover[v].empty()) return cover[v];
        std::vector<Subset> members;
        for (Subset a = v; a; a = (a - 1) & v) members.push_back(a);
        std::vector<std::size_t> pos(full + 1, 0);
        for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = i;
        const std::size_t m = members.size();
        DenseMatrix mat = DenseMatrix::identity(m);
        std::vector<double> rhs(m, 1.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (const auto& [x, p] : transitions(members[i])) {
                const Subset nv = v | x;
                if (nv == full) continue;
                if (nv == v) mat(i, pos[x]) -= p;
                else rhs[i] += p * self(self, nv)[x];
            }
        }
        std::vector<double> sol = solve_linear(mat, rhs);
        std::vector<double> table(full + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i) table[members[i]] = sol[i];
        cover[v] = std::move(table);
        return cover[v];
    };
    const Subset s = Subset{1} << start;
    return solve_block(solve_block, s)[s];
}

}  // namespace cobra
