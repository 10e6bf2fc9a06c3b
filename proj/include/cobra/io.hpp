#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/generators.hpp"
#include "cobra/graph.hpp"

namespace cobra {

/// Edge-list text format: a header line "n m", then m lines "u v" (0-based).
inline Graph read_edge_list(std::istream& in, std::string name = "file") {
    std::size_t n = 0, m = 0;
    require(static_cast<bool>(in >> n >> m), ErrorKind::ParseError, "expected header 'n m'");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        long long u = 0, v = 0;
        require(static_cast<bool>(in >> u >> v), ErrorKind::ParseError,
                "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        require(u >= 0 && v >= 0 && static_cast<std::size_t>(u) < n && static_cast<std::size_t>(v) < n,
                ErrorKind::ParseError, "edge endpoint out of range on edge " + std::to_string(i));
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::string trailing;
    require(!(in >> trailing), ErrorKind::ParseError, "trailing content after edge list");
    return Graph(n, edges, std::move(name));
}

inline Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::IoError, "cannot open " + path);
    return read_edge_list(in, "file:" + path);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) pos = s.size();
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline long long to_int(std::string_view s, std::string_view what) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc{} && ptr == s.data() + s.size(), ErrorKind::ParseError,
            "bad integer '" + std::string(s) + "' for " + std::string(what));
    return v;
}

}  // namespace detail

/// Parsed form of "family:a,b,key=value".
struct GraphSpec {
    std::string family;
    std::vector<long long> positional;
    std::map<std::string, std::string> options;
    std::string path;  // file family only
};

inline GraphSpec parse_graph_spec(std::string_view text) {
    GraphSpec spec;
    auto colon = text.find(':');
    spec.family = std::string(text.substr(0, colon));
    if (colon == std::string_view::npos) return spec;
    auto rest = text.substr(colon + 1);
    if (spec.family == "file") {
        spec.path = std::string(rest);
        return spec;
    }
    for (const auto& part : detail::split(rest, ',')) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) {
            spec.positional.push_back(detail::to_int(part, spec.family));
        } else {
            spec.options[part.substr(0, eq)] = part.substr(eq + 1);
        }
    }
    return spec;
}

/// Builds a graph from a spec string such as "cycle:8", "grid:64,d=2", "grid2d:8",
/// "regular:64,3,seed=7", "random-3-regular:64", "tree:2,5", "lollipop:128",
/// "petersen" or "file:g.edges".
inline Graph make_graph(std::string_view text) {
    const GraphSpec s = parse_graph_spec(text);
    auto pos = [&](std::size_t i, std::string_view what) -> long long {
        require(i < s.positional.size(), ErrorKind::InvalidParams,
                "graph '" + std::string(text) + "' is missing " + std::string(what));
        require(s.positional[i] >= 0, ErrorKind::InvalidParams, "negative " + std::string(what));
        return s.positional[i];
    };
    auto opt = [&](const std::string& key, long long fallback) -> long long {
        auto it = s.options.find(key);
        return it == s.options.end() ? fallback : detail::to_int(it->second, key);
    };
    auto n_of = [&] { return static_cast<std::size_t>(pos(0, "size")); };

    const auto& f = s.family;
    if (f == "file") return load_edge_list(s.path);
    if (f == "path") return gen::path(n_of());
    if (f == "cycle") return gen::cycle(n_of());
    if (f == "star") return gen::star(n_of());
    if (f == "complete") return gen::complete(n_of());
    if (f == "hypercube") return gen::hypercube(n_of());
    if (f == "lollipop") return gen::lollipop(n_of());
    if (f == "petersen") return gen::petersen();
    if (f == "grid") return gen::grid(static_cast<std::size_t>(opt("d", 2)), pos(0, "side"));
    if (f == "grid2d") return gen::grid(2, pos(0, "side"));
    if (f == "tree") return gen::kary_tree(static_cast<std::size_t>(pos(0, "arity")),
                                           static_cast<std::size_t>(pos(1, "depth")));
    if (f == "regular")
        return gen::random_regular(n_of(), static_cast<std::size_t>(pos(1, "degree")),
                                   static_cast<std::uint64_t>(opt("seed", 7)));
    if (f.starts_with("random-") && f.ends_with("-regular")) {
        auto mid = std::string_view(f).substr(7, f.size() - 7 - 8);
        const auto d = static_cast<std::size_t>(detail::to_int(mid, "degree"));
        return gen::random_regular(n_of(), d, static_cast<std::uint64_t>(opt("seed", 7)));
    }
    fail(ErrorKind::InvalidParams, "unknown graph family '" + f + "'");
}

}  // namespace cobra
