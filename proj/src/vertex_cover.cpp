#include "flipdist/vertex_cover.hpp"

#include <bit>
#include <cstdint>

#include "flipdist/error.hpp"

namespace flipdist {

namespace {

using Mask = std::uint64_t;

struct Search {
    std::vector<Mask> adj;
    std::size_t best = 0;
    Mask best_set = 0;

    int degree(std::size_t v, Mask alive) const { return std::popcount(adj[v] & alive); }

    void run(Mask alive, Mask chosen) {
        // degree-0 and degree-1 reductions
        for (bool changed = true; changed;) {
            changed = false;
            for (Mask rest = alive; rest;) {
                std::size_t v = static_cast<std::size_t>(std::countr_zero(rest));
                rest &= rest - 1;
                if (!(alive >> v & 1)) continue;
                int d = degree(v, alive);
                if (d == 0) {
                    alive &= ~(Mask{1} << v);
                    changed = true;
                } else if (d == 1) {
                    std::size_t u = static_cast<std::size_t>(std::countr_zero(adj[v] & alive));
                    chosen |= Mask{1} << u;
                    alive &= ~((Mask{1} << u) | (Mask{1} << v));
                    changed = true;
                }
            }
        }
        const std::size_t taken = static_cast<std::size_t>(std::popcount(chosen));
        std::size_t edges2 = 0;
        int maxdeg = 0;
        std::size_t pick = 0;
        for (Mask rest = alive; rest; rest &= rest - 1) {
            std::size_t v = static_cast<std::size_t>(std::countr_zero(rest));
            int d = degree(v, alive);
            edges2 += static_cast<std::size_t>(d);
            if (d > maxdeg) {
                maxdeg = d;
                pick = v;
            }
        }
        if (edges2 == 0) {
            if (taken < best) {
                best = taken;
                best_set = chosen;
            }
            return;
        }
        const std::size_t edges = edges2 / 2;
        const std::size_t bound = taken + (edges + static_cast<std::size_t>(maxdeg) - 1) / static_cast<std::size_t>(maxdeg);
        if (bound >= best) return;
        const Mask bit = Mask{1} << pick;
        run(alive & ~bit, chosen | bit);
        const Mask nb = adj[pick] & alive;
        run(alive & ~(bit | nb), chosen | nb);
    }
};

}  // namespace

CoverResult exact_vc(const Graph& g, std::size_t cap) {
    if (g.n > cap || g.n > 64) {
        throw Error(ErrorCode::CapExceeded, "vertex cover oracle limited to " + std::to_string(cap) + " vertices");
    }
    Search s;
    s.adj.assign(g.n, 0);
    Mask all = 0;
    for (auto [a, b] : g.edges) {
        s.adj[a] |= Mask{1} << b;
        s.adj[b] |= Mask{1} << a;
        all |= (Mask{1} << a) | (Mask{1} << b);
    }
    s.best = static_cast<std::size_t>(std::popcount(all));
    s.best_set = all;
    s.run(all, 0);
    CoverResult r;
    r.size = s.best;
    for (std::size_t v = 0; v < g.n; ++v) {
        if (s.best_set >> v & 1) r.witness.push_back(v);
    }
    return r;
}

std::optional<std::pair<std::size_t, std::size_t>> uncovered_edge(const Graph& g, const std::vector<std::size_t>& s) {
    std::vector<bool> in(g.n, false);
    for (auto v : s) {
        if (v < g.n) in[v] = true;
    }
    for (auto e : g.edges) {
        if (!in[e.first] && !in[e.second]) return e;
    }
    return std::nullopt;
}

}  // namespace flipdist
