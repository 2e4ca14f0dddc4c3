#include "flipdist/flip_search.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <unordered_set>

#include "flipdist/error.hpp"

namespace flipdist {

namespace {

using Word = std::uint64_t;

// Every admissible edge of a domain, with the empty triangles on each side,
// so triangulations become bitsets and flips become table lookups.
class FlipSpace {
public:
    struct Apex {
        VertexId w;
        std::uint32_t e1;  // index of (u, w)
        std::uint32_t e2;  // index of (v, w)
    };

    explicit FlipSpace(const DomainPtr& domain) : domain_(domain), n_(domain->size()) {
        const auto& P = domain->points();
        if (n_ <= 160) {
            orient_.assign(n_ * n_ * n_, 0);
            for (VertexId a = 0; a < n_; ++a)
                for (VertexId b = 0; b < n_; ++b)
                    for (VertexId c = 0; c < n_; ++c)
                        if (a != b && b != c && a != c) {
                            orient_[(a * n_ + b) * n_ + c] =
                                static_cast<std::int8_t>(orientation(P[a], P[b], P[c]));
                        }
        }
        index_.assign(n_ * n_, -1);
        for (VertexId u = 0; u < n_; ++u) {
            for (VertexId v = u + 1; v < n_; ++v) {
                if (!domain->edge_inside(u, v)) continue;
                index_[u * n_ + v] = index_[v * n_ + u] = static_cast<std::int32_t>(edges_.size());
                edges_.emplace_back(u, v);
            }
        }
        words_ = (edges_.size() + 63) / 64;
        boundary_.assign(words_, 0);
        for (const auto& b : domain->boundary_edges()) {
            auto i = index_of(b);
            if (i < 0) throw Error(ErrorCode::InvalidDomain, "boundary edge not admissible");
            boundary_[static_cast<std::size_t>(i) / 64] |= Word(1) << (i % 64);
        }
        left_.resize(edges_.size());
        right_.resize(edges_.size());
        for (std::uint32_t i = 0; i < edges_.size(); ++i) {
            VertexId u = edges_[i].u, v = edges_[i].v;
            for (VertexId w = 0; w < n_; ++w) {
                if (w == u || w == v) continue;
                auto e1 = index_[u * n_ + w], e2 = index_[v * n_ + w];
                if (e1 < 0 || e2 < 0) continue;
                int s = orient(u, v, w);
                if (s == 0 || !empty_triangle(u, v, w)) continue;
                Apex a{w, static_cast<std::uint32_t>(e1), static_cast<std::uint32_t>(e2)};
                (s > 0 ? left_ : right_)[i].push_back(a);
            }
        }
    }

    std::size_t words() const { return words_; }
    std::size_t edge_total() const { return edges_.size(); }
    const Edge& edge(std::size_t i) const { return edges_[i]; }
    const DomainPtr& domain() const { return domain_; }

    std::int32_t index_of(Edge e) const {
        if (e.u >= n_ || e.v >= n_) return -1;
        return index_[e.u * n_ + e.v];
    }

    std::vector<Word> encode(const Triangulation& t) const {
        std::vector<Word> s(words_, 0);
        for (const auto& e : t.edges()) {
            auto i = index_of(e);
            if (i < 0) throw Error(ErrorCode::InvalidDomain, "edge outside the domain");
            s[static_cast<std::size_t>(i) / 64] |= Word(1) << (i % 64);
        }
        return s;
    }

    std::vector<Edge> decode(const Word* s) const {
        std::vector<Edge> out;
        for (std::size_t w = 0; w < words_; ++w) {
            Word x = s[w];
            while (x) {
                int b = std::countr_zero(x);
                out.push_back(edges_[w * 64 + static_cast<std::size_t>(b)]);
                x &= x - 1;
            }
        }
        return out;  // index order is lexicographic, so already sorted
    }

    static bool has(const Word* s, std::size_t i) { return (s[i / 64] >> (i % 64)) & 1; }

    // Calls f(removed, inserted) for every legal flip of state s.
    template <class F>
    void for_each_flip(const Word* s, F&& f) const {
        for (std::size_t w = 0; w < words_; ++w) {
            Word x = s[w] & ~boundary_[w];
            while (x) {
                std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
                x &= x - 1;
                const Apex* a = face(s, left_[i]);
                const Apex* b = face(s, right_[i]);
                if (!a || !b) continue;
                VertexId u = edges_[i].u, v = edges_[i].v;
                int su = orient(a->w, b->w, u), sv = orient(a->w, b->w, v);
                if (su == 0 || sv == 0 || su == sv) continue;
                auto j = index_[a->w * n_ + b->w];
                if (j < 0) continue;
                f(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
            }
        }
    }

private:
    int orient(VertexId a, VertexId b, VertexId c) const {
        if (!orient_.empty()) return orient_[(a * n_ + b) * n_ + c];
        const auto& P = domain_->points();
        return static_cast<int>(orientation(P[a], P[b], P[c]));
    }

    bool empty_triangle(VertexId u, VertexId v, VertexId w) const {
        int s = orient(u, v, w);
        for (VertexId p = 0; p < n_; ++p) {
            if (p == u || p == v || p == w) continue;
            if (orient(u, v, p) == s && orient(v, w, p) == s && orient(w, u, p) == s) return false;
        }
        return true;
    }

    static const Apex* face(const Word* s, const std::vector<Apex>& list) {
        for (const auto& a : list) {
            if (has(s, a.e1) && has(s, a.e2)) return &a;
        }
        return nullptr;
    }

    DomainPtr domain_;
    std::size_t n_;
    std::vector<std::int8_t> orient_;
    std::vector<std::int32_t> index_;
    std::vector<Edge> edges_;
    std::size_t words_ = 0;
    std::vector<Word> boundary_;
    std::vector<std::vector<Apex>> left_, right_;
};

// Deduplicated bitset states stored contiguously.
class StateStore {
public:
    explicit StateStore(std::size_t words)
        : words_(words), set_(1024, Hash{this}, Eq{this}) {}

    std::size_t size() const { return count_; }
    const Word* at(std::uint32_t id) const { return arena_.data() + std::size_t(id) * words_; }

    // (id, inserted?)
    std::pair<std::uint32_t, bool> intern(const Word* s) {
        arena_.insert(arena_.end(), s, s + words_);
        auto id = static_cast<std::uint32_t>(count_);
        auto [it, fresh] = set_.insert(id);
        if (fresh) {
            ++count_;
        } else {
            arena_.resize(arena_.size() - words_);
        }
        return {*it, fresh};
    }

    bool less(std::uint32_t a, std::uint32_t b) const {
        return std::lexicographical_compare(at(a), at(a) + words_, at(b), at(b) + words_);
    }

private:
    struct Hash {
        const StateStore* store;
        std::size_t operator()(std::uint32_t id) const {
            const Word* s = store->at(id);
            std::uint64_t h = 0x9e3779b97f4a7c15ULL;
            for (std::size_t i = 0; i < store->words_; ++i) {
                h ^= s[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                h *= 0xff51afd7ed558ccdULL;
            }
            return static_cast<std::size_t>(h ^ (h >> 33));
        }
    };
    struct Eq {
        const StateStore* store;
        bool operator()(std::uint32_t a, std::uint32_t b) const {
            return std::equal(store->at(a), store->at(a) + store->words_, store->at(b));
        }
    };

    std::size_t words_;
    std::size_t count_ = 0;
    std::vector<Word> arena_;
    std::unordered_set<std::uint32_t, Hash, Eq> set_;
};

constexpr std::uint32_t kNone = 0xffffffffu;

std::size_t popcount_diff(const Word* a, const Word* b, std::size_t words) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words; ++i) c += static_cast<std::size_t>(std::popcount(a[i] & ~b[i]));
    return c;
}

void check_same(const Triangulation& t1, const Triangulation& t2) {
    if (!same_domain(t1, t2)) throw Error(ErrorCode::DomainMismatch, "triangulations over different domains");
}

}  // namespace

FlipScript FlipScript::reversed(const std::string& end_key) const {
    FlipScript r;
    r.start_key = end_key;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) r.moves.push_back(it->reversed());
    return r;
}

std::size_t lower_bound(const Triangulation& t1, const Triangulation& t2) {
    return edge_difference(t1, t2).first.size();
}

SearchResult exact_distance(const Triangulation& t1, const Triangulation& t2, const SearchOptions& opts) {
    check_same(t1, t2);
    SearchResult result;
    result.witness.start_key = canonical_key(t1);
    if (t1.edges() == t2.edges()) {
        result.status = SearchStatus::Found;
        return result;
    }
    if (lower_bound(t1, t2) > opts.budget) return result;

    FlipSpace space(t1.domain_ptr());
    const std::size_t W = space.words();
    StateStore store(W);

    struct Node {
        std::uint32_t g[2] = {kNone, kNone};
        std::uint32_t parent[2] = {kNone, kNone};
        std::uint32_t removed[2] = {0, 0};
        std::uint32_t inserted[2] = {0, 0};
        std::uint32_t h[2] = {0, 0};
        bool closed[2] = {false, false};
    };
    std::vector<Node> nodes;

    auto s1 = space.encode(t1);
    auto s2 = space.encode(t2);
    std::vector<Word> goals[2] = {s2, s1};

    struct Entry {
        std::uint32_t f, g, id;
    };
    // open list per direction: smallest f, then largest g, then bitset order
    auto cmp = [&store](const Entry& a, const Entry& b) {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return store.less(b.id, a.id);
    };
    using Queue = std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)>;
    Queue open[2] = {Queue(cmp), Queue(cmp)};
    std::map<std::uint32_t, std::size_t> open_g[2];
    std::size_t open_count[2] = {0, 0};

    auto heuristic = [&](std::uint32_t id, int dir) {
        return static_cast<std::uint32_t>(popcount_diff(store.at(id), goals[dir].data(), W));
    };

    std::uint32_t best = kNone;
    std::uint32_t meet = kNone;

    auto relax = [&](std::uint32_t id, int dir, std::uint32_t g, std::uint32_t parent, std::uint32_t rem,
                     std::uint32_t ins) {
        Node& nd = nodes[id];
        if (nd.g[dir] != kNone && nd.g[dir] <= g) return;
        if (nd.g[dir] != kNone && !nd.closed[dir]) {
            if (--open_g[dir][nd.g[dir]] == 0) open_g[dir].erase(nd.g[dir]);
            --open_count[dir];
        }
        if (nd.g[dir] == kNone) nd.h[dir] = heuristic(id, dir);
        nd.g[dir] = g;
        nd.parent[dir] = parent;
        nd.removed[dir] = rem;
        nd.inserted[dir] = ins;
        nd.closed[dir] = false;
        ++open_g[dir][g];
        ++open_count[dir];
        open[dir].push({g + nd.h[dir], g, id});
        int other = 1 - dir;
        if (nd.g[other] != kNone && nd.g[dir] + nd.g[other] < best) {
            best = nd.g[dir] + nd.g[other];
            meet = id;
        }
    };

    for (int dir = 0; dir < 2; ++dir) {
        auto [id, fresh] = store.intern(dir == 0 ? s1.data() : s2.data());
        if (fresh) nodes.emplace_back();
        relax(id, dir, 0, kNone, 0, 0);
    }

    auto pop_stale = [&](int dir) {
        while (!open[dir].empty()) {
            const Entry& e = open[dir].top();
            const Node& nd = nodes[e.id];
            if (nd.closed[dir] || nd.g[dir] != e.g) {
                open[dir].pop();
                continue;
            }
            break;
        }
    };

    std::vector<Word> child(W);
    for (;;) {
        pop_stale(0);
        pop_stale(1);
        if (open[0].empty() || open[1].empty()) break;
        std::uint32_t fmin0 = open[0].top().f, fmin1 = open[1].top().f;
        std::uint32_t gsum = static_cast<std::uint32_t>(open_g[0].begin()->first + open_g[1].begin()->first + 1);
        std::uint32_t bound = std::max({fmin0, fmin1, gsum});
        if (best != kNone && best <= bound) break;
        if (bound > opts.budget) break;
        if (opts.node_limit && store.size() >= opts.node_limit) break;

        int dir = open_count[0] <= open_count[1] ? 0 : 1;
        Entry top = open[dir].top();
        open[dir].pop();
        Node& cur = nodes[top.id];
        cur.closed[dir] = true;
        if (--open_g[dir][cur.g[dir]] == 0) open_g[dir].erase(cur.g[dir]);
        --open_count[dir];
        ++result.nodes_expanded;

        std::uint32_t g = cur.g[dir];
        std::uint32_t id = top.id;
        // copy the parent state: the arena may grow during expansion
        std::vector<Word> parent_state(store.at(id), store.at(id) + W);
        space.for_each_flip(parent_state.data(), [&](std::uint32_t rem, std::uint32_t ins) {
            child = parent_state;
            child[rem / 64] &= ~(Word(1) << (rem % 64));
            child[ins / 64] |= Word(1) << (ins % 64);
            auto [cid, fresh] = store.intern(child.data());
            if (fresh) nodes.emplace_back();
            relax(cid, dir, g + 1, id, rem, ins);
        });
        result.frontier_peak = std::max(result.frontier_peak, open_count[0] + open_count[1]);
    }

    if (best == kNone || best > opts.budget) return result;

    // forward half: walk parents back to the start
    std::vector<FlipMove> head;
    for (std::uint32_t id = meet; nodes[id].parent[0] != kNone; id = nodes[id].parent[0]) {
        head.push_back({space.edge(nodes[id].removed[0]), space.edge(nodes[id].inserted[0])});
    }
    std::reverse(head.begin(), head.end());
    // backward half: each backward step undone in forward order
    for (std::uint32_t id = meet; nodes[id].parent[1] != kNone; id = nodes[id].parent[1]) {
        head.push_back({space.edge(nodes[id].inserted[1]), space.edge(nodes[id].removed[1])});
    }
    result.status = SearchStatus::Found;
    result.distance = best;
    result.witness.moves = std::move(head);
    return result;
}

std::optional<std::size_t> try_replay(const Triangulation& start, const std::vector<FlipMove>& moves,
                                      std::optional<Triangulation>* end) {
    Triangulation cur = start;
    for (std::size_t i = 0; i < moves.size(); ++i) {
        auto legal = flip_for_edge(cur, moves[i].removed);
        if (!legal || legal->inserted != moves[i].inserted) return i;
        cur = apply_flip(cur, moves[i]);
    }
    if (end) *end = std::move(cur);
    return std::nullopt;
}

Triangulation replay(const Triangulation& start, const std::vector<FlipMove>& moves) {
    std::optional<Triangulation> end;
    if (auto bad = try_replay(start, moves, &end)) {
        const auto& m = moves[*bad];
        throw Error(ErrorCode::IllegalScript, "move " + std::to_string(*bad) + " (" + std::to_string(m.removed.u) +
                                                  "-" + std::to_string(m.removed.v) + " -> " +
                                                  std::to_string(m.inserted.u) + "-" +
                                                  std::to_string(m.inserted.v) + ") is not legal");
    }
    return std::move(*end);
}

FlipScript greedy_upper_bound(const Triangulation& t1, const Triangulation& t2, std::size_t move_cap) {
    check_same(t1, t2);
    FlipScript script;
    script.start_key = canonical_key(t1);
    Triangulation cur = t1;
    const auto& P = t1.domain().points();
    auto push = [&](const FlipMove& m) {
        if (script.moves.size() >= move_cap) {
            throw Error(ErrorCode::CapExceeded, "greedy script exceeded " + std::to_string(move_cap) + " moves");
        }
        cur = apply_flip(cur, m);
        script.moves.push_back(m);
    };
    auto crosses = [&](const Edge& a, const Edge& b) {
        return segments_properly_cross(P[a.u], P[a.v], P[b.u], P[b.v]);
    };
    while (cur.edges() != t2.edges()) {
        bool done = false;
        for (const auto& m : legal_flips(cur)) {
            if (t2.contains(m.inserted)) {
                push(m);
                done = true;
                break;
            }
        }
        if (done) continue;
        auto missing = edge_difference(t2, cur).first;
        if (missing.empty()) break;
        const Edge target = missing.front();
        // queue-based insertion of the target edge
        std::deque<Edge> queue;
        for (const auto& e : cur.edges()) {
            if (crosses(e, target)) queue.push_back(e);
        }
        std::size_t stall = 0;
        while (!queue.empty()) {
            Edge e = queue.front();
            queue.pop_front();
            auto m = flip_for_edge(cur, e);
            if (!m) {
                queue.push_back(e);
                if (++stall > queue.size() + 1) {
                    throw Error(ErrorCode::CapExceeded, "greedy insertion stalled");
                }
                continue;
            }
            stall = 0;
            push(*m);
            if (crosses(m->inserted, target)) queue.push_back(m->inserted);
        }
    }
    return script;
}

Triangulation any_triangulation(const DomainPtr& domain) {
    const auto& P = domain->points();
    std::vector<Edge> chosen(domain->boundary_edges());
    for (VertexId u = 0; u < domain->size(); ++u) {
        for (VertexId v = u + 1; v < domain->size(); ++v) {
            Edge e(u, v);
            if (domain->is_boundary(e) || !domain->edge_inside(u, v)) continue;
            bool ok = std::none_of(chosen.begin(), chosen.end(), [&](const Edge& f) {
                return segments_properly_cross(P[e.u], P[e.v], P[f.u], P[f.v]);
            });
            if (ok) chosen.push_back(e);
        }
    }
    return Triangulation(domain, std::move(chosen));
}

std::optional<std::size_t> FlipGraph::index_of(const Triangulation& t) const {
    if (domain_ != t.domain_ptr() && !(*domain_ == t.domain())) return std::nullopt;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i] == t.edges()) return i;
    }
    return std::nullopt;
}

std::vector<long> FlipGraph::distances_from(std::size_t i) const {
    std::vector<long> dist(nodes_.size(), -1);
    std::deque<std::size_t> queue{i};
    dist[i] = 0;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (auto w : adjacency_[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::size_t FlipGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& a : adjacency_) total += a.size();
    return total / 2;
}

FlipGraph enumerate_flip_graph(const Triangulation& seed, std::size_t cap) {
    FlipSpace space(seed.domain_ptr());
    const std::size_t W = space.words();
    StateStore store(W);
    auto s0 = space.encode(seed);
    store.intern(s0.data());
    FlipGraph graph;
    graph.domain_ = seed.domain_ptr();
    std::vector<std::vector<std::uint32_t>> adj(1);
    std::vector<Word> cur(W), child(W);
    for (std::uint32_t id = 0; id < store.size(); ++id) {
        cur.assign(store.at(id), store.at(id) + W);
        space.for_each_flip(cur.data(), [&](std::uint32_t rem, std::uint32_t ins) {
            child = cur;
            child[rem / 64] &= ~(Word(1) << (rem % 64));
            child[ins / 64] |= Word(1) << (ins % 64);
            auto [cid, fresh] = store.intern(child.data());
            if (fresh) {
                if (store.size() > cap) {
                    throw Error(ErrorCode::CapExceeded,
                                "flip graph has more than " + std::to_string(cap) + " triangulations");
                }
                adj.emplace_back();
            }
            adj[id].push_back(cid);
        });
    }
    graph.nodes_.reserve(store.size());
    for (std::uint32_t id = 0; id < store.size(); ++id) graph.nodes_.push_back(space.decode(store.at(id)));
    for (auto& a : adj) std::sort(a.begin(), a.end());
    graph.adjacency_ = std::move(adj);
    return graph;
}

FlipGraph enumerate_flip_graph(const DomainPtr& domain, std::size_t cap) {
    return enumerate_flip_graph(any_triangulation(domain), cap);
}

}  // namespace flipdist
