#include "flipdist/io.hpp"

#include "json.hpp"

#include "flipdist/channel.hpp"
#include "flipdist/error.hpp"
#include "flipdist/gadget.hpp"

namespace flipdist {

using nlohmann::json;

namespace {

json point_json(const Point2& p) { return json::array({format_rational(p.x), format_rational(p.y)}); }

Point2 point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "point must be [x, y]");
    auto coord = [](const json& c) {
        if (c.is_string()) return parse_rational(c.get<std::string>());
        if (c.is_number_integer()) return Rational(c.get<long>());
        throw Error(ErrorCode::ParseError, "coordinate must be a \"p/q\" string or an integer");
    };
    return {coord(j[0]), coord(j[1])};
}

json edges_json(const std::vector<Edge>& edges) {
    json a = json::array();
    for (const auto& e : edges) a.push_back({e.u, e.v});
    return a;
}

template <class T>
T index_from(const json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw Error(ErrorCode::ParseError, "expected a non-negative index");
    return static_cast<T>(j.get<unsigned long long>());
}

template <class T>
std::vector<T> indices_from(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an index array");
    std::vector<T> out;
    for (const auto& x : j) out.push_back(index_from<T>(x));
    return out;
}

std::vector<Edge> edges_from(const json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "edges must be an array");
    std::vector<Edge> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "edge must be [u, v]");
        out.emplace_back(index_from<VertexId>(e[0]), index_from<VertexId>(e[1]));
    }
    return out;
}

json domain_json(const Domain& d) {
    json j;
    j["points"] = json::array();
    for (const auto& p : d.points()) j["points"].push_back(point_json(p));
    if (d.kind() == DomainKind::Region) {
        j["outer"] = d.outer();
        j["holes"] = d.holes();
    }
    return j;
}

json reduction_json(const ReductionInstance& inst) {
    json j;
    const auto& d = inst.drawing;
    json g;
    g["labels"] = d.labels;
    g["points"] = json::array();
    for (const auto& p : d.points) g["points"].push_back(point_json(p));
    g["edges"] = json::array();
    for (auto [a, b] : d.graph.edges) g["edges"].push_back({a, b});
    g["outer"] = d.outer;
    j["graph"] = g;

    json gadgets = json::array();
    for (std::size_t v = 0; v < inst.gadgets.size(); ++v) {
        const auto& r = inst.gadgets[v];
        json x;
        x["vertex"] = r.vertex;
        x["label"] = d.labels[r.vertex];
        x["degree"] = r.degree;
        x["ids"] = r.ids;
        x["lock"] = {r.C(), r.E()};
        x["unlocked"] = {r.D(), r.F()};
        json caps = json::array();
        for (std::size_t s = 0; s < r.channels.size(); ++s) caps.push_back(r.cap(s));
        x["caps"] = caps;
        x["channels"] = r.channels;
        gadgets.push_back(x);
    }
    json channels = json::array();
    for (std::size_t c = 0; c < inst.channels.size(); ++c) {
        const auto& r = inst.channels[c];
        json x;
        x["index"] = c;
        x["from"] = r.from;
        x["to"] = r.to;
        x["from_slot"] = r.from_slot;
        x["to_slot"] = r.to_slot;
        x["upper"] = r.layout.upper;
        x["lower"] = r.layout.lower;
        channels.push_back(x);
    }
    j["gadget_metadata"] = {{"gadgets", gadgets}, {"channels", channels}};
    const auto& a = inst.accounting;
    j["accounting"] = {{"k_input", a.k_input},
                       {"t_outer", a.t_outer},
                       {"k_prime", a.k_prime},
                       {"edges", a.edges},
                       {"threshold", a.threshold}};
    return j;
}

ReductionInstance reduction_from(const json& j, const DomainPtr& domain, const std::vector<Edge>& edges,
                                 const std::vector<Edge>& target) {
    ReductionInstance inst;
    const auto& g = j.at("graph");
    inst.drawing.labels = g.at("labels").get<std::vector<long>>();
    for (const auto& p : g.at("points")) inst.drawing.points.push_back(point_from(p));
    inst.drawing.graph.n = inst.drawing.labels.size();
    for (const auto& e : g.at("edges")) {
        inst.drawing.graph.edges.emplace_back(index_from<std::size_t>(e.at(0)), index_from<std::size_t>(e.at(1)));
    }
    inst.drawing.outer = indices_from<std::size_t>(g.at("outer"));
    if (inst.drawing.points.size() != inst.drawing.graph.n) throw Error(ErrorCode::ParseError, "graph labels and points differ in length");

    const auto& meta = j.at("gadget_metadata");
    for (const auto& x : meta.at("gadgets")) {
        GadgetRecord r;
        r.vertex = index_from<std::size_t>(x.at("vertex"));
        r.degree = x.at("degree").get<int>();
        r.ids = indices_from<VertexId>(x.at("ids"));
        r.channels = indices_from<std::size_t>(x.at("channels"));
        if ((r.degree != 2 && r.degree != 3) || r.ids.size() != static_cast<std::size_t>(2 * r.degree + 4) ||
            r.channels.size() != static_cast<std::size_t>(r.degree)) {
            throw Error(ErrorCode::ParseError, "malformed gadget record");
        }
        for (auto id : r.ids) {
            if (id >= domain->size()) throw Error(ErrorCode::ParseError, "gadget id out of range");
        }
        inst.gadgets.push_back(std::move(r));
    }
    for (const auto& x : meta.at("channels")) {
        ChannelRecord r;
        r.from = index_from<std::size_t>(x.at("from"));
        r.to = index_from<std::size_t>(x.at("to"));
        r.from_slot = index_from<std::size_t>(x.at("from_slot"));
        r.to_slot = index_from<std::size_t>(x.at("to_slot"));
        r.layout.upper = indices_from<VertexId>(x.at("upper"));
        r.layout.lower = indices_from<VertexId>(x.at("lower"));
        if (r.layout.upper.size() != r.layout.lower.size() || r.layout.upper.size() < 3) {
            throw Error(ErrorCode::ParseError, "malformed channel record");
        }
        for (const auto* chain : {&r.layout.upper, &r.layout.lower}) {
            for (auto id : *chain) {
                if (id >= domain->size()) throw Error(ErrorCode::ParseError, "channel id out of range");
            }
        }
        inst.channels.push_back(std::move(r));
    }
    if (inst.gadgets.size() != inst.drawing.graph.n || inst.channels.size() != inst.drawing.graph.edges.size()) {
        throw Error(ErrorCode::ParseError, "gadget_metadata does not match the graph");
    }
    for (const auto& c : inst.channels) {
        if (c.from >= inst.gadgets.size() || c.to >= inst.gadgets.size() ||
            c.from_slot >= inst.gadgets[c.from].channels.size() || c.to_slot >= inst.gadgets[c.to].channels.size()) {
            throw Error(ErrorCode::ParseError, "channel refers to a missing gadget slot");
        }
    }
    const auto& a = j.at("accounting");
    inst.accounting.k_input = a.at("k_input").get<long>();
    inst.accounting.t_outer = a.at("t_outer").get<long>();
    inst.accounting.k_prime = a.at("k_prime").get<long>();
    inst.accounting.edges = a.at("edges").get<long>();
    inst.accounting.threshold = a.at("threshold").get<long>();
    inst.region = domain;
    inst.t1 = edges;
    inst.t2 = target;
    for (auto* t : {&inst.t1, &inst.t2}) {
        std::sort(t->begin(), t->end());
        t->erase(std::unique(t->begin(), t->end()), t->end());
    }
    return inst;
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

}  // namespace

Triangulation InstanceFile::goal() const {
    if (!target) throw Error(ErrorCode::InvalidInstance, "instance has no target_edges");
    return Triangulation(domain, *target);
}

InstanceFile read_instance(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("instance JSON: ") + e.what());
    }
    try {
        if (!j.is_object() || !j.contains("points")) throw Error(ErrorCode::ParseError, "instance needs `points`");
        std::vector<Point2> pts;
        for (const auto& p : j.at("points")) pts.push_back(point_from(p));
        if (pts.empty()) throw Error(ErrorCode::ParseError, "instance has no points");
        InstanceFile f;
        if (j.contains("outer")) {
            std::vector<std::vector<VertexId>> holes;
            if (j.contains("holes")) {
                for (const auto& h : j.at("holes")) holes.push_back(indices_from<VertexId>(h));
            }
            f.domain = Domain::region(pts, indices_from<VertexId>(j.at("outer")), holes);
        } else {
            f.domain = Domain::point_set(pts);
        }
        f.edges = edges_from(j.value("edges", json::array()));
        if (j.contains("target_edges")) f.target = edges_from(j.at("target_edges"));
        if (j.contains("locks")) f.locks = edges_from(j.at("locks"));
        for (const auto* list : {&f.edges, f.target ? &*f.target : nullptr, &f.locks}) {
            if (!list) continue;
            for (const auto& e : *list) {
                if (e.v >= pts.size() || e.u == e.v) throw Error(ErrorCode::ParseError, "edge index out of range");
            }
        }
        if (j.contains("gadget_metadata")) {
            if (!f.target) throw Error(ErrorCode::ParseError, "reduction instance without target_edges");
            f.reduction = reduction_from(j, f.domain, f.edges, *f.target);
        }
        if (j.contains("pointset")) {
            const auto& x = j.at("pointset");
            PointSetInstance ps;
            ps.domain = f.domain;
            ps.t1 = f.reduction ? f.reduction->t1 : f.edges;
            ps.t2 = f.reduction ? f.reduction->t2 : f.target.value_or(std::vector<Edge>{});
            ps.multiplicity = index_from<std::size_t>(x.at("multiplicity"));
            ps.region_points = index_from<std::size_t>(x.at("region_points"));
            ps.protected_edges = edges_from(x.at("protected_edges"));
            for (const auto& stack : x.at("slivers")) ps.slivers.push_back(indices_from<VertexId>(stack));
            f.pointset = std::move(ps);
        }
        return f;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("instance JSON: ") + e.what());
    }
}

std::string write_instance(const Domain& domain, const std::vector<Edge>& edges,
                           const std::optional<std::vector<Edge>>& target, const std::vector<Edge>& locks) {
    json j = domain_json(domain);
    j["edges"] = edges_json(edges);
    if (target) j["target_edges"] = edges_json(*target);
    if (!locks.empty()) j["locks"] = edges_json(locks);
    return dump(j);
}

std::string write_reduction(const ReductionInstance& inst) {
    json j = reduction_json(inst);
    j.update(domain_json(*inst.region));
    j["edges"] = edges_json(inst.t1);
    j["target_edges"] = edges_json(inst.t2);
    return dump(j);
}

std::string write_pointset(const ReductionInstance& inst, const PointSetInstance& ps) {
    json j = reduction_json(inst);
    j.update(domain_json(*ps.domain));
    j["edges"] = edges_json(ps.t1);
    j["target_edges"] = edges_json(ps.t2);
    j["pointset"] = {{"multiplicity", ps.multiplicity},
                     {"protected_edges", edges_json(ps.protected_edges)},
                     {"slivers", ps.slivers},
                     {"region_points", ps.region_points}};
    return dump(j);
}

std::string to_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

std::string write_script(const FlipScript& s) {
    json j;
    j["start_key"] = to_hex(s.start_key);
    j["moves"] = json::array();
    for (const auto& m : s.moves) j["moves"].push_back({{m.removed.u, m.removed.v}, {m.inserted.u, m.inserted.v}});
    return j.dump() + "\n";
}

FlipScript read_script(std::string_view text) {
    try {
        json j = json::parse(text);
        FlipScript s;
        const json& moves = j.is_array() ? j : j.at("moves");
        for (const auto& m : moves) {
            if (!m.is_array() || m.size() != 2) throw Error(ErrorCode::ParseError, "move must be [[u, v], [x, y]]");
            auto e = edges_from(m);
            s.moves.push_back({e[0], e[1]});
        }
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("script JSON: ") + e.what());
    }
}

std::string figure_instance(const std::string& name) {
    auto pt = [](long x, long y) { return Point2{Rational(x), Rational(y)}; };
    if (name == "gadget3") {
        auto g = build_vertex_gadget(gadget_frame(pt(0, 0), {pt(1, 0), pt(0, 1), pt(-1, -1)}, 1));
        auto locked = g.locked_pocket();
        auto unlocked = replay(locked, {g.unlock});
        return write_instance(locked.domain(), locked.edges(), unlocked.edges(), {g.lock()});
    }
    ChannelDomain cd;
    if (name == "channel") cd = channel_domain(figure_channel());
    else if (name == "capped") cd = channel_domain(figure_channel(), pt(-80, 0));
    else if (name == "double-capped") cd = channel_domain(figure_channel(), pt(-80, 0), pt(80, 0));
    else throw Error(ErrorCode::InvalidInstance, "unknown figure " + name);
    auto l = left_inclined(cd), r = right_inclined(cd);
    return write_instance(*cd.domain, l.edges(), r.edges());
}

}  // namespace flipdist
