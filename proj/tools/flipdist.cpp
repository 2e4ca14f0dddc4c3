#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "flipdist/error.hpp"
#include "flipdist/flip_search.hpp"
#include "flipdist/graph.hpp"
#include "flipdist/io.hpp"
#include "flipdist/reduction.hpp"
#include "flipdist/render.hpp"
#include "flipdist/vertex_cover.hpp"

using namespace flipdist;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write " + path);
}

json label_list(const PlanarGraphDrawing& d, const std::vector<std::size_t>& vs) {
    json a = json::array();
    for (auto v : vs) a.push_back(d.labels[v]);
    return a;
}

std::vector<std::size_t> parse_cover(const PlanarGraphDrawing& d, const std::string& text) {
    std::map<long, std::size_t> index;
    for (std::size_t v = 0; v < d.labels.size(); ++v) index[d.labels[v]] = v;
    std::vector<std::size_t> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        long label = 0;
        try {
            std::size_t used = 0;
            label = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad vertex label '" + tok + "'");
        }
        auto it = index.find(label);
        if (it == index.end()) throw Error(ErrorCode::NotACover, "no vertex labelled " + tok);
        out.push_back(it->second);
    }
    return out;
}

json accounting_json(const Accounting& a) {
    return {{"k_input", a.k_input},
            {"t_outer", a.t_outer},
            {"k_prime", a.k_prime},
            {"edges", a.edges},
            {"threshold", a.threshold}};
}

std::string exit_code_table() {
    std::map<int, std::vector<std::string>> by_exit;
    for (int c = 0; c <= static_cast<int>(ErrorCode::Io); ++c) {
        auto code = static_cast<ErrorCode>(c);
        by_exit[exit_code_for(code)].emplace_back(error_code_name(code));
    }
    std::string s = "Exit codes:\n  0  ok\n";
    for (const auto& [exit, names] : by_exit) {
        s += "  " + std::to_string(exit) + " ";
        for (const auto& n : names) s += " " + n;
        if (exit == 2) s += " (and usage errors)";
        s += "\n";
    }
    return s;
}

struct Output {
    bool json_mode = false;
    json doc = json::object();
    std::vector<std::string> lines;

    void line(const std::string& s) { lines.push_back(s); }
    void flush() const {
        if (json_mode) {
            std::cout << doc.dump(1) << '\n';
        } else {
            for (const auto& l : lines) std::cout << l << '\n';
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact flip distance and the vertex-cover reduction"};
    app.require_subcommand(1);
    app.footer(exit_code_table());
    Output out;
    app.add_flag("--json", out.json_mode, "Structured output on stdout");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "Build the reduction instance of a planar graph");
    std::string graph_path, out_path, figure;
    long k = 0;
    bool pointset = false;
    std::size_t multiplicity = 0;
    reduce->add_option("--graph", graph_path, "Graph file");
    reduce->add_option("--k", k, "Vertex cover bound")->check(CLI::NonNegativeNumber);
    reduce->add_flag("--pointset", pointset, "Convert to a point-set instance");
    reduce->add_option("--multiplicity", multiplicity, "Sliver points per boundary edge (default threshold + 1)");
    reduce->add_option("--figure", figure, "Standalone figure instance instead of a graph")
        ->check(CLI::IsMember({"channel", "capped", "double-capped", "gadget3"}));
    reduce->add_option("--out", out_path, "Instance file (default stdout)");
    reduce->add_flag("--json", out.json_mode, "Structured output");

    // distance
    auto* distance = app.add_subcommand("distance", "Exact flip distance between the two triangulations");
    std::string instance_path, witness_path;
    std::size_t budget = 64, node_limit = 0;
    distance->add_option("--instance", instance_path, "Instance file")->required();
    distance->add_option("--budget", budget, "Largest distance searched");
    distance->add_option("--node-limit", node_limit, "Stored states before giving up (0 = none)");
    distance->add_option("--witness", witness_path, "Write a shortest script here");
    distance->add_flag("--json", out.json_mode, "Structured output");

    // verify
    auto* verify = app.add_subcommand("verify", "Replay a script and report its accounting");
    std::string script_path;
    verify->add_option("--instance", instance_path, "Instance file")->required();
    verify->add_option("--script", script_path, "Script file")->required();
    verify->add_flag("--json", out.json_mode, "Structured output");

    // script
    auto* script = app.add_subcommand("script", "Flip script of a vertex cover");
    std::string cover_text;
    script->add_option("--instance", instance_path, "Reduction instance file")->required();
    script->add_option("--cover", cover_text, "Comma-separated vertex labels (default: a minimum cover)");
    script->add_option("--out", out_path, "Script file (default stdout)");
    script->add_flag("--json", out.json_mode, "Structured output");

    // vc
    auto* vc = app.add_subcommand("vc", "Minimum vertex cover");
    bool transform = false;
    vc->add_option("--graph", graph_path, "Graph file")->required();
    vc->add_flag("--transform", transform, "Also solve the graph with sharp vertices eliminated");
    vc->add_flag("--json", out.json_mode, "Structured output");

    // render
    auto* render = app.add_subcommand("render", "SVG of an instance");
    bool target = false, show_mouths = false, labels = false;
    render->add_option("--instance", instance_path, "Instance file")->required();
    render->add_option("--out", out_path, "SVG file (default stdout)");
    render->add_flag("--target", target, "Draw target_edges instead of edges");
    render->add_flag("--mouths", show_mouths, "Overlay the narrow mouths of every channel");
    render->add_flag("--labels", labels, "Vertex ids");
    render->add_flag("--json", out.json_mode, "Structured output");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate the flip graph");
    std::size_t cap = 1000000;
    enumerate->add_option("--instance", instance_path, "Instance file")->required();
    enumerate->add_option("--cap", cap, "Largest number of triangulations");
    enumerate->add_flag("--json", out.json_mode, "Structured output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*reduce) {
            if (figure.empty() == graph_path.empty())
                throw Error(ErrorCode::InvalidInstance, "give exactly one of --graph and --figure");
            std::string text;
            if (!figure.empty()) {
                text = figure_instance(figure);
                out.doc["figure"] = figure;
                out.line("figure " + figure);
            } else {
                auto inst = reduce_graph(parse_graph(read_file(graph_path)), k);
                if (auto problems = audit_instance(inst); !problems.empty())
                    throw Error(ErrorCode::EmptyFeasibleRegion, problems.front());
                const auto& a = inst.accounting;
                out.doc["accounting"] = accounting_json(a);
                out.doc["points"] = inst.region->size();
                out.line("k' = " + std::to_string(a.k_prime) + " (k = " + std::to_string(a.k_input) +
                         ", t = " + std::to_string(a.t_outer) + ")");
                out.line("|E'| = " + std::to_string(a.edges));
                out.line("threshold = " + std::to_string(a.threshold));
                if (pointset) {
                    std::size_t m = multiplicity ? multiplicity : static_cast<std::size_t>(a.threshold) + 1;
                    auto ps = region_to_pointset(inst, m);
                    auto report = validate(ps.T1());
                    if (!report.ok()) throw Error(ErrorCode::InvalidInstance, "point-set T1 is invalid");
                    text = write_pointset(inst, ps);
                    out.doc["multiplicity"] = m;
                    out.doc["points"] = ps.domain->size();
                    out.line("point set: " + std::to_string(ps.domain->size()) + " points, multiplicity " +
                             std::to_string(m));
                } else {
                    text = write_reduction(inst);
                    out.line("region: " + std::to_string(inst.region->size()) + " points");
                }
            }
            if (out_path.empty()) {
                std::cout << text;
                return 0;
            }
            write_file(out_path, text);
            out.doc["out"] = out_path;
        } else if (*distance) {
            auto f = read_instance(read_file(instance_path));
            auto t1 = f.start(), t2 = f.goal();
            auto r = exact_distance(t1, t2, SearchOptions{budget, node_limit});
            out.doc["nodes_expanded"] = r.nodes_expanded;
            out.doc["frontier_peak"] = r.frontier_peak;
            out.doc["lower_bound"] = lower_bound(t1, t2);
            if (r.status == SearchStatus::ExceedsBudget) {
                out.doc["status"] = "EXCEEDS_BUDGET";
                out.doc["budget"] = budget;
                out.line("EXCEEDS_BUDGET (budget " + std::to_string(budget) + ")");
                out.flush();
                return 4;
            }
            out.doc["status"] = "FOUND";
            out.doc["distance"] = r.distance;
            out.line("distance = " + std::to_string(r.distance));
            if (!witness_path.empty()) {
                write_file(witness_path, write_script(r.witness));
                out.doc["witness"] = witness_path;
            }
        } else if (*verify) {
            auto f = read_instance(read_file(instance_path));
            auto s = read_script(read_file(script_path));
            out.doc["flips"] = s.size();
            if (f.reduction) {
                if (f.pointset) {
                    auto bad = try_replay(f.start(), s.moves);
                    if (bad) throw Error(ErrorCode::IllegalScript, "move " + std::to_string(*bad) + " is illegal");
                }
                auto r = audit_script(*f.reduction, s);
                const auto& d = f.reduction->drawing;
                out.doc["verdict"] = "PASS";
                out.doc["unlocked"] = label_list(d, r.unlocked);
                out.doc["never_capped"] = r.never_capped;
                out.doc["implied_cover"] = label_list(d, r.implied_cover);
                out.doc["lower_bound"] = r.lower_bound;
                out.doc["threshold"] = r.threshold;
                out.doc["over_threshold"] = !r.within_threshold;
                out.line("PASS");
                out.line("flips = " + std::to_string(r.flips));
                out.line("|L| = " + std::to_string(r.unlocked.size()) +
                         ", |C| = " + std::to_string(r.never_capped.size()));
                out.line("lower bound 2|L| + 36|C| + 28|E-C| = " + std::to_string(r.lower_bound));
                out.line("implied cover size = " + std::to_string(r.implied_cover_size));
                out.line("threshold = " + std::to_string(r.threshold) +
                         (r.within_threshold ? "" : " (OVER THRESHOLD)"));
            } else {
                auto start = f.start();
                if (auto bad = try_replay(start, s.moves))
                    throw Error(ErrorCode::IllegalScript, "move " + std::to_string(*bad) + " is illegal");
                if (f.target && !(replay(start, s.moves) == f.goal()))
                    throw Error(ErrorCode::EndStateMismatch, "script does not end at target_edges");
                out.doc["verdict"] = "PASS";
                out.line("PASS");
                out.line("flips = " + std::to_string(s.size()));
            }
        } else if (*script) {
            auto f = read_instance(read_file(instance_path));
            if (!f.reduction) throw Error(ErrorCode::InvalidInstance, "not a reduction instance");
            const auto& inst = *f.reduction;
            std::vector<std::size_t> cover =
                cover_text.empty() ? exact_vc(inst.drawing.graph).witness : parse_cover(inst.drawing, cover_text);
            auto s = cover_to_script(inst, cover);
            auto text = write_script(s);
            if (out_path.empty()) {
                std::cout << text;
                return 0;
            }
            write_file(out_path, text);
            out.doc["cover"] = label_list(inst.drawing, cover);
            out.doc["flips"] = s.size();
            out.doc["out"] = out_path;
            out.line("flips = " + std::to_string(s.size()));
        } else if (*vc) {
            auto file = parse_graph(read_file(graph_path));
            auto r = exact_vc(file.graph);
            std::vector<long> cover;
            for (auto v : r.witness) cover.push_back(file.labels[v]);
            out.doc["size"] = r.size;
            out.doc["cover"] = cover;
            std::string line = "min vertex cover = " + std::to_string(r.size) + ":";
            for (auto l : cover) line += " " + std::to_string(l);
            out.line(line);
            if (transform) {
                auto s = eliminate_sharp(graph_drawing(file));
                auto rt = exact_vc(s.drawing.graph);
                out.doc["transformed"] = {{"t", s.t},
                                          {"vertices", s.drawing.graph.n},
                                          {"size", rt.size},
                                          {"cover", label_list(s.drawing, rt.witness)}};
                out.line("transformed: t = " + std::to_string(s.t) + ", min vertex cover = " +
                         std::to_string(rt.size));
            }
        } else if (*render) {
            auto f = read_instance(read_file(instance_path));
            SvgOptions o;
            o.labels = labels;
            o.locks = f.locks;
            if (f.reduction && !f.pointset) {
                for (const auto& g : f.reduction->gadgets) o.locks.push_back(g.lock());
                if (show_mouths) {
                    std::vector<Channel> chs;
                    for (const auto& c : f.reduction->channels) chs.push_back(f.reduction->channel_points(c.layout));
                    o.overlays = mouth_overlays(*f.domain, chs);
                }
            }
            auto t = target ? f.goal() : f.start();
            auto svg = render_svg(t, o);
            if (out_path.empty()) {
                std::cout << svg;
                return 0;
            }
            write_file(out_path, svg);
            out.doc["triangles"] = t.triangles().size();
            out.doc["out"] = out_path;
            out.line("wrote " + out_path + " (" + std::to_string(t.triangles().size()) + " triangles)");
        } else if (*enumerate) {
            auto f = read_instance(read_file(instance_path));
            auto g = enumerate_flip_graph(f.start(), cap);
            out.doc["triangulations"] = g.size();
            out.doc["flips"] = g.edge_count();
            out.line("triangulations = " + std::to_string(g.size()));
            out.line("flip graph edges = " + std::to_string(g.edge_count()));
            if (f.target) {
                auto dist = g.distances_from(g.index_of(f.start()).value());
                auto goal = g.index_of(f.goal());
                long d = goal ? dist[*goal] : -1;
                out.doc["distance"] = d;
                out.line("distance = " + std::to_string(d));
            }
        }
    } catch (const Error& e) {
        if (out.json_mode) {
            json err = {{"error", std::string(error_code_name(e.code()))}, {"message", e.what()}};
            std::cout << err.dump(1) << '\n';
        }
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    out.flush();
    return 0;
}
