#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flipdist/error.hpp"
#include "flipdist/flip_search.hpp"
#include "flipdist/graph.hpp"
#include "flipdist/io.hpp"
#include "flipdist/reduction.hpp"
#include "flipdist/render.hpp"
#include "flipdist/vertex_cover.hpp"

namespace py = pybind11;
using namespace flipdist;

namespace {

std::vector<long> labels_of(const PlanarGraphDrawing& d, const std::vector<std::size_t>& vs) {
    std::vector<long> out;
    for (auto v : vs) out.push_back(d.labels[v]);
    return out;
}

py::dict accounting_dict(const Accounting& a) {
    py::dict r;
    r["k_input"] = a.k_input;
    r["t_outer"] = a.t_outer;
    r["k_prime"] = a.k_prime;
    r["edges"] = a.edges;
    r["threshold"] = a.threshold;
    return r;
}

py::dict reduce(const std::string& graph_text, long k, bool pointset, std::size_t multiplicity) {
    auto inst = reduce_graph(parse_graph(graph_text), k);
    py::dict r;
    r["accounting"] = accounting_dict(inst.accounting);
    if (pointset) {
        std::size_t m = multiplicity ? multiplicity : static_cast<std::size_t>(inst.accounting.threshold) + 1;
        auto ps = region_to_pointset(inst, m);
        r["instance"] = write_pointset(inst, ps);
        r["points"] = ps.domain->size();
    } else {
        r["instance"] = write_reduction(inst);
        r["points"] = inst.region->size();
    }
    return r;
}

py::dict distance(const std::string& instance_text, std::size_t budget, std::size_t node_limit) {
    auto f = read_instance(instance_text);
    auto res = exact_distance(f.start(), f.goal(), SearchOptions{budget, node_limit});
    py::dict r;
    r["status"] = res.status == SearchStatus::Found ? "FOUND" : "EXCEEDS_BUDGET";
    r["distance"] = res.status == SearchStatus::Found ? py::object(py::int_(res.distance)) : py::object(py::none());
    r["witness"] = res.status == SearchStatus::Found ? py::object(py::str(write_script(res.witness))) : py::none();
    r["nodes_expanded"] = res.nodes_expanded;
    return r;
}

std::string cover_script(const std::string& instance_text, std::optional<std::vector<long>> cover) {
    auto f = read_instance(instance_text);
    if (!f.reduction) throw Error(ErrorCode::InvalidInstance, "not a reduction instance");
    const auto& d = f.reduction->drawing;
    std::vector<std::size_t> s;
    if (cover) {
        std::map<long, std::size_t> index;
        for (std::size_t v = 0; v < d.labels.size(); ++v) index[d.labels[v]] = v;
        for (auto l : *cover) {
            auto it = index.find(l);
            if (it == index.end()) throw Error(ErrorCode::NotACover, "no vertex labelled " + std::to_string(l));
            s.push_back(it->second);
        }
    } else {
        s = exact_vc(d.graph).witness;
    }
    return write_script(cover_to_script(*f.reduction, s));
}

py::dict verify(const std::string& instance_text, const std::string& script_text) {
    auto f = read_instance(instance_text);
    auto s = read_script(script_text);
    py::dict r;
    r["flips"] = s.size();
    if (f.reduction) {
        if (f.pointset) {
            if (auto bad = try_replay(f.start(), s.moves))
                throw Error(ErrorCode::IllegalScript, "move " + std::to_string(*bad) + " is illegal");
        }
        auto a = audit_script(*f.reduction, s);
        const auto& d = f.reduction->drawing;
        r["unlocked"] = labels_of(d, a.unlocked);
        r["never_capped"] = a.never_capped;
        r["implied_cover"] = labels_of(d, a.implied_cover);
        r["lower_bound"] = a.lower_bound;
        r["threshold"] = a.threshold;
        r["over_threshold"] = !a.within_threshold;
    } else {
        auto start = f.start();
        if (auto bad = try_replay(start, s.moves))
            throw Error(ErrorCode::IllegalScript, "move " + std::to_string(*bad) + " is illegal");
        if (f.target && !(replay(start, s.moves) == f.goal()))
            throw Error(ErrorCode::EndStateMismatch, "script does not end at target_edges");
    }
    r["verdict"] = "PASS";
    return r;
}

py::dict min_vertex_cover(const std::string& graph_text) {
    auto file = parse_graph(graph_text);
    auto res = exact_vc(file.graph);
    py::dict r;
    r["size"] = res.size;
    std::vector<long> cover;
    for (auto v : res.witness) cover.push_back(file.labels[v]);
    r["cover"] = cover;
    return r;
}

py::dict eliminate(const std::string& graph_text) {
    auto s = eliminate_sharp(graph_drawing(parse_graph(graph_text)));
    py::dict r;
    r["t"] = s.t;
    r["graph"] = format_graph(s.drawing);
    return r;
}

std::string render(const std::string& instance_text, bool target, bool labels) {
    auto f = read_instance(instance_text);
    SvgOptions o;
    o.labels = labels;
    o.locks = f.locks;
    if (f.reduction && !f.pointset)
        for (const auto& g : f.reduction->gadgets) o.locks.push_back(g.lock());
    return render_svg(target ? f.goal() : f.start(), o);
}

py::dict enumerate(const std::string& instance_text, std::size_t cap) {
    auto f = read_instance(instance_text);
    auto g = enumerate_flip_graph(f.start(), cap);
    py::dict r;
    r["triangulations"] = g.size();
    r["flips"] = g.edge_count();
    if (f.target) {
        auto goal = g.index_of(f.goal());
        r["distance"] = goal ? g.distances_from(*g.index_of(f.start()))[*goal] : -1;
    }
    return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact flip distance and the vertex-cover reduction";

    static PyObject* error_type = PyErr_NewException("flipdist._core.FlipdistError", PyExc_RuntimeError, nullptr);
    m.attr("FlipdistError") = py::handle(error_type).inc_ref();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::handle(error_type)(e.what());
            exc.attr("code") = std::string(error_code_name(e.code()));
            exc.attr("exit_code") = exit_code_for(e.code());
            PyErr_SetObject(error_type, exc.ptr());
        }
    });

    m.def("reduce", &reduce, py::arg("graph"), py::arg("k"), py::arg("pointset") = false,
          py::arg("multiplicity") = 0, "Reduction instance of a graph file's text");
    m.def("figure", &figure_instance, py::arg("name"), "channel, capped, double-capped or gadget3");
    m.def("distance", &distance, py::arg("instance"), py::arg("budget") = 64, py::arg("node_limit") = 0);
    m.def("cover_script", &cover_script, py::arg("instance"), py::arg("cover") = std::nullopt,
          "Script of a cover given by vertex labels (default: a minimum cover)");
    m.def("verify", &verify, py::arg("instance"), py::arg("script"));
    m.def("min_vertex_cover", &min_vertex_cover, py::arg("graph"));
    m.def("eliminate_sharp", &eliminate, py::arg("graph"), "Graph text with sharp vertices replaced, and t");
    m.def("render", &render, py::arg("instance"), py::arg("target") = false, py::arg("labels") = false);
    m.def("enumerate", &enumerate, py::arg("instance"), py::arg("cap") = 1000000);
}
