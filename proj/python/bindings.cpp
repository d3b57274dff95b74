#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "msroute/adjacency.hpp"
#include "msroute/error.hpp"
#include "msroute/floorplan_io.hpp"
#include "msroute/generator.hpp"
#include "msroute/metrics.hpp"
#include "msroute/report.hpp"
#include "msroute/router.hpp"

namespace py = pybind11;
using namespace msroute;

namespace {

RunConfig make_config(const std::string& name, int layers, const std::string& model, const std::string& balance,
                      double capacity_scale) {
    if (model != "reserved-hv" && model != "unreserved") {
        throw PreconditionError("layer model must be reserved-hv or unreserved");
    }
    if (balance != "number" && balance != "area") {
        throw PreconditionError("balance must be number or area");
    }
    RunConfig c = preset(name, layers, model == "unreserved" ? LayerModel::Unreserved : LayerModel::ReservedHV,
                         balance == "area" ? Balance::Area : Balance::Number);
    c.capacity_scale = capacity_scale;
    return c;
}

ProfileKind profile_kind(const std::string& s) {
    if (s == "uniform") return ProfileKind::Uniform;
    if (s == "hyperbolic") return ProfileKind::Hyperbolic;
    if (s == "ladder") return ProfileKind::Ladder;
    throw PreconditionError("profile must be uniform, hyperbolic or ladder");
}

} // namespace

PYBIND11_MODULE(_msroute, m) {
    m.doc() = "Staircase global router bindings";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<Floorplan>(m, "Floorplan")
        .def_property_readonly("block_count", &Floorplan::block_count)
        .def_property_readonly("net_count", [](const Floorplan& fp) { return fp.nets.size(); })
        .def_property_readonly("outline", [](const Floorplan& fp) {
            return py::make_tuple(fp.outline.x, fp.outline.y, fp.outline.width, fp.outline.height);
        })
        .def_property_readonly("block_names", [](const Floorplan& fp) {
            std::vector<std::string> names;
            for (const auto& b : fp.blocks) names.push_back(b.name);
            return names;
        })
        .def_property_readonly("net_degrees", [](const Floorplan& fp) {
            std::vector<int> d;
            for (const auto& n : fp.nets) d.push_back(n.degree());
            return d;
        })
        .def_property_readonly("net_hpwl", [](const Floorplan& fp) {
            std::vector<double> h;
            for (const auto& n : fp.nets) h.push_back(n.hpwl);
            return h;
        })
        .def("serialize", &serialize)
        .def("instance_hash", &instance_hash)
        .def("save", [](const Floorplan& fp, const std::string& dir, const std::string& stem) { save_floorplan(fp, dir, stem); },
             py::arg("dir"), py::arg("stem") = "instance");

    m.def("generate", [](int n, int k, int max_degree, std::uint64_t seed) { return generate_random_floorplan(n, k, max_degree, seed); },
          py::arg("n"), py::arg("k"), py::arg("max_degree") = 6, py::arg("seed") = 1);
    m.def("load", [](const std::string& b, const std::string& pl, const std::string& n) { return load_floorplan(b, pl, n); },
          py::arg("blocks"), py::arg("pl"), py::arg("nets"));
    m.def("parse", [](const std::string& b, const std::string& pl, const std::string& n) { return parse_floorplan(b, pl, n); },
          py::arg("blocks_text"), py::arg("pl_text"), py::arg("nets_text"));
    m.def("validate", [](const Floorplan& fp) {
        const auto r = validate_floorplan(fp);
        return py::make_tuple(r.passed(), r.summary());
    });
    m.def("interior_junction_count", [](const Floorplan& fp) { return interior_junction_count(enumerate_tjunctions(fp)); });
    m.def("msc_cut_count", [](const Floorplan& fp, const std::string& balance) {
        return build_msc_tree(fp, balance == "area" ? Balance::Area : Balance::Number).cut_count();
    }, py::arg("fp"), py::arg("balance") = "number");

    m.def("route_json", [](const Floorplan& fp, const std::string& config, int layers, const std::string& layer_model,
                           const std::string& balance, double capacity_scale, bool include_runtime) {
        const RoutingProblem problem = prepare_problem(fp, make_config(config, layers, layer_model, balance, capacity_scale));
        RouteOutcome outcome;
        {
            py::gil_scoped_release release;
            outcome = route_all(problem);
        }
        return report_json(summarize(problem, outcome), include_runtime);
    }, py::arg("fp"), py::arg("config") = "FCN", py::arg("layers") = 8, py::arg("layer_model") = "reserved-hv",
       py::arg("balance") = "number", py::arg("capacity_scale") = 1.0, py::arg("include_runtime") = true);

    m.def("capacity_at", [](const std::string& kind, int r, int layer, int layers) {
        CapacityProfile p;
        p.kind = profile_kind(kind);
        p.layers = layers;
        return capacity_at(p, r, layer);
    }, py::arg("kind"), py::arg("r"), py::arg("layer"), py::arg("layers") = 8);
    m.def("ace", [](double x, const std::vector<double>& values) { return ace(x, values); });
    m.def("wace4", [](const std::vector<double>& values) { return wace4(values); });
    m.def("presets", &preset_names);
}
