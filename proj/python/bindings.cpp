#include "projcoords/classifying_maps.hpp"
#include "projcoords/cohomology.hpp"
#include "projcoords/datasets.hpp"
#include "projcoords/errors.hpp"
#include "projcoords/io.hpp"
#include "projcoords/pipeline.hpp"
#include "projcoords/ppca.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <variant>

namespace py = pybind11;
using namespace projcoords;

namespace {

// json crosses the boundary as text; keeps the binding free of a converter
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
nlohmann::json from_py(const py::handle& o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Field parse_field(const std::string& f) {
    if (f == "rp") return Field::real;
    if (f == "cp") return Field::complex;
    throw InvalidInput("field must be rp or cp");
}

using Member = std::variant<std::string PipelineConfig::*, int PipelineConfig::*, double PipelineConfig::*,
                            bool PipelineConfig::*, std::uint64_t PipelineConfig::*>;

const std::map<std::string, Member>& config_members() {
    static const std::map<std::string, Member> m = {
        {"dataset", &PipelineConfig::dataset},
        {"count", &PipelineConfig::count},
        {"seed", &PipelineConfig::seed},
        {"metric", &PipelineConfig::metric},
        {"geodesic_k", &PipelineConfig::geodesic_k},
        {"cover", &PipelineConfig::cover},
        {"landmarks", &PipelineConfig::landmarks},
        {"landmark_start", &PipelineConfig::landmark_start},
        {"landmark_preset", &PipelineConfig::landmark_preset},
        {"sparsity", &PipelineConfig::sparsity},
        {"radius", &PipelineConfig::radius},
        {"radius_factor", &PipelineConfig::radius_factor},
        {"bump", &PipelineConfig::bump},
        {"prime", &PipelineConfig::prime},
        {"field", &PipelineConfig::field},
        {"cocycle", &PipelineConfig::cocycle},
        {"interval", &PipelineConfig::interval},
        {"interval_rank", &PipelineConfig::interval_rank},
        {"interval_index", &PipelineConfig::interval_index},
        {"smoothing", &PipelineConfig::smoothing},
        {"threshold", &PipelineConfig::threshold},
        {"viz_k", &PipelineConfig::viz_k},
        {"orientation_min_overlap", &PipelineConfig::orientation_min_overlap},
        {"orientation_min_ratio", &PipelineConfig::orientation_min_ratio},
        {"orientation_infer_weak", &PipelineConfig::orientation_infer_weak},
        {"patch_width", &PipelineConfig::patch_width},
        {"patch_amplitude", &PipelineConfig::patch_amplitude},
    };
    return m;
}

PipelineConfig config_from_kwargs(const py::kwargs& kw) {
    PipelineConfig cfg;
    for (auto& [k, v] : kw) {
        const auto key = k.cast<std::string>();
        auto it = config_members().find(key);
        if (it == config_members().end()) throw InvalidInput("unknown pipeline option '" + key + "'");
        try {
            std::visit([&](auto member) { cfg.*member = v.cast<std::remove_reference_t<decltype(cfg.*member)>>(); }, it->second);
        } catch (const py::cast_error&) {
            throw InvalidInput("pipeline option '" + key + "' has the wrong type");
        }
    }
    return cfg;
}

ProjectiveCloud cloud_arg(const Eigen::MatrixXcd& rows, const std::string& field) {
    const Field f = parse_field(field);
    if (f == Field::real && rows.imag().cwiseAbs().maxCoeff() > 0) throw InvalidInput("real cloud with complex entries");
    return ProjectiveCloud::from_columns(f, rows.transpose());
}

Filtration filtration_arg(const std::vector<std::pair<Simplex, double>>& simplices) {
    std::vector<FilteredSimplex> v;
    for (auto& [s, b] : simplices) v.push_back({s, b});
    return Filtration(std::move(v));
}

} // namespace

PYBIND11_MODULE(_impl, m) {
    m.doc() = "projective coordinates from persistent cohomology";
    m.attr("__version__") = kVersion;

    auto invalid = py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
    (void)invalid;

    m.def("generate", [](const std::string& dataset, int count, std::uint64_t seed) { return generate(parse_dataset(dataset), count, seed); },
          py::arg("dataset"), py::arg("count"), py::arg("seed") = 0);

    m.def("distance_matrix",
          [](const Eigen::MatrixXd& points, const std::string& metric, int geodesic_k) {
              auto D = pairwise_distances(points, parse_metric(metric));
              if (geodesic_k > 0) D = geodesic_distances(D, geodesic_k);
              return Eigen::MatrixXd(D.entries());
          },
          py::arg("points"), py::arg("metric") = "euclidean", py::arg("geodesic_k") = 0);

    m.def("maxmin",
          [](const Eigen::MatrixXd& D, int count, int start) {
              auto p = maxmin_sample(D, count, start);
              return py::make_tuple(p.order, p.insertion_radii);
          },
          py::arg("dist"), py::arg("count"), py::arg("start") = 0, "landmark order and insertion radii");

    m.def("sparse_rips",
          [](const Eigen::MatrixXd& D, int count, double eps, int max_dim, int start) {
              auto F = sparse_rips(maxmin_sample(D, count, start), D, eps, max_dim);
              std::vector<std::pair<Simplex, double>> out;
              for (auto& s : F.simplices()) out.emplace_back(s.vertices, s.birth);
              return out;
          },
          py::arg("dist"), py::arg("landmarks"), py::arg("eps"), py::arg("max_dim") = 2, py::arg("start") = 0,
          "filtration as a list of (simplex, birth)");

    m.def("persistent_cohomology",
          [](const std::vector<std::pair<Simplex, double>>& simplices, int p, int max_dim) {
              return to_py(barcode_to_json(persistent_cohomology(filtration_arg(simplices), p, max_dim)));
          },
          py::arg("filtration"), py::arg("prime") = 2, py::arg("max_dim") = 1);

    m.def("harmonic_smoothing",
          [](const std::vector<Simplex>& triangles, const py::object& eta) {
              SimplicialComplex K(2);
              for (auto& t : triangles) K.insert(t);
              auto h = harmonic_smoothing(cochain_from_json(from_py(eta), 2, Coefficients::integers()), K);
              return py::make_tuple(to_py(cochain_to_json(h.theta)), to_py(cochain_to_json(h.nu)));
          },
          py::arg("triangles"), py::arg("eta"), "theta and nu as [{simplex, value}] lists");

    m.def("proj_distance", [](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) { return proj_distance(u, v); });

    m.def("principal_components",
          [](const Eigen::MatrixXcd& rows, const std::string& field) {
              auto Y = cloud_arg(rows, field);
              auto B = prin_proj_comps(Y);
              auto V = variance_profile(Y, B);
              py::dict d;
              d["basis"] = B.vectors;
              d["var"] = V.var;
              d["pvar"] = V.pvar;
              d["multiple_eigenvalue_stages"] = B.multiple_stages;
              return d;
          },
          py::arg("points"), py::arg("field") = "rp", "rows are homogeneous coordinates; basis columns v_0..v_n");

    m.def("project",
          [](const Eigen::MatrixXcd& rows, const std::string& field, int k) {
              auto Y = cloud_arg(rows, field);
              return Eigen::MatrixXcd(project_to_k(Y, prin_proj_comps(Y), k).cloud.points.transpose());
          },
          py::arg("points"), py::arg("field"), py::arg("k"));

    m.def("choose_dimension",
          [](const std::vector<double>& pvar, double threshold) {
              VarianceProfile p;
              p.pvar = pvar;
              auto c = choose_dimension(p, threshold);
              return py::make_tuple(c.k, c.elbow);
          },
          py::arg("pvar"), py::arg("threshold") = 0.7);

    m.def("viz_rp_disk", [](const Eigen::MatrixXd& rows) { return viz_rp_disk(ProjectiveCloud::from_real_rows(rows)); });
    m.def("viz_cp1_hopf", [](const Eigen::MatrixXcd& rows) {
        return viz_cp1_hopf(ProjectiveCloud::from_columns(Field::complex, rows.transpose()));
    });

    m.def("run_pipeline",
          [](const std::string& out_dir, const py::kwargs& kw) {
              auto r = run_pipeline(config_from_kwargs(kw));
              if (!out_dir.empty()) write_bundle(r, out_dir);
              py::dict d;
              d["summary"] = to_py(r.summary);
              d["barcode"] = to_py(barcode_to_json(r.barcode));
              d["points"] = r.points;
              d["coords"] = Eigen::MatrixXcd(r.coords.points.transpose());
              d["viz"] = r.viz;
              return d;
          },
          py::arg("out_dir") = "", "keyword arguments mirror the pipeline config keys");
}
