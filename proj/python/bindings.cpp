#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcfield/causality_audit.hpp"
#include "qcfield/dynamics_nonpert.hpp"
#include "qcfield/dynamics_pert.hpp"
#include "qcfield/estimators.hpp"
#include "qcfield/gme.hpp"
#include "qcfield/propagators.hpp"

namespace py = pybind11;
using namespace qcfield;

PYBIND11_MODULE(_core, m) {
    m.doc() = "massless-scalar direct-coupling signalling toolkit";

    py::enum_<Dim>(m, "Dim")
        .value("one_plus_one", Dim::one_plus_one)
        .value("three_plus_one", Dim::three_plus_one);

    py::enum_<SetupKind>(m, "SetupKind")
        .value("fig2", SetupKind::fig2)
        .value("fig4", SetupKind::fig4);

    py::enum_<KernelKind>(m, "KernelKind")
        .value("retarded", KernelKind::retarded)
        .value("advanced", KernelKind::advanced)
        .value("symmetric", KernelKind::symmetric)
        .value("causal", KernelKind::causal);

    py::enum_<Model>(m, "Model").value("qc", Model::qc).value("qft", Model::qft);

    py::enum_<GeometryClass>(m, "GeometryClass")
        .value("no_retro_subregion", GeometryClass::no_retro_subregion)
        .value("retro_subregion_inert", GeometryClass::retro_subregion_inert)
        .value("retro_subregion_active", GeometryClass::retro_subregion_active);

    py::class_<TimeInterval>(m, "TimeInterval")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &TimeInterval::lo)
        .def_readonly("hi", &TimeInterval::hi)
        .def("length", &TimeInterval::length);

    py::class_<SetupGeometry>(m, "SetupGeometry")
        .def_readonly("separation", &SetupGeometry::separation)
        .def_readonly("duration_a", &SetupGeometry::duration_a)
        .def_readonly("extra_b", &SetupGeometry::extra_b)
        .def_readonly("t_b_on", &SetupGeometry::t_b_on)
        .def_readonly("dim", &SetupGeometry::dim)
        .def("window_a", &SetupGeometry::window_a)
        .def("window_b", &SetupGeometry::window_b);

    py::class_<RegionSplit>(m, "RegionSplit")
        .def_readonly("window_c", &RegionSplit::window_c)
        .def_readonly("window_r", &RegionSplit::window_r);

    m.def("standard_setup", &standard_setup, py::arg("kind"), py::arg("separation"),
          py::arg("duration"), py::arg("extra") = 0.0, py::arg("t_b_on") = 0.0);
    m.def("split_switching", &split_switching);

    py::class_<Smearing>(m, "Smearing")
        .def_static("pointlike_window", &Smearing::pointlike_window, py::arg("x"),
                    py::arg("t_on"), py::arg("t_off"))
        .def_static("pointlike_gaussian", &Smearing::pointlike_gaussian, py::arg("x"),
                    py::arg("center"), py::arg("width"))
        .def("restricted_to", &Smearing::restricted_to);

    py::class_<SmearingPair>(m, "SmearingPair")
        .def_readonly("a", &SmearingPair::a)
        .def_readonly("b", &SmearingPair::b);
    m.def("setup_smearings", &setup_smearings);

    m.def("smeared_retarded", &smeared_retarded);
    m.def("smeared_advanced", &smeared_advanced);
    m.def("smeared_symmetric", &smeared_symmetric);
    m.def("smeared_causal", &smeared_causal);
    m.def(
        "quadrature_oracle",
        [](const Smearing& a, const Smearing& b, KernelKind kind, Dim dim, int resolution) {
            const auto res = quadrature_oracle(a, b, {kind, dim}, resolution);
            return py::make_tuple(res.value, res.error_estimate);
        },
        py::arg("a"), py::arg("b"), py::arg("kind"), py::arg("dim"),
        py::arg("resolution") = 2048);

    py::class_<EstimatorReport>(m, "EstimatorReport")
        .def_readonly("total", &EstimatorReport::total)
        .def_readonly("causal", &EstimatorReport::causal)
        .def_readonly("retro", &EstimatorReport::retro)
        .def_readonly("ratio_retro_causal", &EstimatorReport::ratio_retro_causal)
        .def_readonly("ratio_retro_total", &EstimatorReport::ratio_retro_total)
        .def_readonly("setup", &EstimatorReport::setup);

    m.def("signalling_estimator", &signalling_estimator);
    m.def("estimator_split", &estimator_split);
    m.def("ratios", &ratios);
    m.def("tolerance_time", [](double eps, double sep) {
        const auto tt = tolerance_time(eps, sep);
        return py::make_tuple(tt.min_duration, tt.ratio_domain_ok);
    });
    m.def("asymptotic_ratio_1p1", &asymptotic_ratio_1p1);

    py::class_<Detector>(m, "Detector")
        .def(py::init([](double gap, double coupling, const Smearing& smearing, double alpha,
                         cplx beta) {
                 Detector d{gap, coupling, smearing, alpha, beta};
                 d.validate();
                 return d;
             }),
             py::arg("gap"), py::arg("coupling"), py::arg("smearing"), py::arg("alpha"),
             py::arg("beta"))
        .def_readonly("gap", &Detector::gap)
        .def_readonly("coupling", &Detector::coupling)
        .def("initial_matrix", &Detector::initial_matrix);

    m.def("monopole", &monopole, py::arg("t"), py::arg("gap"));
    m.def("qc_second_order",
          [](const Detector& a, const Detector& b, Dim dim) {
              return qc_second_order(a, b, dim).rho;
          });
    m.def("qc_second_order_change", &qc_second_order_change);
    m.def("qft_signal_change", &qft_signal_change);
    m.def("dyson_oracle",
          [](const Detector& a, const Detector& b, const Matrix4c& rho0, int n_steps, Dim dim) {
              PairState p;
              p.rho = rho0;
              return dyson_oracle(a, b, p, n_steps, dim).rho;
          });
    m.def("norm_bound_check", &norm_bound_check);
    m.def("partial_trace_b", &partial_trace_b);
    m.def("energy_to_monopole_basis", &energy_to_monopole_basis);

    m.def("delta_ab", &delta_ab);
    m.def("evolve", [](double delta, const Matrix4c& rho0) {
        PairState p;
        p.rho = rho0;
        return evolve(delta, p).rho;
    });
    m.def("reduce_a", [](const Matrix4c& rho) {
        PairState p;
        p.rho = rho;
        return reduce_a(p).rho;
    });
    m.def("state_change_a", [](double delta, const Matrix4c& rho0) {
        PairState p;
        p.rho = rho0;
        return state_change_a(delta, p);
    });
    m.def("norm_estimator", &norm_estimator);
    m.def("arg_estimator", &arg_estimator);

    py::class_<NonPertReport>(m, "NonPertReport")
        .def_readonly("delta_total", &NonPertReport::delta_total)
        .def_readonly("delta_causal", &NonPertReport::delta_causal)
        .def_readonly("delta_retro", &NonPertReport::delta_retro)
        .def_readonly("n_total", &NonPertReport::n_total)
        .def_readonly("n_causal", &NonPertReport::n_causal)
        .def_readonly("theta_total", &NonPertReport::theta_total)
        .def_readonly("theta_causal", &NonPertReport::theta_causal)
        .def_readonly("theta_retro", &NonPertReport::theta_retro)
        .def_readonly("period", &NonPertReport::period)
        .def_readonly("shift", &NonPertReport::shift);
    m.def("np_split", &np_split);
    m.def("np_report", &np_report);
    m.def("coupling_tolerance", &coupling_tolerance);
    m.def("near_identity_window", &near_identity_window);
    m.def("resolution_report", [](double sep, double coupling) {
        const auto r = resolution_report(sep, coupling);
        return py::make_tuple(r.shift, r.period, r.discernibility);
    });

    m.def("find_retro_subregion", &find_retro_subregion, py::arg("a"), py::arg("b"),
          py::arg("dim"), py::arg("grid_n") = 64);
    m.def("witness", &witness, py::arg("model"), py::arg("det_a"), py::arg("det_b"),
          py::arg("dim"), py::arg("grid_n") = 64);

    py::class_<AuditVerdict>(m, "AuditVerdict")
        .def_readonly("model", &AuditVerdict::model)
        .def_readonly("geometry_class", &AuditVerdict::geometry_class)
        .def_readonly("witness_norm", &AuditVerdict::witness_norm)
        .def_readonly("retro_window", &AuditVerdict::retro_window);
    m.def("audit", &audit, py::arg("model"), py::arg("det_a"), py::arg("det_b"), py::arg("dim"),
          py::arg("grid_n") = 64);
    m.def("one_way_smearings", &one_way_smearings);

    m.def(
        "sourced_field_at",
        [](const Smearing& source, double t, double x) {
            return sourced_field(source, SpacetimePoint::line(t, x));
        },
        py::arg("source"), py::arg("t"), py::arg("x"));
    m.def(
        "hdiff",
        [](double timescale, const Smearing& source, double box, double phase) {
            HdiffOptions opts;
            opts.box_halfwidth = box;
            opts.eval_phase = phase;
            const auto res = hdiff(timescale, source, opts);
            return py::make_tuple(res.value, res.box_halfwidth);
        },
        py::arg("timescale"), py::arg("source"), py::arg("box") = 0.0, py::arg("phase") = 1.0);

    py::class_<gme::GmeReport>(m, "GmeReport")
        .def_readonly("lambda_sq", &gme::GmeReport::lambda_sq)
        .def_readonly("t_over_lc", &gme::GmeReport::t_over_lc)
        .def_readonly("required_resolution_s", &gme::GmeReport::required_resolution_s)
        .def_readonly("qc_indistinguishable", &gme::GmeReport::qc_indistinguishable);
    m.def("effective_coupling", &gme::effective_coupling);
    m.def(
        "regime_report",
        [](double m1, double m2, double separation_m, double duration_s, double epsilon,
           double resolution_s) {
            gme::GmeParameters p{m1, m2, separation_m, duration_s, epsilon, resolution_s};
            return gme::regime_report(p);
        },
        py::arg("m1_kg"), py::arg("m2_kg"), py::arg("separation_m"), py::arg("duration_s"),
        py::arg("epsilon") = 1e-6, py::arg("resolution_s") = 1e-3);
}
