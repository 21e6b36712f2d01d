/*
 * Python bindings for the s1lab library.
 *
 * Thin and mechanical: every exposed function forwards to the C++ entry
 * point of the same name, structs map to classes with readonly fields,
 * and the library's error taxonomy maps onto named Python exceptions
 * (DomainError is a ValueError; the rest are RuntimeErrors).
 */
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "s1lab/argument.hpp"
#include "s1lab/dirichlet.hpp"
#include "s1lab/errors.hpp"
#include "s1lab/grid.hpp"
#include "s1lab/moments.hpp"
#include "s1lab/parallel.hpp"
#include "s1lab/search.hpp"
#include "s1lab/settings.hpp"
#include "s1lab/smoothing.hpp"
#include "s1lab/zeta.hpp"

namespace py = pybind11;
using namespace s1lab;

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical study of the integral of the zeta argument on "
              "short intervals";

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError",
                                           PyExc_RuntimeError);
    py::register_exception<quadrature_error>(m, "QuadratureError",
                                             PyExc_RuntimeError);
    py::register_exception<tracking_error>(m, "TrackingError",
                                           PyExc_RuntimeError);

    m.def("set_max_threads", &set_max_threads, py::arg("n"),
          "cap the worker pool; 0 restores the hardware default");
    m.def(
        "set_cache_dir",
        [](const std::string& dir) { settings().cache_dir = dir; },
        py::arg("dir"), "directory for on-disk tables; empty disables");
    m.def(
        "set_tolerance",
        [](double tol) { settings().strip_rel_tol = tol; }, py::arg("tol"),
        "relative tolerance of the default strip quadrature");

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init([](double t0, double dt, std::vector<double> values) {
                 return GridFunction{t0, dt, std::move(values)};
             }),
             py::arg("t0"), py::arg("dt"), py::arg("values"))
        .def_readonly("t0", &GridFunction::t0)
        .def_readonly("dt", &GridFunction::dt)
        .def_readonly("values", &GridFunction::values)
        .def("node", &GridFunction::node, py::arg("i"))
        .def("all_finite", &GridFunction::all_finite)
        .def("__len__", [](const GridFunction& g) { return g.size(); });

    // zeta
    m.def(
        "zeta",
        [](double sigma, double t) { return zeta::zeta({sigma, t}); },
        py::arg("sigma"), py::arg("t"));
    m.def(
        "log_abs_zeta",
        [](double sigma, double t) { return zeta::log_abs_zeta({sigma, t}); },
        py::arg("sigma"), py::arg("t"));
    py::class_<zeta::EvalResult>(m, "EvalResult")
        .def_readonly("value", &zeta::EvalResult::value)
        .def_readonly("abs_error_bound", &zeta::EvalResult::abs_error_bound);
    py::class_<zeta::LogAbsResult>(m, "LogAbsResult")
        .def_readonly("value", &zeta::LogAbsResult::value)
        .def_readonly("abs_zeta", &zeta::LogAbsResult::abs_zeta)
        .def_readonly("singular", &zeta::LogAbsResult::singular);
    m.def("rs_theta", &zeta::rs_theta, py::arg("t"));
    m.def("rs_theta_error", &zeta::rs_theta_error, py::arg("t"));
    m.def("hardy_z", &zeta::hardy_z, py::arg("t"));
    m.def("hardy_z_error", &zeta::hardy_z_error, py::arg("t"));
    m.def("zero_ordinates", &zeta::zero_ordinates, py::arg("t_lo"),
          py::arg("t_hi"));
    m.def("zero_count", &zeta::zero_count, py::arg("T"));
    m.def("near_ordinate", &zeta::near_ordinate, py::arg("T"),
          py::arg("width"));

    // argument
    py::enum_<argument::Method>(m, "Method")
        .value("path_tracking", argument::Method::path_tracking)
        .value("zero_counting", argument::Method::zero_counting);
    py::class_<argument::ArgumentValue>(m, "ArgumentValue")
        .def_readonly("t", &argument::ArgumentValue::t)
        .def_readonly("s_value", &argument::ArgumentValue::s_value)
        .def_readonly("method", &argument::ArgumentValue::method)
        .def_readonly("est_error", &argument::ArgumentValue::est_error);
    py::class_<argument::S1Value>(m, "S1Value")
        .def_readonly("t", &argument::S1Value::t)
        .def_readonly("s1_value", &argument::S1Value::s1_value)
        .def_readonly("tail_cutoff", &argument::S1Value::tail_cutoff)
        .def_readonly("est_error", &argument::S1Value::est_error);
    py::class_<argument::ArgumentConstants>(m, "ArgumentConstants")
        .def_readonly("C", &argument::ArgumentConstants::C);
    m.def("s_via_path", &argument::s_via_path, py::arg("T"));
    m.def("s_via_counting", &argument::s_via_counting, py::arg("T"));
    m.def("s1_strip", &argument::s1_strip, py::arg("T"), py::arg("cutoff"));
    m.def("s1_via_integral", &argument::s1_via_integral, py::arg("T"));
    m.def("constant_C", &argument::constant_C);

    // dirichlet
    py::class_<dirichlet::PrimePower>(m, "PrimePower")
        .def_readonly("n", &dirichlet::PrimePower::n)
        .def_readonly("lambda_", &dirichlet::PrimePower::lambda);
    py::class_<dirichlet::PrimePowerTable>(m, "PrimePowerTable")
        .def_readonly("tau", &dirichlet::PrimePowerTable::tau)
        .def_readonly("primes", &dirichlet::PrimePowerTable::primes)
        .def_readonly("prime_powers",
                      &dirichlet::PrimePowerTable::prime_powers);
    m.def("build_table", &dirichlet::build_table, py::arg("tau"));
    m.def("w_point", &dirichlet::w_point, py::arg("t"), py::arg("table"));
    m.def("w_grid", &dirichlet::w_grid, py::arg("t0"), py::arg("dt"),
          py::arg("n"), py::arg("table"));
    m.def("full_lambda_sum", &dirichlet::full_lambda_sum, py::arg("t"),
          py::arg("table"));

    // smoothing
    py::class_<smoothing::FejerParams>(m, "FejerParams")
        .def(py::init([](double tau, double H, double t) {
                 return smoothing::FejerParams{tau, H, t};
             }),
             py::arg("tau"), py::arg("H"), py::arg("t"))
        .def_readwrite("tau", &smoothing::FejerParams::tau)
        .def_readwrite("H", &smoothing::FejerParams::H)
        .def_readwrite("t", &smoothing::FejerParams::t);
    py::class_<smoothing::IdentityReport>(m, "IdentityReport")
        .def_readonly("lhs", &smoothing::IdentityReport::lhs)
        .def_readonly("rhs_sum", &smoothing::IdentityReport::rhs_sum)
        .def_readonly("rhs_pole", &smoothing::IdentityReport::rhs_pole)
        .def_readonly("rhs_constant", &smoothing::IdentityReport::rhs_constant)
        .def_readonly("residual", &smoothing::IdentityReport::residual)
        .def_readonly("tail_bound", &smoothing::IdentityReport::tail_bound)
        .def_readonly("quadrature_error",
                      &smoothing::IdentityReport::quadrature_error);
    m.def("fejer", &smoothing::fejer, py::arg("u"));
    m.def("fejer_hat", &smoothing::fejer_hat, py::arg("x"), py::arg("tau"));
    m.def("fejer_complex_sq", &smoothing::fejer_complex_sq, py::arg("z_re"),
          py::arg("z_im"));
    m.def("smoothed_s1", &smoothing::smoothed_s1, py::arg("params"));
    m.def("pole_term", &smoothing::pole_term, py::arg("t"), py::arg("tau"));
    m.def("lemma1_identity_check", &smoothing::lemma1_identity_check,
          py::arg("params"));

    // moments
    py::class_<moments::MomentPair>(m, "MomentPair")
        .def_readonly("even_value", &moments::MomentPair::even_value)
        .def_readonly("even_error", &moments::MomentPair::even_error)
        .def_readonly("odd_value", &moments::MomentPair::odd_value)
        .def_readonly("odd_error", &moments::MomentPair::odd_error);
    py::class_<moments::Lemma4Lower>(m, "Lemma4Lower")
        .def_readonly("value", &moments::Lemma4Lower::value)
        .def_readonly("log_first_term", &moments::Lemma4Lower::log_first_term)
        .def_readonly("log_second_term",
                      &moments::Lemma4Lower::log_second_term)
        .def_readonly("hypothesis_ok", &moments::Lemma4Lower::hypothesis_ok);
    py::class_<moments::LogBound>(m, "LogBound")
        .def_readonly("log_value", &moments::LogBound::log_value)
        .def_readonly("value", &moments::LogBound::value);
    py::class_<moments::Lemma3Bound>(m, "Lemma3Bound")
        .def_readonly("value", &moments::Lemma3Bound::value)
        .def_readonly("log_value", &moments::Lemma3Bound::log_value)
        .def_readonly("log_term1", &moments::Lemma3Bound::log_term1)
        .def_readonly("log_term2", &moments::Lemma3Bound::log_term2)
        .def_readonly("hypothesis_mtau_ok",
                      &moments::Lemma3Bound::hypothesis_mtau_ok)
        .def_readonly("hypothesis_k_ok", &moments::Lemma3Bound::hypothesis_k_ok);
    py::class_<moments::Lemma5Verdict>(m, "Lemma5Verdict")
        .def_readonly("even_lower_ok", &moments::Lemma5Verdict::even_lower_ok)
        .def_readonly("odd_upper_ok", &moments::Lemma5Verdict::odd_upper_ok)
        .def_readonly("r_upper_ok", &moments::Lemma5Verdict::r_upper_ok)
        .def_readonly("M", &moments::Lemma5Verdict::M)
        .def_readonly("conclusion_available",
                      &moments::Lemma5Verdict::conclusion_available);
    py::class_<moments::MomentReport>(m, "MomentReport")
        .def_readonly("T", &moments::MomentReport::T)
        .def_readonly("H", &moments::MomentReport::H)
        .def_readonly("k", &moments::MomentReport::k)
        .def_readonly("m", &moments::MomentReport::m)
        .def_readonly("even_moment", &moments::MomentReport::even_moment)
        .def_readonly("odd_moment", &moments::MomentReport::odd_moment)
        .def_readonly("lemma4_lower", &moments::MomentReport::lemma4_lower)
        .def_readonly("lemma4_odd_bound",
                      &moments::MomentReport::lemma4_odd_bound)
        .def_readonly("quadrature_error",
                      &moments::MomentReport::quadrature_error);
    m.def("compute_moments", &moments::compute_moments, py::arg("g"),
          py::arg("k"), py::arg("T"), py::arg("H"));
    m.def("lemma4_lower_bound", &moments::lemma4_lower_bound, py::arg("k"),
          py::arg("tau"), py::arg("H"));
    m.def("lemma4_odd_bound", &moments::lemma4_odd_bound, py::arg("k"),
          py::arg("tau"));
    m.def("lemma3_rhs", &moments::lemma3_rhs, py::arg("m"), py::arg("tau"),
          py::arg("eps"), py::arg("T"), py::arg("H"));
    m.def("lemma3_rhs_log", &moments::lemma3_rhs_log, py::arg("m"),
          py::arg("tau"), py::arg("eps"), py::arg("log_T"), py::arg("log_H"));
    m.def("lemma5_certify", &moments::lemma5_certify, py::arg("wr"),
          py::arg("k"), py::arg("M"), py::arg("T"), py::arg("H"),
          py::arg("r_moment"));
    m.def("moment_report", &moments::moment_report, py::arg("g"), py::arg("k"),
          py::arg("tau"), py::arg("T"), py::arg("H"));
    m.def("moment_reports", &moments::moment_reports, py::arg("g"),
          py::arg("ks"), py::arg("tau"), py::arg("T"), py::arg("H"));

    // search
    py::class_<search::ConditionFlags>(m, "ConditionFlags")
        .def_readonly("k_at_least_2", &search::ConditionFlags::k_at_least_2)
        .def_readonly("mtau", &search::ConditionFlags::mtau)
        .def_readonly("klogk", &search::ConditionFlags::klogk)
        .def_readonly("e3ktau", &search::ConditionFlags::e3ktau)
        .def_readonly("delta", &search::ConditionFlags::delta)
        .def("all", &search::ConditionFlags::all);
    py::class_<search::SearchParams>(m, "SearchParams")
        .def_readonly("eps", &search::SearchParams::eps)
        .def_readonly("T", &search::SearchParams::T)
        .def_readonly("log_T", &search::SearchParams::log_T)
        .def_readonly("H", &search::SearchParams::H)
        .def_readonly("log_H", &search::SearchParams::log_H)
        .def_readonly("tau", &search::SearchParams::tau)
        .def_readonly("k", &search::SearchParams::k)
        .def_readonly("m", &search::SearchParams::m)
        .def_readonly("M", &search::SearchParams::M)
        .def_readonly("bound_B", &search::SearchParams::bound_B)
        .def_readonly("delta", &search::SearchParams::delta)
        .def_readonly("flags", &search::SearchParams::flags)
        .def_readonly("feasible_log_T", &search::SearchParams::feasible_log_T);
    py::class_<search::MethodTrace>(m, "MethodTrace")
        .def_readonly("grid_dt", &search::MethodTrace::grid_dt)
        .def_readonly("sweep_dt", &search::MethodTrace::sweep_dt)
        .def_readonly("local_dt", &search::MethodTrace::local_dt)
        .def_readonly("candidates", &search::MethodTrace::candidates)
        .def_readonly("refine_rounds", &search::MethodTrace::refine_rounds)
        .def_readonly("s1_evaluations", &search::MethodTrace::s1_evaluations);
    py::class_<search::ExtremeValueCertificate>(m, "ExtremeValueCertificate")
        .def_readonly("t_lo", &search::ExtremeValueCertificate::t_lo)
        .def_readonly("t_hi", &search::ExtremeValueCertificate::t_hi)
        .def_readonly("sup_s1", &search::ExtremeValueCertificate::sup_s1)
        .def_readonly("t_plus", &search::ExtremeValueCertificate::t_plus)
        .def_readonly("inf_s1", &search::ExtremeValueCertificate::inf_s1)
        .def_readonly("t_minus", &search::ExtremeValueCertificate::t_minus)
        .def_readonly("bound_b", &search::ExtremeValueCertificate::bound_b)
        .def_readonly("passes_omega_check",
                      &search::ExtremeValueCertificate::passes_omega_check)
        .def_readonly("trace", &search::ExtremeValueCertificate::trace);
    py::class_<search::RunArtifacts>(m, "RunArtifacts")
        .def_readonly("report_path", &search::RunArtifacts::report_path)
        .def_readonly("csv_path", &search::RunArtifacts::csv_path);
    m.def("derive_params", &search::derive_params, py::arg("T"),
          py::arg("eps"));
    m.def("derive_params_log", &search::derive_params_log, py::arg("log_T"),
          py::arg("eps"));
    m.def("feasible_log_t", &search::feasible_log_t, py::arg("eps"));
    m.def("scan", &search::scan, py::arg("T"), py::arg("H"), py::arg("tau"),
          py::arg("grid_dt"), py::arg("refine") = false,
          py::arg("eps") = 1e-4);
    m.def(
        "run_report",
        [](double T, double H, double tau, double grid_dt, bool refine,
           double eps, int moments_k, double lemma5_M,
           const std::string& out_dir) {
            search::RunConfig cfg;
            cfg.T = T;
            cfg.H = H;
            cfg.tau = tau;
            cfg.grid_dt = grid_dt;
            cfg.refine = refine;
            cfg.eps = eps;
            cfg.moments_k = moments_k;
            cfg.lemma5_M = lemma5_M;
            cfg.out_dir = out_dir;
            return search::run_report(cfg);
        },
        py::arg("T"), py::arg("H"), py::arg("tau"), py::arg("grid_dt"),
        py::arg("refine") = false, py::arg("eps") = 1e-4,
        py::arg("moments_k") = 0, py::arg("lemma5_M") = 0.0,
        py::arg("out_dir"));
}
