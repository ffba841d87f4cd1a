#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <limits>

#include "dbar/ball2d.hpp"
#include "dbar/errors.hpp"
#include "dbar/reproduce.hpp"
#include "dbar/solver.hpp"
#include "dbar/spectrum.hpp"
#include "dbar/weights.hpp"
#include "dbar/weights_nd.hpp"

namespace py = pybind11;
using dbar::Complex;
using Coeffs = std::vector<Complex>;

namespace {

Coeffs to_list(const dbar::HolomorphicCoeffs& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

dbar::nd::PshWeight make_psh(int dimension, py::function p, std::vector<double> radii) {
  auto rule = [p](std::span<const Complex> z) {
    py::list point;
    for (const auto& c : z) point.append(c);
    return p(point).cast<double>();
  };
  return dbar::nd::make_psh_weight(dimension, rule, std::move(radii));
}

std::vector<Complex> point(const std::vector<Complex>& z) { return z; }

py::dict table_dict(const dbar::reproduce::Table& t) {
  py::list rows;
  for (const auto& row : t.rows) {
    py::list cells;
    for (const auto& c : row) std::visit([&](const auto& v) { cells.append(v); }, c);
    rows.append(cells);
  }
  py::dict d;
  d["columns"] = t.columns;
  d["rows"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted Bergman spaces and the canonical dbar solution operator";

  auto base = py::register_exception<dbar::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<dbar::ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<dbar::DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<dbar::QuadratureError>(m, "QuadratureError", base.ptr());
  py::register_exception<dbar::TruncationError>(m, "TruncationError", base.ptr());
  py::register_exception<dbar::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<dbar::ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<dbar::InconclusiveSupremumError>(m, "InconclusiveSupremumError", base.ptr());
  py::register_exception<dbar::InputError>(m, "InputError", base.ptr());

  py::class_<dbar::WeightSpec>(m, "WeightSpec")
      .def_static("disc", &dbar::WeightSpec::disc, py::arg("alpha") = 0.0)
      .def_static("fock", &dbar::WeightSpec::fock, py::arg("m") = 2.0)
      .def_static("custom", &dbar::WeightSpec::custom, py::arg("density"),
                  py::arg("support_radius") = std::numeric_limits<double>::infinity(), py::arg("label") = "custom")
      .def_static("parse", &dbar::WeightSpec::parse)
      .def("density", &dbar::WeightSpec::density)
      .def_property_readonly("support_radius", &dbar::WeightSpec::support_radius)
      .def("describe", &dbar::WeightSpec::describe)
      .def_property_readonly("is_disc", &dbar::WeightSpec::is_disc)
      .def_property_readonly("is_fock", &dbar::WeightSpec::is_fock)
      .def_property_readonly("is_custom", &dbar::WeightSpec::is_custom)
      .def("__repr__", [](const dbar::WeightSpec& w) { return "WeightSpec(" + w.describe() + ")"; });

  m.def("disc_moment_closed", &dbar::disc_moment_closed, py::arg("alpha"), py::arg("n"));
  m.def("fock_moment_closed", &dbar::fock_moment_closed, py::arg("m"), py::arg("n"));
  m.def("moment_quadrature", &dbar::moment_quadrature, py::arg("weight"), py::arg("n"), py::arg("rel_tol") = 1e-10);
  m.def("moment_log", &dbar::moment_log, py::arg("weight"), py::arg("n"));

  py::class_<dbar::MomentSequence>(m, "MomentSequence")
      .def(py::init<dbar::WeightSpec, double>(), py::arg("weight"), py::arg("quad_rel_tol") = 1e-10)
      .def_property_readonly("weight", &dbar::MomentSequence::weight)
      .def("log_moment", &dbar::MomentSequence::log_moment)
      .def("moment", &dbar::MomentSequence::moment)
      .def("log_ratio", &dbar::MomentSequence::log_ratio)
      .def("ratio", &dbar::MomentSequence::ratio)
      .def("log_ratio_step", &dbar::MomentSequence::log_ratio_step)
      .def("log_moments", &dbar::MomentSequence::log_moments);

  py::enum_<dbar::Verdict>(m, "Verdict")
      .value("HilbertSchmidt", dbar::Verdict::HilbertSchmidt)
      .value("CompactNotHilbertSchmidt", dbar::Verdict::CompactNotHilbertSchmidt)
      .value("NonCompact", dbar::Verdict::NonCompact);

  py::class_<dbar::ClassifyOptions>(m, "ClassifyOptions")
      .def(py::init<>())
      .def_readwrite("tail_start", &dbar::ClassifyOptions::tail_start)
      .def_readwrite("tail_len", &dbar::ClassifyOptions::tail_len)
      .def_readwrite("eps_zero", &dbar::ClassifyOptions::eps_zero)
      .def_readwrite("big", &dbar::ClassifyOptions::big);

  py::class_<dbar::Evidence>(m, "Evidence")
      .def_readonly("tail_begin", &dbar::Evidence::tail_begin)
      .def_readonly("tail_end", &dbar::Evidence::tail_end)
      .def_readonly("lambda_tail_max", &dbar::Evidence::lambda_tail_max)
      .def_readonly("lambda_tail_min", &dbar::Evidence::lambda_tail_min)
      .def_readonly("ratio_tail", &dbar::Evidence::ratio_tail)
      .def_readonly("ratio_drift", &dbar::Evidence::ratio_drift)
      .def_readonly("decay_exponent", &dbar::Evidence::decay_exponent)
      .def_readonly("extrapolated_ratio", &dbar::Evidence::extrapolated_ratio)
      .def_readonly("note", &dbar::Evidence::note);

  py::class_<dbar::Classification>(m, "Classification")
      .def_readonly("verdict", &dbar::Classification::verdict)
      .def_readonly("evidence", &dbar::Classification::evidence);

  py::class_<dbar::SpectralDiagnostics>(m, "SpectralDiagnostics")
      .def_readonly("weight", &dbar::SpectralDiagnostics::weight)
      .def_readonly("lambdas", &dbar::SpectralDiagnostics::lambdas)
      .def_readonly("ratios", &dbar::SpectralDiagnostics::ratios)
      .def_readonly("partial_sums", &dbar::SpectralDiagnostics::partial_sums)
      .def_readonly("classification", &dbar::SpectralDiagnostics::classification);

  m.def("eigenvalue", &dbar::eigenvalue, py::arg("moments"), py::arg("n"));
  m.def("hs_partial_sum", &dbar::hs_partial_sum, py::arg("moments"), py::arg("N"));
  m.def("classify", &dbar::classify, py::arg("moments"), py::arg("options") = dbar::ClassifyOptions{});
  m.def("diagnose", &dbar::diagnose, py::arg("moments"), py::arg("n_max"),
        py::arg("options") = dbar::ClassifyOptions{});
  m.def("stirling_surrogate", &dbar::stirling_surrogate, py::arg("m"), py::arg("k"));
  m.def("gamma_ratio_difference", &dbar::gamma_ratio_difference, py::arg("m"), py::arg("k"));

  py::class_<dbar::HybridFunction>(m, "HybridFunction")
      .def_property_readonly("conj_factor", [](const dbar::HybridFunction& F) { return to_list(F.conj_factor); })
      .def_property_readonly("holo_part", [](const dbar::HybridFunction& F) { return to_list(F.holo_part); })
      .def("__call__", &dbar::HybridFunction::operator());

  auto coeffs = [](const Coeffs& c) { return dbar::HolomorphicCoeffs(c); };
  m.def("norm_sq", [=](const Coeffs& f, const dbar::MomentSequence& s) { return dbar::norm_sq(coeffs(f), s); });
  m.def("apply_solution_operator",
        [=](const Coeffs& f, const dbar::MomentSequence& s) { return dbar::apply_solution_operator(coeffs(f), s); });
  m.def("kernel_eval", &dbar::kernel_eval, py::arg("moments"), py::arg("z"), py::arg("w"), py::arg("rel_tol") = 1e-13);
  m.def(
      "project_dilated",
      [=](const Coeffs& f, double rho, const dbar::MomentSequence& s) {
        return to_list(dbar::project_dilated(coeffs(f), rho, s));
      },
      py::arg("f"), py::arg("rho"), py::arg("moments"));
  m.def(
      "defect_norm_sq",
      [=](const Coeffs& f, double rho, const dbar::MomentSequence& s) { return dbar::defect_norm_sq(coeffs(f), rho, s); },
      py::arg("f"), py::arg("rho"), py::arg("moments"));
  m.def("bound_constant", &dbar::bound_constant, py::arg("moments"), py::arg("N"));
  m.def("monomial_inner_product", &dbar::monomial_inner_product, py::arg("F"), py::arg("j"), py::arg("moments"));
  m.def("wirtinger_dbar", &dbar::wirtinger_dbar, py::arg("F"), py::arg("z"), py::arg("h") = 1e-5);
  m.def(
      "dbar_residual",
      [=](const dbar::HybridFunction& F, const Coeffs& f, const std::vector<Complex>& pts, double h) {
        return dbar::dbar_residual(F, coeffs(f), pts, h);
      },
      py::arg("F"), py::arg("f"), py::arg("points"), py::arg("h") = 1e-5);
  m.def(
      "reproduce_check",
      [=](const dbar::MomentSequence& s, const Coeffs& f, Complex z, double tol) {
        return dbar::reproduce_check(s, coeffs(f), z, tol);
      },
      py::arg("moments"), py::arg("f"), py::arg("z"), py::arg("rel_tol") = 1e-8);

  auto ball = m.def_submodule("ball", "Unit ball of C^2");
  ball.def("ball_moment_log", &dbar::ball::ball_moment_log, py::arg("alpha"), py::arg("n1"), py::arg("n2"));
  ball.def("ball_moment_quadrature", &dbar::ball::ball_moment_quadrature, py::arg("alpha"), py::arg("n1"),
           py::arg("n2"), py::arg("rel_tol") = 1e-11);
  ball.def("form_energy", &dbar::ball::form_energy, py::arg("alpha"), py::arg("n1"), py::arg("n2"),
           py::arg("direction"));
  ball.def("form_energy_from_moments", &dbar::ball::form_energy_from_moments, py::arg("alpha"), py::arg("n1"),
           py::arg("n2"), py::arg("direction"));
  ball.def("ball_hs_partial_sum", &dbar::ball::ball_hs_partial_sum, py::arg("alpha"), py::arg("N"));
  ball.def("ball_kernel_series", &dbar::ball::ball_kernel_series, py::arg("alpha"), py::arg("z"), py::arg("w"),
           py::arg("rel_tol") = 1e-13);
  ball.def("ball_kernel_closed", &dbar::ball::ball_kernel_closed, py::arg("alpha"), py::arg("z"), py::arg("w"));
  ball.def("ball_kernel_constant", &dbar::ball::ball_kernel_constant, py::arg("alpha"));

  auto nd = m.def_submodule("nd", "Weights on C^n");
  py::class_<dbar::nd::PshWeight>(nd, "PshWeight")
      .def(py::init(&make_psh), py::arg("dimension"), py::arg("p"), py::arg("sample_radii"))
      .def_readonly("dimension", &dbar::nd::PshWeight::dimension)
      .def_readonly("sample_radii", &dbar::nd::PshWeight::sample_radii);
  py::class_<dbar::nd::SupremumOptions>(nd, "SupremumOptions")
      .def(py::init<>())
      .def_readwrite("grid", &dbar::nd::SupremumOptions::grid)
      .def_readwrite("refinements", &dbar::nd::SupremumOptions::refinements);
  py::class_<dbar::nd::HypothesisCheck>(nd, "HypothesisCheck")
      .def_readonly("name", &dbar::nd::HypothesisCheck::name)
      .def_readonly("passed", &dbar::nd::HypothesisCheck::passed)
      .def_readonly("detail", &dbar::nd::HypothesisCheck::detail);
  py::class_<dbar::nd::HypothesisReport>(nd, "HypothesisReport")
      .def_readonly("tau", &dbar::nd::HypothesisReport::tau)
      .def_readonly("sigma", &dbar::nd::HypothesisReport::sigma)
      .def_readonly("checks", &dbar::nd::HypothesisReport::checks)
      .def_readonly("all_passed", &dbar::nd::HypothesisReport::all_passed)
      .def_readonly("conclusion", &dbar::nd::HypothesisReport::conclusion);
  nd.def(
      "conjugate_transform",
      [](const dbar::nd::PshWeight& w, const std::vector<Complex>& at, double radius,
         const dbar::nd::SupremumOptions& opts) {
        return radius > 0.0 ? dbar::nd::conjugate_transform(w, point(at), radius, opts)
                            : dbar::nd::conjugate_transform(w, point(at), opts);
      },
      py::arg("weight"), py::arg("w"), py::arg("search_radius") = 0.0,
      py::arg("options") = dbar::nd::SupremumOptions{});
  nd.def(
      "sup_shift",
      [](const dbar::nd::PshWeight& w, const std::vector<Complex>& z, const dbar::nd::SupremumOptions& opts) {
        return dbar::nd::sup_shift(w, z, opts);
      },
      py::arg("weight"), py::arg("z"), py::arg("options") = dbar::nd::SupremumOptions{});
  nd.def(
      "double_conjugate",
      [](const dbar::nd::PshWeight& w, const std::vector<Complex>& z, double outer,
         const dbar::nd::SupremumOptions& opts) { return dbar::nd::double_conjugate(w, z, outer, opts); },
      py::arg("weight"), py::arg("z"), py::arg("outer_radius"), py::arg("options") = dbar::nd::SupremumOptions{});
  nd.def(
      "check_hs_hypotheses",
      [](const dbar::nd::PshWeight& w, double tau, double sigma) { return dbar::nd::check_hs_hypotheses(w, tau, sigma); },
      py::arg("weight"), py::arg("tau"), py::arg("sigma"));

  m.def("criterion_ids", &dbar::reproduce::criterion_ids);
  m.def(
      "run_criterion",
      [](const std::string& id, std::uint64_t seed) {
        const auto r = dbar::reproduce::run_criterion(id, {seed});
        py::list checks;
        for (const auto& c : r.checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["detail"] = c.detail;
          checks.append(d);
        }
        py::dict out;
        out["id"] = r.id;
        out["title"] = r.title;
        out["passed"] = r.passed;
        out["checks"] = checks;
        out["table"] = table_dict(r.table);
        return out;
      },
      py::arg("id"), py::arg("seed") = dbar::reproduce::Options{}.seed);
}
