#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "laxlab/flow.hpp"
#include "laxlab/io.hpp"
#include "laxlab/verify.hpp"

namespace py = pybind11;
using namespace laxlab;

namespace {

LaxConfig make_config(Complex a, Complex x0, Complex y0, Complex z0,
                      const std::map<int, Eigen::MatrixXcd>& weights, double tol) {
  P0Weights w;
  for (const auto& [k, m] : weights) w[k] = m;
  return LaxConfig::make(a, x0, y0, z0, std::move(w), tol);
}

py::dict lattice_report_dict(const LatticeReport& rep) {
  py::dict d;
  py::list pts;
  for (const auto& p : rep.points)
    pts.append(py::make_tuple(p.t, p.m, p.n, to_string(p.source)));
  d["points"] = pts;
  d["u0"] = rep.offsets.u0;
  d["xi0"] = rep.offsets.xi0;
  d["K"] = rep.periods.K;
  d["Kprime"] = rep.periods.Kprime;
  d["K1"] = rep.periods.K1;
  d["K1prime"] = rep.periods.K1prime;
  return d;
}

}  // namespace

PYBIND11_MODULE(_laxlab, m) {
  m.doc() = "complex-time singularities of a family of Lax flows";

  py::register_exception<Error>(m, "LaxlabError");

  py::class_<LaxConfig>(m, "LaxConfig")
      .def(py::init(&make_config), py::arg("a"), py::arg("x0"), py::arg("y0"),
           py::arg("z0"), py::arg("p0_weights") = std::map<int, Eigen::MatrixXcd>{},
           py::arg("tol") = 1e-9)
      .def_readonly("a", &LaxConfig::a)
      .def_readonly("x0", &LaxConfig::x0)
      .def_readonly("y0", &LaxConfig::y0)
      .def_readonly("z0", &LaxConfig::z0)
      .def_readonly("A", &LaxConfig::A)
      .def_readonly("B", &LaxConfig::B)
      .def_readonly("tol", &LaxConfig::tol)
      .def("to_json", [](const LaxConfig& c) { return c.to_json().dump(); })
      .def_static("from_json", [](const std::string& s) {
        return LaxConfig::from_json(nlohmann::json::parse(s));
      });

  py::class_<Window>(m, "Window")
      .def(py::init([](double re_min, double re_max, double im_min, double im_max) {
             return Window{re_min, re_max, im_min, im_max};
           }),
           py::arg("re_min") = -4, py::arg("re_max") = 4, py::arg("im_min") = -4,
           py::arg("im_max") = 4)
      .def("contains", &Window::contains, py::arg("t"), py::arg("pad") = 0.0);

  m.def("rhs_ode", &rhs_ode, py::arg("x"), py::arg("y"), py::arg("z"), py::arg("a"));
  m.def("invariants", &invariants, py::arg("x"), py::arg("y"), py::arg("z"),
        py::arg("a"));
  m.def(
      "build_l0_coeffs",
      [](const LaxConfig& c) {
        const LaurentMatrixPoly L = build_L0(c);
        std::map<int, Eigen::MatrixXcd> out;
        for (int k = -1; k <= 1; ++k) out[k] = L.coeff(k);
        return out;
      },
      py::arg("config"));
  m.def(
      "eval_l0",
      [](const LaxConfig& c, Complex lam) { return build_L0(c).eval(lam); },
      py::arg("config"), py::arg("lam"));

  m.def(
      "integrate_system",
      [](const LaxConfig& c, const std::vector<Complex>& vertices, double max_step,
         double tol) {
        PathSpec path{vertices, max_step, tol};
        const SystemTrajectory traj = integrate_system(c, path);
        std::vector<std::array<Complex, 4>> rows;
        rows.reserve(traj.samples.size());
        for (const auto& s : traj.samples) rows.push_back({s.t, s.x, s.y, s.z});
        return py::make_tuple(rows, traj.max_A_drift, traj.max_B_drift);
      },
      py::arg("config"), py::arg("vertices"), py::arg("max_step") = 0.05,
      py::arg("tol") = 1e-10);
  m.def(
      "detect_blowup",
      [](const LaxConfig& c, Complex direction, double max_radius, double tol) {
        const PoleEstimate est = detect_blowup(c, direction, max_radius, tol);
        return py::make_tuple(est.t_star, est.exponent);
      },
      py::arg("config"), py::arg("direction"), py::arg("max_radius") = 4.0,
      py::arg("tol") = 1e-10);

  m.def("complete_K", &complete_K, py::arg("ksq"));
  m.def("complete_Kprime", &complete_Kprime, py::arg("ksq"));
  m.def("theta1", &theta1, py::arg("u"), py::arg("q"));
  m.def(
      "jacobi_sncndn",
      [](Complex u, Complex ksq) {
        const Jacobi j = jacobi_sncndn(u, ksq);
        return py::make_tuple(j.sn, j.cn, j.dn);
      },
      py::arg("u"), py::arg("ksq"));
  m.def(
      "abel_u",
      [](Complex xt, Complex ksq, const std::vector<Complex>& hint) {
        const AbelResult r = abel_u(xt, ksq, hint);
        return py::make_tuple(r.value.u, r.w_end);
      },
      py::arg("xtilde"), py::arg("ksq"), py::arg("path_hint") = std::vector<Complex>{});

  py::class_<BranchData>(m, "BranchData")
      .def_readonly("x1", &BranchData::x1)
      .def_readonly("x2", &BranchData::x2)
      .def_readonly("lambda1", &BranchData::lambda1)
      .def_readonly("lambda2", &BranchData::lambda2)
      .def_readonly("k", &BranchData::k)
      .def_readonly("k1", &BranchData::k1)
      .def_readonly("lhat1", &BranchData::lhat1)
      .def_readonly("lhat2", &BranchData::lhat2)
      .def_readonly("mu_hat_sign", &BranchData::mu_hat_sign);
  m.def("branch_points", &branch_points, py::arg("config"));
  m.def("spectral_curve", &spectral_curve, py::arg("config"));

  m.def(
      "classical_lattice",
      [](const LaxConfig& c, const Window& w, int mn_bound) {
        return lattice_report_dict(classical_lattice(c, w, mn_bound));
      },
      py::arg("config"), py::arg("window"), py::arg("mn_bound") = 12);
  m.def(
      "rh_lattice",
      [](const LaxConfig& c, const Window& w, int mn_bound) {
        return lattice_report_dict(rh_lattice(c, w, mn_bound));
      },
      py::arg("config"), py::arg("window"), py::arg("mn_bound") = 12);
  m.def(
      "compare_lattice_points",
      [](const LaxConfig& c, const Window& w, int mn_bound, double tol) {
        const MatchReport r = compare_lattices(classical_lattice(c, w, mn_bound),
                                               rh_lattice(c, w, mn_bound), tol);
        return py::make_tuple(r.bijection, r.max_distance);
      },
      py::arg("config"), py::arg("window"), py::arg("mn_bound") = 12,
      py::arg("tol") = 1e-6);
  m.def(
      "xi0",
      [](const LaxConfig& c) {
        const Xi0Result r = xi0(c, branch_points(c));
        return py::make_tuple(r.xi0, r.lambda0, r.collapse_residual);
      },
      py::arg("config"));
  m.def(
      "period_relations",
      [](const LaxConfig& c) {
        const PeriodRelations r = period_relations(branch_points(c));
        py::dict d;
        d["eps1"] = r.eps1;
        d["eps2"] = r.eps2;
        d["resid1"] = r.resid1;
        d["resid2"] = r.resid2;
        return d;
      },
      py::arg("config"));

  m.def(
      "sigma_min",
      [](const LaxConfig& c, Complex t, int N, int grid_size) {
        return sigma_min(assemble_truncation(symbol_exp_tL0(c, t, grid_size), N));
      },
      py::arg("config"), py::arg("t"), py::arg("N") = 32, py::arg("grid_size") = 256);
  m.def(
      "scan",
      [](const LaxConfig& c, const Window& w, int resolution, int N,
         double threshold, int grid_size) {
        const ScanResult r = scan(c, w, ScanSettings{resolution, N, threshold, grid_size});
        std::vector<std::pair<Complex, double>> cands;
        for (const auto& cd : r.candidates) cands.emplace_back(cd.t, cd.sigma);
        return py::make_tuple(r.sigma, cands);
      },
      py::arg("config"), py::arg("window"), py::arg("resolution") = 64,
      py::arg("N") = 32, py::arg("threshold") = 1e-3, py::arg("grid_size") = 256);
  m.def(
      "refine_singularity",
      [](const LaxConfig& c, Complex guess, const std::vector<int>& schedule) {
        return refine_singularity(c, guess, schedule).t;
      },
      py::arg("config"), py::arg("t_guess"),
      py::arg("schedule") = std::vector<int>{16, 32, 64});

  m.def(
      "verify",
      [](const LaxConfig& c) {
        py::list rows;
        for (const auto& r : run_verification(c))
          rows.append(py::make_tuple(r.suite, r.name, r.residual, r.bound,
                                     r.passed()));
        return rows;
      },
      py::arg("config"));
}
