// Python bindings for the main operations: parameter setup, steady-state
// observables, Fokker-Planck drift/diffusion, excess emission rates and the
// sweep/figure runners.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "qdcel/config.hpp"
#include "qdcel/fokker_planck.hpp"
#include "qdcel/liouvillian.hpp"
#include "qdcel/observables.hpp"
#include "qdcel/rate_equations.hpp"
#include "qdcel/solvers.hpp"
#include "qdcel/sweep.hpp"

namespace py = pybind11;
using namespace qdcel;

namespace {

SteadyStateReport solve_steady(const SystemParams& p, Variant v) {
  p.validate();
  if (v == Variant::NoPhonon) return steady_state(build_variant(p, v).L);
  PhononTables tab(p.bath);
  return steady_state(build_variant(p, v, &tab).L);
}

py::dict steady_observables(const SystemParams& p, Variant v) {
  SteadyStateReport rep = solve_steady(p, v);
  const DensityMatrix& rho = rep.rho;
  DressedPopulations dp = dressed_populations(rho, p);
  py::dict d;
  d["n1"] = mean_photons(rho, 1);
  d["n2"] = mean_photons(rho, 2);
  d["a1dag_a2"] = mode_coherence(rho);
  d["s1p_s2m"] = exciton_coherence(rho);
  d["g11"] = g2_zero(rho, 1, 1);
  d["g22"] = g2_zero(rho, 2, 2);
  d["g12"] = g2_zero(rho, 1, 2);
  d["p_plus"] = dp.p_plus;
  d["p_zero"] = dp.p_zero;
  d["p_minus"] = dp.p_minus;
  d["var_Bphi"] = quadrature_variance(rho, Quadrature::Phi, p.phi1, p.phi2);
  d["var_BPhi"] = quadrature_variance(rho, Quadrature::PhiAvg, p.phi1, p.phi2);
  d["duan_witness"] = dgcz_witness(rho, p.phi1, p.phi2);
  d["residual"] = rep.residual;
  return d;
}

py::dict fokker_planck_point(const SystemParams& p, Variant v, double phi,
                             double Phi) {
  SteadyStateReport rep = solve_steady(p, v);
  double r1 = std::sqrt(std::max(mean_photons(rep.rho, 1), 0.0));
  double r2 = std::sqrt(std::max(mean_photons(rep.rho, 2), 0.0));
  FPCoefficients fc;
  if (v == Variant::NoPhonon) {
    fc = solve_orders(p).second;
  } else {
    PhononTables tab(p.bath);
    fc = with_phonon_variant(p, compute_rates(p.rate_inputs(), tab),
                             tab.mean_B())
             .second;
  }
  DriftDiffusion dd = drift_diffusion(fc, r1, r2, phi, Phi, p);
  py::dict d;
  d["D_phi"] = dd.D_phi;
  d["D_Phi"] = dd.D_Phi;
  d["D_phiphi"] = dd.D_phiphi;
  d["D_PhiPhi"] = dd.D_PhiPhi;
  d["r1"] = r1;
  d["r2"] = r2;
  return d;
}

py::dict excess_emission_point(const SystemParams& p, Variant v) {
  p.validate();
  GeneratorBundle gen = [&] {
    if (v == Variant::NoPhonon) return build_variant(p, v);
    PhononTables tab(p.bath);
    return build_variant(p, v, &tab);
  }();
  SteadyStateReport rep = steady_state(gen.L);
  EERReport r = excess_emission(
      sector_flows(gen.L, rep.rho, ang(p.kappa1), ang(p.kappa2)));
  py::dict d;
  d["N1"] = r.N1;
  d["M1"] = r.M1;
  d["N2"] = r.N2;
  d["M2"] = r.M2;
  d["N1M1"] = r.N1M1;
  d["remainder1"] = r.remainder1;
  d["remainder2"] = r.remainder2;
  d["kappa1_flux"] = r.kappa1_flux;
  d["kappa2_flux"] = r.kappa2_flux;
  return d;
}

py::dict table_to_dict(const ResultTable& t) {
  py::dict d;
  d["metadata"] = t.metadata;
  d["columns"] = t.columns;
  d["rows"] = t.rows;
  d["status"] = t.status;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Correlated-emission lasing model for a coherently driven "
            "quantum dot in a bimodal cavity";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_RuntimeError);

  py::enum_<Variant>(m, "Variant")
      .value("FULL", Variant::Full)
      .value("SME", Variant::Sme)
      .value("NO_PHONON", Variant::NoPhonon);

  py::class_<PhononBathParams>(m, "PhononBathParams")
      .def(py::init<>())
      .def_readwrite("alpha_p", &PhononBathParams::alpha_p)
      .def_readwrite("omega_b", &PhononBathParams::omega_b)
      .def_readwrite("temperature", &PhononBathParams::temperature);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("g1", &SystemParams::g1)
      .def_readwrite("g2", &SystemParams::g2)
      .def_readwrite("eta1", &SystemParams::eta1)
      .def_readwrite("eta2", &SystemParams::eta2)
      .def_readwrite("delta_xp", &SystemParams::delta_xp)
      .def_readwrite("delta_yp", &SystemParams::delta_yp)
      .def_readwrite("delta_c1p", &SystemParams::delta_c1p)
      .def_readwrite("delta_c2p", &SystemParams::delta_c2p)
      .def_readwrite("delta_fss", &SystemParams::delta_fss)
      .def_readwrite("kappa1", &SystemParams::kappa1)
      .def_readwrite("kappa2", &SystemParams::kappa2)
      .def_readwrite("gamma1", &SystemParams::gamma1)
      .def_readwrite("gamma2", &SystemParams::gamma2)
      .def_readwrite("gamma1p", &SystemParams::gamma1p)
      .def_readwrite("gamma2p", &SystemParams::gamma2p)
      .def_readwrite("phi1", &SystemParams::phi1)
      .def_readwrite("phi2", &SystemParams::phi2)
      .def_readwrite("bath", &SystemParams::bath)
      .def_readwrite("cutoff1", &SystemParams::cutoff1)
      .def_readwrite("cutoff2", &SystemParams::cutoff2)
      .def_readwrite("pump_detuning_uses_cavity",
                     &SystemParams::pump_detuning_uses_cavity)
      .def_readwrite("dephasing_in_no_phonon",
                     &SystemParams::dephasing_in_no_phonon)
      .def_readwrite("fp_renormalized_g", &SystemParams::fp_renormalized_g)
      .def("rabi_omega", &SystemParams::rabi_omega)
      .def("validate", &SystemParams::validate);

  m.def("mean_displacement", &mean_displacement, py::arg("bath"),
        "Polaron mean displacement <B> for the given bath parameters");
  m.def("steady_observables", &steady_observables, py::arg("params"),
        py::arg("variant") = Variant::Sme,
        "Steady-state photon, correlation and population observables");
  m.def("fokker_planck", &fokker_planck_point, py::arg("params"),
        py::arg("variant") = Variant::Sme, py::arg("phi") = 0.0,
        py::arg("Phi") = 0.0,
        "Phase drift and diffusion coefficients at the given phases");
  m.def("excess_emission", &excess_emission_point, py::arg("params"),
        py::arg("variant") = Variant::Sme,
        "Single- and multi-photon excess emission rates");
  m.def(
      "run_sweep",
      [](const std::string& config_text, int threads) {
        return table_to_dict(run_sweep(parse_config(config_text), threads));
      },
      py::arg("config_text"), py::arg("threads") = 0,
      "Run a sweep described by flat key = value config text");
  m.def(
      "run_figure",
      [](const std::string& tag, const std::vector<std::string>& overrides,
         int threads) {
        return table_to_dict(run_figure(tag, overrides, threads));
      },
      py::arg("tag"), py::arg("overrides") = std::vector<std::string>{},
      py::arg("threads") = 0, "Run a preconfigured figure sweep (fig2..fig8)");
  m.def("known_figures", [] { return known_figures(); });
  m.def("known_tasks", [] { return known_tasks(); });
}
