// qdcel command-line front end: steady-state sweeps, figure presets and
// phonon-table inspection for the bimodal-cavity QD model.
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdcel/config.hpp"
#include "qdcel/phonon.hpp"
#include "qdcel/sweep.hpp"
#include "qdcel/types.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Writes to the path when non-empty, else to stdout.
int emit(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return kExitConfig;
  }
  f << body;
  return 0;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

void emit_complex_row(std::ostringstream& os, const std::string& name,
                      qdcel::cplx v) {
  os << name << "," << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlated-emission lasing model for a driven quantum dot "
               "in a bimodal cavity"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand
  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads for sweeps (0 = hardware default)");

  auto* run = app.add_subcommand("run", "run a sweep from a config file");
  std::string config_path;
  std::vector<std::string> sets;
  std::string output_override;
  run->add_option("--config", config_path, "flat key = value config file")
      ->required();
  run->add_option("--set", sets, "override config keys (key=value)");
  run->add_option("--output", output_override,
                  "output CSV path (overrides the config)");

  auto* figure =
      app.add_subcommand("figure", "run a preconfigured figure sweep");
  std::string fig_tag;
  std::vector<std::string> fig_sets;
  std::string fig_output;
  figure->add_option("tag", fig_tag, "figure tag (fig2 .. fig8)")->required();
  figure->add_option("--set", fig_sets, "override preset keys (key=value)");
  figure->add_option("--output", fig_output, "output CSV path");

  auto* ptab = app.add_subcommand(
      "phonon-tables", "emit the bath correlation and polaron kernels");
  qdcel::PhononBathParams bath;
  std::string ptab_output;
  ptab->add_option("--temperature", bath.temperature, "bath temperature in K")
      ->required();
  ptab->add_option("--alpha-p", bath.alpha_p, "coupling alpha_p in ps^2");
  ptab->add_option("--omega-b", bath.omega_b, "cutoff energy in meV");
  ptab->add_option("--output", ptab_output, "output CSV path");

  auto* rates = app.add_subcommand(
      "rates", "emit the phonon scattering rates at a cavity detuning");
  double rates_delta = 0.0;
  qdcel::SystemParams rp;
  std::string rates_output;
  rates->add_option("--delta", rates_delta,
                    "cavity-pump detuning delta_c1p = delta_c2p in meV")
      ->required();
  rates->add_option("--temperature", rp.bath.temperature,
                    "bath temperature in K");
  rates->add_option("--output", rates_output, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (run->parsed()) {
      qdcel::RunConfig c = qdcel::load_config(config_path);
      for (const auto& ov : sets) {
        auto eq = ov.find('=');
        if (eq == std::string::npos)
          throw qdcel::ConfigError("override '" + ov + "' is not key=value");
        qdcel::apply_key(c, ov.substr(0, eq), ov.substr(eq + 1));
      }
      c.validate();
      qdcel::ResultTable t = qdcel::run_sweep(c, threads);
      std::ostringstream os;
      t.write_csv(os);
      return emit(output_override.empty() ? c.output : output_override,
                  os.str());
    }
    if (figure->parsed()) {
      qdcel::ResultTable t = qdcel::run_figure(fig_tag, fig_sets, threads);
      std::ostringstream os;
      t.write_csv(os);
      return emit(fig_output, os.str());
    }
    if (ptab->parsed()) {
      bath.validate();
      qdcel::PhononTables tab(bath);
      std::ostringstream os;
      os << "# mean_B = " << fmt(tab.mean_B()) << "\n";
      os << "# phi0_re = " << fmt(tab.phi0().real()) << "\n";
      os << "# phi0_im = " << fmt(tab.phi0().imag()) << "\n";
      os << "tau_ps,re_phi,im_phi,re_Gplus,im_Gplus,re_Gminus,im_Gminus\n";
      const auto& tau = tab.tau_grid();
      const auto& phi = tab.phi_samples();
      const auto& gp = tab.kernel_samples(qdcel::Kernel::Gplus);
      const auto& gm = tab.kernel_samples(qdcel::Kernel::Gminus);
      for (std::size_t i = 0; i < tau.size(); ++i)
        os << fmt(tau[i]) << "," << fmt(phi[i].real()) << ","
           << fmt(phi[i].imag()) << "," << fmt(gp[i].real()) << ","
           << fmt(gp[i].imag()) << "," << fmt(gm[i].real()) << ","
           << fmt(gm[i].imag()) << "\n";
      return emit(ptab_output, os.str());
    }
    if (rates->parsed()) {
      rp.delta_c1p = rates_delta;
      rp.delta_c2p = rates_delta;
      rp.validate();
      qdcel::PhononTables tab(rp.bath);
      qdcel::PhononRates r = qdcel::compute_rates(rp.rate_inputs(), tab);
      std::ostringstream os;
      os << "# units: rad/ps; temperature = " << fmt(rp.bath.temperature)
         << " K; delta_cp = " << fmt(rates_delta) << " meV\n";
      os << "name,re,im\n";
      for (int i = 0; i < 2; ++i) {
        const std::string s = std::to_string(i + 1);
        emit_complex_row(os, "delta_" + s + "_plus", r.delta_plus[i]);
        emit_complex_row(os, "delta_" + s + "_minus", r.delta_minus[i]);
        emit_complex_row(os, "delta_" + s + "p_plus", r.delta_p_plus[i]);
        emit_complex_row(os, "delta_" + s + "p_minus", r.delta_p_minus[i]);
        emit_complex_row(os, "Gamma_" + s + "_plus", r.Gamma_plus[i]);
        emit_complex_row(os, "Gamma_" + s + "_minus", r.Gamma_minus[i]);
        emit_complex_row(os, "Gamma_" + s + "p_plus", r.Gamma_p_plus[i]);
        emit_complex_row(os, "Gamma_" + s + "p_minus", r.Gamma_p_minus[i]);
        emit_complex_row(os, "Lambda_" + s + "_plus", r.Lambda_plus[i]);
        emit_complex_row(os, "Lambda_" + s + "_minus", r.Lambda_minus[i]);
        emit_complex_row(os, "Lambda_" + s + "p_plus", r.Lambda_p_plus[i]);
        emit_complex_row(os, "Lambda_" + s + "p_minus", r.Lambda_p_minus[i]);
      }
      emit_complex_row(os, "Omega12", r.Omega12);
      emit_complex_row(os, "Omega21", r.Omega21);
      emit_complex_row(os, "Omega12_p", r.Omega12_p);
      emit_complex_row(os, "Omega21_p", r.Omega21_p);
      emit_complex_row(os, "Gamma12", r.Gamma12);
      emit_complex_row(os, "Gamma21", r.Gamma21);
      emit_complex_row(os, "Gamma12_p", r.Gamma12_p);
      emit_complex_row(os, "Gamma21_p", r.Gamma21_p);
      emit_complex_row(os, "Lambda12_pp", r.Lambda12_pp);
      emit_complex_row(os, "Lambda21_pp", r.Lambda21_pp);
      emit_complex_row(os, "Lambda12_pm", r.Lambda12_pm);
      emit_complex_row(os, "Lambda21_pm", r.Lambda21_pm);
      emit_complex_row(os, "Lambda12p_pp", r.Lambda12p_pp);
      emit_complex_row(os, "Lambda21p_pp", r.Lambda21p_pp);
      emit_complex_row(os, "Lambda12p_pm", r.Lambda12p_pm);
      emit_complex_row(os, "Lambda21p_pm", r.Lambda21p_pm);
      return emit(rates_output, os.str());
    }
  } catch (const qdcel::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qdcel::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
