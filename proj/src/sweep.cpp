#include "qdcel/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "qdcel/fokker_planck.hpp"
#include "qdcel/liouvillian.hpp"
#include "qdcel/observables.hpp"
#include "qdcel/rate_equations.hpp"
#include "qdcel/solvers.hpp"

namespace qdcel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Tables are expensive (quadratures); share them across rows and figure
// blocks that use the same bath.
class TablesCache {
 public:
  const PhononTables& get(const PhononBathParams& b) {
    std::array<double, 3> key{b.temperature, b.alpha_p, b.omega_b};
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = cache_[key];
    if (!slot) slot = std::make_unique<PhononTables>(b);
    return *slot;
  }

 private:
  std::mutex mu_;
  std::map<std::array<double, 3>, std::unique_ptr<PhononTables>> cache_;
};

TablesCache& tables_cache() {
  static TablesCache c;
  return c;
}

const std::vector<std::string>& task_columns(const std::string& task) {
  static const std::map<std::string, std::vector<std::string>> cols = {
      {"photons", {"n1", "n2", "re_a1dag_a2", "re_s1p_s2m"}},
      {"g2", {"g11", "g22", "g12"}},
      {"populations", {"p_plus", "p_zero", "p_minus"}},
      {"variances", {"var_Bphi", "var_BPhi"}},
      {"fokker_planck", {"D_phi", "D_Phi", "D_phiphi", "D_PhiPhi"}},
      {"rates", {"N1", "M1", "N2", "M2", "N1M1", "remainder"}},
      {"entanglement", {"duan_witness"}},
  };
  auto it = cols.find(task);
  if (it == cols.end()) throw ConfigError("unknown task '" + task + "'");
  return it->second;
}

void eval_tasks(const RunConfig& c, const SystemParams& p,
                std::vector<double>& out) {
  const bool phonon = c.variant != Variant::NoPhonon;
  const PhononTables* tables =
      phonon ? &tables_cache().get(p.bath) : nullptr;
  GeneratorBundle gen = build_variant(p, c.variant, tables);
  SteadyStateReport rep = steady_state(gen.L);
  const DensityMatrix& rho = rep.rho;

  for (const auto& task : c.tasks) {
    if (task == "photons") {
      out.push_back(mean_photons(rho, 1));
      out.push_back(mean_photons(rho, 2));
      out.push_back(mode_coherence(rho).real());
      out.push_back(exciton_coherence(rho).real());
    } else if (task == "g2") {
      out.push_back(g2_zero(rho, 1, 1));
      out.push_back(g2_zero(rho, 2, 2));
      out.push_back(g2_zero(rho, 1, 2));
    } else if (task == "populations") {
      DressedPopulations dp = dressed_populations(rho, p);
      out.push_back(dp.p_plus);
      out.push_back(dp.p_zero);
      out.push_back(dp.p_minus);
    } else if (task == "variances") {
      out.push_back(quadrature_variance(rho, Quadrature::Phi, p.phi1, p.phi2));
      out.push_back(
          quadrature_variance(rho, Quadrature::PhiAvg, p.phi1, p.phi2));
    } else if (task == "fokker_planck") {
      const double r1 = std::sqrt(std::max(mean_photons(rho, 1), 0.0));
      const double r2 = std::sqrt(std::max(mean_photons(rho, 2), 0.0));
      FPCoefficients fc;
      if (phonon) {
        PhononRates rates = compute_rates(p.rate_inputs(), *tables);
        fc = with_phonon_variant(p, rates, tables->mean_B()).second;
      } else {
        fc = solve_orders(p).second;
      }
      DriftDiffusion dd =
          drift_diffusion(fc, r1, r2, p.phi1 - p.phi2, 0.0, p);
      out.push_back(dd.D_phi);
      out.push_back(dd.D_Phi);
      out.push_back(dd.D_phiphi);
      out.push_back(dd.D_PhiPhi);
    } else if (task == "rates") {
      SectorFlows f =
          sector_flows(gen.L, rho, ang(p.kappa1), ang(p.kappa2));
      EERReport er = excess_emission(f);
      out.push_back(er.N1);
      out.push_back(er.M1);
      out.push_back(er.N2);
      out.push_back(er.M2);
      out.push_back(er.N1M1);
      out.push_back(er.remainder1);
    } else if (task == "entanglement") {
      out.push_back(dgcz_witness(rho, p.phi1, p.phi2));
    } else {
      throw ConfigError("unknown task '" + task + "'");
    }
  }
}

std::string sanitize(const std::string& msg) {
  std::string s = msg;
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return s;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace

void ResultTable::write_csv(std::ostream& os) const {
  for (const auto& m : metadata) os << "# " << m << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << columns[i] << (i + 1 < columns.size() ? "," : ",status\n");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (double v : rows[r]) os << fmt(v) << ",";
    os << status[r] << "\n";
  }
}

ResultTable run_sweep(const RunConfig& c, int max_threads) {
  c.validate();
  ResultTable t;
  {
    std::istringstream echo(serialize_config(c));
    std::string line;
    while (std::getline(echo, line))
      if (!line.empty()) t.metadata.push_back(line);
  }
  t.columns.push_back(c.sweep.variable);
  std::size_t n_task_cols = 0;
  for (const auto& task : c.tasks)
    for (const auto& col : task_columns(task)) {
      t.columns.push_back(col);
      ++n_task_cols;
    }
  t.columns.push_back("cutoff");

  const int n = c.sweep.points;
  t.rows.assign(n, {});
  t.status.assign(n, "ok");
  auto axis_value = [&](int i) {
    if (n == 1) return c.sweep.start;
    return c.sweep.start +
           (c.sweep.stop - c.sweep.start) * static_cast<double>(i) / (n - 1);
  };

  auto work = [&](int i) {
    const double x = axis_value(i);
    SystemParams p = c.system;
    std::vector<double>& row = t.rows[i];
    row.push_back(x);
    try {
      apply_axis(p, c.sweep.variable, x, c.tracking);
      p.validate();
      eval_tasks(c, p, row);
    } catch (const std::exception& e) {
      row.resize(1);
      row.insert(row.end(), n_task_cols, kNaN);
      t.status[i] = sanitize(e.what());
    }
    row.push_back(std::max(p.cutoff1, p.cutoff2));
  };

  int threads = max_threads > 0
                    ? max_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
      });
    for (auto& th : pool) th.join();
  }
  return t;
}

namespace {

struct FigureSpec {
  RunConfig base;
  std::vector<double> temps;  // temperature blocks; empty = single block
  std::vector<double> phis;   // outer phi1 grid; empty = none
  std::string axis_name;      // CSV name of the swept axis column
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
  return v;
}

FigureSpec figure_spec(const std::string& tag) {
  FigureSpec s;
  RunConfig& c = s.base;
  s.axis_name = "delta_cp_over_g1";
  c.sweep = {"delta_cp_over_g1", -14.0, -4.0, 41};
  if (tag == "fig2") {
    c.variant = Variant::Full;
    c.tasks = {"photons", "g2", "populations"};
    s.temps = {0.0, 5.0, 10.0};
    s.axis_name = "delta_cp";
  } else if (tag == "fig3") {
    c.variant = Variant::Sme;
    c.tasks = {"variances"};
    s.temps = {0.0, 5.0, 20.0};
    s.phis = linspace(-M_PI, M_PI, 21);
    s.axis_name = "delta_cp";
  } else if (tag == "fig4") {
    c.variant = Variant::NoPhonon;
    c.tasks = {"fokker_planck"};
    s.phis = linspace(-M_PI, M_PI, 41);
  } else if (tag == "fig5") {
    c.variant = Variant::Sme;
    c.tasks = {"fokker_planck"};
    c.system.bath.temperature = 5.0;
    s.phis = linspace(-M_PI, M_PI, 41);
  } else if (tag == "fig6") {
    c.variant = Variant::Sme;
    c.tasks = {"fokker_planck"};
    s.temps = {10.0, 20.0};
    s.phis = linspace(-M_PI, M_PI, 41);
  } else if (tag == "fig7") {
    c.variant = Variant::Sme;
    c.tasks = {"rates"};
    c.system.bath.temperature = 5.0;
  } else if (tag == "fig8") {
    c.variant = Variant::Full;
    c.tasks = {"entanglement"};
    c.system.delta_xp = 0.5;
    c.system.delta_yp = 0.5;
    c.system.kappa1 = 0.01;
    c.system.kappa2 = 0.01;
    c.system.phi1 = M_PI;
    c.tracking = CavityTracking::TwoPhoton;
    c.sweep = {"eta_over_g1", 0.5, 7.0, 27};
    s.temps = {0.0, 20.0};
    s.axis_name = "eta_over_g1";
  } else {
    throw ConfigError("unknown figure '" + tag + "'");
  }
  return s;
}

}  // namespace

const std::vector<std::string>& known_figures() {
  static const std::vector<std::string> figs = {"fig2", "fig3", "fig4",
                                                "fig5", "fig6", "fig7",
                                                "fig8"};
  return figs;
}

ResultTable run_figure(const std::string& tag,
                       const std::vector<std::string>& overrides,
                       int max_threads) {
  FigureSpec s = figure_spec(tag);
  for (const auto& ov : overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override '" + ov + "' is not key=value");
    std::string key = ov.substr(0, eq);
    apply_key(s.base, key, ov.substr(eq + 1));
    if (key == "temperature") s.temps.clear();
    if (key == "phi1") s.phis.clear();
  }

  ResultTable out;
  out.metadata.push_back("figure = " + tag);
  if (!s.temps.empty()) out.columns.push_back("temperature_K");
  if (!s.phis.empty()) out.columns.push_back("phi1_rad");
  out.columns.push_back(s.axis_name);
  bool have_cols = false;

  std::vector<double> temps = s.temps.empty()
                                  ? std::vector<double>{kNaN}
                                  : s.temps;
  std::vector<double> phis = s.phis.empty() ? std::vector<double>{kNaN}
                                            : s.phis;
  for (double temp : temps) {
    for (double phi : phis) {
      RunConfig c = s.base;
      if (!s.temps.empty()) c.system.bath.temperature = temp;
      if (!s.phis.empty()) c.system.phi1 = phi;
      ResultTable block = run_sweep(c, max_threads);
      if (!have_cols) {
        // skip the block's own axis column name; keep task/cutoff columns
        out.columns.insert(out.columns.end(), block.columns.begin() + 1,
                           block.columns.end());
        out.metadata.insert(out.metadata.end(), block.metadata.begin(),
                            block.metadata.end());
        have_cols = true;
      }
      for (std::size_t r = 0; r < block.rows.size(); ++r) {
        std::vector<double> row;
        if (!s.temps.empty()) row.push_back(temp);
        if (!s.phis.empty()) row.push_back(phi);
        row.insert(row.end(), block.rows[r].begin(), block.rows[r].end());
        out.rows.push_back(std::move(row));
        out.status.push_back(block.status[r]);
      }
    }
  }
  return out;
}

}  // namespace qdcel
