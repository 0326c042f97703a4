#include "qdcel/phonon.hpp"

#include <cmath>
#include <functional>

namespace qdcel {

namespace {

constexpr double kTwoPiSq = 4.0 * M_PI * M_PI;

struct AdaptiveSimpson {
  std::function<cplx(double)> f;
  double tol;
  int max_depth = 48;
  long evals = 0;

  cplx run(double a, double b) {
    cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return step(a, b, fa, fm, fb, whole, max_depth);
  }

  cplx step(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole,
            int depth) {
    const double m = 0.5 * (a + b);
    cplx flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    evals += 2;
    cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    cplx err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol || depth <= 0) {
      if (depth <= 0 && std::abs(err) > 1e3 * tol)
        throw NumericalError("phonon quadrature failed to converge on [" +
                             std::to_string(a) + "," + std::to_string(b) + "]");
      return left + right + err / 15.0;
    }
    return step(a, m, fa, flm, fm, left, depth - 1) +
           step(m, b, fm, frm, fb, right, depth - 1);
  }
};

double coth_or_one(double x, double temperature) {
  if (temperature <= 0) return 1.0;
  return 1.0 / std::tanh(x);
}

}  // namespace

double spectral_density(double omega, const PhononBathParams& p) {
  if (omega < 0) throw ConfigError("spectral_density: omega must be >= 0");
  const double wb = ang(p.omega_b);
  return p.alpha_p * omega * omega * omega *
         std::exp(-omega * omega / (2.0 * wb * wb));
}

cplx phi_of_tau(double tau, const PhononBathParams& p, double rel_tol) {
  p.validate();
  if (tau < 0) throw ConfigError("phi_of_tau: tau must be >= 0");
  if (p.alpha_p == 0) return 0.0;
  const double wb = ang(p.omega_b);
  // Gaussian tail below 1e-12 of the integrand peak well before 8 wb.
  const double w_hi = 8.0 * wb;
  auto integrand = [&](double w) -> cplx {
    double jw;  // J(w)/w^2 with the w->0 limit made explicit
    if (w < 1e-12 * wb)
      jw = p.alpha_p * w;
    else
      jw = spectral_density(w, p) / (w * w);
    double th = (w < 1e-12 * wb && p.temperature > 0)
                    ? 2.0 * kB_meV_K * p.temperature / (hbar_meV_ps * std::max(w, 1e-300))
                    : coth_or_one(hbar_meV_ps * w / (2.0 * kB_meV_K * p.temperature),
                                  p.temperature);
    if (p.temperature <= 0) th = 1.0;
    return jw / kTwoPiSq * cplx(th * std::cos(w * tau), -std::sin(w * tau));
  };
  // Scale tolerance by the tau=0 magnitude so long-tau values are absolute.
  const double scale =
      p.alpha_p / kTwoPiSq * wb * wb *
      (p.temperature > 0 ? 1.0 + 2.0 * kB_meV_K * p.temperature / (hbar_meV_ps * wb)
                         : 1.0);
  AdaptiveSimpson quad{integrand, rel_tol * scale};
  // Split at oscillation scale for large tau.
  const int pieces = std::max(1, int(w_hi * tau / 3.0));
  cplx total = 0;
  double step = w_hi / pieces;
  for (int i = 0; i < pieces; ++i)
    total += quad.run(i * step, (i + 1) * step);
  return total;
}

double mean_displacement(const PhononBathParams& p) {
  return std::exp(-0.5 * phi_of_tau(0.0, p).real());
}

PhononTables::PhononTables(const PhononBathParams& p) : params_(p) {
  p.validate();
  const double dt = 0.005;  // ps; resolves exp(i Delta tau) up to ~10 meV
  const double tau_min = 5.0, tau_max = 60.0;
  phi_.push_back(phi_of_tau(0.0, p));
  tau_.push_back(0.0);
  const double phi0_abs = std::max(std::abs(phi_[0]), 1e-30);
  int n = 1;
  for (;; ++n) {
    double tau = n * dt;
    phi_.push_back(phi_of_tau(tau, p));
    tau_.push_back(tau);
    if (tau >= tau_min && std::abs(phi_.back()) < 1e-8 * phi0_abs) break;
    if (tau >= tau_max) break;
  }
  if (n % 2 == 1) {  // even interval count for Simpson
    tau_.push_back((n + 1) * dt);
    phi_.push_back(phi_of_tau((n + 1) * dt, p));
  }
  mean_B_ = std::exp(-0.5 * phi_[0].real());
  const double b2 = mean_B_ * mean_B_;
  for (cplx f : phi_) {
    g_g_.push_back(b2 * (std::cosh(f) - 1.0));
    g_u_.push_back(b2 * std::sinh(f));
    g_plus_.push_back(b2 * (std::exp(f) - 1.0));
    g_minus_.push_back(b2 * (std::exp(-f) - 1.0));
  }
}

const std::vector<cplx>& PhononTables::kernel_samples(Kernel k) const {
  switch (k) {
    case Kernel::Gg: return g_g_;
    case Kernel::Gu: return g_u_;
    case Kernel::Gplus: return g_plus_;
    default: return g_minus_;
  }
}

cplx PhononTables::half_fourier_samples(const std::vector<double>& tau,
                                        const std::vector<cplx>& g,
                                        double omega_radps) {
  const size_t n = tau.size();
  if (n < 3 || n % 2 == 0)
    throw ConfigError("half_fourier_samples needs an odd sample count >= 3");
  const double h = tau[1] - tau[0];
  auto value = [&](size_t i) {
    return g[i] * std::exp(cplx(0, omega_radps * tau[i]));
  };
  cplx fine = value(0) + value(n - 1);
  for (size_t i = 1; i + 1 < n; ++i) fine += (i % 2 ? 4.0 : 2.0) * value(i);
  return fine * (h / 3.0);
}

cplx PhononTables::integrate(const std::vector<cplx>& g,
                             double omega_radps) const {
  // Composite Simpson over the cached grid, with a stride-2 coarse pass as a
  // refinement check.
  const size_t n = tau_.size();
  auto value = [&](size_t i) {
    return g[i] * std::exp(cplx(0, omega_radps * tau_[i]));
  };
  cplx fine = half_fourier_samples(tau_, g, omega_radps);
  const double h = tau_[1] - tau_[0];
  if (n >= 5 && (n - 1) % 4 == 0) {
    cplx coarse = value(0) + value(n - 1);
    for (size_t i = 2; i + 2 < n; i += 2)
      coarse += ((i / 2) % 2 ? 4.0 : 2.0) * value(i);
    coarse *= 2.0 * h / 3.0;
    double denom = std::max(std::abs(fine), 1e-300);
    refine_err_ = std::abs(fine - coarse) / denom;
  }
  return fine;
}

cplx PhononTables::half_fourier(Kernel k, double delta_meV) const {
  if (!std::isfinite(delta_meV))
    throw ConfigError("half_fourier: Delta must be finite");
  const long long key = llround(delta_meV * 1e9);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find({int(k), key});
    if (it != cache_.end()) return it->second;
  }
  cplx v = integrate(kernel_samples(k), ang(delta_meV));
  std::lock_guard<std::mutex> lock(mutex_);
  cache_[{int(k), key}] = v;
  return v;
}

PhononRates compute_rates(const RateInputs& in, const PhononTables& tables) {
  PhononRates r;
  auto Kp = [&](double d) { return tables.half_fourier(Kernel::Gplus, d); };
  auto Km = [&](double d) { return tables.half_fourier(Kernel::Gminus, d); };

  const double g[2] = {ang(in.g1), ang(in.g2)};
  const double eta[2] = {ang(in.eta1), ang(in.eta2)};
  const double D[2] = {in.Delta1, in.Delta2};
  const double Dp[2] = {in.Delta1p, in.Delta2p};
  const double Dpump[2] = {in.Delta1p_pump, in.Delta2p_pump};

  for (int i = 0; i < 2; ++i) {
    r.delta_plus[i] = g[i] * g[i] * Kp(D[i]).imag();
    r.delta_minus[i] = g[i] * g[i] * Kp(-D[i]).imag();
    r.delta_p_plus[i] = eta[i] * eta[i] * Kp(Dpump[i]).imag();
    r.delta_p_minus[i] = eta[i] * eta[i] * Kp(-Dpump[i]).imag();
    r.Gamma_plus[i] = 2.0 * g[i] * g[i] * Kp(D[i]).real();
    r.Gamma_minus[i] = 2.0 * g[i] * g[i] * Kp(-D[i]).real();
    r.Gamma_p_plus[i] = 2.0 * eta[i] * eta[i] * Kp(Dpump[i]).real();
    r.Gamma_p_minus[i] = 2.0 * eta[i] * eta[i] * Kp(-Dpump[i]).real();
    r.Lambda_plus[i] = g[i] * g[i] * (Km(-D[i]) + std::conj(Km(D[i])));
    r.Lambda_minus[i] = g[i] * g[i] * (Km(D[i]) + std::conj(Km(-D[i])));
    r.Lambda_p_plus[i] =
        eta[i] * eta[i] * (Km(-Dp[i]) + std::conj(Km(Dp[i])));
    r.Lambda_p_minus[i] =
        eta[i] * eta[i] * (Km(Dp[i]) + std::conj(Km(-Dp[i])));
  }

  const double gg = g[0] * g[1], ee = eta[0] * eta[1];
  r.Omega12 = 0.5 * gg * (Kp(D[1]) - std::conj(Kp(D[0])));
  r.Omega21 = 0.5 * gg * (Kp(D[0]) - std::conj(Kp(D[1])));
  r.Omega12_p = 0.5 * ee * (Kp(Dp[1]) - std::conj(Kp(Dp[0])));
  r.Omega21_p = 0.5 * ee * (Kp(Dp[0]) - std::conj(Kp(Dp[1])));
  r.Gamma12 = gg * (Kp(D[0]) + std::conj(Kp(D[1])));
  r.Gamma21 = gg * (Kp(D[1]) + std::conj(Kp(D[0])));
  r.Gamma12_p = ee * (Kp(Dp[0]) + std::conj(Kp(Dp[1])));
  r.Gamma21_p = ee * (Kp(Dp[1]) + std::conj(Kp(Dp[0])));
  r.Lambda12_pp = gg * (Km(-D[0]) + std::conj(Km(D[1])));
  r.Lambda21_pp = gg * (Km(-D[1]) + std::conj(Km(D[0])));
  r.Lambda12_pm = gg * (Km(-D[0]) + std::conj(Km(-D[1])));
  r.Lambda21_pm = gg * (Km(-D[1]) + std::conj(Km(-D[0])));
  r.Lambda12p_pp = ee * (Km(-Dp[0]) + std::conj(Km(Dp[1])));
  r.Lambda21p_pp = ee * (Km(-Dp[1]) + std::conj(Km(Dp[0])));
  r.Lambda12p_pm = ee * (Km(-Dp[0]) + std::conj(Km(-Dp[1])));
  r.Lambda21p_pm = ee * (Km(-Dp[1]) + std::conj(Km(-Dp[0])));
  return r;
}

}  // namespace qdcel
