#include "mpchem/rate_constants.hpp"

#include <cmath>

#include "mpchem/constants.hpp"

namespace mpchem {

double arrhenius_rate_constant(const ArrheniusParams& p, double temperature_K,
                               double pressure_Pa) {
  double k = p.A * std::exp(-p.Ea / (kBoltzmann * temperature_K));
  if (p.C != 0.0) k *= std::exp(p.C / temperature_K);
  if (p.B != 0.0) k *= std::pow(temperature_K / p.D, p.B);
  if (p.E != 0.0) k *= 1.0 + p.E * pressure_Pa;
  return k;
}

double troe_rate_constant(const ArrheniusParams& k0p, const ArrheniusParams& kinfp,
                          double fc, double n, double temperature_K, double m_cm3) {
  const double k0m = arrhenius_rate_constant(k0p, temperature_K, 0.0) * m_cm3;
  const double kinf = arrhenius_rate_constant(kinfp, temperature_K, 0.0);
  if (k0m <= 0.0) return 0.0;
  const double ratio = k0m / kinf;
  const double lg = std::log10(ratio);
  const double broadening = std::pow(fc, 1.0 / (1.0 + lg * lg / n));
  return k0m / (1.0 + ratio) * broadening;
}

double custom_h2o2_rate_constant(const ArrheniusParams& k1, const ArrheniusParams& k2,
                                 double temperature_K, double m_cm3) {
  return arrhenius_rate_constant(k1, temperature_K, 0.0) +
         arrhenius_rate_constant(k2, temperature_K, 0.0) * m_cm3;
}

double custom_oh_hno3_rate_constant(const ArrheniusParams& k0, const ArrheniusParams& k2,
                                    const ArrheniusParams& k3, double temperature_K,
                                    double m_cm3) {
  const double k0v = arrhenius_rate_constant(k0, temperature_K, 0.0);
  const double k2v = arrhenius_rate_constant(k2, temperature_K, 0.0);
  const double k3m = arrhenius_rate_constant(k3, temperature_K, 0.0) * m_cm3;
  return k0v + k3m / (1.0 + k3m / k2v);
}

double wennberg_tunneling_rate_constant(double a, double b, double c,
                                        double temperature_K) {
  return a * std::exp(-b / temperature_K) *
         std::exp(c / (temperature_K * temperature_K * temperature_K));
}

double wennberg_branching_a(double temperature_K, double m_cm3, double n_heavy) {
  const double low = 2.0e-22 * std::exp(n_heavy) * m_cm3;
  const double high = 0.43 * std::pow(temperature_K / 298.0, -8.0);
  const double ratio = low / high;
  const double lg = std::log10(ratio);
  return low / (1.0 + ratio) * std::pow(0.41, 1.0 / (1.0 + lg * lg));
}

WennbergBranchConstants wennberg_no_ro2_rate_constants(double x, double y, double alpha0,
                                                       double n_heavy,
                                                       double temperature_K,
                                                       double m_cm3) {
  const double k_total = x * std::exp(-y / temperature_K);
  const double a = wennberg_branching_a(temperature_K, m_cm3, n_heavy);
  const double z = wennberg_branching_a(293.0, 2.45e19, n_heavy) * (1.0 - alpha0) / alpha0;
  WennbergBranchConstants k;
  k.k_nitrate = k_total * (a / (a + z));
  k.k_alkoxy = k_total - k.k_nitrate;  // branch ratios sum to one exactly
  return k;
}

double simpol_vapor_pressure_atm(double b1, double b2, double b3, double b4,
                                 double temperature_K) {
  const double lg =
      b1 / temperature_K + b2 + b3 * temperature_K + b4 * std::log(temperature_K);
  return std::pow(10.0, lg);
}

double aqueous_equilibrium_constant(double a, double c, double temperature_K) {
  return a * std::exp(c * (1.0 / temperature_K - 1.0 / 298.0));
}

double henrys_law_constant(double h298, double c, double temperature_K) {
  return h298 * std::exp(c * (1.0 / temperature_K - 1.0 / 298.0));
}

double fuchs_sutugin(double kn, double alpha) {
  const double num = 0.75 * alpha * (1.0 + kn);
  const double den = kn * kn + kn + 0.283 * kn * alpha + 0.75 * alpha;
  return num / den;
}

double fuchs_sutugin_dkn(double kn, double alpha) {
  const double num = 0.75 * alpha * (1.0 + kn);
  const double den = kn * kn + kn + 0.283 * kn * alpha + 0.75 * alpha;
  const double dnum = 0.75 * alpha;
  const double dden = 2.0 * kn + 1.0 + 0.283 * alpha;
  return (dnum * den - num * dden) / (den * den);
}

double mean_molecular_speed(double temperature_K, double mw_kg_mol) {
  return std::sqrt(8.0 * kGasConstant * temperature_K / (kPi * mw_kg_mol));
}

double gas_mean_free_path(double diffusion_m2_s, double temperature_K,
                          double mw_kg_mol) {
  return 3.0 * diffusion_m2_s / mean_molecular_speed(temperature_K, mw_kg_mol);
}

UptakeRate condensation_rate_constant(double r_eff_m, double diffusion_m2_s,
                                      double temperature_K, double mw_kg_mol,
                                      double alpha) {
  const double lambda = gas_mean_free_path(diffusion_m2_s, temperature_K, mw_kg_mol);
  const double kn = lambda / r_eff_m;
  const double f = fuchs_sutugin(kn, alpha);
  const double df = fuchs_sutugin_dkn(kn, alpha);
  UptakeRate out;
  out.k_c = 4.0 * kPi * r_eff_m * diffusion_m2_s * f;
  // d/dr of 4 pi r D f(lambda/r): the Kn term contributes -Kn f'(Kn)
  out.dk_c_dr = 4.0 * kPi * diffusion_m2_s * (f - kn * df);
  return out;
}

}  // namespace mpchem
