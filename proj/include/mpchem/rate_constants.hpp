#pragma once

namespace mpchem {

// Arrhenius-like rate constant with optional temperature and pressure terms:
//   k = A * exp(-Ea/(kb*T)) * exp(C/T) * (T/D)^B * (1 + E*P)
// Ea is in J; C is the equivalent exponent in K (both may be given; they
// compose). Concentration units follow the parameters (typically cm3
// molecule-1 powers for gas phase).
struct ArrheniusParams {
  double A = 1.0;
  double Ea = 0.0;   // J
  double C = 0.0;    // K
  double B = 0.0;
  double D = 300.0;  // K
  double E = 0.0;    // Pa-1
};

double arrhenius_rate_constant(const ArrheniusParams& p, double temperature_K,
                               double pressure_Pa);

// Troe fall-off expression; k0 and kinf use D = 300, E = 0.
//   k = k0[M]/(1 + k0[M]/kinf) * Fc^(1 + 1/N (log10(k0[M]/kinf))^2)^-1
double troe_rate_constant(const ArrheniusParams& k0, const ArrheniusParams& kinf,
                          double fc, double n, double temperature_K, double m_cm3);

// k = k1 + k2[M]
double custom_h2o2_rate_constant(const ArrheniusParams& k1, const ArrheniusParams& k2,
                                 double temperature_K, double m_cm3);

// k = k0 + k3[M]/(1 + k3[M]/k2)
double custom_oh_hno3_rate_constant(const ArrheniusParams& k0, const ArrheniusParams& k2,
                                    const ArrheniusParams& k3, double temperature_K,
                                    double m_cm3);

// k = A * exp(-B/T) * exp(C/T^3)
double wennberg_tunneling_rate_constant(double a, double b, double c,
                                        double temperature_K);

struct WennbergBranchConstants {
  double k_nitrate;
  double k_alkoxy;  // k_nitrate + k_alkoxy == X exp(-Y/T) exactly
};

// Branched RO2 + NO chemistry with the temperature/structure-dependent
// branching ratio; n_heavy is the heavy-atom count of the RO2 species.
WennbergBranchConstants wennberg_no_ro2_rate_constants(double x, double y, double alpha0,
                                                       double n_heavy,
                                                       double temperature_K, double m_cm3);
// The A(T, [M], n) interpolation used in the branching ratio.
double wennberg_branching_a(double temperature_K, double m_cm3, double n_heavy);

// log10 p_sat = B1/T + B2 + B3*T + B4*ln(T); returns atm.
double simpol_vapor_pressure_atm(double b1, double b2, double b3, double b4,
                                 double temperature_K);

// K_eq = A * exp(C * (1/T - 1/298))
double aqueous_equilibrium_constant(double a, double c, double temperature_K);

// H(T) = H(298 K) * exp(C * (1/T - 1/298)), M Pa-1
double henrys_law_constant(double h298, double c, double temperature_K);

// Fuchs-Sutugin transition-regime correction
//   f = 0.75 a (1 + Kn) / (Kn^2 + Kn + 0.283 Kn a + 0.75 a)
double fuchs_sutugin(double kn, double alpha);
double fuchs_sutugin_dkn(double kn, double alpha);

double mean_molecular_speed(double temperature_K, double mw_kg_mol);        // m s-1
double gas_mean_free_path(double diffusion_m2_s, double temperature_K,
                          double mw_kg_mol);                                // m

// Per-particle uptake rate constant k_c = 4 pi r_eff D_g f_fs(Kn, alpha)
// [m3 s-1] and its derivative with respect to the effective radius.
struct UptakeRate {
  double k_c;
  double dk_c_dr;
};
UptakeRate condensation_rate_constant(double r_eff_m, double diffusion_m2_s,
                                      double temperature_K, double mw_kg_mol,
                                      double alpha);

}  // namespace mpchem
