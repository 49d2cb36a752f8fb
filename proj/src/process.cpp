#include "mpchem/process.hpp"

#include <algorithm>
#include <cmath>

#include "mpchem/rate_constants.hpp"

namespace mpchem {

namespace {

constexpr double kWaterFloor = 1.0e-30;  // kg m-3, guards Henry evaporation
constexpr double kMolesFloor = 1.0e-60;  // mol m-3, guards mole fractions

double ipow(double base, double exponent) {
  if (exponent == 1.0) return base;
  if (exponent == 2.0) return base * base;
  if (exponent == 0.0) return 1.0;
  return std::pow(base, exponent);
}

struct Term {
  int offset;
  double stoich;
  double order;
  double mw;
};

struct Prod {
  int offset;
  double yield;
  double mw;
};

double product_of_powers(std::span<const double> c, const std::vector<Term>& terms) {
  double v = 1.0;
  for (const auto& t : terms) v *= ipow(c[t.offset], t.order);
  return v;
}

// d/dc_j of the mass-action product, robust at zero concentrations.
double product_partial(std::span<const double> c, const std::vector<Term>& terms,
                       size_t j) {
  double v = terms[j].order * ipow(c[terms[j].offset], terms[j].order - 1.0);
  for (size_t l = 0; l < terms.size(); ++l)
    if (l != j) v *= ipow(c[terms[l].offset], terms[l].order);
  return v;
}

ArrheniusParams arrhenius_from(const std::map<std::string, double>& p,
                               const std::string& prefix = "") {
  ArrheniusParams out;
  auto get = [&](const char* key, double dflt) {
    auto it = p.find(prefix + key);
    return it == p.end() ? dflt : it->second;
  };
  out.A = get("A", 1.0);
  out.Ea = get("Ea", 0.0);
  out.C = get("C", 0.0);
  out.B = get("B", 0.0);
  out.D = get("D", 300.0);
  out.E = get("E", 0.0);
  return out;
}

double param_or(const std::map<std::string, double>& p, const std::string& key,
                double dflt) {
  auto it = p.find(key);
  return it == p.end() ? dflt : it->second;
}

double resolved_yield(const MechanismConfig& cfg, const ProcessConfig& pc,
                      const std::string& product, const ProductTerm& term,
                      SpeciesKind kind) {
  if (!term.mass_yield) return term.yield;
  std::string basis = term.mass_basis;
  if (basis.empty()) {
    if (pc.reactants.size() != 1)
      throw ConfigError("mass_yield for \"" + product + "\" needs an explicit mass_basis");
    basis = pc.reactants.begin()->first;
  }
  const SpeciesDef* b = cfg.find_species(basis, kind);
  const SpeciesDef* prod = cfg.find_species(product, kind);
  if (!b || !prod) throw ConfigError("mass_yield basis or product species missing");
  return term.yield * b->molecular_weight / prod->molecular_weight;
}

// ---------------------------------------------------------------------------
// Gas-phase mass-action reactions
// ---------------------------------------------------------------------------

class GasReaction : public Process {
 public:
  GasReaction(const MechanismConfig& cfg, const ProcessConfig& pc, const StateLayout& layout)
      : Process(pc.type, pc.label) {
    for (const auto& [name, t] : pc.reactants) {
      const int o = layout.gas_offset(name);
      reactants_.push_back({o, t.stoichiometry, t.order, layout.molecular_weight(o)});
      order_sum_ += t.order;
    }
    auto add_products = [&](const std::map<std::string, ProductTerm>& prods,
                            std::vector<Prod>& out) {
      for (const auto& [name, t] : prods) {
        const int o = layout.gas_offset(name);
        out.push_back({o, resolved_yield(cfg, pc, name, t, SpeciesKind::Gas),
                       layout.molecular_weight(o)});
      }
    };
    add_products(pc.products, products_);
    add_products(pc.alkoxy_products, alkoxy_products_);

    for (const auto& t : reactants_) {
      touched_.push_back(t.offset);
      depends_.push_back(t.offset);
    }
    for (const auto& p : products_) touched_.push_back(p.offset);
    for (const auto& p : alkoxy_products_) touched_.push_back(p.offset);
  }

  void register_jacobian_elements(JacobianPattern& pattern) const override {
    for (const auto& col : reactants_) {
      for (const auto& row : reactants_) pattern.add(row.offset, col.offset);
      for (const auto& row : products_) pattern.add(row.offset, col.offset);
      for (const auto& row : alkoxy_products_) pattern.add(row.offset, col.offset);
    }
  }

  void resolve_ids(const SparseJacobian& jac) override {
    slots_.clear();
    for (const auto& col : reactants_) {
      for (const auto& row : reactants_) slots_.push_back(jac.slot(row.offset, col.offset));
      for (const auto& row : products_) slots_.push_back(jac.slot(row.offset, col.offset));
      for (const auto& row : alkoxy_products_)
        slots_.push_back(jac.slot(row.offset, col.offset));
    }
  }

  void calculate_derivative_contribution(std::span<const double> y,
                                         std::span<double> f) const override {
    const double p = product_of_powers(y, reactants_);
    const double rate = k_ppm_ * p;
    const double rate2 = k2_ppm_ * p;
    for (const auto& t : reactants_) f[t.offset] -= t.stoich * (rate + rate2);
    for (const auto& t : products_) f[t.offset] += t.yield * rate;
    for (const auto& t : alkoxy_products_) f[t.offset] += t.yield * rate2;
  }

  void calculate_jacobian_contribution(std::span<const double> y,
                                       SparseJacobian& jac) const override {
    size_t s = 0;
    for (size_t j = 0; j < reactants_.size(); ++j) {
      const double dp = product_partial(y, reactants_, j);
      const double drate = k_ppm_ * dp;
      const double drate2 = k2_ppm_ * dp;
      for (const auto& row : reactants_)
        jac.add(slots_[s++], -row.stoich * (drate + drate2));
      for (const auto& row : products_) jac.add(slots_[s++], row.yield * drate);
      for (const auto& row : alkoxy_products_) jac.add(slots_[s++], row.yield * drate2);
    }
  }

 protected:
  // Rate constant in number-density units -> ppm units via the per-ppm
  // number density raised to (sum of kinetic orders - 1).
  double ppm_conversion(const EnvironmentalState& env) const {
    return std::pow(env.per_ppm_number_density_cm3(), order_sum_ - 1.0);
  }

  std::vector<Term> reactants_;
  std::vector<Prod> products_;
  std::vector<Prod> alkoxy_products_;  // second Wennberg branch
  double order_sum_ = 0.0;
  double k_ppm_ = 0.0;
  double k2_ppm_ = 0.0;  // alkoxy branch
  std::vector<int> slots_;
};

class ArrheniusReaction final : public GasReaction {
 public:
  ArrheniusReaction(const MechanismConfig& cfg, const ProcessConfig& pc,
                    const StateLayout& layout)
      : GasReaction(cfg, pc, layout), p_(arrhenius_from(pc.rate_parameters)) {}

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    k_ppm_ = arrhenius_rate_constant(p_, env.temperature_K, env.pressure_Pa) *
             ppm_conversion(env);
  }

 private:
  ArrheniusParams p_;
};

class TroeReaction final : public GasReaction {
 public:
  TroeReaction(const MechanismConfig& cfg, const ProcessConfig& pc,
               const StateLayout& layout)
      : GasReaction(cfg, pc, layout),
        k0_(arrhenius_from(pc.rate_parameters, "k0_")),
        kinf_(arrhenius_from(pc.rate_parameters, "kinf_")),
        fc_(param_or(pc.rate_parameters, "Fc", 0.6)),
        n_(param_or(pc.rate_parameters, "N", 1.0)) {
    k0_.D = kinf_.D = 300.0;
    k0_.E = kinf_.E = 0.0;
  }

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    k_ppm_ = troe_rate_constant(k0_, kinf_, fc_, n_, env.temperature_K,
                                env.air_number_density_cm3()) *
             ppm_conversion(env);
  }

 private:
  ArrheniusParams k0_, kinf_;
  double fc_, n_;
};

class CustomH2o2Reaction final : public GasReaction {
 public:
  CustomH2o2Reaction(const MechanismConfig& cfg, const ProcessConfig& pc,
                     const StateLayout& layout)
      : GasReaction(cfg, pc, layout),
        k1_(arrhenius_from(pc.rate_parameters, "k1_")),
        k2_(arrhenius_from(pc.rate_parameters, "k2_")) {
    k2_.A = param_or(pc.rate_parameters, "k2_A", 0.0);
    k1_.D = k2_.D = 300.0;
    k1_.E = k2_.E = 0.0;
  }

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    k_ppm_ = custom_h2o2_rate_constant(k1_, k2_, env.temperature_K,
                                       env.air_number_density_cm3()) *
             ppm_conversion(env);
  }

 private:
  ArrheniusParams k1_, k2_;
};

class CustomOhHno3Reaction final : public GasReaction {
 public:
  CustomOhHno3Reaction(const MechanismConfig& cfg, const ProcessConfig& pc,
                       const StateLayout& layout)
      : GasReaction(cfg, pc, layout),
        k0_(arrhenius_from(pc.rate_parameters, "k0_")),
        k2_(arrhenius_from(pc.rate_parameters, "k2_")),
        k3_(arrhenius_from(pc.rate_parameters, "k3_")) {
    k0_.D = k2_.D = k3_.D = 300.0;
    k0_.E = k2_.E = k3_.E = 0.0;
  }

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    k_ppm_ = custom_oh_hno3_rate_constant(k0_, k2_, k3_, env.temperature_K,
                                          env.air_number_density_cm3()) *
             ppm_conversion(env);
  }

 private:
  ArrheniusParams k0_, k2_, k3_;
};

class WennbergTunnelingReaction final : public GasReaction {
 public:
  WennbergTunnelingReaction(const MechanismConfig& cfg, const ProcessConfig& pc,
                            const StateLayout& layout)
      : GasReaction(cfg, pc, layout),
        a_(param_or(pc.rate_parameters, "A", 1.0)),
        b_(param_or(pc.rate_parameters, "B", 0.0)),
        c_(param_or(pc.rate_parameters, "C", 0.0)) {}

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    k_ppm_ = wennberg_tunneling_rate_constant(a_, b_, c_, env.temperature_K) *
             ppm_conversion(env);
  }

 private:
  double a_, b_, c_;
};

class WennbergNoRo2Reaction final : public GasReaction {
 public:
  WennbergNoRo2Reaction(const MechanismConfig& cfg, const ProcessConfig& pc,
                        const StateLayout& layout)
      : GasReaction(cfg, pc, layout),
        x_(param_or(pc.rate_parameters, "X", 1.0)),
        y_(param_or(pc.rate_parameters, "Y", 0.0)),
        alpha0_(param_or(pc.rate_parameters, "a0", 1.0)),
        n_heavy_(param_or(pc.rate_parameters, "n", 1.0)) {}

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    const auto k = wennberg_no_ro2_rate_constants(x_, y_, alpha0_, n_heavy_,
                                                  env.temperature_K,
                                                  env.air_number_density_cm3());
    const double conv = ppm_conversion(env);
    k_ppm_ = k.k_nitrate * conv;
    k2_ppm_ = k.k_alkoxy * conv;
  }

 private:
  double x_, y_, alpha0_, n_heavy_;
};

class PhotolysisReaction final : public GasReaction {
 public:
  PhotolysisReaction(const MechanismConfig& cfg, const ProcessConfig& pc,
                     const StateLayout& layout)
      : GasReaction(cfg, pc, layout),
        j_(param_or(pc.rate_parameters, "rate_constant", 0.0)) {
    k_ppm_ = j_;
  }

  void update_for_new_environmental_state(const EnvironmentalState&) override {
    k_ppm_ = j_;
  }

  bool is_updatable() const override { return true; }
  void set_rate(double v) override {
    if (v < 0.0) throw std::invalid_argument("photolysis rate constant must be >= 0");
    j_ = v;
    k_ppm_ = v;
  }
  double rate_value() const override { return j_; }

 private:
  double j_;
};

// ---------------------------------------------------------------------------
// Emission and first-order loss
// ---------------------------------------------------------------------------

class EmissionProcess final : public Process {
 public:
  EmissionProcess(const ProcessConfig& pc, const StateLayout& layout)
      : Process(pc.type, pc.label),
        offset_(layout.gas_offset(pc.products.begin()->first)),
        rate_(param_or(pc.rate_parameters, "rate", 0.0)) {
    touched_.push_back(offset_);
  }

  void register_jacobian_elements(JacobianPattern&) const override {}
  void resolve_ids(const SparseJacobian&) override {}
  void update_for_new_environmental_state(const EnvironmentalState&) override {}

  void calculate_derivative_contribution(std::span<const double>,
                                         std::span<double> f) const override {
    f[offset_] += rate_;
  }
  void calculate_jacobian_contribution(std::span<const double>,
                                       SparseJacobian&) const override {}

  bool is_updatable() const override { return true; }
  void set_rate(double v) override {
    if (v < 0.0) throw std::invalid_argument("emission rate must be >= 0");
    rate_ = v;
  }
  double rate_value() const override { return rate_; }

 private:
  int offset_;
  double rate_;  // ppm s-1
};

class FirstOrderLossProcess final : public Process {
 public:
  FirstOrderLossProcess(const ProcessConfig& pc, const StateLayout& layout)
      : Process(pc.type, pc.label),
        offset_(layout.gas_offset(pc.reactants.begin()->first)),
        k_(param_or(pc.rate_parameters, "rate_constant", 0.0)) {
    touched_.push_back(offset_);
    depends_.push_back(offset_);
  }

  void register_jacobian_elements(JacobianPattern& pattern) const override {
    pattern.add(offset_, offset_);
  }
  void resolve_ids(const SparseJacobian& jac) override {
    slot_ = jac.slot(offset_, offset_);
  }
  void update_for_new_environmental_state(const EnvironmentalState&) override {}

  void calculate_derivative_contribution(std::span<const double> y,
                                         std::span<double> f) const override {
    f[offset_] -= k_ * y[offset_];
  }
  void calculate_jacobian_contribution(std::span<const double>,
                                       SparseJacobian& jac) const override {
    jac.add(slot_, -k_);
  }

  bool is_updatable() const override { return true; }
  void set_rate(double v) override {
    if (v < 0.0) throw std::invalid_argument("loss rate constant must be >= 0");
    k_ = v;
  }
  double rate_value() const override { return k_; }

 private:
  int offset_;
  int slot_ = -1;
  double k_;  // s-1
};

// ---------------------------------------------------------------------------
// Condensed-phase reactions, replicated over every instance of their phase
// ---------------------------------------------------------------------------

struct CondensedInstance {
  std::vector<Term> reactants;
  std::vector<Prod> products;
  int water = -1;
  std::vector<int> slots;  // [col][row], cols = reactants (+ water), rows = all
};

class CondensedReactionBase : public Process {
 public:
  CondensedReactionBase(const MechanismConfig& cfg, const ProcessConfig& pc,
                        const StateLayout& layout)
      : Process(pc.type, pc.label) {
    for (const auto& inst : layout.phase_instances()) {
      if (inst.phase != pc.phase) continue;
      CondensedInstance ci;
      auto member_offset = [&](const std::string& name) {
        auto it = std::find(inst.species.begin(), inst.species.end(), name);
        if (it == inst.species.end())
          throw ConfigError("species \"" + name + "\" not in phase \"" + pc.phase + "\"");
        return inst.offset + static_cast<int>(it - inst.species.begin());
      };
      for (const auto& [name, t] : pc.reactants) {
        const int o = member_offset(name);
        ci.reactants.push_back({o, t.stoichiometry, t.order, layout.molecular_weight(o)});
      }
      for (const auto& [name, t] : pc.products) {
        const int o = member_offset(name);
        ci.products.push_back({o, resolved_yield(cfg, pc, name, t, SpeciesKind::Aerosol),
                               layout.molecular_weight(o)});
      }
      if (!pc.water_species.empty()) ci.water = member_offset(pc.water_species);
      for (const auto& t : ci.reactants) {
        touched_.push_back(t.offset);
        depends_.push_back(t.offset);
      }
      for (const auto& p : ci.products) touched_.push_back(p.offset);
      if (ci.water >= 0) depends_.push_back(ci.water);
      instances_.push_back(std::move(ci));
    }
    if (instances_.empty())
      throw ConfigError("phase \"" + pc.phase + "\" is not hosted by the representation");
  }

 protected:
  std::vector<CondensedInstance> instances_;
};

class CondensedPhaseArrheniusReaction final : public CondensedReactionBase {
 public:
  CondensedPhaseArrheniusReaction(const MechanismConfig& cfg, const ProcessConfig& pc,
                                  const StateLayout& layout)
      : CondensedReactionBase(cfg, pc, layout),
        p_(arrhenius_from(pc.rate_parameters)),
        aqueous_(pc.units == CondensedUnits::Molar) {
    for (auto& ci : instances_) {
      order_sum_ = 0.0;
      for (const auto& t : ci.reactants) order_sum_ += t.order;
      if (!aqueous_) ci.water = -1;
    }
  }

  void register_jacobian_elements(JacobianPattern& pattern) const override {
    for (const auto& ci : instances_) {
      auto add_col = [&](int col) {
        for (const auto& row : ci.reactants) pattern.add(row.offset, col);
        for (const auto& row : ci.products) pattern.add(row.offset, col);
      };
      for (const auto& c : ci.reactants) add_col(c.offset);
      if (ci.water >= 0) add_col(ci.water);
    }
  }

  void resolve_ids(const SparseJacobian& jac) override {
    for (auto& ci : instances_) {
      ci.slots.clear();
      auto add_col = [&](int col) {
        for (const auto& row : ci.reactants) ci.slots.push_back(jac.slot(row.offset, col));
        for (const auto& row : ci.products) ci.slots.push_back(jac.slot(row.offset, col));
      };
      for (const auto& c : ci.reactants) add_col(c.offset);
      if (ci.water >= 0) add_col(ci.water);
    }
  }

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    k_ = arrhenius_rate_constant(p_, env.temperature_K, env.pressure_Pa);
  }

  void calculate_derivative_contribution(std::span<const double> y,
                                         std::span<double> f) const override {
    for (const auto& ci : instances_) {
      const double wfac = ci.water >= 0 ? std::max(y[ci.water], kWaterFloor) : 1.0;
      double rate = k_;
      for (const auto& t : ci.reactants) rate *= ipow(y[t.offset] / (t.mw * wfac), t.order);
      for (const auto& t : ci.reactants) f[t.offset] -= t.stoich * rate * t.mw * wfac;
      for (const auto& t : ci.products) f[t.offset] += t.yield * rate * t.mw * wfac;
    }
  }

  void calculate_jacobian_contribution(std::span<const double> y,
                                       SparseJacobian& jac) const override {
    std::vector<double> conc(8);
    for (const auto& ci : instances_) {
      const double wfac = ci.water >= 0 ? std::max(y[ci.water], kWaterFloor) : 1.0;
      conc.resize(ci.reactants.size());
      double rate = k_;
      for (size_t l = 0; l < ci.reactants.size(); ++l) {
        conc[l] = y[ci.reactants[l].offset] / (ci.reactants[l].mw * wfac);
        rate *= ipow(conc[l], ci.reactants[l].order);
      }
      size_t s = 0;
      for (size_t j = 0; j < ci.reactants.size(); ++j) {
        // d(rate)/d(mass_j) through c_j = m_j / (MW_j W)
        double drate = k_ * ci.reactants[j].order *
                       ipow(conc[j], ci.reactants[j].order - 1.0) /
                       (ci.reactants[j].mw * wfac);
        for (size_t l = 0; l < ci.reactants.size(); ++l)
          if (l != j) drate *= ipow(conc[l], ci.reactants[l].order);
        for (const auto& row : ci.reactants)
          jac.add(ci.slots[s++], -row.stoich * drate * row.mw * wfac);
        for (const auto& row : ci.products)
          jac.add(ci.slots[s++], row.yield * drate * row.mw * wfac);
      }
      if (ci.water >= 0) {
        // d/dW of (W * rate(c(W))): rate scales as W^(-sum of orders)
        const double dfac = (1.0 - order_sum_) * rate;
        for (const auto& row : ci.reactants)
          jac.add(ci.slots[s++], -row.stoich * row.mw * dfac);
        for (const auto& row : ci.products)
          jac.add(ci.slots[s++], row.yield * row.mw * dfac);
      }
    }
  }

 private:
  ArrheniusParams p_;
  bool aqueous_;
  double order_sum_ = 0.0;
  double k_ = 0.0;
};

class AqueousReversibleReaction final : public CondensedReactionBase {
 public:
  AqueousReversibleReaction(const MechanismConfig& cfg, const ProcessConfig& pc,
                            const StateLayout& layout)
      : CondensedReactionBase(cfg, pc, layout),
        a_(param_or(pc.rate_parameters, "A", 1.0)),
        c_(param_or(pc.rate_parameters, "C", 0.0)),
        k_reverse_(param_or(pc.rate_parameters, "k_reverse", 0.0)) {}

  void register_jacobian_elements(JacobianPattern& pattern) const override {
    for (const auto& ci : instances_) {
      auto add_col = [&](int col) {
        for (const auto& row : ci.reactants) pattern.add(row.offset, col);
        for (const auto& row : ci.products) pattern.add(row.offset, col);
      };
      for (const auto& c : ci.reactants) add_col(c.offset);
      for (const auto& c : ci.products) add_col(c.offset);
    }
  }

  void resolve_ids(const SparseJacobian& jac) override {
    for (auto& ci : instances_) {
      ci.slots.clear();
      auto add_col = [&](int col) {
        for (const auto& row : ci.reactants) ci.slots.push_back(jac.slot(row.offset, col));
        for (const auto& row : ci.products) ci.slots.push_back(jac.slot(row.offset, col));
      };
      for (const auto& c : ci.reactants) add_col(c.offset);
      for (const auto& c : ci.products) add_col(c.offset);
    }
  }

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    // detailed balance: k_forward = K_eq(T) * k_reverse
    k_forward_ = aqueous_equilibrium_constant(a_, c_, env.temperature_K) * k_reverse_;
  }

  void calculate_derivative_contribution(std::span<const double> y,
                                         std::span<double> f) const override {
    for (const auto& ci : instances_) {
      double fwd = k_forward_;
      for (const auto& t : ci.reactants) fwd *= ipow(y[t.offset], t.order);
      double rev = k_reverse_;
      for (const auto& t : ci.products) rev *= ipow(y[t.offset], t.yield);
      const double net = fwd - rev;
      for (const auto& t : ci.reactants) f[t.offset] -= t.stoich * net;
      for (const auto& t : ci.products) f[t.offset] += t.yield * net;
    }
  }

  void calculate_jacobian_contribution(std::span<const double> y,
                                       SparseJacobian& jac) const override {
    for (const auto& ci : instances_) {
      size_t s = 0;
      auto push_rows = [&](double dnet) {
        for (const auto& row : ci.reactants) jac.add(ci.slots[s++], -row.stoich * dnet);
        for (const auto& row : ci.products) jac.add(ci.slots[s++], row.yield * dnet);
      };
      for (size_t j = 0; j < ci.reactants.size(); ++j) {
        double d = k_forward_ * ci.reactants[j].order *
                   ipow(y[ci.reactants[j].offset], ci.reactants[j].order - 1.0);
        for (size_t l = 0; l < ci.reactants.size(); ++l)
          if (l != j) d *= ipow(y[ci.reactants[l].offset], ci.reactants[l].order);
        push_rows(d);
      }
      for (size_t j = 0; j < ci.products.size(); ++j) {
        double d = -k_reverse_ * ci.products[j].yield *
                   ipow(y[ci.products[j].offset], ci.products[j].yield - 1.0);
        for (size_t l = 0; l < ci.products.size(); ++l)
          if (l != j) d *= ipow(y[ci.products[l].offset], ci.products[l].yield);
        push_rows(d);
      }
    }
  }

 private:
  double a_, c_, k_reverse_;
  double k_forward_ = 0.0;
};

// ---------------------------------------------------------------------------
// Gas-aerosol phase transfer
// ---------------------------------------------------------------------------

struct TransferInstance {
  int inst = 0;       // phase instance id
  int gas = 0;        // gas state offset
  int aero = 0;       // aerosol state offset
  int water = -1;     // aerosol water offset (Henry)
  std::vector<int> cols;     // sorted unique dependency offsets
  std::vector<int> slots_g;  // per col, jac slot in the gas row
  std::vector<int> slots_a;  // per col, jac slot in the aerosol row
};

class PhaseTransferBase : public Process {
 public:
  PhaseTransferBase(const ProcessConfig& pc, const StateLayout& layout,
                    const AerosolRepresentation* rep, bool needs_composition)
      : Process(pc.type, pc.label), rep_(rep) {
    if (!rep) throw ConfigError("phase transfer requires an aerosol representation");
    const int g = layout.gas_offset(pc.gas_species);
    mw_gas_ = layout.molecular_weight(g);
    alpha_ = layout.accommodation_alpha(g);
    dg_ = layout.diffusion_coeff(g);
    if (dg_ <= 0.0)
      throw ConfigError("gas species \"" + pc.gas_species + "\" has no diffusion_coeff");

    std::vector<double> probe(layout.n_total(), 1.0), scratch;
    for (const auto& inst : layout.phase_instances()) {
      if (inst.phase != pc.phase) continue;
      TransferInstance ti;
      ti.inst = inst.id;
      ti.gas = g;
      auto member_offset = [&](const std::string& name) {
        auto it = std::find(inst.species.begin(), inst.species.end(), name);
        if (it == inst.species.end())
          throw ConfigError("species \"" + name + "\" not in phase \"" + pc.phase + "\"");
        return inst.offset + static_cast<int>(it - inst.species.begin());
      };
      ti.aero = member_offset(pc.aerosol_species);
      if (!pc.water_species.empty()) ti.water = member_offset(pc.water_species);

      std::vector<int> cols = {g, ti.aero};
      if (ti.water >= 0) cols.push_back(ti.water);
      auto add_support = [&](const PropertyWithGradient& pg) {
        for (size_t i = 0; i < pg.gradient.size(); ++i)
          cols.push_back(pg.support_begin + static_cast<int>(i));
      };
      add_support(rep->effective_radius__m(probe, inst.id, scratch));
      add_support(rep->number_concentration__n_m3(probe, inst.id, scratch));
      if (needs_composition)
        add_support(rep->aerosol_phase_mass__kg_m3(probe, inst.id, scratch));
      std::sort(cols.begin(), cols.end());
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      ti.cols = std::move(cols);

      touched_.push_back(g);
      touched_.push_back(ti.aero);
      for (int c : ti.cols) depends_.push_back(c);
      instances_.push_back(std::move(ti));
    }
    if (instances_.empty())
      throw ConfigError("phase \"" + pc.phase + "\" is not hosted by the representation");
    mw_aero_ = layout.molecular_weight(instances_[0].aero);
    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
  }

  void register_jacobian_elements(JacobianPattern& pattern) const override {
    for (const auto& ti : instances_) {
      for (int c : ti.cols) {
        pattern.add(ti.gas, c);
        pattern.add(ti.aero, c);
      }
    }
  }

  void resolve_ids(const SparseJacobian& jac) override {
    for (auto& ti : instances_) {
      ti.slots_g.clear();
      ti.slots_a.clear();
      for (int c : ti.cols) {
        ti.slots_g.push_back(jac.slot(ti.gas, c));
        ti.slots_a.push_back(jac.slot(ti.aero, c));
      }
    }
  }

 protected:
  int col_index(const TransferInstance& ti, int offset) const {
    auto it = std::lower_bound(ti.cols.begin(), ti.cols.end(), offset);
    return static_cast<int>(it - ti.cols.begin());
  }

  void cache_environment(const EnvironmentalState& env) {
    ppm2mol_ = 1.0e-6 * env.air_molar_density();  // mol m-3 per ppm
    mfp_ = gas_mean_free_path(dg_, env.temperature_K, mw_gas_);
    four_pi_d_ = 4.0 * kPi * dg_;
  }

  // uptake coefficient k_up = k_c(r) N [s-1] and its gradient pieces
  struct Uptake {
    double k_up;
    double k_c;
    double dk_c_dr;
    PropertyWithGradient r;
    PropertyWithGradient n;
  };
  Uptake uptake(std::span<const double> y, const TransferInstance& ti) const {
    Uptake u;
    u.r = rep_->effective_radius__m(y, ti.inst, buf_r_);
    u.n = rep_->number_concentration__n_m3(y, ti.inst, buf_n_);
    const double kn = mfp_ / u.r.value;
    const double f = fuchs_sutugin(kn, alpha_);
    u.k_c = four_pi_d_ * u.r.value * f;
    u.dk_c_dr = four_pi_d_ * (f - kn * fuchs_sutugin_dkn(kn, alpha_));
    u.k_up = u.k_c * u.n.value;
    return u;
  }

  // scatter d(k_up)/dy into dflux scaled by `scale`
  void add_uptake_gradient(const TransferInstance& ti, const Uptake& u, double scale,
                           std::vector<double>& dflux) const {
    for (size_t i = 0; i < u.r.gradient.size(); ++i) {
      const int off = u.r.support_begin + static_cast<int>(i);
      dflux[col_index(ti, off)] += scale * u.n.value * u.dk_c_dr * u.r.gradient[i];
    }
    for (size_t i = 0; i < u.n.gradient.size(); ++i) {
      const int off = u.n.support_begin + static_cast<int>(i);
      dflux[col_index(ti, off)] += scale * u.k_c * u.n.gradient[i];
    }
  }

  void push_rows(const TransferInstance& ti, const std::vector<double>& dflux,
                 SparseJacobian& jac) const {
    for (size_t i = 0; i < ti.cols.size(); ++i) {
      if (dflux[i] == 0.0) continue;
      jac.add(ti.slots_g[i], -dflux[i] / ppm2mol_);
      jac.add(ti.slots_a[i], dflux[i] * mw_aero_);
    }
  }

  const AerosolRepresentation* rep_;
  std::vector<TransferInstance> instances_;
  double mw_gas_ = 0.0, mw_aero_ = 0.0, alpha_ = 1.0, dg_ = 0.0;
  double ppm2mol_ = 0.0, mfp_ = 0.0, four_pi_d_ = 0.0;
  mutable std::vector<double> buf_r_, buf_n_, buf_m_, buf_w_, dflux_;
};

// Henry's-law condensation/evaporation. The evaporation rate constant is
// constructed so the net flux vanishes exactly at C_aq = H(T) p_gas.
class HenrysLawTransfer final : public PhaseTransferBase {
 public:
  HenrysLawTransfer(const ProcessConfig& pc, const StateLayout& layout,
                    const AerosolRepresentation* rep)
      : PhaseTransferBase(pc, layout, rep, /*needs_composition=*/false),
        h298_(param_or(pc.rate_parameters, "H_298", 0.0)),
        c_(param_or(pc.rate_parameters, "C", 0.0)) {}

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    cache_environment(env);
    // H R T: dimensionless partition coefficient per unit water mass conc
    hrt_ = henrys_law_constant(h298_, c_, env.temperature_K) * kGasConstant *
           env.temperature_K;
  }

  void calculate_derivative_contribution(std::span<const double> y,
                                         std::span<double> f) const override {
    for (const auto& ti : instances_) {
      const Uptake u = uptake(y, ti);
      const double w = std::max(y[ti.water], kWaterFloor);
      const double c_gas = y[ti.gas] * ppm2mol_;
      const double c_aero = y[ti.aero] / mw_aero_;
      const double flux = u.k_up * (c_gas - c_aero / (hrt_ * w));  // mol m-3 s-1
      f[ti.gas] -= flux / ppm2mol_;
      f[ti.aero] += flux * mw_aero_;
    }
  }

  void calculate_jacobian_contribution(std::span<const double> y,
                                       SparseJacobian& jac) const override {
    for (const auto& ti : instances_) {
      const Uptake u = uptake(y, ti);
      const double w = std::max(y[ti.water], kWaterFloor);
      const double c_gas = y[ti.gas] * ppm2mol_;
      const double c_aero = y[ti.aero] / mw_aero_;
      const double driving = c_gas - c_aero / (hrt_ * w);

      dflux_.assign(ti.cols.size(), 0.0);
      dflux_[col_index(ti, ti.gas)] += u.k_up * ppm2mol_;
      dflux_[col_index(ti, ti.aero)] += -u.k_up / (hrt_ * w * mw_aero_);
      if (y[ti.water] > kWaterFloor)
        dflux_[col_index(ti, ti.water)] += u.k_up * c_aero / (hrt_ * w * w);
      add_uptake_gradient(ti, u, driving, dflux_);
      push_rows(ti, dflux_, jac);
    }
  }

 private:
  double h298_, c_;
  double hrt_ = 0.0;
};

// SIMPOL.1 vapor-pressure condensation/evaporation with a Raoult's-law
// mole-fraction equilibrium at the particle surface.
class SimpolTransfer final : public PhaseTransferBase {
 public:
  SimpolTransfer(const ProcessConfig& pc, const StateLayout& layout,
                 const AerosolRepresentation* rep)
      : PhaseTransferBase(pc, layout, rep, /*needs_composition=*/true),
        b1_(param_or(pc.rate_parameters, "B1", 0.0)),
        b2_(param_or(pc.rate_parameters, "B2", 0.0)),
        b3_(param_or(pc.rate_parameters, "B3", 0.0)),
        b4_(param_or(pc.rate_parameters, "B4", 0.0)) {}

  void update_for_new_environmental_state(const EnvironmentalState& env) override {
    cache_environment(env);
    psat_c_ = simpol_vapor_pressure_atm(b1_, b2_, b3_, b4_, env.temperature_K) *
              kAtmToPa / (kGasConstant * env.temperature_K);  // mol m-3
  }

  void calculate_derivative_contribution(std::span<const double> y,
                                         std::span<double> f) const override {
    for (const auto& ti : instances_) {
      const Uptake u = uptake(y, ti);
      const double c_gas = y[ti.gas] * ppm2mol_;
      const double flux = u.k_up * (c_gas - mole_fraction(y, ti) * psat_c_);
      f[ti.gas] -= flux / ppm2mol_;
      f[ti.aero] += flux * mw_aero_;
    }
  }

  void calculate_jacobian_contribution(std::span<const double> y,
                                       SparseJacobian& jac) const override {
    for (const auto& ti : instances_) {
      const Uptake u = uptake(y, ti);
      const double c_gas = y[ti.gas] * ppm2mol_;

      dflux_.assign(ti.cols.size(), 0.0);
      dflux_[col_index(ti, ti.gas)] += u.k_up * ppm2mol_;

      double x = 0.0;
      const auto& inst = rep_->layout().phase_instances()[ti.inst];
      double moles = 0.0;
      for (int k = inst.offset; k < inst.offset + inst.n_species; ++k)
        moles += y[k] / rep_->layout().molecular_weight(k);
      if (moles > kMolesFloor) {
        const auto mass = rep_->aerosol_phase_mass__kg_m3(y, ti.inst, buf_m_);
        const auto avg_mw =
            rep_->aerosol_phase_average_molecular_weight__kg_mol(y, ti.inst, buf_w_);
        const double n_tot = mass.value / avg_mw.value;
        x = (y[ti.aero] / mw_aero_) / n_tot;
        // dx/dm_j = (delta_aj / MW_a) / n_tot - x dn_tot/dm_j / n_tot
        for (int i = 0; i < inst.n_species; ++i) {
          const int off = inst.offset + i;
          const double dn_tot = (mass.gradient[i] * avg_mw.value -
                                 mass.value * avg_mw.gradient[i]) /
                                (avg_mw.value * avg_mw.value);
          double dx = -x * dn_tot / n_tot;
          if (off == ti.aero) dx += 1.0 / (mw_aero_ * n_tot);
          dflux_[col_index(ti, off)] += -u.k_up * psat_c_ * dx;
        }
      }
      add_uptake_gradient(ti, u, c_gas - x * psat_c_, dflux_);
      push_rows(ti, dflux_, jac);
    }
  }

 private:
  double mole_fraction(std::span<const double> y, const TransferInstance& ti) const {
    const auto& inst = rep_->layout().phase_instances()[ti.inst];
    double moles = 0.0;
    for (int k = inst.offset; k < inst.offset + inst.n_species; ++k)
      moles += y[k] / rep_->layout().molecular_weight(k);
    if (moles <= kMolesFloor) return 0.0;  // nothing to evaporate
    const auto mass = rep_->aerosol_phase_mass__kg_m3(y, ti.inst, buf_m_);
    const auto avg_mw =
        rep_->aerosol_phase_average_molecular_weight__kg_mol(y, ti.inst, buf_w_);
    return (y[ti.aero] / mw_aero_) * avg_mw.value / mass.value;
  }

  double b1_, b2_, b3_, b4_;
  double psat_c_ = 0.0;  // saturation concentration, mol m-3
};

}  // namespace

std::vector<std::unique_ptr<Process>> build_processes(const MechanismConfig& cfg,
                                                      const StateLayout& layout,
                                                      const AerosolRepresentation* rep) {
  std::vector<std::unique_ptr<Process>> out;
  for (const auto& pc : cfg.processes) {
    switch (pc.type) {
      case ProcessType::Arrhenius:
        out.push_back(std::make_unique<ArrheniusReaction>(cfg, pc, layout));
        break;
      case ProcessType::Troe:
        out.push_back(std::make_unique<TroeReaction>(cfg, pc, layout));
        break;
      case ProcessType::CustomH2o2:
        out.push_back(std::make_unique<CustomH2o2Reaction>(cfg, pc, layout));
        break;
      case ProcessType::CustomOhHno3:
        out.push_back(std::make_unique<CustomOhHno3Reaction>(cfg, pc, layout));
        break;
      case ProcessType::WennbergTunneling:
        out.push_back(std::make_unique<WennbergTunnelingReaction>(cfg, pc, layout));
        break;
      case ProcessType::WennbergNoRo2:
        out.push_back(std::make_unique<WennbergNoRo2Reaction>(cfg, pc, layout));
        break;
      case ProcessType::Photolysis:
        out.push_back(std::make_unique<PhotolysisReaction>(cfg, pc, layout));
        break;
      case ProcessType::Emission:
        out.push_back(std::make_unique<EmissionProcess>(pc, layout));
        break;
      case ProcessType::FirstOrderLoss:
        out.push_back(std::make_unique<FirstOrderLossProcess>(pc, layout));
        break;
      case ProcessType::CondensedPhaseArrhenius:
        out.push_back(std::make_unique<CondensedPhaseArrheniusReaction>(cfg, pc, layout));
        break;
      case ProcessType::AqueousReversible:
        out.push_back(std::make_unique<AqueousReversibleReaction>(cfg, pc, layout));
        break;
      case ProcessType::HenrysLawPhaseTransfer:
        out.push_back(std::make_unique<HenrysLawTransfer>(pc, layout, rep));
        break;
      case ProcessType::SimpolPhaseTransfer:
        out.push_back(std::make_unique<SimpolTransfer>(pc, layout, rep));
        break;
    }
  }
  return out;
}

}  // namespace mpchem
