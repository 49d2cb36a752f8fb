#include "mpchem/parameter.hpp"

#include <algorithm>
#include <cmath>

namespace mpchem {

ZsrAerosolWater::ZsrAerosolWater(const ParameterConfig& cfg, const StateLayout& layout)
    : Parameter(cfg.label) {
  for (const auto& e : cfg.electrolytes)
    electrolytes_.push_back({e.molecular_weight, e.molality_poly});
  coeff_.resize(electrolytes_.size(), 0.0);

  for (const auto& inst : layout.phase_instances()) {
    if (inst.phase != cfg.phase) continue;
    Instance in;
    auto member_offset = [&](const std::string& name) {
      auto it = std::find(inst.species.begin(), inst.species.end(), name);
      if (it == inst.species.end())
        throw ConfigError("species \"" + name + "\" not in phase \"" + cfg.phase + "\"");
      return inst.offset + static_cast<int>(it - inst.species.begin());
    };
    in.water_offset = member_offset(cfg.water_species);
    for (const auto& e : cfg.electrolytes)
      in.electrolyte_offsets.push_back(member_offset(e.species));
    diagnosed_.push_back(in.water_offset);
    instances_.push_back(std::move(in));
  }
  if (instances_.empty())
    throw ConfigError("phase \"" + cfg.phase + "\" is not hosted by the representation");
}

void ZsrAerosolWater::register_param_jacobian(JacobianPattern& pattern) const {
  for (size_t i = 0; i < instances_.size(); ++i)
    for (int col : instances_[i].electrolyte_offsets)
      pattern.add(param_rows_[i], col);
}

void ZsrAerosolWater::resolve_ids(const SparseJacobian& pjac) {
  for (size_t i = 0; i < instances_.size(); ++i) {
    instances_[i].slots.clear();
    for (int col : instances_[i].electrolyte_offsets)
      instances_[i].slots.push_back(pjac.slot(param_rows_[i], col));
  }
}

void ZsrAerosolWater::update_for_new_environmental_state(const EnvironmentalState& env) {
  const double aw = env.water_activity;
  for (size_t e = 0; e < electrolytes_.size(); ++e) {
    double m = 0.0, p = 1.0;
    for (double y : electrolytes_[e].poly) {
      m += y * p;
      p *= aw;
    }
    if (m <= 0.0)
      throw std::domain_error("ZSR molality polynomial is non-positive at water activity " +
                              std::to_string(aw));
    coeff_[e] = 1000.0 / (electrolytes_[e].molecular_weight * m);
  }
}

void ZsrAerosolWater::calculate(std::span<double> y_work) const {
  for (const auto& in : instances_) {
    double w = 0.0;
    for (size_t e = 0; e < coeff_.size(); ++e)
      w += coeff_[e] * y_work[in.electrolyte_offsets[e]];
    y_work[in.water_offset] = w;
  }
}

void ZsrAerosolWater::calculate_param_jacobian(std::span<const double>,
                                               SparseJacobian& pjac) const {
  // W is linear in the electrolyte concentrations at fixed water activity
  for (const auto& in : instances_)
    for (size_t e = 0; e < coeff_.size(); ++e) pjac.add(in.slots[e], coeff_[e]);
}

std::vector<std::unique_ptr<Parameter>> build_parameters(const MechanismConfig& cfg,
                                                         const StateLayout& layout) {
  std::vector<std::unique_ptr<Parameter>> out;
  for (const auto& pc : cfg.parameters)
    out.push_back(std::make_unique<ZsrAerosolWater>(pc, layout));
  return out;
}

}  // namespace mpchem
