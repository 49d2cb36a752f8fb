#include "mpchem/aero_rep.hpp"

#include <cmath>

namespace mpchem {

const PhaseInstanceInfo& AerosolRepresentation::instance_info(int instance) const {
  return layout_->phase_instances().at(instance);
}

const SlotInfo& AerosolRepresentation::slot_of(int instance) const {
  return layout_->slots()[instance_info(instance).slot];
}

int AerosolRepresentation::max_support() const {
  int m = 0;
  for (const auto& s : layout_->slots()) m = std::max(m, s.end - s.begin);
  return m;
}

PropertyWithGradient AerosolRepresentation::aerosol_phase_mass__kg_m3(
    std::span<const double> y, int instance, std::vector<double>& scratch) const {
  const PhaseInstanceInfo& inst = instance_info(instance);
  PropertyWithGradient out;
  out.support_begin = inst.offset;
  scratch.assign(inst.n_species, 1.0);
  double total = 0.0;
  for (int i = 0; i < inst.n_species; ++i) total += y[inst.offset + i];
  out.value = total;
  out.gradient = scratch;
  return out;
}

PropertyWithGradient AerosolRepresentation::aerosol_phase_average_molecular_weight__kg_mol(
    std::span<const double> y, int instance, std::vector<double>& scratch) const {
  const PhaseInstanceInfo& inst = instance_info(instance);
  double mass = 0.0, moles = 0.0;
  for (int i = 0; i < inst.n_species; ++i) {
    mass += y[inst.offset + i];
    moles += y[inst.offset + i] / layout_->molecular_weight(inst.offset + i);
  }
  if (moles <= 0.0)
    throw std::domain_error("average molecular weight of a zero-mass phase instance");
  PropertyWithGradient out;
  out.value = mass / moles;
  out.support_begin = inst.offset;
  scratch.resize(inst.n_species);
  for (int i = 0; i < inst.n_species; ++i)
    scratch[i] = (1.0 - out.value / layout_->molecular_weight(inst.offset + i)) / moles;
  out.gradient = scratch;
  return out;
}

ModalSectionalRep::ModalSectionalRep(const AeroRepConfig& cfg, const StateLayout& layout)
    : AerosolRepresentation(layout) {
  for (const auto& m : cfg.modes) {
    const double ln2 = std::log(m.gsd) * std::log(m.gsd);
    // surface-area-weighted mean radius (3rd/2nd moment of the lognormal)
    r_eff_.push_back(0.5 * m.gmd_m * std::exp(2.5 * ln2));
    vbar_.push_back(kPi / 6.0 * m.gmd_m * m.gmd_m * m.gmd_m * std::exp(4.5 * ln2));
  }
  for (const auto& s : cfg.sections) {
    r_eff_.push_back(0.5 * s.mid_diameter_m);
    vbar_.push_back(kPi / 6.0 * s.mid_diameter_m * s.mid_diameter_m * s.mid_diameter_m);
  }
  if (static_cast<int>(r_eff_.size()) != static_cast<int>(layout.slots().size()))
    throw std::logic_error("modal/sectional slot count does not match layout");
}

PropertyWithGradient ModalSectionalRep::effective_radius__m(std::span<const double>,
                                                            int instance,
                                                            std::vector<double>&) const {
  PropertyWithGradient out;
  out.value = r_eff_[instance_info(instance).slot];
  return out;  // fixed-size scheme: no state dependence
}

PropertyWithGradient ModalSectionalRep::number_concentration__n_m3(
    std::span<const double> y, int instance, std::vector<double>& scratch) const {
  const SlotInfo& slot = slot_of(instance);
  const double vbar = vbar_[slot.id];
  PropertyWithGradient out;
  out.support_begin = slot.begin;
  scratch.resize(slot.end - slot.begin);
  double volume = 0.0;
  for (int k = slot.begin; k < slot.end; ++k) {
    const double inv = 1.0 / layout_->density(k);
    volume += y[k] * inv;
    scratch[k - slot.begin] = inv / vbar;
  }
  out.value = volume / vbar;
  out.gradient = scratch;
  return out;
}

SingleParticleRep::SingleParticleRep(const AeroRepConfig& cfg, const StateLayout& layout)
    : AerosolRepresentation(layout) {
  const int n = cfg.max_computational_particles;
  if (cfg.particle_weights.empty())
    weights_.assign(n, 1.0);
  else if (cfg.particle_weights.size() == 1)
    weights_.assign(n, cfg.particle_weights[0]);
  else
    weights_ = cfg.particle_weights;
  if (static_cast<int>(weights_.size()) != static_cast<int>(layout.slots().size()))
    throw std::logic_error("particle count does not match layout");
}

PropertyWithGradient SingleParticleRep::effective_radius__m(
    std::span<const double> y, int instance, std::vector<double>& scratch) const {
  const SlotInfo& slot = slot_of(instance);
  const double w = weights_[slot.id];
  double volume = 0.0;  // per real particle
  for (int k = slot.begin; k < slot.end; ++k) volume += y[k] / (w * layout_->density(k));

  PropertyWithGradient out;
  out.support_begin = slot.begin;
  const double r = std::cbrt(3.0 * volume / (4.0 * kPi));
  if (!(r > kMinRadius)) {
    out.value = kMinRadius;  // defined-minimum radius for empty particles
    return out;
  }
  out.value = r;
  scratch.resize(slot.end - slot.begin);
  for (int k = slot.begin; k < slot.end; ++k)
    scratch[k - slot.begin] = r / (3.0 * volume * w * layout_->density(k));
  out.gradient = scratch;
  return out;
}

PropertyWithGradient SingleParticleRep::number_concentration__n_m3(
    std::span<const double>, int instance, std::vector<double>&) const {
  PropertyWithGradient out;
  out.value = weights_[instance_info(instance).slot];
  return out;  // number tracked directly
}

std::unique_ptr<AerosolRepresentation> make_aerosol_representation(
    const MechanismConfig& config, const StateLayout& layout) {
  if (!config.aero_rep) return nullptr;
  if (config.aero_rep->scheme == AeroRepConfig::Scheme::ModalSectional)
    return std::make_unique<ModalSectionalRep>(*config.aero_rep, layout);
  return std::make_unique<SingleParticleRep>(*config.aero_rep, layout);
}

}  // namespace mpchem
