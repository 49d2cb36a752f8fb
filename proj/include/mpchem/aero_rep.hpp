#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mpchem/config.hpp"
#include "mpchem/layout.hpp"

namespace mpchem {

// A physical property of the particle(s) hosting a phase instance, together
// with its partial derivatives with respect to the state variables. The
// gradient support is always a contiguous state-offset range; an empty
// gradient means the property does not depend on the state.
struct PropertyWithGradient {
  double value = 0.0;
  int support_begin = 0;
  std::span<const double> gradient;  // one entry per offset in the support
};

// Answers per-phase-instance property queries for whatever scheme the host
// uses to represent aerosols. Representation objects are immutable
// configuration plus pure queries over a supplied state; gradient storage is
// caller-provided so concurrent reads are safe.
class AerosolRepresentation {
 public:
  explicit AerosolRepresentation(const StateLayout& layout) : layout_(&layout) {}
  virtual ~AerosolRepresentation() = default;

  virtual PropertyWithGradient effective_radius__m(std::span<const double> y, int instance,
                                                   std::vector<double>& scratch) const = 0;
  virtual PropertyWithGradient number_concentration__n_m3(
      std::span<const double> y, int instance, std::vector<double>& scratch) const = 0;

  PropertyWithGradient aerosol_phase_mass__kg_m3(std::span<const double> y, int instance,
                                                 std::vector<double>& scratch) const;
  PropertyWithGradient aerosol_phase_average_molecular_weight__kg_mol(
      std::span<const double> y, int instance, std::vector<double>& scratch) const;

  const StateLayout& layout() const { return *layout_; }
  // Largest gradient support over all instances (for sizing scratch buffers).
  int max_support() const;

 protected:
  const PhaseInstanceInfo& instance_info(int instance) const;
  const SlotInfo& slot_of(int instance) const;
  const StateLayout* layout_;
};

// Fixed-size modal/sectional scheme: effective radii are constant over a
// simulation; number concentration is recomputed from the slot's total mass.
class ModalSectionalRep final : public AerosolRepresentation {
 public:
  ModalSectionalRep(const AeroRepConfig& cfg, const StateLayout& layout);

  PropertyWithGradient effective_radius__m(std::span<const double> y, int instance,
                                           std::vector<double>& scratch) const override;
  PropertyWithGradient number_concentration__n_m3(std::span<const double> y, int instance,
                                                  std::vector<double>& scratch) const override;

  double slot_effective_radius(int slot) const { return r_eff_[slot]; }
  double slot_mean_particle_volume(int slot) const { return vbar_[slot]; }

 private:
  std::vector<double> r_eff_;  // per slot, m
  std::vector<double> vbar_;   // per slot, mean single-particle volume, m3
};

// Particle-resolved scheme: each computational particle carries a weight
// (number concentration represented, m-3); radius is recomputed from the
// current composition assuming volume additivity.
class SingleParticleRep final : public AerosolRepresentation {
 public:
  static constexpr double kMinRadius = 1.0e-10;  // m, floor for empty particles

  SingleParticleRep(const AeroRepConfig& cfg, const StateLayout& layout);

  PropertyWithGradient effective_radius__m(std::span<const double> y, int instance,
                                           std::vector<double>& scratch) const override;
  PropertyWithGradient number_concentration__n_m3(std::span<const double> y, int instance,
                                                  std::vector<double>& scratch) const override;

  double particle_weight(int slot) const { return weights_[slot]; }

 private:
  std::vector<double> weights_;  // per particle, m-3
};

std::unique_ptr<AerosolRepresentation> make_aerosol_representation(
    const MechanismConfig& config, const StateLayout& layout);

}  // namespace mpchem
