#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mpchem/config.hpp"
#include "mpchem/constants.hpp"

namespace mpchem {

struct EnvironmentalState {
  double temperature_K = 0.0;
  double pressure_Pa = 0.0;
  double water_activity = 0.0;  // relative-humidity proxy for aerosol water

  bool operator==(const EnvironmentalState&) const = default;

  double air_molar_density() const {  // mol m-3
    return pressure_Pa / (kGasConstant * temperature_K);
  }
  double air_number_density_cm3() const {  // molecule cm-3
    return pressure_Pa / (kBoltzmann * temperature_K) * 1.0e-6;
  }
  // number density per ppm of mole fraction, molecule cm-3
  double per_ppm_number_density_cm3() const {
    return 1.0e-6 * air_number_density_cm3();
  }
};

// One aerosol phase instantiated in one representation slot; its species
// occupy the contiguous state range [offset, offset + n_species).
struct PhaseInstanceInfo {
  int id = 0;
  int slot = 0;
  std::string slot_name;
  std::string phase;
  int offset = 0;
  int n_species = 0;
  std::vector<std::string> species;
};

// One representation slot (mode, section, or computational particle) covering
// the contiguous state range [begin, end) across its phase instances.
struct SlotInfo {
  int id = 0;
  std::string name;
  int begin = 0;
  int end = 0;
  std::vector<int> instance_ids;
};

// Flat solver state: gas block (ppm) followed by per-phase-instance aerosol
// blocks (kg m-3). The layout is deterministic for equal configurations.
class StateLayout {
 public:
  static StateLayout build(const MechanismConfig& config);

  int n_gas() const { return n_gas_; }
  int n_total() const { return n_total_; }

  int gas_offset(const std::string& species) const;  // throws on unknown name
  int aerosol_offset(int slot, const std::string& phase, const std::string& species) const;
  // Human-readable name of a state entry, e.g. "O3" or "bin3/organics/POA".
  std::string describe(int offset) const;

  const std::vector<PhaseInstanceInfo>& phase_instances() const { return instances_; }
  const std::vector<SlotInfo>& slots() const { return slots_; }
  const std::map<std::string, int>& gas_index() const { return gas_index_; }

  // Per-offset metadata resolved from the configuration.
  bool is_gas(int offset) const { return offset < n_gas_; }
  double molecular_weight(int offset) const { return mw_[offset]; }
  double density(int offset) const { return density_[offset]; }
  double diffusion_coeff(int offset) const { return diff_[offset]; }
  double accommodation_alpha(int offset) const { return alpha_[offset]; }
  const std::string& species_name(int offset) const { return names_[offset]; }
  int instance_of(int offset) const { return instance_of_[offset]; }  // -1 for gas

  // Per-species absolute tolerances with the given defaults filled in.
  std::vector<double> absolute_tolerances(double gas_default, double aerosol_default) const;

  bool operator==(const StateLayout& other) const {
    return gas_index_ == other.gas_index_ && offsets_ == other.offsets_;
  }

 private:
  int n_gas_ = 0;
  int n_total_ = 0;
  std::map<std::string, int> gas_index_;
  std::vector<PhaseInstanceInfo> instances_;
  std::vector<SlotInfo> slots_;
  std::map<std::string, int> offsets_;  // "slot/phase/species" -> offset
  std::vector<double> mw_, density_, diff_, alpha_;
  std::vector<double> atol_;  // 0 = use default
  std::vector<std::string> names_;
  std::vector<int> instance_of_;
};

// Binary state snapshot: 16-byte header (magic, version, n_total) followed by
// little-endian doubles: temperature, pressure, water activity, state values.
std::vector<std::uint8_t> serialize_state(std::span<const double> state,
                                          const EnvironmentalState& env);
void deserialize_state(std::span<const std::uint8_t> bytes, std::vector<double>& state,
                       EnvironmentalState& env);

class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mpchem
