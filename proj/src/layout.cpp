#include "mpchem/layout.hpp"

#include <cstring>

namespace mpchem {

StateLayout StateLayout::build(const MechanismConfig& cfg) {
  StateLayout L;

  for (const auto& s : cfg.species) {
    if (s.kind != SpeciesKind::Gas) continue;
    L.gas_index_[s.name] = L.n_total_;
    L.names_.push_back(s.name);
    L.mw_.push_back(s.molecular_weight);
    L.density_.push_back(0.0);
    L.diff_.push_back(s.gas_diffusion_coeff);
    L.alpha_.push_back(s.mass_accommodation_alpha);
    L.atol_.push_back(s.absolute_tolerance.value_or(0.0));
    L.instance_of_.push_back(-1);
    ++L.n_total_;
  }
  L.n_gas_ = L.n_total_;

  auto add_slot = [&](const std::string& slot_name, const std::vector<std::string>& phases) {
    SlotInfo slot;
    slot.id = static_cast<int>(L.slots_.size());
    slot.name = slot_name;
    slot.begin = L.n_total_;
    for (const auto& phase_name : phases) {
      const AerosolPhaseDef* phase = cfg.find_phase(phase_name);
      if (!phase) throw ConfigError("unknown aerosol phase \"" + phase_name + "\"");
      PhaseInstanceInfo inst;
      inst.id = static_cast<int>(L.instances_.size());
      inst.slot = slot.id;
      inst.slot_name = slot_name;
      inst.phase = phase_name;
      inst.offset = L.n_total_;
      inst.n_species = static_cast<int>(phase->species.size());
      inst.species = phase->species;
      for (const auto& name : phase->species) {
        const SpeciesDef* s = cfg.find_species(name, SpeciesKind::Aerosol);
        if (!s) throw ConfigError("unknown aerosol species \"" + name + "\"");
        L.offsets_[slot_name + "/" + phase_name + "/" + name] = L.n_total_;
        L.names_.push_back(name);
        L.mw_.push_back(s->molecular_weight);
        L.density_.push_back(s->density);
        L.diff_.push_back(0.0);
        L.alpha_.push_back(s->mass_accommodation_alpha);
        L.atol_.push_back(s->absolute_tolerance.value_or(0.0));
        L.instance_of_.push_back(inst.id);
        ++L.n_total_;
      }
      slot.instance_ids.push_back(inst.id);
      L.instances_.push_back(std::move(inst));
    }
    slot.end = L.n_total_;
    L.slots_.push_back(std::move(slot));
  };

  if (cfg.aero_rep) {
    const auto& r = *cfg.aero_rep;
    if (r.scheme == AeroRepConfig::Scheme::ModalSectional) {
      for (const auto& m : r.modes) add_slot(m.name, m.phases);
      for (const auto& s : r.sections) add_slot(s.name, s.phases);
    } else {
      for (int p = 0; p < r.max_computational_particles; ++p)
        add_slot("particle" + std::to_string(p), r.particle_phases);
    }
  }
  return L;
}

int StateLayout::gas_offset(const std::string& species) const {
  auto it = gas_index_.find(species);
  if (it == gas_index_.end())
    throw std::out_of_range("unknown gas species \"" + species + "\"");
  return it->second;
}

int StateLayout::aerosol_offset(int slot, const std::string& phase,
                                const std::string& species) const {
  if (slot < 0 || slot >= static_cast<int>(slots_.size()))
    throw std::out_of_range("slot index out of range");
  auto it = offsets_.find(slots_[slot].name + "/" + phase + "/" + species);
  if (it == offsets_.end())
    throw std::out_of_range("unknown state entry " + slots_[slot].name + "/" + phase +
                            "/" + species);
  return it->second;
}

std::string StateLayout::describe(int offset) const {
  if (offset < 0 || offset >= n_total_) throw std::out_of_range("offset out of range");
  if (offset < n_gas_) return names_[offset];
  const PhaseInstanceInfo& inst = instances_[instance_of_[offset]];
  return inst.slot_name + "/" + inst.phase + "/" + names_[offset];
}

std::vector<double> StateLayout::absolute_tolerances(double gas_default,
                                                     double aerosol_default) const {
  std::vector<double> out(n_total_);
  for (int i = 0; i < n_total_; ++i)
    out[i] = atol_[i] > 0.0 ? atol_[i] : (i < n_gas_ ? gas_default : aerosol_default);
  return out;
}

namespace {
constexpr std::uint32_t kStateMagic = 0x4d504353;  // "MPCS"
constexpr std::uint32_t kStateVersion = 1;

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_f64(std::vector<std::uint8_t>& b, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  put_u64(b, v);
}
std::uint32_t get_u32(std::span<const std::uint8_t> b, size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
  return v;
}
std::uint64_t get_u64(std::span<const std::uint8_t> b, size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[at + i]) << (8 * i);
  return v;
}
double get_f64(std::span<const std::uint8_t> b, size_t at) {
  std::uint64_t v = get_u64(b, at);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}
}  // namespace

std::vector<std::uint8_t> serialize_state(std::span<const double> state,
                                          const EnvironmentalState& env) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + 8 * (3 + state.size()));
  put_u32(out, kStateMagic);
  put_u32(out, kStateVersion);
  put_u64(out, state.size());
  put_f64(out, env.temperature_K);
  put_f64(out, env.pressure_Pa);
  put_f64(out, env.water_activity);
  for (double v : state) put_f64(out, v);
  return out;
}

void deserialize_state(std::span<const std::uint8_t> bytes, std::vector<double>& state,
                       EnvironmentalState& env) {
  if (bytes.size() < 16) throw SerializationError("state snapshot truncated");
  if (get_u32(bytes, 0) != kStateMagic)
    throw SerializationError("bad state snapshot magic");
  if (get_u32(bytes, 4) != kStateVersion)
    throw SerializationError("unsupported state snapshot version");
  const std::uint64_t n = get_u64(bytes, 8);
  if (bytes.size() != 16 + 8 * (3 + n))
    throw SerializationError("state snapshot length mismatch");
  env.temperature_K = get_f64(bytes, 16);
  env.pressure_Pa = get_f64(bytes, 24);
  env.water_activity = get_f64(bytes, 32);
  state.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) state[i] = get_f64(bytes, 40 + 8 * i);
}

}  // namespace mpchem
