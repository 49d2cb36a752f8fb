#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpchem {

// ---------------------------------------------------------------------------
// Mechanism configuration: the parsed, merged, index-resolvable description of
// a multi-phase chemical system. Configurations are immutable after
// validation and safe to share read-only across threads.
// ---------------------------------------------------------------------------

enum class SpeciesKind { Gas, Aerosol };

struct SpeciesDef {
  std::string name;
  SpeciesKind kind = SpeciesKind::Gas;
  double molecular_weight = 0.0;   // kg mol-1
  double density = 0.0;            // kg m-3, aerosol only
  double gas_diffusion_coeff = 0.0;  // m2 s-1, gas only, 0 = unset
  double mass_accommodation_alpha = 1.0;  // (0, 1]
  std::optional<double> absolute_tolerance;

  bool operator==(const SpeciesDef&) const = default;
};

struct AerosolPhaseDef {
  std::string name;
  std::vector<std::string> species;  // ordered, aerosol kind

  bool operator==(const AerosolPhaseDef&) const = default;
};

enum class ProcessType {
  Arrhenius,
  AqueousReversible,
  CondensedPhaseArrhenius,
  CustomH2o2,
  CustomOhHno3,
  Emission,
  FirstOrderLoss,
  HenrysLawPhaseTransfer,
  Photolysis,
  SimpolPhaseTransfer,
  Troe,
  WennbergNoRo2,
  WennbergTunneling,
};

const char* to_string(ProcessType t);

struct ReactantTerm {
  double stoichiometry = 1.0;  // consumption multiplier
  double order = 1.0;          // kinetic exponent

  bool operator==(const ReactantTerm&) const = default;
};

struct ProductTerm {
  double yield = 1.0;
  bool mass_yield = false;       // yield given on a mass basis
  std::string mass_basis;        // reactant supplying the reference MW
                                 // (empty = first reactant)
  bool operator==(const ProductTerm&) const = default;
};

enum class CondensedUnits { MolPerM3, Molar };

struct ProcessConfig {
  ProcessType type = ProcessType::Arrhenius;
  std::string label;             // optional handle lookup key
  std::string phase = "gas";     // "gas" or an aerosol phase name
  std::map<std::string, ReactantTerm> reactants;
  std::map<std::string, ProductTerm> products;
  std::map<std::string, ProductTerm> alkoxy_products;  // WennbergNoRo2 only
  std::map<std::string, double> rate_parameters;
  // Phase-transfer / aqueous bookkeeping
  std::string gas_species;
  std::string aerosol_species;
  std::string water_species;
  CondensedUnits units = CondensedUnits::MolPerM3;

  bool operator==(const ProcessConfig&) const = default;
};

struct ElectrolyteDef {
  std::string species;           // aerosol species carrying the electrolyte
  double molecular_weight = 0.0; // kg mol-1
  std::vector<double> molality_poly;  // m(a_w) = sum_d Y_d a_w^d

  bool operator==(const ElectrolyteDef&) const = default;
};

struct ParameterConfig {
  enum class Kind { ZsrAerosolWater };
  Kind kind = Kind::ZsrAerosolWater;
  std::string label;
  std::string phase;
  std::string water_species;     // diagnosed output slot, per phase instance
  std::vector<ElectrolyteDef> electrolytes;

  bool operator==(const ParameterConfig&) const = default;
};

struct ModeDef {
  std::string name;
  double gmd_m = 0.0;   // geometric mean diameter
  double gsd = 0.0;     // geometric standard deviation
  std::vector<std::string> phases;

  bool operator==(const ModeDef&) const = default;
};

struct SectionDef {
  std::string name;
  double mid_diameter_m = 0.0;
  std::vector<std::string> phases;

  bool operator==(const SectionDef&) const = default;
};

struct AeroRepConfig {
  enum class Scheme { ModalSectional, SingleParticle };
  Scheme scheme = Scheme::ModalSectional;
  std::vector<ModeDef> modes;
  std::vector<SectionDef> sections;
  // single-particle scheme
  int max_computational_particles = 0;
  std::vector<std::string> particle_phases;
  std::vector<double> particle_weights;  // per particle; single entry = uniform

  bool operator==(const AeroRepConfig&) const = default;
};

struct MechanismConfig {
  std::vector<SpeciesDef> species;
  std::vector<AerosolPhaseDef> phases;
  std::optional<AeroRepConfig> aero_rep;
  std::vector<ProcessConfig> processes;
  std::vector<ParameterConfig> parameters;
  double relative_tolerance = 1.0e-4;

  bool operator==(const MechanismConfig&) const = default;

  const SpeciesDef* find_species(const std::string& name, SpeciesKind kind) const;
  const AerosolPhaseDef* find_phase(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;      // machine-readable, e.g. "dangling-species"
  std::string message;
  std::string json_path; // e.g. "camp-data[3].reactants.XYZ"
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Parses and merges one or more JSON documents, each with a top-level
// "camp-data" array of typed objects. Merging is order-independent; duplicate
// definitions (species within a kind, phases, process labels) are errors.
MechanismConfig parse_config(const std::vector<std::string>& documents);
MechanismConfig parse_config_files(const std::vector<std::string>& paths);

// Semantic validation; empty result means the configuration is usable.
std::vector<Diagnostic> validate(const MechanismConfig& config);

// Canonical JSON text; parse_config({serialize_config(c)}) == c.
std::string serialize_config(const MechanismConfig& config);

// Canonical JSON of the mechanism-only portion (everything except the aerosol
// representation), plus a stable 64-bit FNV-1a hash of it.
std::string mechanism_portion_json(const MechanismConfig& config);
std::string mechanism_hash(const MechanismConfig& config);

// Required rate-parameter keys per process type (documented in docs/schema.md).
const std::vector<std::string>& required_rate_parameters(ProcessType t);

}  // namespace mpchem
