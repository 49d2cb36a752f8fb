#include "mpchem/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mpchem {

using nlohmann::json;

namespace {

json species_to_json(const SpeciesDef& s) {
  json j;
  j["type"] = "SPECIES";
  j["name"] = s.name;
  j["kind"] = s.kind == SpeciesKind::Gas ? "gas" : "aerosol";
  j["molecular_weight"] = s.molecular_weight;
  if (s.kind == SpeciesKind::Aerosol) j["density"] = s.density;
  if (s.gas_diffusion_coeff > 0.0) j["diffusion_coeff"] = s.gas_diffusion_coeff;
  if (s.mass_accommodation_alpha != 1.0)
    j["accommodation_coeff"] = s.mass_accommodation_alpha;
  if (s.absolute_tolerance) j["absolute_tolerance"] = *s.absolute_tolerance;
  return j;
}

json phase_to_json(const AerosolPhaseDef& p) {
  json j;
  j["type"] = "AEROSOL_PHASE";
  j["name"] = p.name;
  j["species"] = p.species;
  return j;
}

json terms_to_json(const std::map<std::string, ReactantTerm>& terms) {
  json j = json::object();
  for (const auto& [name, t] : terms) {
    json e = json::object();
    if (t.stoichiometry != 1.0) e["stoichiometry"] = t.stoichiometry;
    if (t.order != t.stoichiometry) e["order"] = t.order;
    j[name] = e;
  }
  return j;
}

json terms_to_json(const std::map<std::string, ProductTerm>& terms) {
  json j = json::object();
  for (const auto& [name, t] : terms) {
    json e = json::object();
    if (t.yield != 1.0) e["yield"] = t.yield;
    if (t.mass_yield) e["mass_yield"] = true;
    if (!t.mass_basis.empty()) e["mass_basis"] = t.mass_basis;
    j[name] = e;
  }
  return j;
}

json process_to_json(const ProcessConfig& p) {
  json j;
  j["type"] = to_string(p.type);
  if (!p.label.empty()) j["label"] = p.label;
  if (p.phase != "gas") j["phase"] = p.phase;
  switch (p.type) {
    case ProcessType::Emission:
      j["species"] = p.products.begin()->first;
      break;
    case ProcessType::FirstOrderLoss:
      j["species"] = p.reactants.begin()->first;
      break;
    case ProcessType::HenrysLawPhaseTransfer:
    case ProcessType::SimpolPhaseTransfer:
      j["gas_species"] = p.gas_species;
      j["aerosol_species"] = p.aerosol_species;
      if (!p.water_species.empty()) j["water_species"] = p.water_species;
      break;
    case ProcessType::WennbergNoRo2:
      if (!p.reactants.empty()) j["reactants"] = terms_to_json(p.reactants);
      j["nitrate_products"] = terms_to_json(p.products);
      j["alkoxy_products"] = terms_to_json(p.alkoxy_products);
      break;
    default:
      if (!p.reactants.empty()) j["reactants"] = terms_to_json(p.reactants);
      if (!p.products.empty()) j["products"] = terms_to_json(p.products);
      break;
  }
  if (p.type == ProcessType::CondensedPhaseArrhenius) {
    j["units"] = p.units == CondensedUnits::Molar ? "M" : "mol m-3";
    if (!p.water_species.empty()) j["water_species"] = p.water_species;
  }
  for (const auto& [k, v] : p.rate_parameters) j[k] = v;
  return j;
}

json parameter_to_json(const ParameterConfig& p) {
  json j;
  j["type"] = "ZSR_AEROSOL_WATER";
  if (!p.label.empty()) j["label"] = p.label;
  j["phase"] = p.phase;
  j["water_species"] = p.water_species;
  json elts = json::array();
  for (const auto& e : p.electrolytes) {
    json je;
    je["species"] = e.species;
    je["molecular_weight"] = e.molecular_weight;
    je["molality_poly"] = e.molality_poly;
    elts.push_back(je);
  }
  j["electrolytes"] = elts;
  return j;
}

json aero_rep_to_json(const AeroRepConfig& r) {
  json j;
  j["type"] = "AEROSOL_REPRESENTATION";
  if (r.scheme == AeroRepConfig::Scheme::ModalSectional) {
    j["scheme"] = "modal_sectional";
    json modes = json::array();
    for (const auto& m : r.modes) {
      json jm;
      jm["name"] = m.name;
      jm["gmd"] = m.gmd_m;
      jm["gsd"] = m.gsd;
      jm["phases"] = m.phases;
      modes.push_back(jm);
    }
    json sections = json::array();
    for (const auto& s : r.sections) {
      json js;
      js["name"] = s.name;
      js["mid_diameter"] = s.mid_diameter_m;
      js["phases"] = s.phases;
      sections.push_back(js);
    }
    if (!modes.empty()) j["modes"] = modes;
    if (!sections.empty()) j["sections"] = sections;
  } else {
    j["scheme"] = "single_particle";
    j["max_computational_particles"] = r.max_computational_particles;
    j["phases"] = r.particle_phases;
    if (r.particle_weights.size() == 1) {
      j["weight"] = r.particle_weights[0];
    } else if (!r.particle_weights.empty()) {
      j["weights"] = r.particle_weights;
    }
  }
  return j;
}

// --- parsing helpers -------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

double get_number(const json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& j, const std::string& key, const std::string& path) {
  const auto& v = j.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

void check_keys(const json& j, const std::vector<std::string>& allowed,
                const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "type" || k == "description") continue;
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      fail(path, "unknown key \"" + k + "\"");
  }
}

std::map<std::string, ReactantTerm> parse_reactants(const json& j,
                                                    const std::string& path) {
  std::map<std::string, ReactantTerm> out;
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& e = it.value();
    ReactantTerm t;
    if (e.is_object()) {
      check_keys(e, {"qty", "stoichiometry", "order"}, path + "." + it.key());
      if (e.contains("qty")) {
        t.stoichiometry = t.order = e.at("qty").get<double>();
      }
      if (e.contains("stoichiometry")) {
        t.stoichiometry = e.at("stoichiometry").get<double>();
        t.order = t.stoichiometry;
      }
      if (e.contains("order")) t.order = e.at("order").get<double>();
    } else if (!e.is_null()) {
      fail(path + "." + it.key(), "expected an object");
    }
    if (!out.emplace(it.key(), t).second)
      fail(path, "duplicate reactant \"" + it.key() + "\"");
  }
  return out;
}

std::map<std::string, ProductTerm> parse_products(const json& j,
                                                  const std::string& path) {
  std::map<std::string, ProductTerm> out;
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& e = it.value();
    ProductTerm t;
    if (e.is_object()) {
      check_keys(e, {"yield", "mass_yield", "mass_basis"}, path + "." + it.key());
      if (e.contains("yield")) t.yield = e.at("yield").get<double>();
      if (e.contains("mass_yield")) t.mass_yield = e.at("mass_yield").get<bool>();
      if (e.contains("mass_basis")) t.mass_basis = e.at("mass_basis").get<std::string>();
    } else if (!e.is_null()) {
      fail(path + "." + it.key(), "expected an object");
    }
    out[it.key()] = t;
  }
  return out;
}

struct TypeInfo {
  ProcessType type;
  std::vector<std::string> param_keys;   // accepted numeric keys
  std::vector<std::string> required;     // subset that must be present
};

const std::vector<TypeInfo>& type_table() {
  static const std::vector<TypeInfo> table = {
      {ProcessType::Arrhenius, {"A", "Ea", "C", "B", "D", "E"}, {"A"}},
      {ProcessType::AqueousReversible, {"A", "C", "k_reverse"}, {"A", "k_reverse"}},
      {ProcessType::CondensedPhaseArrhenius, {"A", "Ea", "C", "B", "D", "E"}, {"A"}},
      {ProcessType::CustomH2o2,
       {"k1_A", "k1_B", "k1_C", "k2_A", "k2_B", "k2_C"},
       {"k1_A"}},
      {ProcessType::CustomOhHno3,
       {"k0_A", "k0_B", "k0_C", "k2_A", "k2_B", "k2_C", "k3_A", "k3_B", "k3_C"},
       {"k0_A", "k2_A", "k3_A"}},
      {ProcessType::Emission, {"rate"}, {}},
      {ProcessType::FirstOrderLoss, {"rate_constant"}, {}},
      {ProcessType::HenrysLawPhaseTransfer, {"H_298", "C"}, {"H_298"}},
      {ProcessType::Photolysis, {"rate_constant"}, {}},
      {ProcessType::SimpolPhaseTransfer, {"B1", "B2", "B3", "B4"},
       {"B1", "B2", "B3", "B4"}},
      {ProcessType::Troe,
       {"k0_A", "k0_B", "k0_C", "kinf_A", "kinf_B", "kinf_C", "Fc", "N"},
       {"k0_A", "kinf_A"}},
      {ProcessType::WennbergNoRo2, {"X", "Y", "a0", "n"}, {"X", "Y", "a0", "n"}},
      {ProcessType::WennbergTunneling, {"A", "B", "C"}, {"A"}},
  };
  return table;
}

const TypeInfo* type_info_for_tag(const std::string& tag) {
  for (const auto& ti : type_table())
    if (tag == to_string(ti.type)) return &ti;
  return nullptr;
}

const TypeInfo& type_info(ProcessType t) {
  for (const auto& ti : type_table())
    if (ti.type == t) return ti;
  throw std::logic_error("unknown process type");
}

ProcessConfig parse_process(const TypeInfo& ti, const json& j, const std::string& path) {
  ProcessConfig p;
  p.type = ti.type;
  if (j.contains("label")) p.label = get_string(j, "label", path);

  std::vector<std::string> allowed = ti.param_keys;
  allowed.push_back("label");

  switch (ti.type) {
    case ProcessType::Emission:
      allowed.push_back("species");
      p.products[get_string(j, "species", path)] = ProductTerm{};
      break;
    case ProcessType::FirstOrderLoss:
      allowed.push_back("species");
      p.reactants[get_string(j, "species", path)] = ReactantTerm{};
      break;
    case ProcessType::HenrysLawPhaseTransfer:
    case ProcessType::SimpolPhaseTransfer:
      allowed.insert(allowed.end(),
                     {"gas_species", "aerosol_species", "phase", "water_species"});
      p.gas_species = get_string(j, "gas_species", path);
      p.aerosol_species = get_string(j, "aerosol_species", path);
      p.phase = get_string(j, "phase", path);
      if (j.contains("water_species"))
        p.water_species = get_string(j, "water_species", path);
      break;
    case ProcessType::WennbergNoRo2:
      allowed.insert(allowed.end(),
                     {"reactants", "nitrate_products", "alkoxy_products", "phase"});
      if (j.contains("reactants"))
        p.reactants = parse_reactants(j.at("reactants"), path + ".reactants");
      if (j.contains("nitrate_products"))
        p.products = parse_products(j.at("nitrate_products"), path + ".nitrate_products");
      if (j.contains("alkoxy_products"))
        p.alkoxy_products =
            parse_products(j.at("alkoxy_products"), path + ".alkoxy_products");
      break;
    default:
      allowed.insert(allowed.end(), {"reactants", "products", "phase"});
      if (j.contains("phase")) p.phase = get_string(j, "phase", path);
      if (j.contains("reactants"))
        p.reactants = parse_reactants(j.at("reactants"), path + ".reactants");
      if (j.contains("products"))
        p.products = parse_products(j.at("products"), path + ".products");
      break;
  }
  if (ti.type == ProcessType::CondensedPhaseArrhenius) {
    allowed.insert(allowed.end(), {"units", "water_species"});
    if (j.contains("units")) {
      std::string u = get_string(j, "units", path);
      if (u == "M")
        p.units = CondensedUnits::Molar;
      else if (u == "mol m-3")
        p.units = CondensedUnits::MolPerM3;
      else
        fail(path + ".units", "expected \"M\" or \"mol m-3\"");
    }
    if (j.contains("water_species"))
      p.water_species = get_string(j, "water_species", path);
  }

  check_keys(j, allowed, path);
  for (const auto& key : ti.param_keys)
    if (j.contains(key)) p.rate_parameters[key] = get_number(j, key, path);
  return p;
}

ParameterConfig parse_zsr(const json& j, const std::string& path) {
  ParameterConfig p;
  p.kind = ParameterConfig::Kind::ZsrAerosolWater;
  check_keys(j, {"label", "phase", "water_species", "electrolytes"}, path);
  if (j.contains("label")) p.label = get_string(j, "label", path);
  p.phase = get_string(j, "phase", path);
  p.water_species = get_string(j, "water_species", path);
  if (!j.contains("electrolytes") || !j.at("electrolytes").is_array())
    fail(path, "expected an \"electrolytes\" array");
  int i = 0;
  for (const auto& e : j.at("electrolytes")) {
    std::string ep = path + ".electrolytes[" + std::to_string(i++) + "]";
    check_keys(e, {"species", "molecular_weight", "molality_poly"}, ep);
    ElectrolyteDef d;
    d.species = get_string(e, "species", ep);
    d.molecular_weight = get_number(e, "molecular_weight", ep);
    if (!e.contains("molality_poly") || !e.at("molality_poly").is_array())
      fail(ep, "expected a \"molality_poly\" array");
    for (const auto& c : e.at("molality_poly")) d.molality_poly.push_back(c.get<double>());
    p.electrolytes.push_back(std::move(d));
  }
  return p;
}

AeroRepConfig parse_aero_rep(const json& j, const std::string& path) {
  AeroRepConfig r;
  std::string scheme = get_string(j, "scheme", path);
  if (scheme == "modal_sectional") {
    r.scheme = AeroRepConfig::Scheme::ModalSectional;
    check_keys(j, {"scheme", "modes", "sections"}, path);
    if (j.contains("modes")) {
      int i = 0;
      for (const auto& m : j.at("modes")) {
        std::string mp = path + ".modes[" + std::to_string(i++) + "]";
        check_keys(m, {"name", "gmd", "gsd", "phases"}, mp);
        ModeDef d;
        d.name = get_string(m, "name", mp);
        d.gmd_m = get_number(m, "gmd", mp);
        d.gsd = get_number(m, "gsd", mp);
        for (const auto& ph : m.at("phases")) d.phases.push_back(ph.get<std::string>());
        r.modes.push_back(std::move(d));
      }
    }
    if (j.contains("sections")) {
      int i = 0;
      for (const auto& s : j.at("sections")) {
        std::string sp = path + ".sections[" + std::to_string(i++) + "]";
        check_keys(s, {"name", "mid_diameter", "phases"}, sp);
        SectionDef d;
        d.name = get_string(s, "name", sp);
        d.mid_diameter_m = get_number(s, "mid_diameter", sp);
        for (const auto& ph : s.at("phases")) d.phases.push_back(ph.get<std::string>());
        r.sections.push_back(std::move(d));
      }
    }
  } else if (scheme == "single_particle") {
    r.scheme = AeroRepConfig::Scheme::SingleParticle;
    check_keys(j, {"scheme", "max_computational_particles", "phases", "weight", "weights"},
               path);
    r.max_computational_particles =
        static_cast<int>(get_number(j, "max_computational_particles", path));
    for (const auto& ph : j.at("phases")) r.particle_phases.push_back(ph.get<std::string>());
    if (j.contains("weight")) {
      r.particle_weights = {get_number(j, "weight", path)};
    } else if (j.contains("weights")) {
      for (const auto& w : j.at("weights")) r.particle_weights.push_back(w.get<double>());
    }
  } else {
    fail(path + ".scheme", "expected \"modal_sectional\" or \"single_particle\"");
  }
  return r;
}

SpeciesDef parse_species(const json& j, const std::string& path) {
  check_keys(j,
             {"name", "kind", "molecular_weight", "density", "diffusion_coeff",
              "accommodation_coeff", "absolute_tolerance"},
             path);
  SpeciesDef s;
  s.name = get_string(j, "name", path);
  std::string kind = get_string(j, "kind", path);
  if (kind == "gas")
    s.kind = SpeciesKind::Gas;
  else if (kind == "aerosol")
    s.kind = SpeciesKind::Aerosol;
  else
    fail(path + ".kind", "expected \"gas\" or \"aerosol\"");
  if (j.contains("molecular_weight"))
    s.molecular_weight = get_number(j, "molecular_weight", path);
  if (j.contains("density")) s.density = get_number(j, "density", path);
  if (j.contains("diffusion_coeff"))
    s.gas_diffusion_coeff = get_number(j, "diffusion_coeff", path);
  if (j.contains("accommodation_coeff"))
    s.mass_accommodation_alpha = get_number(j, "accommodation_coeff", path);
  if (j.contains("absolute_tolerance"))
    s.absolute_tolerance = get_number(j, "absolute_tolerance", path);
  return s;
}

}  // namespace

const char* to_string(ProcessType t) {
  switch (t) {
    case ProcessType::Arrhenius: return "ARRHENIUS";
    case ProcessType::AqueousReversible: return "AQUEOUS_REVERSIBLE";
    case ProcessType::CondensedPhaseArrhenius: return "CONDENSED_PHASE_ARRHENIUS";
    case ProcessType::CustomH2o2: return "CUSTOM_H2O2";
    case ProcessType::CustomOhHno3: return "CUSTOM_OH_HNO3";
    case ProcessType::Emission: return "EMISSION";
    case ProcessType::FirstOrderLoss: return "FIRST_ORDER_LOSS";
    case ProcessType::HenrysLawPhaseTransfer: return "HENRYS_LAW_PHASE_TRANSFER";
    case ProcessType::Photolysis: return "PHOTOLYSIS";
    case ProcessType::SimpolPhaseTransfer: return "SIMPOL_PHASE_TRANSFER";
    case ProcessType::Troe: return "TROE";
    case ProcessType::WennbergNoRo2: return "WENNBERG_NO_RO2";
    case ProcessType::WennbergTunneling: return "WENNBERG_TUNNELING";
  }
  return "?";
}

const std::vector<std::string>& required_rate_parameters(ProcessType t) {
  return type_info(t).required;
}

const SpeciesDef* MechanismConfig::find_species(const std::string& name,
                                                SpeciesKind kind) const {
  for (const auto& s : species)
    if (s.kind == kind && s.name == name) return &s;
  return nullptr;
}

const AerosolPhaseDef* MechanismConfig::find_phase(const std::string& name) const {
  for (const auto& p : phases)
    if (p.name == name) return &p;
  return nullptr;
}

MechanismConfig parse_config(const std::vector<std::string>& documents) {
  MechanismConfig cfg;
  bool have_rtol = false;

  for (size_t d = 0; d < documents.size(); ++d) {
    json doc;
    try {
      doc = json::parse(documents[d]);
    } catch (const json::parse_error& e) {
      throw ConfigError("document " + std::to_string(d) + ": JSON syntax error at byte " +
                        std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("camp-data") || !doc.at("camp-data").is_array())
      throw ConfigError("document " + std::to_string(d) +
                        ": expected a top-level {\"camp-data\": [...]} object");

    int i = 0;
    for (const auto& entry : doc.at("camp-data")) {
      std::string path = "camp-data[" + std::to_string(i++) + "]";
      if (!entry.is_object() || !entry.contains("type"))
        fail(path, "expected an object with a \"type\" key");
      std::string tag = entry.at("type").get<std::string>();

      try {
        if (tag == "SPECIES") {
          cfg.species.push_back(parse_species(entry, path));
        } else if (tag == "AEROSOL_PHASE") {
          check_keys(entry, {"name", "species"}, path);
          AerosolPhaseDef p;
          p.name = get_string(entry, "name", path);
          for (const auto& s : entry.at("species")) p.species.push_back(s.get<std::string>());
          cfg.phases.push_back(std::move(p));
        } else if (tag == "AEROSOL_REPRESENTATION") {
          if (cfg.aero_rep) fail(path, "duplicate AEROSOL_REPRESENTATION");
          cfg.aero_rep = parse_aero_rep(entry, path);
        } else if (tag == "RELATIVE_TOLERANCE") {
          check_keys(entry, {"value"}, path);
          if (have_rtol) fail(path, "duplicate RELATIVE_TOLERANCE");
          cfg.relative_tolerance = get_number(entry, "value", path);
          have_rtol = true;
        } else if (tag == "ZSR_AEROSOL_WATER") {
          cfg.parameters.push_back(parse_zsr(entry, path));
        } else if (const TypeInfo* ti = type_info_for_tag(tag)) {
          cfg.processes.push_back(parse_process(*ti, entry, path));
        } else {
          fail(path, "unknown type tag \"" + tag + "\"");
        }
      } catch (const json::exception& e) {
        fail(path, e.what());
      }
    }
  }

  // Canonical ordering makes the merge independent of document and entry
  // order; duplicates are rejected rather than silently overridden.
  std::sort(cfg.species.begin(), cfg.species.end(), [](const auto& a, const auto& b) {
    return std::tie(a.kind, a.name) < std::tie(b.kind, b.name);
  });
  for (size_t i = 1; i < cfg.species.size(); ++i)
    if (cfg.species[i].kind == cfg.species[i - 1].kind &&
        cfg.species[i].name == cfg.species[i - 1].name)
      throw ConfigError("duplicate species definition \"" + cfg.species[i].name + "\"");

  std::sort(cfg.phases.begin(), cfg.phases.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  for (size_t i = 1; i < cfg.phases.size(); ++i)
    if (cfg.phases[i].name == cfg.phases[i - 1].name)
      throw ConfigError("duplicate aerosol phase definition \"" + cfg.phases[i].name + "\"");

  std::sort(cfg.processes.begin(), cfg.processes.end(),
            [](const auto& a, const auto& b) {
              return process_to_json(a).dump() < process_to_json(b).dump();
            });
  {
    std::map<std::string, int> labels;
    for (const auto& p : cfg.processes)
      if (!p.label.empty() && ++labels[p.label] > 1)
        throw ConfigError("duplicate process label \"" + p.label + "\"");
    for (const auto& p : cfg.parameters)
      if (!p.label.empty() && ++labels[p.label] > 1)
        throw ConfigError("duplicate label \"" + p.label + "\"");
  }
  std::sort(cfg.parameters.begin(), cfg.parameters.end(),
            [](const auto& a, const auto& b) {
              return parameter_to_json(a).dump() < parameter_to_json(b).dump();
            });
  return cfg;
}

MechanismConfig parse_config_files(const std::vector<std::string>& paths) {
  std::vector<std::string> docs;
  for (const auto& p : paths) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open config file: " + p);
    std::ostringstream ss;
    ss << in.rdbuf();
    docs.push_back(ss.str());
  }
  return parse_config(docs);
}

std::string serialize_config(const MechanismConfig& cfg) {
  json arr = json::array();
  for (const auto& s : cfg.species) arr.push_back(species_to_json(s));
  for (const auto& p : cfg.phases) arr.push_back(phase_to_json(p));
  if (cfg.aero_rep) arr.push_back(aero_rep_to_json(*cfg.aero_rep));
  for (const auto& p : cfg.processes) arr.push_back(process_to_json(p));
  for (const auto& p : cfg.parameters) arr.push_back(parameter_to_json(p));
  arr.push_back({{"type", "RELATIVE_TOLERANCE"}, {"value", cfg.relative_tolerance}});
  json doc;
  doc["camp-data"] = arr;
  return doc.dump(2);
}

std::string mechanism_portion_json(const MechanismConfig& cfg) {
  MechanismConfig copy = cfg;
  copy.aero_rep.reset();
  return serialize_config(copy);
}

std::string mechanism_hash(const MechanismConfig& cfg) {
  const std::string text = mechanism_portion_json(cfg);
  uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

void check_process(const MechanismConfig& cfg, const ProcessConfig& p,
                   const std::string& path, std::vector<Diagnostic>& out) {
  auto err = [&](const std::string& code, const std::string& msg,
                 const std::string& sub = "") {
    out.push_back({Severity::Error, code, msg, sub.empty() ? path : path + "." + sub});
  };

  for (const auto& key : required_rate_parameters(p.type))
    if (!p.rate_parameters.count(key))
      err("missing-parameter",
          std::string(to_string(p.type)) + " requires parameter \"" + key + "\"", key);

  const bool gas_phase = p.phase == "gas";
  const AerosolPhaseDef* phase = gas_phase ? nullptr : cfg.find_phase(p.phase);
  if (!gas_phase && !phase)
    err("dangling-phase", "unknown aerosol phase \"" + p.phase + "\"", "phase");

  const bool is_transfer = p.type == ProcessType::HenrysLawPhaseTransfer ||
                           p.type == ProcessType::SimpolPhaseTransfer;

  SpeciesKind kind = gas_phase ? SpeciesKind::Gas : SpeciesKind::Aerosol;
  auto check_member = [&](const std::string& name, const std::string& role) {
    if (!cfg.find_species(name, kind)) {
      err("dangling-species",
          "process references undeclared " +
              std::string(kind == SpeciesKind::Gas ? "gas" : "aerosol") + " species \"" +
              name + "\"",
          role + "." + name);
      return;
    }
    if (!gas_phase && phase &&
        std::find(phase->species.begin(), phase->species.end(), name) ==
            phase->species.end())
      err("species-not-in-phase",
          "species \"" + name + "\" is not a member of phase \"" + p.phase + "\"",
          role + "." + name);
  };

  if (is_transfer) {
    const SpeciesDef* gas = cfg.find_species(p.gas_species, SpeciesKind::Gas);
    if (!gas)
      err("dangling-species", "unknown gas species \"" + p.gas_species + "\"",
          "gas_species");
    else if (gas->gas_diffusion_coeff <= 0.0)
      err("missing-diffusion-coeff",
          "gas species \"" + p.gas_species +
              "\" needs a diffusion_coeff for phase transfer",
          "gas_species");
    check_member(p.aerosol_species, "aerosol_species");
    if (p.type == ProcessType::HenrysLawPhaseTransfer) {
      if (p.water_species.empty())
        err("missing-water-species",
            "HENRYS_LAW_PHASE_TRANSFER requires \"water_species\"", "water_species");
      else
        check_member(p.water_species, "water_species");
    } else if (!p.water_species.empty()) {
      check_member(p.water_species, "water_species");
    }
    return;
  }

  if (p.type == ProcessType::CondensedPhaseArrhenius &&
      p.units == CondensedUnits::Molar) {
    if (p.water_species.empty())
      err("missing-water-species",
          "CONDENSED_PHASE_ARRHENIUS with units \"M\" requires \"water_species\"",
          "water_species");
    else
      check_member(p.water_species, "water_species");
  }

  for (const auto& [name, t] : p.reactants) {
    check_member(name, "reactants");
    if (t.stoichiometry < 0.0)
      err("bad-stoichiometry", "negative stoichiometry for \"" + name + "\"",
          "reactants." + name);
  }
  for (const auto* prods : {&p.products, &p.alkoxy_products}) {
    for (const auto& [name, t] : *prods) {
      check_member(name, "products");
      if (t.yield < 0.0)
        err("bad-stoichiometry", "negative yield for \"" + name + "\"",
            "products." + name);
      if (t.mass_yield) {
        std::string basis =
            !t.mass_basis.empty()
                ? t.mass_basis
                : (p.reactants.empty() ? std::string() : p.reactants.begin()->first);
        if (basis.empty() || !p.reactants.count(basis))
          err("bad-mass-basis",
              "mass_yield for \"" + name + "\" needs a reactant as mass basis",
              "products." + name);
      }
    }
  }

  const bool needs_reactant =
      p.type != ProcessType::Emission && p.type != ProcessType::Photolysis;
  if (p.reactants.empty() && needs_reactant && p.type != ProcessType::FirstOrderLoss)
    err("missing-reactants", "process has no reactants", "reactants");
  if (p.type == ProcessType::Photolysis && p.reactants.size() != 1)
    err("bad-reactants", "PHOTOLYSIS requires exactly one reactant", "reactants");
}

}  // namespace

std::vector<Diagnostic> validate(const MechanismConfig& cfg) {
  std::vector<Diagnostic> out;
  auto err = [&](const std::string& code, const std::string& msg,
                 const std::string& path) {
    out.push_back({Severity::Error, code, msg, path});
  };

  if (cfg.species.empty()) err("empty-mechanism", "no species defined", "camp-data");

  for (const auto& s : cfg.species) {
    std::string path = "species." + s.name;
    if (s.molecular_weight <= 0.0)
      err("bad-molecular-weight", "molecular_weight must be > 0 for \"" + s.name + "\"",
          path);
    if (s.kind == SpeciesKind::Aerosol && s.density <= 0.0)
      err("bad-density", "aerosol species \"" + s.name + "\" needs density > 0", path);
    if (s.mass_accommodation_alpha <= 0.0 || s.mass_accommodation_alpha > 1.0)
      err("bad-accommodation",
          "accommodation_coeff must be in (0, 1] for \"" + s.name + "\"", path);
    if (s.absolute_tolerance && *s.absolute_tolerance <= 0.0)
      err("bad-tolerance", "absolute_tolerance must be > 0 for \"" + s.name + "\"", path);
  }

  for (const auto& p : cfg.phases) {
    std::string path = "phases." + p.name;
    if (p.species.empty())
      err("empty-phase", "aerosol phase \"" + p.name + "\" has no species", path);
    for (const auto& name : p.species)
      if (!cfg.find_species(name, SpeciesKind::Aerosol))
        err("dangling-species",
            "phase \"" + p.name + "\" references undeclared aerosol species \"" + name +
                "\"",
            path + "." + name);
  }

  if (cfg.aero_rep) {
    const auto& r = *cfg.aero_rep;
    auto check_phases = [&](const std::vector<std::string>& names, const std::string& path) {
      if (names.empty()) err("empty-slot", "representation slot hosts no phases", path);
      for (const auto& n : names)
        if (!cfg.find_phase(n))
          err("dangling-phase", "unknown aerosol phase \"" + n + "\"", path);
    };
    if (r.scheme == AeroRepConfig::Scheme::ModalSectional) {
      if (r.modes.empty() && r.sections.empty())
        err("empty-representation", "modal/sectional scheme has no modes or sections",
            "aero_rep");
      for (const auto& m : r.modes) {
        std::string path = "aero_rep.modes." + m.name;
        if (m.gmd_m <= 0.0) err("bad-diameter", "mode GMD must be > 0", path);
        if (m.gsd <= 1.0) err("bad-gsd", "mode GSD must be > 1", path);
        check_phases(m.phases, path);
      }
      for (const auto& s : r.sections) {
        std::string path = "aero_rep.sections." + s.name;
        if (s.mid_diameter_m <= 0.0)
          err("bad-diameter", "section mid_diameter must be > 0", path);
        check_phases(s.phases, path);
      }
    } else {
      if (r.max_computational_particles < 1)
        err("bad-particle-count", "max_computational_particles must be >= 1", "aero_rep");
      check_phases(r.particle_phases, "aero_rep.phases");
      if (r.particle_weights.size() > 1 &&
          static_cast<int>(r.particle_weights.size()) != r.max_computational_particles)
        err("bad-weights", "weights array must match max_computational_particles",
            "aero_rep.weights");
      for (double w : r.particle_weights)
        if (w <= 0.0) err("bad-weights", "particle weights must be > 0", "aero_rep.weights");
    }
  }

  bool any_aerosol_process = false;
  for (size_t i = 0; i < cfg.processes.size(); ++i) {
    const auto& p = cfg.processes[i];
    std::string path = "processes[" + std::to_string(i) + "]" +
                       (p.label.empty() ? "" : "(" + p.label + ")");
    check_process(cfg, p, path, out);
    if (p.phase != "gas") any_aerosol_process = true;
  }
  if (any_aerosol_process && !cfg.aero_rep)
    err("missing-representation",
        "mechanism has aerosol processes but no AEROSOL_REPRESENTATION", "camp-data");

  std::map<std::string, int> water_targets;
  for (size_t i = 0; i < cfg.parameters.size(); ++i) {
    const auto& p = cfg.parameters[i];
    std::string path = "parameters[" + std::to_string(i) + "]";
    const AerosolPhaseDef* phase = cfg.find_phase(p.phase);
    if (!phase) {
      err("dangling-phase", "unknown aerosol phase \"" + p.phase + "\"", path);
      continue;
    }
    auto in_phase = [&](const std::string& n) {
      return std::find(phase->species.begin(), phase->species.end(), n) !=
             phase->species.end();
    };
    if (!in_phase(p.water_species))
      err("dangling-species",
          "water species \"" + p.water_species + "\" is not in phase \"" + p.phase + "\"",
          path);
    if (++water_targets[p.phase + "/" + p.water_species] > 1)
      err("duplicate-parameter-target",
          "multiple parameters target \"" + p.water_species + "\" in phase \"" + p.phase +
              "\"",
          path);
    if (p.electrolytes.empty())
      err("empty-electrolytes", "ZSR parameter has no electrolytes", path);
    for (const auto& e : p.electrolytes) {
      if (!in_phase(e.species))
        err("dangling-species",
            "electrolyte \"" + e.species + "\" is not in phase \"" + p.phase + "\"", path);
      if (e.species == p.water_species)
        err("self-reference", "electrolyte cannot be the water species itself", path);
      if (e.molecular_weight <= 0.0)
        err("bad-molecular-weight", "electrolyte molecular_weight must be > 0", path);
      if (e.molality_poly.empty())
        err("empty-polynomial", "molality_poly needs at least one coefficient", path);
    }
  }

  if (cfg.relative_tolerance <= 0.0)
    err("bad-tolerance", "relative_tolerance must be > 0", "relative_tolerance");

  return out;
}

}  // namespace mpchem
