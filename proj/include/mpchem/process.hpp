#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mpchem/aero_rep.hpp"
#include "mpchem/config.hpp"
#include "mpchem/layout.hpp"
#include "mpchem/sparse.hpp"

namespace mpchem {

// One physicochemical process contributing to the forcing and its Jacobian.
// Lifecycle: construction resolves state offsets; register_jacobian_elements
// declares every (row, col) slot the process may write; resolve_ids caches
// slot indices after the pattern is frozen; during solving the environment
// cache is refreshed only when the environmental state changes.
//
// Processes are immutable after initialization except the environment cache,
// rate-handle values, and internal evaluation scratch; one solve owns all
// mutation.
class Process {
 public:
  virtual ~Process() = default;

  const std::string& label() const { return label_; }
  ProcessType type() const { return type_; }

  virtual void register_jacobian_elements(JacobianPattern& pattern) const = 0;
  virtual void resolve_ids(const SparseJacobian& jac) = 0;
  virtual void update_for_new_environmental_state(const EnvironmentalState& env) = 0;
  virtual void calculate_derivative_contribution(std::span<const double> y,
                                                 std::span<double> forcing) const = 0;
  virtual void calculate_jacobian_contribution(std::span<const double> y,
                                               SparseJacobian& jac) const = 0;

  // State offsets this process may write forcing to.
  const std::vector<int>& touched_offsets() const { return touched_; }
  // State offsets the forcing depends on (Jacobian columns).
  const std::vector<int>& dependency_offsets() const { return depends_; }

  // Runtime-updatable scalar (emission rate, photolysis/loss rate constant).
  virtual bool is_updatable() const { return false; }
  virtual void set_rate(double) {
    throw std::logic_error("process \"" + label_ + "\" has no updatable rate");
  }
  virtual double rate_value() const {
    throw std::logic_error("process \"" + label_ + "\" has no updatable rate");
  }

 protected:
  Process(ProcessType type, std::string label) : type_(type), label_(std::move(label)) {}
  ProcessType type_;
  std::string label_;
  std::vector<int> touched_;
  std::vector<int> depends_;
};

// Builds one Process per configured process. Aerosol-phase processes are
// replicated internally over every instance of their phase in the
// representation.
std::vector<std::unique_ptr<Process>> build_processes(const MechanismConfig& config,
                                                      const StateLayout& layout,
                                                      const AerosolRepresentation* rep);

}  // namespace mpchem
