#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mpchem/config.hpp"
#include "mpchem/layout.hpp"
#include "mpchem/sparse.hpp"

namespace mpchem {

// A quantity diagnosed from the state (e.g. aerosol water) that processes
// consume. Each parameter owns one or more diagnosed state slots; in every
// forcing or Jacobian evaluation, parameters are computed before any process
// runs, and their partial derivatives with respect to the solver variables
// compose into the solver Jacobian via the chain rule.
class Parameter {
 public:
  virtual ~Parameter() = default;

  const std::string& label() const { return label_; }
  const std::vector<int>& diagnosed_offsets() const { return diagnosed_; }

  // Rows in the partial-derivative matrix, parallel to diagnosed_offsets();
  // assigned by the owner before registration.
  void set_param_rows(std::vector<int> rows) { param_rows_ = std::move(rows); }

  virtual void register_param_jacobian(JacobianPattern& pattern) const = 0;
  virtual void resolve_ids(const SparseJacobian& pjac) = 0;
  virtual void update_for_new_environmental_state(const EnvironmentalState& env) = 0;
  // Writes the diagnosed values into the working state.
  virtual void calculate(std::span<double> y_work) const = 0;
  virtual void calculate_param_jacobian(std::span<const double> y_work,
                                        SparseJacobian& pjac) const = 0;

 protected:
  explicit Parameter(std::string label) : label_(std::move(label)) {}
  std::string label_;
  std::vector<int> diagnosed_;
  std::vector<int> param_rows_;
};

// Equilibrium aerosol water from the Zdanovskii-Stokes-Robinson mixing rule,
//   W = sum_i 1000 M_i / (MW_i m_i(a_w)),
// with per-electrolyte molality polynomials in the water activity. The water
// activity is supplied with the environmental state.
class ZsrAerosolWater final : public Parameter {
 public:
  ZsrAerosolWater(const ParameterConfig& cfg, const StateLayout& layout);

  void register_param_jacobian(JacobianPattern& pattern) const override;
  void resolve_ids(const SparseJacobian& pjac) override;
  void update_for_new_environmental_state(const EnvironmentalState& env) override;
  void calculate(std::span<double> y_work) const override;
  void calculate_param_jacobian(std::span<const double> y_work,
                                SparseJacobian& pjac) const override;

 private:
  struct Electrolyte {
    double molecular_weight;
    std::vector<double> poly;  // molality coefficients, lowest degree first
  };
  struct Instance {
    int water_offset;
    std::vector<int> electrolyte_offsets;
    std::vector<int> slots;
  };
  std::vector<Electrolyte> electrolytes_;
  std::vector<Instance> instances_;
  std::vector<double> coeff_;  // 1000 / (MW_i m_i(a_w)) per electrolyte
};

std::vector<std::unique_ptr<Parameter>> build_parameters(const MechanismConfig& config,
                                                         const StateLayout& layout);

}  // namespace mpchem
