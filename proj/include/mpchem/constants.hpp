#pragma once

namespace mpchem {

// CODATA 2018 values.
inline constexpr double kGasConstant = 8.31446261815324;  // J mol-1 K-1
inline constexpr double kBoltzmann = 1.380649e-23;        // J K-1
inline constexpr double kAvogadro = 6.02214076e23;        // mol-1
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kAtmToPa = 101325.0;

}  // namespace mpchem
