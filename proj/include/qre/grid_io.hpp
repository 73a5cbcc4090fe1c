#pragma once

#include <iosfwd>
#include <string>

#include "qre/tomo_sim.hpp"

// Tabular serialization of simulation grids: '#'-prefixed metadata lines,
// a header line, comma-separated rows. Values are written with enough digits
// to round-trip doubles exactly, so a re-read grid reproduces contour
// extraction bit for bit.
namespace qre::tomo {

inline constexpr const char* kGridSchemaVersion = "1";
inline constexpr const char* kMeasurementScheme = "pauli-xyz/linear-inversion/top-eigenvector";

void write_grid(std::ostream& os, const SimGrid& grid, const std::string& command_echo);

SimGrid read_grid(std::istream& is);

SimGrid read_grid_file(const std::string& path);

}  // namespace qre::tomo
