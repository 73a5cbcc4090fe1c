#include "qre/grid_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace qre::tomo {

namespace {

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    fields.push_back(field);
  }
  return fields;
}

}  // namespace

void write_grid(std::ostream& os, const SimGrid& grid, const std::string& command_echo) {
  os << "# schema_version," << kGridSchemaVersion << "\n";
  if (!command_echo.empty()) {
    os << "# command," << command_echo << "\n";
  }
  os << "# seed," << grid.master_seed << "\n";
  os << "# trials," << grid.trials << "\n";
  os << "# scheme," << kMeasurementScheme << "\n";
  os << "n,g,mean_infidelity,mean_bures_sq,stderr,trials,flags\n";
  for (std::size_t i = 0; i < grid.n_grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.g_grid.size(); ++j) {
      const SimCell& c = grid.cell(i, j);
      os << grid.n_grid[i] << ',' << exact(grid.g_grid[j]) << ',' << exact(c.mean_infidelity)
         << ',' << exact(c.mean_bures_sq) << ',' << exact(c.stderr_infidelity) << ','
         << grid.trials << ',' << c.degenerate_trials << "\n";
    }
  }
}

SimGrid read_grid(std::istream& is) {
  SimGrid grid;
  std::string line;
  bool header_seen = false;
  struct Row {
    std::int64_t n;
    double g;
    SimCell cell;
  };
  std::vector<Row> rows;

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string meta = line.substr(1);
      const std::size_t start = meta.find_first_not_of(' ');
      if (start != std::string::npos) meta = meta.substr(start);
      const std::size_t comma = meta.find(',');
      if (comma == std::string::npos) continue;
      const std::string key = meta.substr(0, comma);
      const std::string val = meta.substr(comma + 1);
      if (key == "seed") {
        grid.master_seed = std::strtoull(val.c_str(), nullptr, 10);
      } else if (key == "trials") {
        grid.trials = static_cast<int>(std::strtol(val.c_str(), nullptr, 10));
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("n,g,", 0) != 0) {
        throw io_error("grid file: unexpected header line: " + line);
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 7) {
      throw io_error("grid file: expected 7 columns, got " + std::to_string(fields.size()));
    }
    Row row;
    row.n = std::strtoll(fields[0].c_str(), nullptr, 10);
    row.g = std::strtod(fields[1].c_str(), nullptr);
    row.cell.mean_infidelity = std::strtod(fields[2].c_str(), nullptr);
    row.cell.mean_bures_sq = std::strtod(fields[3].c_str(), nullptr);
    row.cell.stderr_infidelity = std::strtod(fields[4].c_str(), nullptr);
    row.cell.degenerate_trials = static_cast<int>(std::strtol(fields[6].c_str(), nullptr, 10));
    rows.push_back(row);
  }
  if (rows.empty()) {
    throw io_error("grid file: no data rows");
  }

  for (const Row& r : rows) {
    if (grid.n_grid.empty() || grid.n_grid.back() != r.n) {
      if (std::find(grid.n_grid.begin(), grid.n_grid.end(), r.n) == grid.n_grid.end()) {
        grid.n_grid.push_back(r.n);
      }
    }
    if (std::find(grid.g_grid.begin(), grid.g_grid.end(), r.g) == grid.g_grid.end()) {
      grid.g_grid.push_back(r.g);
    }
  }
  std::sort(grid.n_grid.begin(), grid.n_grid.end());
  std::sort(grid.g_grid.begin(), grid.g_grid.end());
  if (rows.size() != grid.n_grid.size() * grid.g_grid.size()) {
    throw io_error("grid file: rows do not form a full rectangular grid");
  }

  grid.cells.resize(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const Row& r : rows) {
    const auto i = static_cast<std::size_t>(
        std::find(grid.n_grid.begin(), grid.n_grid.end(), r.n) - grid.n_grid.begin());
    const auto j = static_cast<std::size_t>(
        std::find(grid.g_grid.begin(), grid.g_grid.end(), r.g) - grid.g_grid.begin());
    const std::size_t idx = i * grid.g_grid.size() + j;
    if (seen[idx]) {
      throw io_error("grid file: duplicate grid point");
    }
    seen[idx] = true;
    grid.cells[idx] = r.cell;
  }
  return grid;
}

SimGrid read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw io_error("cannot open grid file: " + path);
  }
  return read_grid(in);
}

}  // namespace qre::tomo
