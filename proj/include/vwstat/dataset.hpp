#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vwstat/shape_geometry.hpp"

namespace vwstat {

/// n labeled k-ads read from, or written to, the landmark CSV format
///
///   id,x1,y1,x2,y2,...,xk,yk
///   a,0.0,0.0,1.0,0.0,...
struct Dataset {
  std::string name;
  int k = 0;
  std::vector<std::string> ids;
  std::vector<LandmarkConfig> configs;

  std::size_t size() const noexcept { return configs.size(); }
};

Dataset parse_landmarks(std::istream& in, const std::string& name);
Dataset read_landmarks(const std::filesystem::path& path);

void write_landmarks(const Dataset& data, std::ostream& out);
std::string landmarks_csv(const Dataset& data);

/// Fixed, asymmetric k-point template used by the simulator.
LandmarkConfig simulation_template(int k);

/// Template plus i.i.d. N(0, 1/concentration^2) noise on every coordinate.
Dataset simulate_configs(int k, int n, double concentration, std::uint64_t seed);

/// "%.17g"
std::string format_real(double value);

}  // namespace vwstat
