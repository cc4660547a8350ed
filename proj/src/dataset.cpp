#include "vwstat/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "vwstat/errors.hpp"

namespace vwstat {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string at_line(std::size_t line) { return " (line " + std::to_string(line) + ")"; }

double parse_number(std::string_view field, std::size_t line) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError("invalid number '" + std::string(field) + "'" + at_line(line),
                     {static_cast<double>(line)});
  }
  return value;
}

}  // namespace

Dataset parse_landmarks(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  Dataset data;
  data.name = name;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (!have_header) {
      if (fields.front() != "id") {
        throw ParseError("header must start with 'id'" + at_line(line_no), {double(line_no)});
      }
      if ((fields.size() - 1) % 2 != 0 || fields.size() < 3) {
        throw InconsistentColumns("header needs x/y column pairs" + at_line(line_no),
                                  {double(line_no)});
      }
      data.k = static_cast<int>((fields.size() - 1) / 2);
      for (int j = 1; j <= data.k; ++j) {
        const auto& fx = fields[static_cast<std::size_t>(2 * j - 1)];
        const auto& fy = fields[static_cast<std::size_t>(2 * j)];
        if (fx != "x" + std::to_string(j) || fy != "y" + std::to_string(j)) {
          throw InconsistentColumns("expected columns x" + std::to_string(j) + ",y" +
                                        std::to_string(j) + at_line(line_no),
                                    {double(line_no)});
        }
      }
      have_header = true;
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(1 + 2 * data.k)) {
      throw InconsistentColumns("row has " + std::to_string(fields.size()) + " fields, expected " +
                                    std::to_string(1 + 2 * data.k) + at_line(line_no),
                                {double(line_no)});
    }
    std::vector<Real> xy;
    xy.reserve(static_cast<std::size_t>(2 * data.k));
    for (std::size_t f = 1; f < fields.size(); ++f) xy.push_back(parse_number(fields[f], line_no));
    data.ids.emplace_back(fields.front());
    data.configs.push_back(LandmarkConfig::from_xy(xy));
  }
  if (!have_header) throw ParseError("empty landmark file");
  if (data.configs.empty()) throw ParseError("landmark file has no configurations");
  return data;
}

Dataset read_landmarks(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_landmarks(in, path.stem().string());
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_landmarks(const Dataset& data, std::ostream& out) {
  out << "id";
  for (int j = 1; j <= data.k; ++j) out << ",x" << j << ",y" << j;
  out << '\n';
  for (std::size_t r = 0; r < data.size(); ++r) {
    out << (r < data.ids.size() ? data.ids[r] : std::to_string(r + 1));
    for (const Complex& p : data.configs[r].points()) {
      out << ',' << format_real(p.real()) << ',' << format_real(p.imag());
    }
    out << '\n';
  }
}

std::string landmarks_csv(const Dataset& data) {
  std::ostringstream os;
  write_landmarks(data, os);
  return os.str();
}

LandmarkConfig simulation_template(int k) {
  if (k < 3) throw InvalidDimension("simulation needs k >= 3");
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double t = 2.0 * std::numbers::pi * j / k;
    pts.emplace_back(std::cos(t) + 0.25 * std::cos(2.0 * t), 0.7 * std::sin(t) + 0.15 * std::sin(3.0 * t));
  }
  return LandmarkConfig(std::move(pts));
}

Dataset simulate_configs(int k, int n, double concentration, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("simulation needs n >= 1");
  if (!(concentration > 0.0)) throw InvalidArgument("concentration must be positive");
  const LandmarkConfig base = simulation_template(k);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 1.0 / concentration);

  Dataset data;
  data.name = "simulated";
  data.k = k;
  for (int r = 0; r < n; ++r) {
    std::vector<Complex> pts = base.points();
    for (auto& p : pts) {
      const double dx = noise(gen);
      const double dy = noise(gen);
      p += Complex(dx, dy);
    }
    data.ids.push_back("s" + std::to_string(r + 1));
    data.configs.emplace_back(std::move(pts));
  }
  return data;
}

}  // namespace vwstat
