#include "posopt/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "posopt/version.hpp"

namespace posopt {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void JsonWriter::pre_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!needs_comma_.empty()) {
    if (needs_comma_.back()) out_ += ',';
    needs_comma_.back() = true;
  }
}

JsonWriter& JsonWriter::begin_object() {
  pre_value();
  out_ += '{';
  needs_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  needs_comma_.pop_back();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  pre_value();
  out_ += '[';
  needs_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  needs_comma_.pop_back();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  if (needs_comma_.back()) out_ += ',';
  needs_comma_.back() = true;
  value_escaped(k);
  out_ += ':';
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  pre_value();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  pre_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  pre_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(size_t v) {
  pre_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  pre_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  pre_value();
  value_escaped(v);
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value(std::span<const double> v) {
  begin_array();
  for (double x : v) value(x);
  return end_array();
}

std::string grid_to_csv(const ValueGrid& grid) {
  std::string out;
  const int n = grid.dim();
  for (int k = 0; k < n; ++k) out += "x" + std::to_string(k + 1) + ",";
  out += "V\n";
  for (size_t i = 0; i < grid.node_count(); ++i) {
    const Vec p = grid.point(i);
    for (int k = 0; k < n; ++k) out += format_double(p[k]) + ",";
    out += format_double(grid.values[i]) + "\n";
  }
  return out;
}

std::string grid_meta_json(const ValueGrid& grid, const std::string& scenario_label) {
  JsonWriter w;
  w.begin_object();
  w.kv("version", kVersion);
  w.kv("scenario", scenario_label);
  w.kv("topology", "box");
  w.key("domain").begin_object();
  w.kv("lo", std::span<const double>(grid.domain().lo()));
  w.kv("hi", std::span<const double>(grid.domain().hi()));
  w.end_object();
  w.kv("cells_per_axis", grid.cells_per_axis());
  w.key("spacing").begin_array();
  for (int k = 0; k < grid.dim(); ++k) w.value(grid.spacing(k));
  w.end_array();
  w.key("config").begin_object();
  w.kv("grid_per_axis", grid.config_echo.grid_per_axis);
  w.kv("refine_depth", grid.config_echo.refine_depth);
  w.kv("y_tol", grid.config_echo.y_tol);
  w.kv("v_tol", grid.config_echo.v_tol);
  w.end_object();
  w.key("warnings").begin_array();
  for (const auto& s : grid.warnings) w.value(s);
  w.end_array();
  w.key("extra_boundary_samples").begin_array();
  for (const auto& [x, v] : grid.extra_boundary_samples) {
    w.begin_object();
    w.kv("x", x);
    w.kv("V", v);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string ring_grid_to_csv(const RingGrid& grid) {
  std::string out = "x1,V\n";
  for (int i = 0; i < grid.cells; ++i)
    out += format_double(grid.coord(i)) + "," + format_double(grid.values[i]) + "\n";
  return out;
}

std::string ring_grid_meta_json(const RingGrid& grid, const std::string& scenario_label) {
  JsonWriter w;
  w.begin_object();
  w.kv("version", kVersion);
  w.kv("scenario", scenario_label);
  w.kv("topology", "ring");
  w.kv("circumference", grid.ring.circumference);
  w.kv("cells", grid.cells);
  w.kv("spacing", grid.spacing());
  w.key("config").begin_object();
  w.kv("grid_per_axis", grid.config_echo.grid_per_axis);
  w.kv("refine_depth", grid.config_echo.refine_depth);
  w.kv("y_tol", grid.config_echo.y_tol);
  w.kv("v_tol", grid.config_echo.v_tol);
  w.end_object();
  w.end_object();
  return w.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace posopt
