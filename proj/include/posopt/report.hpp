#pragma once

#include <string>
#include <vector>

#include "posopt/ring.hpp"
#include "posopt/value_grid.hpp"

namespace posopt {

/// Fixed-format float for reports: 12 significant digits, locale-free.
std::string format_double(double v);

/// Streaming JSON writer with fixed field order and format_double numbers, so
/// identical inputs produce byte-identical documents.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(size_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& value(std::span<const double> v);

  template <typename T>
  JsonWriter& kv(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }

  const std::string& str() const { return out_; }

 private:
  void pre_value();
  std::string out_;
  std::vector<bool> needs_comma_;
  bool after_key_ = false;
};

/// CSV with columns x_1..x_n,V; rows in node index order (last axis fastest).
std::string grid_to_csv(const ValueGrid& grid);

/// Grid metadata document: version, domain, resolution, spacing, config echo,
/// warnings and off-grid boundary samples.
std::string grid_meta_json(const ValueGrid& grid, const std::string& scenario_label);

std::string ring_grid_to_csv(const RingGrid& grid);
std::string ring_grid_meta_json(const RingGrid& grid, const std::string& scenario_label);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace posopt
