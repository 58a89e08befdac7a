#pragma once

// CSV tables with a JSON metadata sidecar.

#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

namespace cubicsum {

/// Shortest round-trip text for a double; integers and strings pass through.
inline std::string cell(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}
inline std::string cell(std::int64_t v) { return std::to_string(v); }
inline std::string cell(int v) { return std::to_string(v); }
inline std::string cell(std::size_t v) { return std::to_string(v); }
inline std::string cell(const std::string& v) { return v; }
inline std::string cell(const char* v) { return v; }

class csv_table {
 public:
  explicit csv_table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  template <class... Ts>
  void row(const Ts&... values) {
    if (sizeof...(Ts) != columns_.size()) throw std::logic_error("csv_table: row width does not match header");
    rows_.push_back({cell(values)...});
  }

  [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
  [[nodiscard]] std::size_t size() const { return rows_.size(); }

  void write(std::ostream& os) const {
    write_line(os, columns_);
    for (const auto& r : rows_) write_line(os, r);
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + '"';
  }
  static void write_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << quote(cells[i]);
    os << '\n';
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes path (CSV) and path + ".json" (metadata).
inline void write_report(const std::string& path, const csv_table& table, const nlohmann::json& meta) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open " + path);
  table.write(csv);
  std::ofstream js(path + ".json", std::ios::binary);
  if (!js) throw std::runtime_error("cannot open " + path + ".json");
  js << meta.dump(2) << '\n';
}

}  // namespace cubicsum
