#include "cfgreen/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace cfgreen {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const OutputTable& t) {
  std::string out;
  for (const auto& [key, value] : t.meta) out += "# " + key + " = " + value + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const OutputTable& t) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta;
  for (const auto& [key, value] : t.meta) meta[key] = value;
  j["meta"] = std::move(meta);
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (double v : row) r.push_back(format_double(v));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

void write_output(const OutputTable& t, const std::string& path, const std::string& format) {
  std::string payload;
  if (format == "csv")
    payload = to_csv(t);
  else if (format == "json")
    payload = to_json(t);
  else
    throw std::invalid_argument("write_output: format must be csv or json");

  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_output: cannot open " + path);
  f << payload;
}

}  // namespace cfgreen
