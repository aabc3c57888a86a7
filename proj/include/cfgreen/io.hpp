#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cfgreen {

/// Tabular output shared by the CSV and JSON writers.  Meta lines echo the
/// fully resolved configuration so a result file is self-describing, and
/// both writers format numbers with round-trip precision so repeated runs
/// are byte-identical.
struct OutputTable {
  std::vector<std::pair<std::string, std::string>> meta;  ///< key/value, insertion order
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_double(double v);  ///< %.17g round-trip formatting

std::string to_csv(const OutputTable& t);
std::string to_json(const OutputTable& t);

/// format is "csv" or "json"; empty path writes to stdout.
void write_output(const OutputTable& t, const std::string& path, const std::string& format);

}  // namespace cfgreen
