#pragma once

#include <string>
#include <vector>

#include "centro/sim.hpp"

namespace centro {

/// Full CSV text of a run log: '#' comment header with seed, pendulum
/// frequency, and the resolved config, a column-name row, then one row per
/// tick at 9 significant digits.
std::string runlog_csv(const RunLog& log);

/// Empty string on success, else an I/O error message.
std::string write_text_file(const std::string& path, const std::string& text);

struct CsvTable {
  std::vector<std::string> comments;  // '#' lines, stripped of the marker
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string read_csv_file(const std::string& path, CsvTable& out);

/// -1 when the column is absent.
int column_index(const CsvTable& table, const std::string& name);

/// Looks up "key = value" in the comment lines; false when absent.
bool comment_value(const CsvTable& table, const std::string& key, double& out);

}  // namespace centro
