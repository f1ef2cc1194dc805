#include "centro/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "centro/config_io.hpp"

namespace centro {
namespace {

const char* kColumns =
    "time,phase,support,exchange,"
    "ref_com_x,ref_com_y,ref_vel_x,ref_vel_y,ref_zmp_x,ref_zmp_y,ref_eos_x,ref_eos_y,"
    "est_com_x,est_com_y,est_vel_x,est_vel_y,est_acc_x,est_acc_y,est_zmp_x,est_zmp_y,"
    "cmd_com_x,cmd_com_y,cmd_zmp_x,cmd_zmp_y,cmd_frequency,cmd_step_advance,"
    "fw_cmd_sag,fw_cmd_lat,fw_sag,fw_lat,"
    "true_com_x,true_com_y,true_vel_x,true_vel_y,true_zmp_x,true_zmp_y,"
    "foot_left_x,foot_left_y,foot_left_z,foot_right_x,foot_right_y,foot_right_z,"
    "push_x,push_y,zmp_saturated,pose_ok,fallen";

void put(std::ostringstream& out, double v, bool last = false) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  out << buf;
  if (!last) out << ',';
}

}  // namespace

std::string runlog_csv(const RunLog& log) {
  std::ostringstream out;
  out << "# run log\n";
  out << "# seed = " << log.seed << "\n";
  {
    // pendulum frequency for phase-plane post-processing
    char buf[64];
    double omega = 0.0;
    ScenarioConfig config;
    if (parse_config(log.config_text, config).empty()) omega = config.lipm().omega;
    std::snprintf(buf, sizeof(buf), "%.17g", omega);
    out << "# omega = " << buf << "\n";
  }
  out << "# config begin\n";
  std::istringstream config_stream(log.config_text);
  std::string line;
  while (std::getline(config_stream, line)) out << "#   " << line << "\n";
  out << "# config end\n";
  out << kColumns << "\n";

  for (const TickRecord& r : log.ticks) {
    std::ostringstream row;
    put(row, r.time);
    put(row, r.phase);
    row << r.support_sign << ',' << (r.exchanged ? 1 : 0) << ',';
    put(row, r.ref_com.x());
    put(row, r.ref_com.y());
    put(row, r.ref_vel.x());
    put(row, r.ref_vel.y());
    put(row, r.ref_zmp.x());
    put(row, r.ref_zmp.y());
    put(row, r.ref_eos.x());
    put(row, r.ref_eos.y());
    put(row, r.est_com.x());
    put(row, r.est_com.y());
    put(row, r.est_vel.x());
    put(row, r.est_vel.y());
    put(row, r.est_acc.x());
    put(row, r.est_acc.y());
    put(row, r.est_zmp.x());
    put(row, r.est_zmp.y());
    put(row, r.cmd_com.x());
    put(row, r.cmd_com.y());
    put(row, r.cmd_zmp.x());
    put(row, r.cmd_zmp.y());
    put(row, r.cmd_frequency);
    put(row, r.cmd_step_advance);
    put(row, r.fw_cmd_sag);
    put(row, r.fw_cmd_lat);
    put(row, r.fw_sag);
    put(row, r.fw_lat);
    put(row, r.true_com.x());
    put(row, r.true_com.y());
    put(row, r.true_vel.x());
    put(row, r.true_vel.y());
    put(row, r.true_zmp.x());
    put(row, r.true_zmp.y());
    put(row, r.foot_left.x());
    put(row, r.foot_left.y());
    put(row, r.foot_left.z());
    put(row, r.foot_right.x());
    put(row, r.foot_right.y());
    put(row, r.foot_right.z());
    put(row, r.push.x());
    put(row, r.push.y());
    row << (r.zmp_saturated ? 1 : 0) << ',' << (r.pose_feasible ? 1 : 0) << ','
        << (r.fallen ? 1 : 0);
    out << row.str() << "\n";
  }
  return out.str();
}

std::string write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) return "io: cannot write '" + path + "'";
  file << text;
  file.close();
  if (!file) return "io: write failed for '" + path + "'";
  return {};
}

std::string read_csv_file(const std::string& path, CsvTable& out) {
  std::ifstream file(path);
  if (!file) return "io: cannot read '" + path + "'";
  out = CsvTable{};

  std::string line;
  bool have_header = false;
  long line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string comment = line.substr(1);
      const size_t start = comment.find_first_not_of(' ');
      out.comments.push_back(start == std::string::npos ? "" : comment.substr(start));
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      out.columns = cells;
      have_header = true;
      continue;
    }
    if (cells.size() != out.columns.size())
      return "csv: row at line " + std::to_string(line_number) + " has " +
             std::to_string(cells.size()) + " cells, expected " +
             std::to_string(out.columns.size());
    std::vector<double> values(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
      char* end = nullptr;
      values[i] = std::strtod(cells[i].c_str(), &end);
      if (end == cells[i].c_str())
        return "csv: non-numeric cell at line " + std::to_string(line_number);
    }
    out.rows.push_back(std::move(values));
  }
  if (!have_header) return "csv: no header row in '" + path + "'";
  return {};
}

int column_index(const CsvTable& table, const std::string& name) {
  for (size_t i = 0; i < table.columns.size(); ++i)
    if (table.columns[i] == name) return int(i);
  return -1;
}

bool comment_value(const CsvTable& table, const std::string& key, double& out) {
  for (const std::string& comment : table.comments) {
    const size_t eq = comment.find('=');
    if (eq == std::string::npos) continue;
    std::string k = comment.substr(0, eq);
    while (!k.empty() && k.back() == ' ') k.pop_back();
    if (k != key) continue;
    const char* begin = comment.c_str() + eq + 1;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) continue;
    out = v;
    return true;
  }
  return false;
}

}  // namespace centro
