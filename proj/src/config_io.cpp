#include "centro/config_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace centro {
namespace {

struct DoubleField {
  const char* section;
  const char* key;
  double& (*ref)(ScenarioConfig&);
};

// every plain numeric field; commands and pushes are handled separately
const DoubleField kDoubleFields[] = {
    {"run", "duration", [](ScenarioConfig& c) -> double& { return c.duration; }},
    {"gait", "frequency", [](ScenarioConfig& c) -> double& { return c.frequency; }},
    {"gait", "step_width", [](ScenarioConfig& c) -> double& { return c.step_width; }},
    {"gait", "step_height", [](ScenarioConfig& c) -> double& { return c.step_height; }},
    {"gait", "com_height", [](ScenarioConfig& c) -> double& { return c.com_height; }},
    {"gait", "dt", [](ScenarioConfig& c) -> double& { return c.dt; }},
    {"gait", "gravity", [](ScenarioConfig& c) -> double& { return c.gravity; }},
    {"model", "trunk_mass", [](ScenarioConfig& c) -> double& { return c.model.trunk_mass; }},
    {"model", "arm_mass", [](ScenarioConfig& c) -> double& { return c.model.arm_mass; }},
    {"model", "leg_mass", [](ScenarioConfig& c) -> double& { return c.model.leg_mass; }},
    {"model", "trunk_offset_z",
     [](ScenarioConfig& c) -> double& { return c.model.trunk_offset.z(); }},
    {"model", "shoulder_height",
     [](ScenarioConfig& c) -> double& { return c.model.shoulder_height; }},
    {"model", "shoulder_halfwidth",
     [](ScenarioConfig& c) -> double& { return c.model.shoulder_halfwidth; }},
    {"model", "arm_drop", [](ScenarioConfig& c) -> double& { return c.model.arm_drop; }},
    {"model", "arm_slide_range",
     [](ScenarioConfig& c) -> double& { return c.model.arm_slide_range; }},
    {"model", "hip_halfwidth",
     [](ScenarioConfig& c) -> double& { return c.model.hip_halfwidth; }},
    {"model", "leg_mass_ratio",
     [](ScenarioConfig& c) -> double& { return c.model.leg_mass_ratio; }},
    {"model", "lower_centroid_drop",
     [](ScenarioConfig& c) -> double& { return c.model.lower_centroid_drop; }},
    {"model", "thigh_length", [](ScenarioConfig& c) -> double& { return c.model.thigh_length; }},
    {"model", "shank_length", [](ScenarioConfig& c) -> double& { return c.model.shank_length; }},
    {"gains", "k_zmp", [](ScenarioConfig& c) -> double& { return c.gains.k_zmp; }},
    {"gains", "k_com", [](ScenarioConfig& c) -> double& { return c.gains.k_com; }},
    {"gains", "k_vel", [](ScenarioConfig& c) -> double& { return c.gains.k_vel; }},
    {"gains", "k_eos", [](ScenarioConfig& c) -> double& { return c.gains.k_eos; }},
    {"gains", "k_zmp_aug", [](ScenarioConfig& c) -> double& { return c.gains.k_zmp_aug; }},
    {"gains", "k_com_aug", [](ScenarioConfig& c) -> double& { return c.gains.k_com_aug; }},
    {"gains", "k_timing", [](ScenarioConfig& c) -> double& { return c.gains.k_timing; }},
    {"gains", "k_step", [](ScenarioConfig& c) -> double& { return c.gains.k_step; }},
    {"gains", "alpha", [](ScenarioConfig& c) -> double& { return c.gains.alpha; }},
    {"gains", "max_step_advance",
     [](ScenarioConfig& c) -> double& { return c.max_step_advance; }},
    {"flywheel", "inertia", [](ScenarioConfig& c) -> double& { return c.flywheel_inertia; }},
    {"flywheel", "max_angle", [](ScenarioConfig& c) -> double& { return c.flywheel_max_angle; }},
    {"estimation", "jerk_density",
     [](ScenarioConfig& c) -> double& { return c.estimator.jerk_density; }},
    {"estimation", "position_noise",
     [](ScenarioConfig& c) -> double& { return c.estimator.position_noise; }},
    {"estimation", "accel_noise",
     [](ScenarioConfig& c) -> double& { return c.estimator.accel_noise; }},
    {"estimation", "angular_jerk_density",
     [](ScenarioConfig& c) -> double& { return c.estimator.angular_jerk_density; }},
    {"estimation", "angle_noise",
     [](ScenarioConfig& c) -> double& { return c.estimator.angle_noise; }},
    {"estimation", "support_band",
     [](ScenarioConfig& c) -> double& { return c.estimator.support_band; }},
    {"actuator", "lag_time", [](ScenarioConfig& c) -> double& { return c.actuator.lag_time; }},
    {"actuator", "backlash", [](ScenarioConfig& c) -> double& { return c.actuator.backlash; }},
    {"actuator", "noise_sigma",
     [](ScenarioConfig& c) -> double& { return c.actuator.noise_sigma; }},
    {"actuator", "knee_noise_gain",
     [](ScenarioConfig& c) -> double& { return c.actuator.knee_noise_gain; }},
    {"actuator", "landing_noise",
     [](ScenarioConfig& c) -> double& { return c.actuator.landing_noise; }},
    {"actuator", "flywheel_accel_limit",
     [](ScenarioConfig& c) -> double& { return c.actuator.flywheel_accel_limit; }},
    {"sensors", "com_noise", [](ScenarioConfig& c) -> double& { return c.sensors.com_noise; }},
    {"sensors", "accel_noise",
     [](ScenarioConfig& c) -> double& { return c.sensors.accel_noise; }},
    {"sensors", "angle_noise",
     [](ScenarioConfig& c) -> double& { return c.sensors.angle_noise; }},
    {"foot", "half_length", [](ScenarioConfig& c) -> double& { return c.foot.half_length; }},
    {"foot", "half_width", [](ScenarioConfig& c) -> double& { return c.foot.half_width; }},
};

const char* kSections[] = {"run",        "gait",    "model",   "gains", "flywheel",
                           "estimation", "actuator", "sensors", "foot"};

bool known_section(const std::string& name) {
  for (const char* s : kSections)
    if (name == s) return true;
  return false;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0' && std::isfinite(out);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// indexed section like "command.3" or "push.0"
bool split_indexed(const std::string& name, std::string& base, long& index) {
  const size_t dot = name.find('.');
  if (dot == std::string::npos) return false;
  base = name.substr(0, dot);
  const std::string tail = name.substr(dot + 1);
  if (tail.empty()) return false;
  char* end = nullptr;
  index = std::strtol(tail.c_str(), &end, 10);
  return *end == '\0' && index >= 0;
}

}  // namespace

std::string serialize_config(const ScenarioConfig& config) {
  std::ostringstream out;
  ScenarioConfig& c = const_cast<ScenarioConfig&>(config);  // ref() takes mutable
  const auto section_fields = [&](const std::string& name) {
    for (const DoubleField& field : kDoubleFields)
      if (name == field.section) out << field.key << " = " << fmt(field.ref(c)) << "\n";
  };

  out << "[run]\n";
  out << "duration = " << fmt(config.duration) << "\n";
  out << "seed = " << config.seed << "\n";
  out << "mode = " << mode_name(config.mode) << "\n";
  for (const char* name : {"gait", "model", "gains", "flywheel", "estimation"}) {
    out << "\n[" << name << "]\n";
    section_fields(name);
  }
  out << "\n[actuator]\n";
  section_fields("actuator");
  out << "latency_ticks = " << config.actuator.latency_ticks << "\n";
  for (const char* name : {"sensors", "foot"}) {
    out << "\n[" << name << "]\n";
    section_fields(name);
  }

  for (size_t i = 0; i < config.commands.size(); ++i) {
    const CommandPoint& p = config.commands[i];
    out << "\n[command." << i << "]\n";
    out << "time = " << fmt(p.time) << "\n";
    out << "vx = " << fmt(p.command.vx) << "\n";
    out << "vy = " << fmt(p.command.vy) << "\n";
    out << "vpsi = " << fmt(p.command.vpsi) << "\n";
  }
  for (size_t i = 0; i < config.pushes.size(); ++i) {
    const PushEvent& p = config.pushes[i];
    out << "\n[push." << i << "]\n";
    out << "time = " << fmt(p.time) << "\n";
    out << "angle_deg = "
        << fmt(std::atan2(p.direction.y(), p.direction.x()) * 180.0 / M_PI) << "\n";
    out << "impulse = " << fmt(p.impulse) << "\n";
    out << "duration = " << fmt(p.duration) << "\n";
  }
  return out.str();
}

std::string parse_config(const std::string& text, ScenarioConfig& out) {
  ScenarioConfig config;
  config.commands.clear();
  config.pushes.clear();

  std::istringstream stream(text);
  std::string line;
  std::string section;
  std::string indexed_base;
  long line_number = 0;

  while (std::getline(stream, line)) {
    ++line_number;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        return "line " + std::to_string(line_number) + ": unterminated section header";
      const std::string name = trim(line.substr(1, line.size() - 2));
      std::string base;
      long index = 0;
      if (split_indexed(name, base, index)) {
        if (base == "command") {
          if (index != long(config.commands.size()))
            return "[" + name + "]: indexed sections must appear once, in order from 0";
          config.commands.emplace_back();
        } else if (base == "push") {
          if (index != long(config.pushes.size()))
            return "[" + name + "]: indexed sections must appear once, in order from 0";
          config.pushes.emplace_back();
        } else {
          return "[" + name + "]: unknown section";
        }
        section = name;
        indexed_base = base;
      } else {
        if (!known_section(name)) return "[" + name + "]: unknown section";
        section = name;
        indexed_base.clear();
      }
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      return "line " + std::to_string(line_number) + ": expected key = value";
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      return "line " + std::to_string(line_number) + ": key outside any section";
    const std::string path = "[" + section + "] " + key;

    if (indexed_base == "command") {
      CommandPoint& point = config.commands.back();
      double v = 0.0;
      if (!parse_double(value, v)) return path + ": expected a number";
      if (key == "time")
        point.time = v;
      else if (key == "vx")
        point.command.vx = v;
      else if (key == "vy")
        point.command.vy = v;
      else if (key == "vpsi")
        point.command.vpsi = v;
      else
        return path + ": unknown key";
      continue;
    }
    if (indexed_base == "push") {
      PushEvent& push = config.pushes.back();
      double v = 0.0;
      if (!parse_double(value, v)) return path + ": expected a number";
      if (key == "time")
        push.time = v;
      else if (key == "angle_deg")
        push.direction = {std::cos(v * M_PI / 180.0), std::sin(v * M_PI / 180.0)};
      else if (key == "impulse")
        push.impulse = v;
      else if (key == "duration")
        push.duration = v;
      else
        return path + ": unknown key";
      continue;
    }

    if (section == "run" && key == "seed") {
      char* end = nullptr;
      const unsigned long long seed = std::strtoull(value.c_str(), &end, 10);
      if (end == value.c_str() || *end != '\0') return path + ": expected an unsigned integer";
      config.seed = seed;
      continue;
    }
    if (section == "run" && key == "mode") {
      ControlMode mode;
      if (!mode_from_name(value, mode)) return path + ": unknown mode '" + value + "'";
      config.mode = mode;
      continue;
    }
    if (section == "actuator" && key == "latency_ticks") {
      char* end = nullptr;
      const long ticks = std::strtol(value.c_str(), &end, 10);
      if (end == value.c_str() || *end != '\0' || ticks < 0)
        return path + ": expected a non-negative integer";
      config.actuator.latency_ticks = int(ticks);
      continue;
    }

    bool matched = false;
    for (const DoubleField& field : kDoubleFields) {
      if (section != field.section || key != field.key) continue;
      double v = 0.0;
      if (!parse_double(value, v)) return path + ": expected a number";
      field.ref(config) = v;
      matched = true;
      break;
    }
    if (!matched) return path + ": unknown key";
  }

  out = config;
  return {};
}

std::string load_config_file(const std::string& path, ScenarioConfig& out) {
  std::ifstream file(path);
  if (!file) return "io: cannot read '" + path + "'";
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str(), out);
}

}  // namespace centro
