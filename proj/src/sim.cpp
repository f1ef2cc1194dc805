#include "centro/sim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "centro/config_io.hpp"
#include "centro/estimation.hpp"
#include "centro/reference.hpp"
#include "centro/rotation.hpp"

namespace centro {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = seed;
  x ^= 0x9E3779B97F4A7C15ull * (a + 1);
  x ^= 0xC2B2AE3D27D4EB4Full * (b + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

RunLog run_scenario(const ScenarioConfig& config) {
  const std::string config_error = config.validate();
  if (!config_error.empty()) throw std::invalid_argument(config_error);

  const LipmParams lipm = config.lipm();
  ReferenceGenerator gen = ReferenceGenerator::standing(lipm, config.frequency, config.dt,
                                                        config.step_width, config.step_height);
  Controller controller(config.controller_config());

  // the plant starts on the reference orbit; experiments then measure the
  // response to noise, imperfections, and pushes rather than a cold start
  PlantState init;
  const ReferenceTick start = gen.current();
  init.com_pos = start.com_pos;
  init.com_vel = start.com_vel;
  init.com_acc = start.com_acc;
  init.zmp = start.zmp;
  init.foot_left = start.foot_left;
  init.foot_right = start.foot_right;
  Plant plant(config.plant_config(mix_seed(config.seed, 1, 0)), init);

  std::mt19937_64 sensor_rng(mix_seed(config.seed, 2, 0));
  std::normal_distribution<double> normal(0.0, 1.0);

  AxisFilterState filter_x, filter_y;
  for (AxisFilterState* f : {&filter_x, &filter_y}) {
    f->jerk_density = config.estimator.jerk_density;
    f->position_noise = config.estimator.position_noise;
    f->accel_noise = config.estimator.accel_noise;
  }
  // warm start on the known initial state, as after a calibrated stand-up
  filter_x.state = {start.com_pos.x(), start.com_vel.x(), start.com_acc.x()};
  filter_y.state = {start.com_pos.y(), start.com_vel.y(), start.com_acc.y()};
  AngularFilterState filter_sag, filter_lat;
  for (AngularFilterState* f : {&filter_sag, &filter_lat}) {
    f->jerk_density = config.estimator.angular_jerk_density;
    f->angle_noise = config.estimator.angle_noise;
  }

  int support_sign = gen.gait().support_sign;

  RunLog log;
  log.dt = config.dt;
  log.seed = config.seed;
  log.config_text = serialize_config(config);
  const int ticks = int(std::lround(config.duration / config.dt));
  log.ticks.reserve(size_t(std::max(0, ticks)));

  for (int i = 0; i < ticks; ++i) {
    const double t = i * config.dt;
    gen.set_command(config.command_at(t));
    const ReferenceTick ref = gen.tick();
    if (ref.support_exchanged) ++log.exchange_count;

    const PlantState& ps = plant.state();
    double draws[7];
    for (double& d : draws) d = normal(sensor_rng);

    const Eigen::Matrix3d rot_ref =
        rotation_to_axis(ref.inertia.tilt_axis) * yaw_rotation(ref.inertia.yaw);
    const Eigen::Matrix3d rot_true =
        rotation_from_projected(channel_to_roll(ps.flywheel_angle[1]),
                                channel_to_pitch(ps.flywheel_angle[0])) *
        rot_ref;

    const double meas_sag = ps.flywheel_angle[0] + config.sensors.angle_noise * draws[0];
    const double meas_lat = ps.flywheel_angle[1] + config.sensors.angle_noise * draws[1];
    filter_sag = angular_filter_update(filter_sag, meas_sag, config.dt);
    filter_lat = angular_filter_update(filter_lat, meas_lat, config.dt);

    const Eigen::Vector3d accel_world(ps.com_acc.x(), ps.com_acc.y(), config.gravity);
    const Eigen::Vector3d accel_body =
        rot_true.transpose() * accel_world +
        config.sensors.accel_noise * Eigen::Vector3d(draws[2], draws[3], draws[4]);
    const Eigen::Matrix3d rot_est =
        rotation_from_projected(channel_to_roll(filter_lat.state[0]),
                                channel_to_pitch(filter_sag.state[0])) *
        rot_ref;
    const Eigen::Vector3d accel_est =
        unrotate_acceleration(accel_body, rot_est, config.gravity);

    const Eigen::Vector2d com_meas =
        ps.com_pos + config.sensors.com_noise * Eigen::Vector2d(draws[5], draws[6]);
    filter_x = axis_filter_update(filter_x, com_meas.x(), accel_est.x(), config.dt);
    filter_y = axis_filter_update(filter_y, com_meas.y(), accel_est.y(), config.dt);

    const SupportSelection sel =
        select_support(ps.foot_left.position.z(), ps.foot_right.position.z(), support_sign,
                       config.estimator.support_band);
    support_sign = sel.support_sign;

    EstimateInputs est;
    est.com_pos = {filter_x.state[0], filter_y.state[0]};
    est.com_vel = {filter_x.state[1], filter_y.state[1]};
    est.com_acc = {filter_x.state[2], filter_y.state[2]};
    est.com_height = config.com_height;
    est.zmp = {
        zmp_estimate(filter_x.state[0], config.com_height, filter_x.state[2], config.gravity),
        zmp_estimate(filter_y.state[0], config.com_height, filter_y.state[2], config.gravity)};
    est.inertia_orientation = rot_est;
    est.flywheel_sagittal_rate = filter_sag.state[1];
    est.flywheel_lateral_rate = filter_lat.state[1];
    est.flywheel_sagittal_rate2 = filter_sag.state[2];
    est.flywheel_lateral_rate2 = filter_lat.state[2];
    est.support_sign = sel.support_sign;
    est.semi_double = sel.semi_double;

    const ControlCommand cmd = controller.tick(ref, est, gen);
    const Eigen::Vector2d push = config.push_force_at(t);
    plant.step(cmd, push);

    TickRecord rec;
    rec.time = t;
    rec.phase = ref.phase;
    rec.support_sign = ref.support_sign;
    rec.exchanged = ref.support_exchanged;
    rec.ref_com = ref.com_pos;
    rec.ref_vel = ref.com_vel;
    rec.ref_zmp = ref.zmp;
    rec.ref_eos = ref.eos_pos;
    rec.est_com = est.com_pos;
    rec.est_vel = est.com_vel;
    rec.est_acc = est.com_acc;
    rec.est_zmp = est.zmp;
    rec.cmd_com = cmd.com_set;
    rec.cmd_zmp = cmd.zmp_cmd;
    rec.cmd_frequency = cmd.frequency;
    rec.cmd_step_advance = cmd.step_advance;
    rec.fw_cmd_sag = cmd.flywheel_sagittal;
    rec.fw_cmd_lat = cmd.flywheel_lateral;
    const PlantState& after = plant.state();
    rec.fw_sag = after.flywheel_angle[0];
    rec.fw_lat = after.flywheel_angle[1];
    rec.true_com = after.com_pos;
    rec.true_vel = after.com_vel;
    rec.true_zmp = after.zmp;
    rec.foot_left = after.foot_left.position;
    rec.foot_right = after.foot_right.position;
    rec.push = push;
    rec.zmp_saturated = after.zmp_saturated;
    rec.pose_feasible = cmd.pose_feasible;
    rec.fallen = after.fallen;
    log.ticks.push_back(rec);

    if (after.fallen) {
      log.fallen = true;
      log.fall_time = after.time;
      break;
    }
  }
  return log;
}

std::vector<PushBenchRow> push_benchmark(const ScenarioConfig& base,
                                         const std::vector<double>& levels, int trials,
                                         std::uint64_t seed) {
  std::vector<PushBenchRow> rows;
  rows.reserve(levels.size());
  const double settle = 5.0;
  const double recover = 5.0;
  for (size_t li = 0; li < levels.size(); ++li) {
    PushBenchRow row;
    row.impulse = levels[li];
    row.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
      ScenarioConfig config = base;
      config.seed = mix_seed(seed, li + 1, std::uint64_t(trial) + 1);
      std::mt19937_64 rng(mix_seed(seed, 101 + li, std::uint64_t(trial)));
      std::uniform_real_distribution<double> uniform(0.0, 1.0);
      PushEvent push;
      push.time = settle + uniform(rng) / config.frequency;
      const double angle = 2.0 * M_PI * uniform(rng);
      push.direction = {std::cos(angle), std::sin(angle)};
      push.impulse = levels[li];
      push.duration = 0.1;
      config.pushes = {push};
      config.duration = push.time + push.duration + recover;
      const RunLog log = run_scenario(config);
      if (!log.fallen) ++row.survived;
    }
    rows.push_back(row);
  }
  return rows;
}

double max_stable_velocity(const ScenarioConfig& base, double lo, double hi, double resolution,
                           double survive_time) {
  // a velocity counts as stable only when every run of a fixed noise-seed set
  // survives; a single draw makes the frontier a lottery near the cliff
  constexpr std::uint64_t kStabilitySeeds[] = {11, 23, 37, 53, 71};
  const auto survives = [&](double velocity) {
    for (std::uint64_t seed : kStabilitySeeds) {
      ScenarioConfig config = base;
      config.seed = seed;
      config.duration = survive_time;
      config.commands.clear();
      config.commands.push_back({0.0, {}});
      CommandPoint target;
      target.time = 2.0;
      target.command.vx = velocity;
      config.commands.push_back(target);
      if (run_scenario(config).fallen) return false;
    }
    return true;
  };

  if (!survives(lo)) return 0.0;
  if (survives(hi)) return hi;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (survives(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace centro
