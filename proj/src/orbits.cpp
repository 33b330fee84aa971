#include "geoctl/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "geoctl/errors.hpp"
#include "geoctl/flow.hpp"
#include "geoctl/parallel.hpp"

namespace geoctl {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}


std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::string describe(const Quaternion& p) {
  std::ostringstream os;
  os << std::setprecision(6) << '(' << p.w << ", " << p.x << ", " << p.y << ", " << p.z << ')';
  return os.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

void check_sampling(double horizon, int samples) {
  if (!(horizon > 0.0) || !std::isfinite(horizon) || samples < 1) {
    throw Error(ErrorCode::kArgument, "orbit sampling needs horizon > 0 and samples >= 1");
  }
}

// Repellers -q(u)/|q(u)| of the extreme frozen fields of a symmetric system.
std::vector<UnitQuaternion> extreme_repellers(const ControlSystem& system) {
  std::vector<UnitQuaternion> out;
  if (!system.is_symmetric()) return out;
  for (const auto& u : system.range.extreme_points()) {
    const Quaternion q = system.frozen_unchecked(u).q;
    if (q.norm() > 1e-12) out.push_back(-symmetric_attractor(q));
  }
  return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) { return splitmix(seed ^ splitmix(tag)); }

Schedule draw_schedule(const ControlRange& range, double horizon, std::uint64_t seed,
                       std::uint64_t index, const SamplingOptions& options) {
  std::mt19937_64 rng = stream_rng(seed, index);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::poisson_distribution<int> switches(options.mean_switches);
  const double total = horizon * (1.0 - unit(rng));
  const int segments = switches(rng) + 1;
  std::vector<double> cuts(static_cast<std::size_t>(segments - 1));
  for (auto& c : cuts) c = unit(rng);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(1.0);

  Schedule s;
  double previous = 0.0;
  for (const double c : cuts) {
    ControlValue u = range.sample(rng);
    const double duration = (c - previous) * total;
    previous = c;
    if (duration > 0.0) s.push_back({duration, std::move(u)});
  }
  return s;
}

void walk_schedule(const ControlSystem& system, const UnitQuaternion& x0,
                   const Schedule& schedule, const SamplingOptions& options,
                   const std::function<bool(double, const UnitQuaternion&)>& visit) {
  const double dt = options.record_dt;
  double t_begin = 0.0;
  UnitQuaternion x_begin = x0;
  for (const auto& seg : schedule) {
    const FieldSpec field = system.frozen(seg.u);
    const double t_end = t_begin + seg.duration;
    const bool exact = field.is_symmetric();
    UnitQuaternion cur = x_begin;
    double t_cur = t_begin;
    auto advance = [&](double t) {
      if (exact) return symmetric_flow(field.q, x_begin, t - t_begin);
      const double span = t - t_cur;
      const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(span / options.step - 1e-9)));
      for (std::size_t k = 0; k < n; ++k) cur = rk4_step(field, cur, span / static_cast<double>(n));
      t_cur = t;
      return cur;
    };
    for (auto k = static_cast<long long>(std::floor(t_begin / dt)) + 1;; ++k) {
      const double t = static_cast<double>(k) * dt;
      if (t >= t_end - 1e-12) break;
      if (t <= t_begin) continue;
      if (!visit(t, advance(t))) return;
    }
    x_begin = advance(t_end);
    if (!visit(t_end, x_begin)) return;
    t_begin = t_end;
  }
}

ReachCloud cloud_from_schedules(const ControlSystem& system, const UnitQuaternion& x0,
                                std::vector<Schedule> schedules,
                                const SamplingOptions& options) {
  system.validate();
  std::vector<std::vector<std::pair<double, UnitQuaternion>>> per(schedules.size());
  parallel_for(schedules.size(), [&](std::size_t i) {
    walk_schedule(system, x0, schedules[i], options, [&](double t, const UnitQuaternion& p) {
      per[i].emplace_back(t, p);
      return true;
    });
  });
  ReachCloud cloud;
  cloud.source = x0;
  cloud.samples = static_cast<int>(schedules.size());
  for (const auto& s : schedules) cloud.horizon = std::max(cloud.horizon, schedule_duration(s));
  for (std::size_t i = 0; i < per.size(); ++i) {
    for (const auto& [t, p] : per[i]) {
      cloud.points.push_back(p);
      cloud.schedule_of_point.push_back(i);
      cloud.time_of_point.push_back(t);
    }
  }
  cloud.schedules = std::move(schedules);
  return cloud;
}

ReachCloud sample_positive_orbit(const ControlSystem& system, const UnitQuaternion& x0,
                                 double horizon, int samples, std::uint64_t seed,
                                 const SamplingOptions& options) {
  check_sampling(horizon, samples);
  system.validate();
  std::vector<Schedule> schedules(static_cast<std::size_t>(samples));
  for (std::size_t i = 0; i < schedules.size(); ++i) {
    schedules[i] = draw_schedule(system, horizon, seed, i, options);
  }
  ReachCloud cloud = cloud_from_schedules(system, x0, std::move(schedules), options);
  cloud.horizon = horizon;
  cloud.seed = seed;
  return cloud;
}

double spot_check_cloud(const ControlSystem& system, const ReachCloud& cloud, double fraction,
                        std::uint64_t seed) {
  if (cloud.points.empty()) return 0.0;
  const auto n = cloud.points.size();
  const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(n)));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> chosen(count);
  for (auto& c : chosen) c = pick(rng);
  std::vector<double> dev(count, 0.0);
  parallel_for(count, [&](std::size_t k) {
    const std::size_t idx = chosen[k];
    const Schedule prefix =
        truncate_schedule(cloud.schedules.at(cloud.schedule_of_point[idx]), cloud.time_of_point[idx]);
    const Trajectory traj = integrate_switched(system, cloud.source, prefix, 1e-3);
    dev[k] = distance(traj.back().value(), cloud.points[idx].value());
  });
  return *std::max_element(dev.begin(), dev.end());
}

std::vector<double> approach_distances(const ControlSystem& system, const UnitQuaternion& x0,
                                       std::span<const UnitQuaternion> targets, double horizon,
                                       int samples, std::uint64_t seed,
                                       const SamplingOptions& options) {
  check_sampling(horizon, samples);
  system.validate();
  const std::size_t m = targets.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> per(static_cast<std::size_t>(samples), std::vector<double>(m, inf));
  parallel_for(per.size(), [&](std::size_t i) {
    const Schedule s = draw_schedule(system, horizon, seed, i, options);
    auto& best = per[i];
    walk_schedule(system, x0, s, options, [&](double, const UnitQuaternion& p) {
      for (std::size_t j = 0; j < m; ++j) {
        best[j] = std::min(best[j], distance(p.value(), targets[j].value()));
      }
      return true;
    });
  });
  std::vector<double> out(m, inf);
  for (const auto& row : per) {
    for (std::size_t j = 0; j < m; ++j) out[j] = std::min(out[j], row[j]);
  }
  return out;
}

void ICSCandidate::validate() const {
  region.validate();
  for (const auto& a : attractor_set) {
    if (!contains(region, a.point, kMembershipTol)) {
      throw Error(ErrorCode::kConfiguration,
                  "attractor " + describe(a.point.value()) + " lies outside the candidate region");
    }
  }
}

double verify_invariance(const ControlSystem& system, const SphericalRegion& region, int trials,
                         std::uint64_t seed, double horizon, const SamplingOptions& options) {
  if (trials < 1) return -std::numeric_limits<double>::infinity();
  system.validate();
  const auto starts = sample_region(region, trials, derive_seed(seed, 11), 0.5);
  const std::uint64_t schedule_seed = derive_seed(seed, 12);
  std::vector<double> worst(starts.size(), -std::numeric_limits<double>::infinity());
  parallel_for(starts.size(), [&](std::size_t i) {
    double w = exit_depth(region, starts[i]);
    const Schedule s = draw_schedule(system, horizon, schedule_seed, i, options);
    walk_schedule(system, starts[i], s, options, [&](double, const UnitQuaternion& p) {
      w = std::max(w, exit_depth(region, p));
      return true;
    });
    worst[i] = w;
  });
  return *std::max_element(worst.begin(), worst.end());
}

bool IcsReport::passed() const {
  const auto all = conditions();
  return std::all_of(all.begin(), all.end(), [](const ConditionResult* c) { return c->passed; });
}

std::vector<const ConditionResult*> IcsReport::conditions() const {
  std::vector<const ConditionResult*> out{&invariance, &reachability, &attraction};
  for (const auto& e : extra) out.push_back(&e);
  return out;
}

std::vector<UnitQuaternion> region_grid(const SphericalRegion& region, int n, std::uint64_t seed) {
  if (const auto* seg = std::get_if<SphericalRegion::Segment>(&region.variant())) {
    return geodesic_segment_points(seg->p1, seg->p2, std::max(n, 2));
  }
  return sample_region(region, n, seed, 0.5);
}

IcsReport verify_ics(const ControlSystem& system, const ICSCandidate& candidate,
                     const VerifyIcsOptions& options) {
  system.validate();
  const SphericalRegion& region = candidate.region;
  IcsReport report;

  // (a) invariance
  {
    ConditionResult& c = report.invariance;
    c.name = "invariance";
    c.tolerance = options.invariance_tol;
    c.checked = options.invariance_trials;
    c.worst = verify_invariance(system, region, options.invariance_trials,
                                derive_seed(options.seed, 1), options.invariance_horizon,
                                options.sampling);
    if (c.worst > c.tolerance) {
      c.passed = false;
      c.failures.push_back("exit depth " + fmt(c.worst) + " exceeds " + fmt(c.tolerance));
    }
  }

  // (b) approximate reachability between region points
  {
    ConditionResult& c = report.reachability;
    c.name = "reachability";
    c.tolerance = options.delta;
    const auto grid = region_grid(region, options.grid, derive_seed(options.seed, 2));
    const std::uint64_t cloud_seed = derive_seed(options.seed, 3);
    for (std::size_t a = 0; a < grid.size(); ++a) {
      const auto d = approach_distances(system, grid[a], grid, options.horizon, options.samples,
                                        splitmix(cloud_seed + a), options.sampling);
      for (std::size_t b = 0; b < grid.size(); ++b) {
        ++c.checked;
        c.worst = std::max(c.worst, d[b]);
        if (d[b] > c.tolerance) {
          c.passed = false;
          c.failures.push_back("from " + describe(grid[a].value()) + " to " +
                               describe(grid[b].value()) + ": distance " + fmt(d[b]));
        }
      }
    }
  }

  // (c) attraction from a global grid
  {
    ConditionResult& c = report.attraction;
    c.name = "attraction";
    c.tolerance = options.attraction_tol;
    const auto repellers = extreme_repellers(system);
    std::vector<UnitQuaternion> starts;
    const auto pool = sample_sphere(std::max(1, options.attraction_grid) * 8, derive_seed(options.seed, 4));
    for (const auto& p : pool) {
      if (static_cast<int>(starts.size()) >= options.attraction_grid) break;
      const bool near_repeller = std::any_of(repellers.begin(), repellers.end(), [&](const UnitQuaternion& r) {
        return distance(p.value(), r.value()) < options.repeller_exclusion;
      });
      if (!near_repeller) starts.push_back(p);
    }
    const std::uint64_t schedule_seed = derive_seed(options.seed, 5);
    std::vector<double> closest(starts.size(), std::numeric_limits<double>::infinity());
    parallel_for(starts.size(), [&](std::size_t i) {
      double best = exit_depth(region, starts[i]);
      for (int s = 0; s < options.samples && best > c.tolerance; ++s) {
        const Schedule sched = draw_schedule(system, options.horizon, schedule_seed,
                                             static_cast<std::uint64_t>(s), options.sampling);
        walk_schedule(system, starts[i], sched, options.sampling, [&](double, const UnitQuaternion& p) {
          best = std::min(best, exit_depth(region, p));
          return best > c.tolerance;
        });
      }
      closest[i] = best;
    });
    c.checked = static_cast<int>(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) {
      c.worst = std::max(c.worst, closest[i]);
      if (closest[i] > c.tolerance) {
        c.passed = false;
        c.failures.push_back("from " + describe(starts[i].value()) + ": closest exit depth " +
                             fmt(closest[i]));
      }
    }
  }
  return report;
}

AttractorSweep attractor_sweep(const ControlSystem& system,
                               std::span<const ControlValue> control_grid) {
  if (!system.is_symmetric()) {
    throw Error(ErrorCode::kConfiguration, "attractor_sweep needs symmetric drift and controls");
  }
  AttractorSweep out;
  for (const auto& u : control_grid) {
    const Quaternion q = system.frozen(u).q;
    if (q.norm() <= 1e-12) {
      ++out.skipped;
      continue;
    }
    out.attractors.push_back({symmetric_attractor(q), SingularityKind::kAttractor});
    out.controls.push_back(u);
  }
  return out;
}

}  // namespace geoctl
