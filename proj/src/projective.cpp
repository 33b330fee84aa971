#include "geoctl/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "geoctl/errors.hpp"
#include "geoctl/lie_closure.hpp"
#include "geoctl/parallel.hpp"

namespace geoctl::projective {

namespace {

constexpr double kSignThreshold = 1e-12;

double proj_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::min((a - b).norm(), (a + b).norm());
}

Eigen::VectorXd random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = normal(rng);
  } while (v.norm() < 1e-8);
  return v.normalized();
}

// Points of C; a fraction `boundary_fraction` on {|<v, e1>| = 1/sqrt(n)}.
std::vector<Eigen::VectorXd> sample_c(int n, int count, std::uint64_t seed,
                                      double boundary_fraction) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const DomeC c = dome_c(n);
  std::vector<Eigen::VectorXd> out;
  while (static_cast<int>(out.size()) < count) {
    if (unit(rng) < boundary_fraction) {
      Eigen::VectorXd v(n);
      v(0) = c.level();
      v.tail(n - 1) = random_unit(n - 1, rng) * std::sqrt(1.0 - c.level() * c.level());
      out.push_back(canonicalize(v));
      continue;
    }
    Eigen::VectorXd v = random_unit(n, rng);
    while (!c.contains(v, 0.0)) v = random_unit(n, rng);
    out.push_back(canonicalize(v));
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string describe(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ')';
  return os.str();
}

}  // namespace

Eigen::VectorXd canonicalize(Eigen::VectorXd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kSignThreshold) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
  return v;
}

ProjPoint::ProjPoint(const Eigen::VectorXd& v) {
  const double n = v.norm();
  if (!(n > 1e-14) || !std::isfinite(n)) {
    throw Error(ErrorCode::kDegeneratePoint, "projective point needs a nonzero finite vector");
  }
  v_ = canonicalize(v / n);
}

bool ProjPoint::equals(const ProjPoint& other, double tol) const {
  return v_.size() == other.v_.size() && proj_distance(v_, other.v_) <= tol;
}

void ProjSystem::validate() const {
  constexpr double tol = 1e-12;
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::kConfiguration, "A must be n x n");
  }
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > tol || std::abs(a.trace()) > tol) {
    throw Error(ErrorCode::kConfiguration, "A must be symmetric and traceless");
  }
  for (const auto& bi : b) {
    if (bi.rows() != n || bi.cols() != n || (bi + bi.transpose()).cwiseAbs().maxCoeff() > tol ||
        bi.row(0).cwiseAbs().maxCoeff() > tol || bi.col(0).cwiseAbs().maxCoeff() > tol) {
      throw Error(ErrorCode::kConfiguration, "B_i must be diag(0, X_i) with X_i skew");
    }
  }
  range.validate();
  if (range.dim() != static_cast<int>(b.size())) {
    throw Error(ErrorCode::kConfiguration, "control range dimension differs from m");
  }
}

Eigen::MatrixXd ProjSystem::frozen(std::span<const double> u) const {
  if (!range.contains(u)) {
    throw Error(ErrorCode::kControlRange, "control outside the range");
  }
  Eigen::MatrixXd m = a;
  for (std::size_t i = 0; i < b.size(); ++i) m += u[i] * b[i];
  return m;
}

Eigen::VectorXd induced_field(const Eigen::MatrixXd& m, const Eigen::VectorXd& x) {
  const Eigen::VectorXd mx = m * x;
  return mx - mx.dot(x) * x;
}

ProjSystem build_example(int n, const Eigen::VectorXd& w) {
  if (n < 3) {
    throw Error(ErrorCode::kConfiguration, "the example needs n >= 3");
  }
  if (w.size() != n - 1) {
    throw Error(ErrorCode::kConfiguration, "w must have n - 1 entries");
  }
  if (std::abs(w.squaredNorm() - (1.0 - 1.0 / n)) > 1e-12) {
    throw Error(ErrorCode::kConfiguration, "w must satisfy 1/n + |w|^2 = 1");
  }
  ProjSystem s;
  s.n = n;
  s.v0.resize(n);
  s.v0(0) = 1.0 / std::sqrt(static_cast<double>(n));
  s.v0.tail(n - 1) = w;
  s.a = sym_embed(s.v0);
  for (int j = 1; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Eigen::MatrixXd bi = Eigen::MatrixXd::Zero(n, n);
      bi(j, k) = 1.0;
      bi(k, j) = -1.0;
      s.b.push_back(bi);
    }
  }
  s.range = ControlRange::box(static_cast<int>(s.b.size()), -1.0, 1.0);
  return s;
}

Eigen::VectorXd default_w(int n) {
  return Eigen::VectorXd::Constant(std::max(n - 1, 0), 1.0 / std::sqrt(static_cast<double>(n)));
}

Eigen::MatrixXd sym_embed(const Eigen::VectorXd& v) {
  const auto n = v.size();
  return v * v.transpose() - Eigen::MatrixXd::Identity(n, n) / static_cast<double>(n);
}

double sym_inner(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w) { return (v * w).trace(); }

double DomeC::level() const { return 1.0 / std::sqrt(static_cast<double>(n)); }

bool DomeC::contains(const Eigen::VectorXd& v, double tol) const {
  return exit_depth(v) <= tol;
}

double DomeC::exit_depth(const Eigen::VectorXd& v) const { return level() - std::abs(v(0)); }

DomeC dome_c(int n) {
  if (n < 2) {
    throw Error(ErrorCode::kArgument, "dome C needs n >= 2");
  }
  return DomeC{n};
}

LarcResult larc_check_example(const ProjSystem& system) {
  std::vector<Eigen::MatrixXd> gens{system.a};
  gens.insert(gens.end(), system.b.begin(), system.b.end());
  LarcResult r;
  r.expected = system.n * system.n - 1;
  r.rank = lie_closure_dimension(gens, r.expected);
  r.w_is_zero = system.v0.tail(system.n - 1).norm() <= 1e-12;
  return r;
}

Eigen::VectorXd rk4_step(const Eigen::MatrixXd& m, const Eigen::VectorXd& x, double h) {
  const Eigen::VectorXd k1 = induced_field(m, x);
  const Eigen::VectorXd k2 = induced_field(m, x + 0.5 * h * k1);
  const Eigen::VectorXd k3 = induced_field(m, x + 0.5 * h * k2);
  const Eigen::VectorXd k4 = induced_field(m, x + h * k3);
  return (x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).normalized();
}

Eigen::VectorXd flow(const Eigen::MatrixXd& m, const Eigen::VectorXd& x0, double t, double h) {
  if (!(h > 0.0) || !(t >= 0.0)) {
    throw Error(ErrorCode::kArgument, "flow needs h > 0 and t >= 0");
  }
  Eigen::VectorXd x = x0.normalized();
  if (t == 0.0) return x;
  const auto steps = static_cast<int>(std::max(1.0, std::ceil(t / h - 1e-9)));
  for (int k = 0; k < steps; ++k) x = rk4_step(m, x, t / steps);
  return x;
}

std::optional<Eigen::VectorXd> attractor(const Eigen::MatrixXd& m) {
  const Eigen::EigenSolver<Eigen::MatrixXd> eig(m);
  const auto& values = eig.eigenvalues();
  Eigen::Index top = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values(i).real() > values(top).real()) top = i;
  }
  if (std::abs(values(top).imag()) > 1e-9) return std::nullopt;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i != top && values(top).real() - values(i).real() <= 1e-9) return std::nullopt;
  }
  const Eigen::VectorXd v = eig.eigenvectors().col(top).real();
  return canonicalize(v.normalized());
}

void walk_schedule(const ProjSystem& system, const Eigen::VectorXd& x0, const Schedule& schedule,
                   const SamplingOptions& options,
                   const std::function<bool(double, const Eigen::VectorXd&)>& visit) {
  const double dt = options.record_dt;
  double t_begin = 0.0;
  Eigen::VectorXd x = x0;
  for (const auto& seg : schedule) {
    const Eigen::MatrixXd m = system.frozen(seg.u);
    const double t_end = t_begin + seg.duration;
    double t_cur = t_begin;
    auto advance = [&](double t) {
      const double span = t - t_cur;
      const auto n = static_cast<int>(std::max(1.0, std::ceil(span / options.step - 1e-9)));
      for (int k = 0; k < n; ++k) x = rk4_step(m, x, span / n);
      t_cur = t;
    };
    for (auto k = static_cast<long long>(std::floor(t_begin / dt)) + 1;; ++k) {
      const double t = static_cast<double>(k) * dt;
      if (t >= t_end - 1e-12) break;
      if (t <= t_begin) continue;
      advance(t);
      if (!visit(t, canonicalize(x))) return;
    }
    advance(t_end);
    if (!visit(t_end, canonicalize(x))) return;
    t_begin = t_end;
  }
}

IcsReport verify_example_ics(const ProjSystem& system, const ExampleIcsOptions& options) {
  system.validate();
  const int n = system.n;
  const DomeC c = dome_c(n);
  IcsReport report;

  {
    ConditionResult& r = report.invariance;
    r.name = "invariance";
    r.tolerance = options.invariance_tol;
    r.checked = options.invariance_trials;
    const auto starts = sample_c(n, options.invariance_trials, derive_seed(options.seed, 1), 0.5);
    const std::uint64_t schedule_seed = derive_seed(options.seed, 2);
    std::vector<double> worst(starts.size(), -std::numeric_limits<double>::infinity());
    std::vector<Eigen::VectorXd> witness(starts.size());
    parallel_for(starts.size(), [&](std::size_t i) {
      worst[i] = c.exit_depth(starts[i]);
      const Schedule s = draw_schedule(system.range, options.invariance_horizon, schedule_seed, i,
                                       options.sampling);
      walk_schedule(system, starts[i], s, options.sampling, [&](double, const Eigen::VectorXd& p) {
        const double d = c.exit_depth(p);
        if (d > worst[i]) {
          worst[i] = d;
          witness[i] = p;
        }
        return true;
      });
    });
    r.worst = *std::max_element(worst.begin(), worst.end());
    for (std::size_t i = 0; i < starts.size(); ++i) {
      if (worst[i] > r.tolerance) {
        r.passed = false;
        if (r.failures.size() < 10) {
          r.failures.push_back("start " + describe(starts[i]) + " reaches " + describe(witness[i]) +
                               ", exit depth " + fmt(worst[i]));
        }
      }
    }
  }

  {
    ConditionResult& r = report.reachability;
    r.name = "reachability";
    r.tolerance = options.delta;
    const auto grid = sample_c(n, options.grid, derive_seed(options.seed, 3), 0.5);
    const std::uint64_t cloud_seed = derive_seed(options.seed, 4);
    for (std::size_t a = 0; a < grid.size(); ++a) {
      std::vector<std::vector<double>> per(static_cast<std::size_t>(options.samples),
                                           std::vector<double>(grid.size(),
                                                               std::numeric_limits<double>::infinity()));
      parallel_for(per.size(), [&](std::size_t i) {
        const Schedule s = draw_schedule(system.range, options.horizon, derive_seed(cloud_seed, a), i,
                                         options.sampling);
        walk_schedule(system, grid[a], s, options.sampling, [&](double, const Eigen::VectorXd& p) {
          for (std::size_t b = 0; b < grid.size(); ++b) {
            per[i][b] = std::min(per[i][b], proj_distance(p, grid[b]));
          }
          return true;
        });
      });
      for (std::size_t b = 0; b < grid.size(); ++b) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& row : per) d = std::min(d, row[b]);
        ++r.checked;
        r.worst = std::max(r.worst, d);
        if (d > r.tolerance) {
          r.passed = false;
          r.failures.push_back("from " + describe(grid[a]) + " to " + describe(grid[b]) +
                               ": distance " + fmt(d));
        }
      }
    }
  }

  {
    ConditionResult& r = report.attraction;
    r.name = "attraction";
    r.tolerance = options.attraction_tol;
    std::mt19937_64 rng(derive_seed(options.seed, 5));
    std::vector<Eigen::VectorXd> starts;
    for (int i = 0; i < options.attraction_grid; ++i) starts.push_back(canonicalize(random_unit(n, rng)));
    const std::uint64_t schedule_seed = derive_seed(options.seed, 6);
    std::vector<double> closest(starts.size());
    parallel_for(starts.size(), [&](std::size_t i) {
      double best = c.exit_depth(starts[i]);
      for (int s = 0; s < options.samples && best > r.tolerance; ++s) {
        const Schedule sched = draw_schedule(system.range, options.horizon, schedule_seed,
                                             static_cast<std::uint64_t>(s), options.sampling);
        walk_schedule(system, starts[i], sched, options.sampling, [&](double, const Eigen::VectorXd& p) {
          best = std::min(best, c.exit_depth(p));
          return best > r.tolerance;
        });
      }
      closest[i] = best;
    });
    r.checked = static_cast<int>(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) {
      r.worst = std::max(r.worst, closest[i]);
      if (closest[i] > r.tolerance) {
        r.passed = false;
        r.failures.push_back("from " + describe(starts[i]) + ": closest exit depth " + fmt(closest[i]));
      }
    }
  }

  {
    ConditionResult r;
    r.name = "b_flow_invariance";
    r.tolerance = options.b_flow_tol;
    std::mt19937_64 rng(derive_seed(options.seed, 7));
    for (std::size_t i = 0; i < system.b.size(); ++i) {
      for (int k = 0; k < options.b_flow_trials; ++k) {
        const Eigen::VectorXd v = random_unit(n, rng);
        const Eigen::VectorXd vt = flow(system.b[i], v, options.b_flow_time);
        const double drift = std::abs(vt(0) - v(0));
        ++r.checked;
        r.worst = std::max(r.worst, drift);
        if (drift > r.tolerance) {
          r.passed = false;
          r.failures.push_back("B_" + std::to_string(i + 1) + " from " + describe(v) + ": drift " +
                               fmt(drift));
        }
      }
    }
    report.extra.push_back(std::move(r));
  }
  return report;
}

BoundarySweep boundary_sweep(const ProjSystem& system, std::span<const ControlValue> controls) {
  BoundarySweep out;
  for (const auto& u : controls) {
    const auto v = attractor(system.frozen(u));
    if (!v) {
      ++out.skipped;
      continue;
    }
    out.controls.push_back(u);
    out.attractors.push_back(*v);
    out.first_coordinate.push_back(std::abs((*v)(0)));
  }
  return out;
}

std::vector<ControlValue> control_grid(const ProjSystem& system, int per_axis) {
  const auto* box = std::get_if<ControlRange::Box>(&system.range.variant());
  if (box == nullptr || per_axis < 1) {
    throw Error(ErrorCode::kArgument, "control_grid needs a box range and per_axis >= 1");
  }
  const auto m = static_cast<std::size_t>(box->dim);
  std::vector<ControlValue> out;
  std::vector<int> idx(m, 0);
  const auto value = [&](int k) {
    return per_axis == 1 ? 0.5 * (box->lo + box->hi)
                         : box->lo + (box->hi - box->lo) * k / (per_axis - 1);
  };
  for (;;) {
    ControlValue u(m);
    for (std::size_t a = 0; a < m; ++a) u[a] = value(idx[a]);
    out.push_back(std::move(u));
    std::size_t a = 0;
    while (a < m && ++idx[a] == per_axis) idx[a++] = 0;
    if (a == m) break;
  }
  return out;
}

}  // namespace geoctl::projective
