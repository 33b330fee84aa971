#include "geoctl/cases.hpp"

#include <cmath>

#include "geoctl/csv_io.hpp"
#include "geoctl/errors.hpp"

namespace geoctl {

namespace {

void require_nonzero(const PureQuaternion& z, const char* name) {
  if (!(z.norm() > 1e-12)) {
    throw Error(ErrorCode::kFixture, std::string(name) + " must be a nonzero pure quaternion");
  }
}

UnitQuaternion attractor_of(const Quaternion& q) { return UnitQuaternion::normalize(q); }

std::vector<Singularity> extreme_attractors(const ControlSystem& system) {
  const auto extremes = system.range.extreme_points();
  return attractor_sweep(system, extremes).attractors;
}

}  // namespace

std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::kI: return "i";
    case CaseId::kIPrime: return "i_prime";
    case CaseId::kII: return "ii";
    case CaseId::kIIPrime: return "ii_prime";
    case CaseId::kIII: return "iii";
  }
  return "?";
}

CaseId parse_case_id(std::string_view s) {
  if (s == "i") return CaseId::kI;
  if (s == "i_prime" || s == "i'") return CaseId::kIPrime;
  if (s == "ii") return CaseId::kII;
  if (s == "ii_prime" || s == "ii'") return CaseId::kIIPrime;
  if (s == "iii") return CaseId::kIII;
  throw Error(ErrorCode::kArgument, "unknown case id \"" + std::string(s) + "\"");
}

CaseStudy make_case(CaseId id, const CaseOverrides& o) {
  const Quaternion one(1.0);
  CaseStudy c{id, {}, {SphericalRegion::full_sphere(), {}}};
  c.system.drift = FieldSpec::symmetric(one);
  switch (id) {
    case CaseId::kI:
    case CaseId::kIPrime: {
      const PureQuaternion z = o.z.value_or(PureQuaternion{1, 0, 0});
      require_nonzero(z, "z");
      c.system.controls = {FieldSpec::symmetric(z)};
      c.system.range = id == CaseId::kI ? ControlRange::box(1, -1.0, 1.0)
                                        : ControlRange::finite({{-1.0}, {1.0}});
      c.expected.region = SphericalRegion::segment(attractor_of(one + z), attractor_of(one - z));
      break;
    }
    case CaseId::kII:
    case CaseId::kIIPrime: {
      const PureQuaternion z1 = o.z1.value_or(PureQuaternion{1, 0, 0});
      const PureQuaternion z2 = o.z2.value_or(PureQuaternion{0, 1, 0});
      require_nonzero(z1, "z1");
      require_nonzero(z2, "z2");
      c.system.controls = {FieldSpec::symmetric(z1), FieldSpec::symmetric(z2)};
      std::vector<UnitQuaternion> gens{attractor_of(one)};
      if (id == CaseId::kIIPrime) {
        if (z1.cross(z2).norm() <= 1e-12 * z1.norm() * z2.norm()) {
          throw Error(ErrorCode::kFixture,
                      "p1, p2 and 1 lie on one great circle (z1 parallel to z2)");
        }
        c.system.range = ControlRange::finite({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
        gens.push_back(attractor_of(one + z1));
        gens.push_back(attractor_of(one + z2));
      } else if (o.symmetric_box) {
        c.system.range = ControlRange::box(2, -1.0, 1.0);
        for (const double su : {1.0, -1.0}) {
          for (const double sv : {1.0, -1.0}) gens.push_back(attractor_of(one + z1 * su + z2 * sv));
        }
      } else {
        c.system.range = ControlRange::box(2, 0.0, 1.0);
        gens.push_back(attractor_of(one + z1));
        gens.push_back(attractor_of(one + z2));
        gens.push_back(attractor_of(one + z1 + z2));
      }
      c.expected.region = SphericalRegion::hull(std::move(gens));
      break;
    }
    case CaseId::kIII: {
      const double r = o.radius.value_or(1.0);
      if (!(r > 0.0) || !std::isfinite(r)) {
        throw Error(ErrorCode::kFixture, "case iii needs a positive radius");
      }
      c.system.controls = {FieldSpec::symmetric(Quaternion::i()), FieldSpec::symmetric(Quaternion::j()),
                           FieldSpec::symmetric(Quaternion::k())};
      c.system.range = ControlRange::ball(3, r);
      c.expected.region = SphericalRegion::dome(UnitQuaternion{}, 1.0 / std::sqrt(1.0 + r * r));
      break;
    }
  }
  c.system.validate();
  c.expected.attractor_set = extreme_attractors(c.system);
  c.expected.validate();
  return c;
}

CaseRun run_case(CaseId id, const CaseOverrides& o) {
  CaseRun run{make_case(id, o), {}, {}, {}, {}};
  run.report = verify_ics(run.study.system, run.study.expected, o.verify);
  run.cloud = sample_positive_orbit(run.study.system, UnitQuaternion{}, o.cloud_horizon,
                                    o.cloud_samples, o.verify.seed);
  const auto extremes = run.study.system.range.extreme_points();
  run.sweep = attractor_sweep(run.study.system, extremes);
  run.boundary = boundary_points(run.study.expected.region, 256);
  return run;
}

io::Report case_report(const CaseRun& run) {
  io::Report r;
  r.command = "case";
  r.add(run.report);
  r.data["case"] = std::string(to_string(run.study.id));
  r.data["system"] = io::to_json(run.study.system);
  r.data["expected_region"] = io::to_json(run.study.expected.region);
  r.data["cloud_points"] = run.cloud.points.size();
  r.data["sweep_attractors"] = run.sweep.attractors.size();
  r.data["boundary_points"] = run.boundary.size();
  return r;
}

void export_case(const CaseRun& run, const std::filesystem::path& dir) {
  case_report(run).write(dir / "report.json");
  io::points_table(run.cloud.points).write(dir / "cloud.csv");
  io::points_table(run.boundary).write(dir / "boundary.csv");
  std::vector<UnitQuaternion> sweep;
  for (const auto& s : run.sweep.attractors) sweep.push_back(s.point);
  io::points_table(sweep).write(dir / "sweep.csv");
}

}  // namespace geoctl
