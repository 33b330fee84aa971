// geoctl: command-line front end for the geoctl library.
//
// Exit codes: 0 when every check passes, 1 when some check fails, 2 for usage,
// configuration and I/O errors.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geoctl/cases.hpp"
#include "geoctl/csv_io.hpp"
#include "geoctl/errors.hpp"
#include "geoctl/flow.hpp"
#include "geoctl/json_io.hpp"
#include "geoctl/lie_so14.hpp"
#include "geoctl/orbits.hpp"
#include "geoctl/projective.hpp"
#include "geoctl/report.hpp"

namespace fs = std::filesystem;
using geoctl::io::Json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::string out_dir = ".";
  bool json = false;
};

int finish(const geoctl::io::Report& report, const Globals& g, bool write_file) {
  if (write_file) report.write(fs::path(g.out_dir) / "report.json");
  if (g.json) {
    std::cout << report.to_json().dump(2) << '\n';
  } else {
    for (const auto& c : report.checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  worst=" << c.worst
                << " tol=" << c.tolerance << " checked=" << c.checked << '\n';
      for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k) std::cout << "    " << c.failures[k] << '\n';
    }
    std::cout << (report.passed() ? "overall: PASS" : "overall: FAIL") << '\n';
  }
  return report.passed() ? 0 : 1;
}

geoctl::UnitQuaternion parse_point(const std::string& arg) {
  return geoctl::io::unit_from_json(geoctl::io::load_json_arg(arg));
}

geoctl::PureQuaternion parse_pure(const std::string& arg) {
  return geoctl::io::pure_from_json(geoctl::io::load_json_arg(arg));
}

std::vector<geoctl::So14Matrix> parse_generators(const std::string& arg) {
  const Json j = geoctl::io::load_json_arg(arg);
  if (!j.is_array()) throw geoctl::Error(geoctl::ErrorCode::kArgument, "generators must be a JSON array");
  std::vector<geoctl::So14Matrix> out;
  for (const auto& e : j) {
    out.push_back(e.is_object() ? geoctl::to_matrix(geoctl::io::field_from_json(e))
                                : geoctl::io::so14_from_json(e));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant control sets of quaternionic vector fields on S^3"};
  // "--h" is the RK4 step of simulate, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "Reachability radius delta for verification commands");
  app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();
  app.add_flag("--json", g.json, "Print the report as JSON");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Integrate one induced field (CSV t,w,x,y,z)");
  std::string field_arg, x0_arg = "[1,0,0,0]", sim_out;
  double t_final = 1.0, h = geoctl::kDefaultStep;
  sim->add_option("--field", field_arg, "FieldSpec JSON (file or inline)")->required();
  sim->add_option("--x0", x0_arg, "Initial point [w,x,y,z]")->capture_default_str();
  sim->add_option("--t", t_final, "Final time")->capture_default_str();
  sim->add_option("--h", h, "RK4 step")->capture_default_str();
  sim->add_option("--out", sim_out, "CSV path (default <out-dir>/trajectory.csv)");

  // attractors
  auto* att = app.add_subcommand("attractors", "Attractors of the frozen fields of a symmetric system");
  std::string system_arg, controls_arg, att_out;
  att->add_option("--system", system_arg, "ControlSystem JSON")->required();
  att->add_option("--controls", controls_arg, "JSON list of controls (default: extreme controls)");
  att->add_option("--out", att_out, "CSV path (default <out-dir>/attractors.csv)");

  // reachable
  auto* reach = app.add_subcommand("reachable", "Sample the positive orbit of a point (CSV w,x,y,z)");
  double horizon = 10.0;
  int samples = 200;
  std::string reach_out;
  std::string reach_system, reach_x0 = "[1,0,0,0]";
  reach->add_option("--system", reach_system, "ControlSystem JSON")->required();
  reach->add_option("--x0", reach_x0, "Initial point [w,x,y,z]")->capture_default_str();
  reach->add_option("--horizon", horizon, "Maximal schedule length")->capture_default_str();
  reach->add_option("--samples", samples, "Number of random schedules")->capture_default_str();
  reach->add_option("--out", reach_out, "CSV path (default <out-dir>/cloud.csv)");

  // verify-ics
  auto* ver = app.add_subcommand("verify-ics", "Check a candidate invariant control set");
  std::string ver_system, candidate_arg;
  geoctl::VerifyIcsOptions vopt;
  ver->add_option("--system", ver_system, "ControlSystem JSON")->required();
  ver->add_option("--candidate", candidate_arg, "SphericalRegion JSON")->required();
  ver->add_option("--grid", vopt.grid, "Region grid size")->capture_default_str();
  ver->add_option("--horizon", vopt.horizon, "Schedule horizon")->capture_default_str();
  ver->add_option("--samples", vopt.samples, "Schedules per cloud")->capture_default_str();

  // larc
  auto* larc = app.add_subcommand("larc", "Rank and basis of the Lie algebra generated in so(1,4)");
  std::string gens_arg;
  larc->add_option("--generators", gens_arg, "JSON list of FieldSpec objects or 25-entry matrices")
      ->required();

  // example-pn
  auto* pn = app.add_subcommand("example-pn", "Projective example x' = Ax + sum u_i B_i x");
  int pn_n = 3;
  std::string pn_w;
  geoctl::projective::ExampleIcsOptions popt;
  pn->add_option("--n", pn_n, "Dimension n")->capture_default_str();
  pn->add_option("--w", pn_w, "JSON vector w with |w|^2 = 1 - 1/n (default along (1,...,1))");
  pn->add_option("--horizon", popt.horizon, "Schedule horizon")->capture_default_str();
  pn->add_option("--samples", popt.samples, "Schedules per cloud")->capture_default_str();

  // case
  auto* cs = app.add_subcommand("case", "Run one of the case studies i, i_prime, ii, ii_prime, iii");
  std::string case_id, z_arg, z1_arg, z2_arg;
  geoctl::CaseOverrides copt;
  std::optional<double> radius;
  cs->add_option("id", case_id, "Case id")->required();
  cs->add_option("--z", z_arg, "Pure quaternion [x,y,z] for cases i, i_prime");
  cs->add_option("--z1", z1_arg, "Pure quaternion for cases ii, ii_prime");
  cs->add_option("--z2", z2_arg, "Pure quaternion for cases ii, ii_prime");
  cs->add_option("--radius", radius, "Control ball radius for case iii");
  cs->add_flag("--symmetric-box", copt.symmetric_box, "Case ii with (u,v) in [-1,1]^2");
  cs->add_option("--horizon", copt.verify.horizon, "Schedule horizon")->capture_default_str();
  cs->add_option("--samples", copt.verify.samples, "Schedules per cloud")->capture_default_str();
  cs->add_option("--grid", copt.verify.grid, "Region grid size")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out_dir(g.out_dir);
    if (*sim) {
      const auto field = geoctl::io::field_from_json(geoctl::io::load_json_arg(field_arg));
      const auto traj = geoctl::integrate(field, parse_point(x0_arg), t_final, h);
      geoctl::io::trajectory_table(traj).write(sim_out.empty() ? out_dir / "trajectory.csv" : fs::path(sim_out));
      geoctl::io::Report r;
      r.command = "simulate";
      r.data["endpoint"] = geoctl::io::to_json(traj.back().value());
      r.data["steps"] = traj.size() - 1;
      r.data["max_norm_defect"] = geoctl::max_norm_defect(traj);
      if (traj.size() >= 3) r.data["great_circle_deviation"] = geoctl::great_circle_test(traj);
      if (g.json) std::cout << r.to_json().dump(2) << '\n';
      else std::cout << "endpoint " << traj.back() << '\n';
      return 0;
    }
    if (*att) {
      const auto system = geoctl::io::system_from_json(geoctl::io::load_json_arg(system_arg));
      std::vector<geoctl::ControlValue> controls;
      if (controls_arg.empty()) {
        controls = system.range.extreme_points();
      } else {
        controls = geoctl::io::load_json_arg(controls_arg).get<std::vector<geoctl::ControlValue>>();
      }
      const auto sweep = geoctl::attractor_sweep(system, controls);
      std::vector<geoctl::UnitQuaternion> pts;
      for (const auto& s : sweep.attractors) pts.push_back(s.point);
      geoctl::io::points_table(pts).write(att_out.empty() ? out_dir / "attractors.csv" : fs::path(att_out));
      std::cout << sweep.attractors.size() << " attractors, " << sweep.skipped << " degenerate controls skipped\n";
      return 0;
    }
    if (*reach) {
      const auto system = geoctl::io::system_from_json(geoctl::io::load_json_arg(reach_system));
      const auto cloud = geoctl::sample_positive_orbit(system, parse_point(reach_x0), horizon, samples, g.seed);
      geoctl::io::points_table(cloud.points).write(reach_out.empty() ? out_dir / "cloud.csv" : fs::path(reach_out));
      std::cout << cloud.points.size() << " points from " << cloud.samples << " schedules\n";
      return 0;
    }
    if (*ver) {
      const auto system = geoctl::io::system_from_json(geoctl::io::load_json_arg(ver_system));
      geoctl::ICSCandidate cand{geoctl::io::region_from_json(geoctl::io::load_json_arg(candidate_arg)), {}};
      vopt.seed = g.seed;
      if (g.tol) vopt.delta = *g.tol;
      geoctl::io::Report r;
      r.command = "verify-ics";
      r.add(geoctl::verify_ics(system, cand, vopt));
      r.data["candidate"] = geoctl::io::to_json(cand.region);
      return finish(r, g, true);
    }
    if (*larc) {
      const auto gens = parse_generators(gens_arg);
      const auto basis = geoctl::larc_basis(gens);
      Json jb = Json::array();
      for (const auto& b : basis) jb.push_back(geoctl::io::to_json(b));
      const Json out{{"rank", basis.size()}, {"full", basis.size() == 10}, {"basis", jb}};
      if (g.json) std::cout << out.dump(2) << '\n';
      else std::cout << "rank " << basis.size() << (basis.size() == 10 ? " (LARC holds)" : "") << '\n';
      return 0;
    }
    if (*pn) {
      const Eigen::VectorXd w = [&] {
        if (pn_w.empty()) return geoctl::projective::default_w(pn_n);
        const auto v = geoctl::io::load_json_arg(pn_w).get<std::vector<double>>();
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
      }();
      const auto system = geoctl::projective::build_example(pn_n, w);
      popt.seed = g.seed;
      if (g.tol) popt.delta = *g.tol;
      geoctl::io::Report r;
      r.command = "example-pn";
      r.add(geoctl::projective::verify_example_ics(system, popt));
      const auto larc_result = geoctl::projective::larc_check_example(system);
      r.data["n"] = pn_n;
      r.data["larc_rank"] = larc_result.rank;
      r.data["larc_expected"] = larc_result.expected;
      const auto grid = geoctl::projective::control_grid(system, pn_n == 3 ? 41 : 9);
      const auto sweep = geoctl::projective::boundary_sweep(system, grid);
      geoctl::io::vectors_table(sweep.attractors, sweep.controls).write(out_dir / "boundary.csv");
      return finish(r, g, true);
    }
    if (*cs) {
      const auto id = geoctl::parse_case_id(case_id);
      if (!z_arg.empty()) copt.z = parse_pure(z_arg);
      if (!z1_arg.empty()) copt.z1 = parse_pure(z1_arg);
      if (!z2_arg.empty()) copt.z2 = parse_pure(z2_arg);
      copt.radius = radius;
      copt.verify.seed = g.seed;
      if (g.tol) copt.verify.delta = *g.tol;
      const auto run = geoctl::run_case(id, copt);
      geoctl::export_case(run, out_dir);
      return finish(geoctl::case_report(run), g, false);
    }
  } catch (const geoctl::Error& e) {
    std::cerr << "error (" << geoctl::to_string(e.code()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
