// Command-line front end: load a potential description, run transmission
// sweeps, wavefunction profiles, dwell times, resonance searches, oracle
// comparisons, and unit conversions.  Exit codes: 0 success, 2 input/
// validation error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "barrierlab/analysis.hpp"
#include "barrierlab/errors.hpp"
#include "barrierlab/multibarrier.hpp"
#include "barrierlab/oracle.hpp"
#include "barrierlab/potential.hpp"
#include "barrierlab/units.hpp"

namespace {

using namespace barrierlab;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// 12 significant digits; scientific outside [1e-3, 1e6).  Fixed precision
// keeps reruns byte-identical.
std::string fmt_value(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  const double a = std::abs(v);
  if (a < 1e-3 || a >= 1e6)
    std::snprintf(buf, sizeof buf, "%.11e", v);
  else
    std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParameter("cannot open output file " + path);
  out << content;
}

int env_threads() {
  const char* s = std::getenv("BARRIERLAB_THREADS");
  if (!s) return 0;
  const int n = std::atoi(s);
  return n > 0 ? n : 0;
}

struct CommonArgs {
  std::string potential;
  std::string output;
  std::string format = "csv";
  std::string units;  // empty -> the potential file's system
  std::string constants = "rounded";
};

ConstantsSet constants_of(const CommonArgs& c) {
  if (c.constants == "rounded") return ConstantsSet::Rounded;
  if (c.constants == "codata") return ConstantsSet::Codata;
  throw InvalidParameter("--constants must be rounded or codata");
}

// Load the potential and convert it into the requested unit system, if any.
CompositePotential load_for(const CommonArgs& c) {
  auto p = load_potential_json(c.potential, constants_of(c));
  if (!c.units.empty() && c.units != p.units().name) {
    const auto target = unit_system_by_name(c.units, constants_of(c));
    if (target.name != p.units().name) p = convert_composite(p, target);
  }
  if (const auto v = validate(p); !v.empty())
    throw InvalidComposite("potential failed validation: " + v.front().message);
  return p;
}

void add_common(CLI::App* cmd, CommonArgs& c, bool with_format = true) {
  cmd->add_option("--potential", c.potential, "potential JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--output", c.output, "output path (default: stdout)");
  if (with_format)
    cmd->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--units", c.units,
                  "unit system override (hartree, si, natural)");
  cmd->add_option("--constants", c.constants, "constant set: rounded or codata")
      ->check(CLI::IsMember({"rounded", "codata"}));
}

std::string unit_system_label(const UnitSystem& u) {
  return u.name == "atomic" ? "hartree" : u.name;
}

// ---- transmission ----------------------------------------------------------

int run_transmission(const CommonArgs& c, double e_min, double e_max, int points) {
  if (!(0 < e_min && e_min < e_max))
    throw InvalidParameter("need 0 < --e-min < --e-max");
  if (points < 2) throw InvalidParameter("--points must be at least 2");
  const auto p = load_for(c);
  const auto& u = p.units();
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = e_min + (e_max - e_min) * double(i) / (points - 1);
  const auto sweep = multibarrier::transmission_sweep(p, grid, u, env_threads());

  std::ostringstream os;
  if (c.format == "csv") {
    os << "energy,transmission,reflection\n";
    for (const auto& pt : sweep) {
      if (!pt.ok)
        throw NonConvergence("sweep failed at E = " + fmt_value(pt.energy) +
                             ": " + pt.error);
      os << fmt_value(pt.energy) << ',' << fmt_value(pt.big_t) << ','
         << fmt_value(pt.big_r) << '\n';
    }
  } else {
    os << "{\"unit_system\": \"" << unit_system_label(u) << "\", \"points\": [";
    for (size_t i = 0; i < sweep.size(); ++i) {
      const auto& pt = sweep[i];
      os << (i ? ", " : "") << "{\"energy\": " << fmt_value(pt.energy);
      if (pt.ok)
        os << ", \"transmission\": " << fmt_value(pt.big_t)
           << ", \"reflection\": " << fmt_value(pt.big_r) << "}";
      else
        os << ", \"error\": \"" << pt.error << "\"}";
    }
    os << "]}\n";
  }
  write_output(c.output, os.str());
  return kExitOk;
}

// ---- wavefunction ----------------------------------------------------------

int run_wavefunction(const CommonArgs& c, double energy, double x_min,
                     double x_max, int points) {
  if (!(x_min < x_max)) throw InvalidParameter("need --x-min < --x-max");
  if (points < 2) throw InvalidParameter("--points must be at least 2");
  const auto p = load_for(c);
  if (p.is_single_landau())
    throw InvalidParameter(
        "wavefunction output needs a compact-support potential");
  const auto& u = p.units();
  const auto sol = multibarrier::solve(p, energy, u);

  std::ostringstream os;
  const bool csv = c.format == "csv";
  if (csv)
    os << "x,psi_re,psi_im,density\n";
  else
    os << "{\"unit_system\": \"" << unit_system_label(u)
       << "\", \"energy\": " << fmt_value(energy) << ", \"samples\": [";
  for (int i = 0; i < points; ++i) {
    const double x = x_min + (x_max - x_min) * double(i) / (points - 1);
    const Complex psi = multibarrier::wavefunction(sol, p, energy, u, x);
    if (csv)
      os << fmt_value(x) << ',' << fmt_value(psi.real()) << ','
         << fmt_value(psi.imag()) << ',' << fmt_value(std::norm(psi)) << '\n';
    else
      os << (i ? ", " : "") << "{\"x\": " << fmt_value(x)
         << ", \"psi_re\": " << fmt_value(psi.real())
         << ", \"psi_im\": " << fmt_value(psi.imag())
         << ", \"density\": " << fmt_value(std::norm(psi)) << "}";
  }
  if (!csv) os << "]}\n";
  write_output(c.output, os.str());
  return kExitOk;
}

// ---- dwell -----------------------------------------------------------------

struct IntervalSpec {
  bool by_turning = false;
  int i = 0, j = 0;
  double x1 = 0.0, x2 = 0.0;
};

IntervalSpec parse_interval(const std::string& text) {
  IntervalSpec spec;
  if (text.rfind("turning:", 0) == 0) {
    spec.by_turning = true;
    if (std::sscanf(text.c_str(), "turning:%d:%d", &spec.i, &spec.j) != 2 ||
        spec.i < 1 || spec.j <= spec.i)
      throw InvalidParameter("--interval turning:i:j needs 1 <= i < j");
    return spec;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw InvalidParameter("--interval must be x1:x2 or turning:i:j");
  try {
    spec.x1 = std::stod(text.substr(0, colon));
    spec.x2 = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw InvalidParameter("--interval bounds must be numbers");
  }
  if (!(spec.x1 < spec.x2)) throw InvalidParameter("--interval needs x1 < x2");
  return spec;
}

int run_dwell(const CommonArgs& c, double energy, const std::string& interval) {
  const auto spec = parse_interval(interval);
  const auto p = load_for(c);
  if (p.is_single_landau())
    throw InvalidParameter("dwell times need a compact-support potential");
  const auto& u = p.units();
  double x1 = spec.x1, x2 = spec.x2;
  if (spec.by_turning) {
    const auto tp = turning_points(p, energy, u);
    if (spec.j > int(tp.size()))
      throw InvalidParameter("potential has only " + std::to_string(tp.size()) +
                             " turning points at this energy");
    x1 = tp[spec.i - 1];
    x2 = tp[spec.j - 1];
  }
  const auto sol = multibarrier::solve(p, energy, u);
  const auto rep = analysis::dwell_time(sol, p, energy, u, x1, x2);

  std::ostringstream os;
  if (c.format == "csv") {
    os << "x1,x2,j_in,integral,tau\n"
       << fmt_value(rep.x1) << ',' << fmt_value(rep.x2) << ','
       << fmt_value(rep.j_in) << ',' << fmt_value(rep.integral) << ','
       << fmt_value(rep.tau) << '\n';
  } else {
    os << rep.to_json() << '\n';
  }
  write_output(c.output, os.str());
  return kExitOk;
}

// ---- resonance -------------------------------------------------------------

int run_resonance(const CommonArgs& c, double e_min, double e_max, int grid) {
  const auto p = load_for(c);
  const auto& u = p.units();
  const auto scan = analysis::find_resonances(p, e_min, e_max, u, grid,
                                              env_threads());
  std::ostringstream os;
  if (c.format == "csv") {
    os << "energy\n";
    for (double e : scan.energies) os << fmt_value(e) << '\n';
    if (scan.trivially_transparent) os << "# trivially transparent\n";
  } else {
    os << "{\"unit_system\": \"" << unit_system_label(u)
       << "\", \"trivially_transparent\": "
       << (scan.trivially_transparent ? "true" : "false") << ", \"energies\": [";
    for (size_t i = 0; i < scan.energies.size(); ++i)
      os << (i ? ", " : "") << fmt_value(scan.energies[i]);
    os << "]}\n";
  }
  write_output(c.output, os.str());
  return kExitOk;
}

// ---- oracle-check ----------------------------------------------------------

int run_oracle_check(const CommonArgs& c, double energy, double tol) {
  const auto cs = constants_of(c);
  double t_exact = 0.0, t_oracle = 0.0;
  std::string label;
  if (c.potential.size() > 4 &&
      c.potential.compare(c.potential.size() - 4, 4, ".csv") == 0) {
    // sampled potential: no exact route, report integrator self-consistency
    const auto sp = oracle::SampledPotential::load_csv(c.potential);
    const auto un = c.units.empty() ? atomic_units(cs)
                                    : unit_system_by_name(c.units, cs);
    const auto est = oracle::integrate_scattering(sp, energy, un);
    std::ostringstream os;
    os << "{\"unit_system\": \"" << unit_system_label(un)
       << "\", \"energy\": " << fmt_value(energy)
       << ", \"oracle_transmission\": " << fmt_value(est.big_t)
       << ", \"oracle_reflection\": " << fmt_value(est.big_r)
       << ", \"unitarity_gap\": " << fmt_value(est.big_r + est.big_t - 1.0)
       << "}\n";
    write_output(c.output, os.str());
    return std::abs(est.big_r + est.big_t - 1.0) <= tol ? kExitOk
                                                        : kExitNumerical;
  }

  const auto p = load_for(c);
  const auto& u = p.units();
  t_exact = multibarrier::transmission_at(p, energy, u);
  if (p.is_single_landau()) {
    const auto& shape = std::get<LandauShape>(p.segments()[0].shape).s;
    // truncate where the tail is far below the configured tolerance
    const double L = 20.0 / shape.alpha_inv;
    auto fn = [&](double x) { return evaluate(p, x); };
    t_oracle = oracle::integrate_scattering_fn(
                   fn, {}, shape.gamma - L, shape.gamma + L, energy, u, {})
                   .big_t;
    label = "full-line barrier truncated at 20/alpha";
  } else {
    t_oracle = oracle::integrate_scattering(p, energy, u).big_t;
    label = "compact support";
  }
  const double diff = std::abs(t_exact - t_oracle);
  std::ostringstream os;
  os << "{\"unit_system\": \"" << unit_system_label(u)
     << "\", \"energy\": " << fmt_value(energy)
     << ", \"exact_transmission\": " << fmt_value(t_exact)
     << ", \"oracle_transmission\": " << fmt_value(t_oracle)
     << ", \"abs_diff\": " << fmt_value(diff) << ", \"tolerance\": "
     << fmt_value(tol) << ", \"domain\": \"" << label << "\"}\n";
  write_output(c.output, os.str());
  if (diff > tol) {
    std::cerr << "error: numerical: exact and oracle transmissions differ by "
              << fmt_value(diff) << " (tolerance " << fmt_value(tol) << ")\n";
    return kExitNumerical;
  }
  return kExitOk;
}

// ---- units -----------------------------------------------------------------

int run_units(double value, const std::string& from, const std::string& to,
              const std::string& constants) {
  const ConstantsSet cs =
      constants == "codata" ? ConstantsSet::Codata : ConstantsSet::Rounded;
  std::cout << fmt_value(convert_value(value, from, to, cs)) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "barrierlab: exact one-dimensional scattering off compact parabolic and "
      "sech^2 barriers"};
  app.require_subcommand(1);

  CommonArgs c_tr, c_wf, c_dw, c_rs, c_oc;
  double e_min = 0, e_max = 0, energy = 0, x_min = 0, x_max = 0;
  int points = 200, grid = 2000;
  double oc_tol = 1e-6;
  std::string interval, u_from, u_to, u_constants = "rounded";
  double u_value = 0.0;

  auto* tr = app.add_subcommand("transmission", "T(E) and R(E) over a grid");
  add_common(tr, c_tr);
  tr->add_option("--e-min", e_min, "lowest energy")->required();
  tr->add_option("--e-max", e_max, "highest energy")->required();
  tr->add_option("--points", points, "grid size (default 200)");

  auto* wf = app.add_subcommand("wavefunction", "psi(x) profile at one energy");
  add_common(wf, c_wf);
  wf->add_option("--energy", energy, "incident energy")->required();
  wf->add_option("--x-min", x_min)->required();
  wf->add_option("--x-max", x_max)->required();
  wf->add_option("--points", points, "sample count (default 200)");

  auto* dw = app.add_subcommand("dwell", "dwell time over an interval");
  add_common(dw, c_dw);
  dw->add_option("--energy", energy, "incident energy")->required();
  dw->add_option("--interval", interval,
                 "x1:x2 or turning:i:j (1-based turning-point indices)")
      ->required();
  c_dw.format = "json";

  auto* rs = app.add_subcommand("resonance", "energies with T = 1");
  add_common(rs, c_rs);
  rs->add_option("--e-min", e_min)->required();
  rs->add_option("--e-max", e_max)->required();
  rs->add_option("--grid", grid, "scan grid size (default 2000)");
  c_rs.format = "json";

  auto* oc = app.add_subcommand("oracle-check",
                                "compare the exact T with the RK4 referee");
  add_common(oc, c_oc, /*with_format=*/false);
  oc->add_option("--energy", energy, "incident energy")->required();
  oc->add_option("--tol", oc_tol, "largest acceptable |T_exact - T_oracle|");

  auto* un = app.add_subcommand("units", "convert a value between named units");
  un->add_option("--value", u_value)->required();
  un->add_option("--from", u_from)->required();
  un->add_option("--to", u_to)->required();
  un->add_option("--constants", u_constants)
      ->check(CLI::IsMember({"rounded", "codata"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (tr->parsed()) return run_transmission(c_tr, e_min, e_max, points);
    if (wf->parsed()) return run_wavefunction(c_wf, energy, x_min, x_max, points);
    if (dw->parsed()) return run_dwell(c_dw, energy, interval);
    if (rs->parsed()) return run_resonance(c_rs, e_min, e_max, grid);
    if (oc->parsed()) return run_oracle_check(c_oc, energy, oc_tol);
    if (un->parsed()) return run_units(u_value, u_from, u_to, u_constants);
  } catch (const InvalidParameter& e) {
    std::cerr << "error: validation: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InvalidComposite& e) {
    std::cerr << "error: validation: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ZeroEnergy& e) {
    std::cerr << "error: validation: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: numerical: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}
