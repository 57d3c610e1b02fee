#include "barrierlab/units.hpp"

#include <cmath>

#include "barrierlab/errors.hpp"

namespace barrierlab {

namespace {

struct Constants {
  double hartree_j;
  double ev_j;
  double bohr_m;
  double angstrom_m;
  double aut_s;
  double hbar_si;
  double me_si;
};

Constants constants_for(ConstantsSet cs) {
  if (cs == ConstantsSet::Rounded) {
    // 1 hartree = 24 eV = 4e-18 J, 1 bohr = 0.5 angstrom, aut = hbar/hartree.
    return {4e-18, 4e-18 / 24.0, 5e-11, 1e-10, 1e-34 / 4e-18, 1e-34, 1e-30};
  }
  return {4.3597447222071e-18, 1.602176634e-19,       5.29177210903e-11,
          1e-10,               2.4188843265857e-17,   1.054571817e-34,
          9.1093837015e-31};
}

}  // namespace

UnitSystem atomic_units(ConstantsSet cs) {
  const Constants c = constants_for(cs);
  return {"atomic", 1.0, 1.0,
          {"hartree", c.hartree_j},
          {"bohr", c.bohr_m},
          {"aut", c.aut_s}};
}

UnitSystem si_units(ConstantsSet cs) {
  const Constants c = constants_for(cs);
  return {"si", c.hbar_si, c.me_si, {"J", 1.0}, {"m", 1.0}, {"s", 1.0}};
}

UnitSystem scaled_atomic_units(double length_factor, ConstantsSet cs) {
  if (!(length_factor > 0))
    throw InvalidParameter("scaled_atomic_units: length_factor must be > 0");
  const Constants c = constants_for(cs);
  const double f2 = length_factor * length_factor;
  return {"scaled-atomic", 1.0, 1.0,
          {"hartree/" + std::to_string(length_factor) + "^2", c.hartree_j / f2},
          {"bohr*" + std::to_string(length_factor), c.bohr_m * length_factor},
          {"aut*" + std::to_string(length_factor) + "^2", c.aut_s * f2}};
}

UnitSystem unit_system_by_name(const std::string& name, ConstantsSet cs) {
  if (name == "hartree" || name == "atomic" || name == "au") return atomic_units(cs);
  if (name == "si") return si_units(cs);
  if (name == "natural") return UnitSystem{};
  throw InvalidParameter("unknown unit system: " + name);
}

double wavenumber(double energy, const UnitSystem& u) {
  if (!(energy > 0)) throw ZeroEnergy("wavenumber: requires E > 0");
  return std::sqrt(2.0 * u.mass * energy) / u.hbar;
}

double convert_energy(double v, const UnitSystem& from, const UnitSystem& to) {
  return v * from.energy_unit.to_si / to.energy_unit.to_si;
}

double convert_length(double v, const UnitSystem& from, const UnitSystem& to) {
  return v * from.length_unit.to_si / to.length_unit.to_si;
}

double convert_inverse_length(double v, const UnitSystem& from,
                              const UnitSystem& to) {
  return v * to.length_unit.to_si / from.length_unit.to_si;
}

double convert_time(double v, const UnitSystem& from, const UnitSystem& to) {
  return v * from.time_unit.to_si / to.time_unit.to_si;
}

double convert_value(double v, const std::string& from_unit,
                     const std::string& to_unit, ConstantsSet cs) {
  const Constants c = constants_for(cs);
  auto scale = [&](const std::string& unit, int& dim) -> double {
    if (unit == "hartree" || unit == "h") { dim = 0; return c.hartree_j; }
    if (unit == "eV") { dim = 0; return c.ev_j; }
    if (unit == "J") { dim = 0; return 1.0; }
    if (unit == "bohr" || unit == "b") { dim = 1; return c.bohr_m; }
    if (unit == "angstrom" || unit == "A") { dim = 1; return c.angstrom_m; }
    if (unit == "m") { dim = 1; return 1.0; }
    if (unit == "aut") { dim = 2; return c.aut_s; }
    if (unit == "s") { dim = 2; return 1.0; }
    throw InvalidParameter("convert_value: unknown unit " + unit);
  };
  int dim_from = -1, dim_to = -1;
  const double sf = scale(from_unit, dim_from);
  const double st = scale(to_unit, dim_to);
  if (dim_from != dim_to)
    throw InvalidParameter("convert_value: " + from_unit + " and " + to_unit +
                           " have different dimensions");
  return v * sf / st;
}

}  // namespace barrierlab
