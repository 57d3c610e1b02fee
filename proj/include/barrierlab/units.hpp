#pragma once

#include <string>

namespace barrierlab {

/// Which set of fundamental constants backs unit conversions.
///
/// Rounded is the round-number set this project's reference tables use
/// (1 hartree = 24 eV = 4e-18 J, 1 bohr = 0.5 angstrom, hbar = 1e-34 J s,
/// m_e = 1e-30 kg); Codata uses the CODATA-2018 values.
enum class ConstantsSet { Rounded, Codata };

struct ScaledUnit {
  std::string name;
  double to_si = 1.0;  // multiply a value in this unit to get SI
};

/// Everything a solver needs to know about the active unit system: the
/// numerical values of hbar and the particle mass in system units, plus the
/// named scales used when converting to other systems.  The solvers only read
/// hbar and mass; the scales matter at the I/O boundary.
struct UnitSystem {
  std::string name = "natural";
  double hbar = 1.0;
  double mass = 1.0;
  ScaledUnit energy_unit{"energy", 1.0};
  ScaledUnit length_unit{"length", 1.0};
  ScaledUnit time_unit{"time", 1.0};
};

/// hbar = m_e = 1; hartree / bohr / atomic time unit.
UnitSystem atomic_units(ConstantsSet cs = ConstantsSet::Rounded);

/// hbar and m_e in SI values; joule / meter / second.
UnitSystem si_units(ConstantsSet cs = ConstantsSet::Rounded);

/// A system with hbar = mass = 1 whose length unit is `length_factor` bohr.
/// hbar = m = 1 fixes the energy unit to hartree / length_factor^2 and the
/// time unit to aut * length_factor^2, so the system stays self-consistent.
UnitSystem scaled_atomic_units(double length_factor,
                               ConstantsSet cs = ConstantsSet::Rounded);

/// Lookup by the names accepted in potential files: "hartree" | "atomic" |
/// "au" -> atomic_units, "si" -> si_units, "natural" -> plain hbar=m=1.
/// Throws InvalidParameter for unknown names.
UnitSystem unit_system_by_name(const std::string& name,
                               ConstantsSet cs = ConstantsSet::Rounded);

/// sqrt(2 m E) / hbar in the active system.
double wavenumber(double energy, const UnitSystem& u);

// Cross-system rescaling of dimensioned values.  Values carry no unit tags;
// the caller knows which dimension it is converting.
double convert_energy(double v, const UnitSystem& from, const UnitSystem& to);
double convert_length(double v, const UnitSystem& from, const UnitSystem& to);
double convert_inverse_length(double v, const UnitSystem& from, const UnitSystem& to);
double convert_time(double v, const UnitSystem& from, const UnitSystem& to);

/// Single-value conversion between named units: energies {hartree, eV, J},
/// lengths {bohr, angstrom, m}, times {aut, s}.  Mixing dimensions throws
/// InvalidParameter.
double convert_value(double v, const std::string& from_unit,
                     const std::string& to_unit,
                     ConstantsSet cs = ConstantsSet::Rounded);

}  // namespace barrierlab
