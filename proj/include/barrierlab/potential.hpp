#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "barrierlab/types.hpp"
#include "barrierlab/units.hpp"

namespace barrierlab {

/// Inverted parabola u0 (1 - (x-gamma)^2/alpha^2) on [gamma-alpha, gamma+alpha],
/// zero outside.  alpha is the half-width, u0 the peak height, gamma the center.
struct ParabolicShape {
  double alpha = 1.0;
  double u0 = 1.0;
  double gamma = 0.0;
};

/// sech^2 bump, optionally shifted down so it crosses zero at finite x:
///   U(x) = -hbar^2 beta_shift^2 / (2 m) + u0 / cosh^2(alpha_inv (x - gamma)).
/// With beta_shift > 0 the support is the interval where U >= 0 (compact
/// form); with beta_shift = 0 the bump extends over the whole line.
/// alpha_inv is a steepness with dimension 1/length; beta_shift is
/// momentum-like (also 1/length once hbar = 1).
struct SechShape {
  double alpha_inv = 1.0;
  double u0 = 1.0;
  double beta_shift = 0.0;
  double gamma = 0.0;
};

struct FreeShape {};

/// Full-line sech^2 barrier (no cutoff).  Only valid as the sole segment of a
/// composite; handled by the closed-form machinery rather than interface
/// matching.
struct LandauShape {
  SechShape s;  // beta_shift must be 0
};

using Shape = std::variant<FreeShape, ParabolicShape, SechShape, LandauShape>;

struct PotentialSegment {
  Interval interval;
  Shape shape;

  bool is_free() const { return std::holds_alternative<FreeShape>(shape); }
};

/// Half-width of the interval where a compact sech segment is nonnegative:
/// acosh(sqrt(2 m u0)/(hbar beta))/alpha_inv.  Requires 0 < beta < sqrt(2 m u0)/hbar.
double sech_support_half_width(const SechShape& s, const UnitSystem& u);

/// Segment constructors with the natural support interval attached.
PotentialSegment parabolic_segment(const ParabolicShape& s);
PotentialSegment sech_segment(const SechShape& s, const UnitSystem& u);
PotentialSegment free_segment(double lo, double hi);

enum class ViolationKind {
  Overlap,
  Gap,
  Discontinuity,
  BadShape,
  BadOuterRegions,
};

struct Violation {
  ViolationKind kind;
  double x = 0.0;          // location, when meaningful
  double magnitude = 0.0;  // e.g. jump size for Discontinuity
  std::string message;
};

/// An ordered tiling of the real line by potential segments.  The outermost
/// segments are free with infinite extent (or the whole line is one Landau
/// segment).  Segment lookup is closed on the left, open on the right.
class CompositePotential {
 public:
  CompositePotential() = default;

  /// Tile the line around the given barrier segments, inserting free filler
  /// regions in the gaps and unbounded free regions on the outside.  Barriers
  /// that share an endpoint touch directly (no zero-width free region).
  /// Overlapping input intervals are kept as given so validate() can report
  /// them.
  static CompositePotential from_barriers(std::vector<PotentialSegment> barriers,
                                          UnitSystem units);

  /// Single full-line sech^2 barrier.
  static CompositePotential landau(const SechShape& s, UnitSystem units);

  /// No potential anywhere.
  static CompositePotential free_line(UnitSystem units);

  /// Raw tiling, for tests that need to build invalid layouts.
  static CompositePotential from_segments(std::vector<PotentialSegment> segments,
                                          UnitSystem units);

  const std::vector<PotentialSegment>& segments() const { return segments_; }
  const UnitSystem& units() const { return units_; }

  const PotentialSegment& segment_at(double x) const;

  bool all_free() const;
  bool is_single_landau() const;

  /// Largest barrier peak height (0 for an all-free composite).
  double max_peak() const;

 private:
  std::vector<PotentialSegment> segments_;
  UnitSystem units_;
};

/// U(x) from the active segment's formula; 0 on free segments.
double evaluate(const CompositePotential& p, double x);

/// Shape formula of one segment evaluated without the support lookup (used
/// by validate to probe endpoint values).
double evaluate_shape(const Shape& shape, double x, const UnitSystem& u);

/// All real solutions of U(x) = E, ascending.  Parabolic segments use the
/// closed form gamma +- alpha sqrt(1 - E/u0); sech-type segments bracket and
/// bisect on U(x) - E down to a 1e-12-wide bracket.  Empty when E clears
/// every peak.
std::vector<double> turning_points(const CompositePotential& p, double E,
                                   const UnitSystem& u);

/// Structural checks: tiling (no gaps/overlaps), continuity at every
/// interface (tolerance 1e-12 in the active energy unit), compact shapes
/// vanishing at their endpoints, free/infinite outer regions.  Violations are
/// data, not exceptions; an empty list means the composite is valid.
std::vector<Violation> validate(const CompositePotential& p);

/// Rescale every dimensioned parameter into the target unit system.
CompositePotential convert_composite(const CompositePotential& p,
                                     const UnitSystem& target);

// JSON document I/O.  Format (field names are part of the public contract,
// see schemas/potential.schema.json):
//   {"unit_system": "hartree",
//    "segments": [{"shape": "parabolic", "alpha": .., "u0": .., "gamma": ..},
//                 {"shape": "sech", "alpha_inv": .., "u0": .., "beta_shift": .., "gamma": ..},
//                 {"shape": "landau", "alpha_inv": .., "u0": .., "gamma": ..}]}
// Outer free regions are implicit.  Unknown fields are rejected.
CompositePotential load_potential_json(const std::filesystem::path& file,
                                       ConstantsSet cs = ConstantsSet::Rounded);
CompositePotential parse_potential_json(const std::string& text,
                                        ConstantsSet cs = ConstantsSet::Rounded);
std::string potential_to_json(const CompositePotential& p);

}  // namespace barrierlab
