#include "barrierlab/potential.hpp"

#include <algorithm>
#include <cmath>

#include "barrierlab/errors.hpp"

namespace barrierlab {

namespace {

double shape_value(const ParabolicShape& s, double x) {
  const double u = x - s.gamma;
  return s.u0 / (s.alpha * s.alpha) * (s.alpha * s.alpha - u * u);
}

double shape_value(const SechShape& s, double x, const UnitSystem& un) {
  const double c = std::cosh(s.alpha_inv * (x - s.gamma));
  const double shift =
      un.hbar * un.hbar * s.beta_shift * s.beta_shift / (2.0 * un.mass);
  return -shift + s.u0 / (c * c);
}

double peak_of(const PotentialSegment& seg, const UnitSystem& un) {
  if (std::holds_alternative<ParabolicShape>(seg.shape))
    return std::get<ParabolicShape>(seg.shape).u0;
  if (std::holds_alternative<SechShape>(seg.shape))
    return shape_value(std::get<SechShape>(seg.shape),
                       std::get<SechShape>(seg.shape).gamma, un);
  if (std::holds_alternative<LandauShape>(seg.shape))
    return std::get<LandauShape>(seg.shape).s.u0;
  return 0.0;
}

}  // namespace

double sech_support_half_width(const SechShape& s, const UnitSystem& u) {
  if (!(s.beta_shift > 0))
    throw InvalidParameter("sech_support_half_width: beta_shift must be > 0");
  const double arg = std::sqrt(2.0 * u.mass * s.u0) / (u.hbar * s.beta_shift);
  if (!(arg > 1.0))
    throw InvalidParameter(
        "sech segment: beta_shift >= sqrt(2 m u0)/hbar leaves no support");
  return std::acosh(arg) / s.alpha_inv;
}

PotentialSegment parabolic_segment(const ParabolicShape& s) {
  if (!(s.alpha > 0) || !(s.u0 > 0))
    throw InvalidParameter("parabolic_segment: alpha and u0 must be > 0");
  return {{s.gamma - s.alpha, s.gamma + s.alpha}, s};
}

PotentialSegment sech_segment(const SechShape& s, const UnitSystem& u) {
  if (!(s.alpha_inv > 0) || !(s.u0 > 0))
    throw InvalidParameter("sech_segment: alpha_inv and u0 must be > 0");
  const double w = sech_support_half_width(s, u);
  return {{s.gamma - w, s.gamma + w}, s};
}

PotentialSegment free_segment(double lo, double hi) {
  return {{lo, hi}, FreeShape{}};
}

CompositePotential CompositePotential::from_barriers(
    std::vector<PotentialSegment> barriers, UnitSystem units) {
  std::sort(barriers.begin(), barriers.end(),
            [](const PotentialSegment& a, const PotentialSegment& b) {
              return a.interval.lo < b.interval.lo;
            });
  std::vector<PotentialSegment> segs;
  if (barriers.empty()) {
    segs.push_back(free_segment(-kInf, kInf));
  } else {
    segs.push_back(free_segment(-kInf, barriers.front().interval.lo));
    for (size_t i = 0; i < barriers.size(); ++i) {
      if (i > 0) {
        const double prev_hi = barriers[i - 1].interval.hi;
        const double lo = barriers[i].interval.lo;
        if (lo > prev_hi) segs.push_back(free_segment(prev_hi, lo));
        // lo == prev_hi: touching barriers share the endpoint directly;
        // lo < prev_hi: overlap, kept for validate() to flag.
      }
      segs.push_back(barriers[i]);
    }
    segs.push_back(free_segment(barriers.back().interval.hi, kInf));
  }
  return from_segments(std::move(segs), std::move(units));
}

CompositePotential CompositePotential::landau(const SechShape& s,
                                              UnitSystem units) {
  if (s.beta_shift != 0.0)
    throw InvalidParameter("landau: beta_shift must be 0 for the full-line form");
  CompositePotential p;
  p.segments_ = {{{-kInf, kInf}, LandauShape{s}}};
  p.units_ = std::move(units);
  return p;
}

CompositePotential CompositePotential::free_line(UnitSystem units) {
  CompositePotential p;
  p.segments_ = {free_segment(-kInf, kInf)};
  p.units_ = std::move(units);
  return p;
}

CompositePotential CompositePotential::from_segments(
    std::vector<PotentialSegment> segments, UnitSystem units) {
  CompositePotential p;
  p.segments_ = std::move(segments);
  p.units_ = std::move(units);
  return p;
}

const PotentialSegment& CompositePotential::segment_at(double x) const {
  // closed on the left, open on the right
  for (size_t i = 0; i + 1 < segments_.size(); ++i) {
    if (x < segments_[i + 1].interval.lo) return segments_[i];
  }
  return segments_.back();
}

bool CompositePotential::all_free() const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const PotentialSegment& s) { return s.is_free(); });
}

bool CompositePotential::is_single_landau() const {
  return segments_.size() == 1 &&
         std::holds_alternative<LandauShape>(segments_[0].shape);
}

double CompositePotential::max_peak() const {
  double m = 0.0;
  for (const auto& s : segments_) m = std::max(m, peak_of(s, units_));
  return m;
}

double evaluate_shape(const Shape& shape, double x, const UnitSystem& u) {
  if (std::holds_alternative<FreeShape>(shape)) return 0.0;
  if (std::holds_alternative<ParabolicShape>(shape))
    return shape_value(std::get<ParabolicShape>(shape), x);
  if (std::holds_alternative<SechShape>(shape))
    return shape_value(std::get<SechShape>(shape), x, u);
  return shape_value(std::get<LandauShape>(shape).s, x, u);
}

double evaluate(const CompositePotential& p, double x) {
  return evaluate_shape(p.segment_at(x).shape, x, p.units());
}

namespace {

// Bisection on U(x) - E inside [lo, hi]; requires a sign change.
double bisect_crossing(const Shape& shape, const UnitSystem& un, double lo,
                       double hi, double E) {
  double flo = evaluate_shape(shape, lo, un) - E;
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    const double fm = evaluate_shape(shape, mid, un) - E;
    if ((flo <= 0) == (fm <= 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void sech_like_roots(const Shape& shape, const SechShape& s,
                     const UnitSystem& un, bool compact, double E,
                     std::vector<double>& out) {
  const double peak = evaluate_shape(shape, s.gamma, un);
  if (E > peak) return;
  if (E == peak) {
    out.push_back(s.gamma);
    return;
  }
  double hw;
  if (compact) {
    hw = sech_support_half_width(s, un);
  } else {
    // expand until the tail is below E
    hw = 1.0 / s.alpha_inv;
    while (evaluate_shape(shape, s.gamma + hw, un) > E) hw *= 2.0;
  }
  const double right = bisect_crossing(shape, un, s.gamma, s.gamma + hw, E);
  out.push_back(s.gamma - (right - s.gamma));
  out.push_back(right);
}

}  // namespace

std::vector<double> turning_points(const CompositePotential& p, double E,
                                   const UnitSystem& u) {
  if (!(E > 0)) throw ZeroEnergy("turning_points: requires E > 0");
  std::vector<double> roots;
  for (const auto& seg : p.segments()) {
    if (std::holds_alternative<ParabolicShape>(seg.shape)) {
      const auto& s = std::get<ParabolicShape>(seg.shape);
      if (E > s.u0) continue;
      const double d = s.alpha * std::sqrt(1.0 - E / s.u0);
      if (d == 0.0) {
        roots.push_back(s.gamma);
      } else {
        roots.push_back(s.gamma - d);
        roots.push_back(s.gamma + d);
      }
    } else if (std::holds_alternative<SechShape>(seg.shape)) {
      sech_like_roots(seg.shape, std::get<SechShape>(seg.shape), u,
                      /*compact=*/true, E, roots);
    } else if (std::holds_alternative<LandauShape>(seg.shape)) {
      sech_like_roots(seg.shape, std::get<LandauShape>(seg.shape).s, u,
                      /*compact=*/false, E, roots);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Violation> validate(const CompositePotential& p) {
  std::vector<Violation> out;
  const auto& segs = p.segments();
  const UnitSystem& un = p.units();
  if (segs.empty()) {
    out.push_back({ViolationKind::BadOuterRegions, 0, 0, "no segments"});
    return out;
  }
  if (p.is_single_landau()) return out;

  if (!std::isinf(segs.front().interval.lo) || !segs.front().is_free())
    out.push_back({ViolationKind::BadOuterRegions, segs.front().interval.lo, 0,
                   "leftmost segment must be free with infinite extent"});
  if (!std::isinf(segs.back().interval.hi) || !segs.back().is_free())
    out.push_back({ViolationKind::BadOuterRegions, segs.back().interval.hi, 0,
                   "rightmost segment must be free with infinite extent"});

  const double cont_tol = 1e-12;
  for (size_t i = 0; i + 1 < segs.size(); ++i) {
    const double hi = segs[i].interval.hi;
    const double lo = segs[i + 1].interval.lo;
    if (lo < hi) {
      out.push_back({ViolationKind::Overlap, lo, hi - lo,
                     "segments overlap on an interval"});
      continue;
    }
    if (lo > hi) {
      out.push_back(
          {ViolationKind::Gap, hi, lo - hi, "segments leave an uncovered gap"});
      continue;
    }
    const double left = evaluate_shape(segs[i].shape, hi, un);
    const double right = evaluate_shape(segs[i + 1].shape, hi, un);
    const double jump = std::abs(left - right);
    if (jump > cont_tol)
      out.push_back({ViolationKind::Discontinuity, hi, jump,
                     "potential jumps across the interface"});
    if (std::holds_alternative<LandauShape>(segs[i].shape) ||
        std::holds_alternative<LandauShape>(segs[i + 1].shape))
      out.push_back({ViolationKind::BadShape, hi, 0,
                     "full-line landau segment inside a tiling"});
  }

  // compact shapes must vanish at both of their own endpoints
  for (const auto& seg : segs) {
    if (seg.is_free() || std::holds_alternative<LandauShape>(seg.shape)) continue;
    for (double xe : {seg.interval.lo, seg.interval.hi}) {
      const double v = evaluate_shape(seg.shape, xe, un);
      if (std::abs(v) > cont_tol)
        out.push_back({ViolationKind::Discontinuity, xe, std::abs(v),
                       "compact shape does not vanish at its endpoint"});
    }
    if (std::holds_alternative<SechShape>(seg.shape)) {
      const auto& s = std::get<SechShape>(seg.shape);
      if (!(s.beta_shift > 0))
        out.push_back({ViolationKind::BadShape, s.gamma, 0,
                       "compact sech segment requires beta_shift > 0"});
    }
  }
  return out;
}

CompositePotential convert_composite(const CompositePotential& p,
                                     const UnitSystem& target) {
  const UnitSystem& from = p.units();
  if ((from.name == "natural") != (target.name == "natural"))
    throw InvalidParameter(
        "convert_composite: natural units carry no absolute scale and cannot "
        "be converted to or from " +
        (from.name == "natural" ? target.name : from.name));
  std::vector<PotentialSegment> segs;
  segs.reserve(p.segments().size());
  for (const auto& seg : p.segments()) {
    PotentialSegment s = seg;
    s.interval.lo = std::isinf(s.interval.lo)
                        ? s.interval.lo
                        : convert_length(s.interval.lo, from, target);
    s.interval.hi = std::isinf(s.interval.hi)
                        ? s.interval.hi
                        : convert_length(s.interval.hi, from, target);
    if (std::holds_alternative<ParabolicShape>(s.shape)) {
      auto ps = std::get<ParabolicShape>(s.shape);
      ps.alpha = convert_length(ps.alpha, from, target);
      ps.gamma = convert_length(ps.gamma, from, target);
      ps.u0 = convert_energy(ps.u0, from, target);
      s.shape = ps;
    } else if (std::holds_alternative<SechShape>(s.shape)) {
      auto ss = std::get<SechShape>(s.shape);
      ss.alpha_inv = convert_inverse_length(ss.alpha_inv, from, target);
      ss.beta_shift = convert_inverse_length(ss.beta_shift, from, target);
      ss.gamma = convert_length(ss.gamma, from, target);
      ss.u0 = convert_energy(ss.u0, from, target);
      s.shape = ss;
    } else if (std::holds_alternative<LandauShape>(s.shape)) {
      auto ls = std::get<LandauShape>(s.shape);
      ls.s.alpha_inv = convert_inverse_length(ls.s.alpha_inv, from, target);
      ls.s.gamma = convert_length(ls.s.gamma, from, target);
      ls.s.u0 = convert_energy(ls.s.u0, from, target);
      s.shape = ls;
    }
    segs.push_back(s);
  }
  return CompositePotential::from_segments(std::move(segs), target);
}

}  // namespace barrierlab
