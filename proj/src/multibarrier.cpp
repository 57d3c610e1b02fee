#include "barrierlab/multibarrier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "barrierlab/errors.hpp"
#include "barrierlab/landau.hpp"
#include "barrierlab/parabolic.hpp"

namespace barrierlab::multibarrier {

namespace {

constexpr double kConditionLimit = 1e12;

// Dense complex linear solve, partial pivoting, with an exact 1-norm
// condition number (the systems are tiny, so inverting column-by-column for
// ||A^-1||_1 costs nothing).
struct DenseSolve {
  std::vector<Complex> x;
  double condition = 0.0;
};

DenseSolve solve_dense(std::vector<Complex> a, std::vector<Complex> b) {
  const size_t n = b.size();
  auto at = [&](size_t i, size_t j) -> Complex& { return a[i * n + j]; };

  double norm_a = 0.0;
  for (size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (size_t i = 0; i < n; ++i) col += std::abs(at(i, j));
    norm_a = std::max(norm_a, col);
  }

  // augment with the identity so the same elimination yields A^-1
  std::vector<Complex> inv(n * n, Complex(0.0));
  for (size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  auto iat = [&](size_t i, size_t j) -> Complex& { return inv[i * n + j]; };

  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    double best = std::abs(at(col, col));
    for (size_t i = col + 1; i < n; ++i) {
      if (std::abs(at(i, col)) > best) {
        best = std::abs(at(i, col));
        piv = i;
      }
    }
    if (best == 0.0)
      throw SingularSystem("interface matching: exactly singular system");
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) {
        std::swap(at(piv, j), at(col, j));
        std::swap(iat(piv, j), iat(col, j));
      }
      std::swap(b[piv], b[col]);
    }
    const Complex d = at(col, col);
    for (size_t i = col + 1; i < n; ++i) {
      const Complex f = at(i, col) / d;
      if (f == Complex(0.0)) continue;
      for (size_t j = col; j < n; ++j) at(i, j) -= f * at(col, j);
      for (size_t j = 0; j < n; ++j) iat(i, j) -= f * iat(col, j);
      b[i] -= f * b[col];
    }
  }

  auto back_sub = [&](std::vector<Complex>& rhs_col) {
    for (size_t ii = n; ii-- > 0;) {
      Complex s = rhs_col[ii];
      for (size_t j = ii + 1; j < n; ++j) s -= at(ii, j) * rhs_col[j];
      rhs_col[ii] = s / at(ii, ii);
    }
  };

  DenseSolve out;
  out.x = b;
  back_sub(out.x);

  double norm_inv = 0.0;
  for (size_t j = 0; j < n; ++j) {
    std::vector<Complex> col(n);
    for (size_t i = 0; i < n; ++i) col[i] = iat(i, j);
    back_sub(col);
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += std::abs(col[i]);
    norm_inv = std::max(norm_inv, s);
  }
  out.condition = norm_a * norm_inv;
  return out;
}

Complex plane_wave(double k, double x, int sign) {
  return std::exp(Complex(0.0, sign * k * x));
}

}  // namespace

std::vector<RegionBasis> build_regions(const CompositePotential& p, double E,
                                       const UnitSystem& u) {
  const double k = wavenumber(E, u);
  std::vector<RegionBasis> regions;
  int idx = 0;
  for (const auto& seg : p.segments()) {
    RegionBasis rb;
    rb.index = idx++;
    rb.interval = seg.interval;
    if (seg.is_free()) {
      rb.kind = RegionKind::PlaneWaves;
      rb.eval = [k](double x) -> BasisPair {
        const Complex f1 = plane_wave(k, x, +1);
        const Complex f2 = plane_wave(k, x, -1);
        return {f1, Complex(0.0, k) * f1, f2, Complex(0.0, -k) * f2};
      };
    } else if (std::holds_alternative<ParabolicShape>(seg.shape)) {
      rb.kind = RegionKind::Parabolic;
      const auto shape = std::get<ParabolicShape>(seg.shape);
      rb.eval = [shape, E, u](double x) {
        return parabolic::basis_pair_at(shape, E, u, x);
      };
    } else if (std::holds_alternative<SechShape>(seg.shape)) {
      rb.kind = RegionKind::Sech;
      const auto shape = std::get<SechShape>(seg.shape);
      rb.eval = [shape, E, u](double x) {
        return landau::sech_basis_at(shape, E, u, x);
      };
    } else {
      throw InvalidComposite(
          "interface matching: full-line landau segment has no free edges");
    }
    regions.push_back(std::move(rb));
  }
  return regions;
}

GlobalSolution solve(const CompositePotential& p, double E, const UnitSystem& u) {
  if (!(E > 0)) throw ZeroEnergy("solve: requires E > 0");
  if (const auto v = validate(p); !v.empty())
    throw InvalidComposite("solve: composite failed validation: " +
                           v.front().message);

  GlobalSolution out;
  if (p.all_free()) {
    out.r = 0.0;
    out.t = 1.0;
    out.big_r = 0.0;
    out.big_t = 1.0;
    out.condition = 1.0;
    return out;
  }
  if (p.is_single_landau())
    throw InvalidComposite(
        "solve: full-line landau barrier is handled in closed form, not by "
        "interface matching");

  const auto regions = build_regions(p, E, u);
  const size_t n = regions.size();
  const size_t dim = 2 * (n - 1);

  // unknown layout: [r, (c1,c2) per interior region, t]
  std::vector<Complex> a(dim * dim, Complex(0.0));
  std::vector<Complex> rhs(dim, Complex(0.0));
  auto at = [&](size_t i, size_t j) -> Complex& { return a[i * dim + j]; };

  const double k = wavenumber(E, u);
  for (size_t iface = 0; iface + 1 < n; ++iface) {
    const double x = regions[iface].interval.hi;
    const size_t row_v = 2 * iface, row_d = 2 * iface + 1;

    // left side of the interface
    if (iface == 0) {
      const Complex em = plane_wave(k, x, -1);
      at(row_v, 0) = em;
      at(row_d, 0) = Complex(0.0, -k) * em;
      const Complex ep = plane_wave(k, x, +1);
      rhs[row_v] -= ep;               // incident wave moves to the rhs
      rhs[row_d] -= Complex(0.0, k) * ep;
    } else {
      const BasisPair bp = regions[iface].eval(x);
      const size_t c = 1 + 2 * (iface - 1);
      at(row_v, c) = bp.f1;
      at(row_v, c + 1) = bp.f2;
      at(row_d, c) = bp.df1;
      at(row_d, c + 1) = bp.df2;
    }

    // right side (moved across the equality, hence the minus signs)
    if (iface + 1 == n - 1) {
      const Complex ep = plane_wave(k, x, +1);
      at(row_v, dim - 1) -= ep;
      at(row_d, dim - 1) -= Complex(0.0, k) * ep;
    } else {
      const BasisPair bp = regions[iface + 1].eval(x);
      const size_t c = 1 + 2 * iface;
      at(row_v, c) -= bp.f1;
      at(row_v, c + 1) -= bp.f2;
      at(row_d, c) -= bp.df1;
      at(row_d, c + 1) -= bp.df2;
    }
  }

  const std::vector<Complex> a_copy = a;
  const std::vector<Complex> rhs_copy = rhs;
  DenseSolve sol = solve_dense(std::move(a), rhs);
  if (!std::isfinite(sol.condition) || sol.condition > kConditionLimit)
    throw SingularSystem(
        "interface matching: condition estimate " + std::to_string(sol.condition) +
        " beyond threshold (dim " + std::to_string(dim) + ")");

  out.r = sol.x[0];
  out.t = sol.x[dim - 1];
  out.coeffs.reserve(n - 2);
  for (size_t i = 0; i + 2 < n; ++i)
    out.coeffs.emplace_back(sol.x[1 + 2 * i], sol.x[2 + 2 * i]);
  out.big_r = std::norm(out.r);
  out.big_t = std::norm(out.t);
  out.condition = sol.condition;

  double res = 0.0;
  for (size_t i = 0; i < dim; ++i) {
    Complex ax(0.0);
    for (size_t j = 0; j < dim; ++j) ax += a_copy[i * dim + j] * sol.x[j];
    res = std::max(res, std::abs(ax - rhs_copy[i]));
  }
  out.residual = res;
  return out;
}

namespace {

struct PsiPair {
  Complex psi, dpsi;
};

PsiPair eval_state(const GlobalSolution& sol, const CompositePotential& p,
                   double E, const UnitSystem& u, double x) {
  const double k = wavenumber(E, u);
  const auto& segs = p.segments();
  size_t region = segs.size() - 1;
  for (size_t i = 0; i + 1 < segs.size(); ++i) {
    if (x < segs[i + 1].interval.lo) {
      region = i;
      break;
    }
  }
  if (p.all_free() || segs.size() == 1) {
    const Complex ep = plane_wave(k, x, +1);
    const Complex em = plane_wave(k, x, -1);
    return {ep + sol.r * em, Complex(0.0, k) * (ep - sol.r * em)};
  }
  if (region == 0) {
    const Complex ep = plane_wave(k, x, +1);
    const Complex em = plane_wave(k, x, -1);
    return {ep + sol.r * em, Complex(0.0, k) * (ep - sol.r * em)};
  }
  if (region == segs.size() - 1) {
    const Complex ep = plane_wave(k, x, +1);
    return {sol.t * ep, Complex(0.0, k) * sol.t * ep};
  }
  const auto regions = build_regions(p, E, u);
  const BasisPair bp = regions[region].eval(x);
  const auto& [c1, c2] = sol.coeffs.at(region - 1);
  return {c1 * bp.f1 + c2 * bp.f2, c1 * bp.df1 + c2 * bp.df2};
}

}  // namespace

Complex wavefunction(const GlobalSolution& sol, const CompositePotential& p,
                     double E, const UnitSystem& u, double x) {
  return eval_state(sol, p, E, u, x).psi;
}

Complex wavefunction_derivative(const GlobalSolution& sol,
                                const CompositePotential& p, double E,
                                const UnitSystem& u, double x) {
  return eval_state(sol, p, E, u, x).dpsi;
}

double probability_density(const GlobalSolution& sol, const CompositePotential& p,
                           double E, const UnitSystem& u, double x) {
  return std::norm(eval_state(sol, p, E, u, x).psi);
}

double probability_current(const GlobalSolution& sol, const CompositePotential& p,
                           double E, const UnitSystem& u, double x) {
  const PsiPair s = eval_state(sol, p, E, u, x);
  return u.hbar / u.mass * std::imag(std::conj(s.psi) * s.dpsi);
}

double transmission_at(const CompositePotential& p, double E, const UnitSystem& u) {
  if (p.all_free()) return 1.0;
  if (p.is_single_landau()) {
    const auto& shape = std::get<LandauShape>(p.segments()[0].shape).s;
    return landau::landau_scattering(shape, E, u).big_t;
  }
  return solve(p, E, u).big_t;
}

std::vector<SweepPoint> transmission_sweep(const CompositePotential& p,
                                           const std::vector<double>& energies,
                                           const UnitSystem& u, int max_threads) {
  std::vector<SweepPoint> out(energies.size());
  auto run_point = [&](size_t i) {
    SweepPoint& pt = out[i];
    pt.energy = energies[i];
    try {
      if (p.all_free()) {
        pt.big_t = 1.0;
        pt.big_r = 0.0;
      } else if (p.is_single_landau()) {
        const auto& shape = std::get<LandauShape>(p.segments()[0].shape).s;
        const auto ls = landau::landau_scattering(shape, energies[i], u);
        pt.big_t = ls.big_t;
        pt.big_r = ls.big_r;
      } else {
        const auto g = solve(p, energies[i], u);
        pt.big_t = g.big_t;
        pt.big_r = g.big_r;
      }
      pt.ok = true;
    } catch (const Error& e) {
      pt.ok = false;
      pt.error = e.what();
    }
  };

  unsigned threads = max_threads > 0 ? unsigned(max_threads)
                                     : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, energies.size()));
  if (threads == 1) {
    for (size_t i = 0; i < energies.size(); ++i) run_point(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < energies.size();
           i = next.fetch_add(1))
        run_point(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace barrierlab::multibarrier
