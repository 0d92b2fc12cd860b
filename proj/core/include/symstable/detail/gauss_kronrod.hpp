#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod integration of a vector-valued
// integrand over a partition given by breakpoints. Error estimates follow the
// QUADPACK qk15 heuristics. All components share the nodes; the interval with
// the largest tolerance-normalized error is bisected next.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace symstable::detail {

struct GkSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
  // accepted error floor is roundoff_factor * eps * integral of |f|
  double roundoff_factor = 100.0;
};

template <class Real, std::size_t N>
struct GkResult {
  std::array<Real, N> value{};
  std::array<Real, N> error{};
  std::array<Real, N> abs_value{};  // integral of |f|, for roundoff bounds
  long evaluations = 0;
  bool converged = false;
  bool roundoff_limited = false;  // met only the roundoff floor, not the tolerance
};

template <class Real>
struct Gk15Nodes {
  static constexpr std::array<Real, 8> xgk = {
      Real(0.991455371120812639206854697526329L), Real(0.949107912342758524526189684047851L),
      Real(0.864864423359769072789712788640926L), Real(0.741531185599394439863864773280788L),
      Real(0.586087235467691130294144845693013L), Real(0.405845151377397166906606412076961L),
      Real(0.207784955007898467600689403773245L), Real(0.0L)};
  static constexpr std::array<Real, 8> wgk = {
      Real(0.022935322010529224963732008058970L), Real(0.063092092629978553290700663189204L),
      Real(0.104790010322250183839876322541518L), Real(0.140653259715525918745189590510238L),
      Real(0.169004726639267902826583426598550L), Real(0.190350578064785409913256402421014L),
      Real(0.204432940075298892414161999234649L), Real(0.209482141084727828012999174891714L)};
  static constexpr std::array<Real, 4> wg = {
      Real(0.129484966168869693270611432679082L), Real(0.279705391489276667901467771423780L),
      Real(0.381830050505118944950369775488975L), Real(0.417959183673469387755102040816327L)};
};

template <class Real, std::size_t N>
struct GkSegment {
  Real a, b;
  std::array<Real, N> value, error, abs_value;
  bool splittable = true;
};

template <class Real, std::size_t N, class F>
GkSegment<Real, N> gk15(F& f, Real a, Real b) {
  using Nodes = Gk15Nodes<Real>;
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  constexpr Real uflow = std::numeric_limits<Real>::min();
  const Real center = (a + b) / 2;
  const Real half = (b - a) / 2;
  const Real abs_half = std::fabs(half);

  std::array<std::array<Real, N>, 15> fv;
  const std::array<Real, N> fc = f(center);
  for (int j = 0; j < 7; ++j) {
    const Real dx = half * Nodes::xgk[j];
    fv[2 * j] = f(center - dx);
    fv[2 * j + 1] = f(center + dx);
  }

  GkSegment<Real, N> seg{a, b, {}, {}, {}, true};
  for (std::size_t i = 0; i < N; ++i) {
    Real resg = fc[i] * Nodes::wg[3];
    Real resk = fc[i] * Nodes::wgk[7];
    Real resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
      const Real f1 = fv[2 * j][i];
      const Real f2 = fv[2 * j + 1][i];
      resk += Nodes::wgk[j] * (f1 + f2);
      resabs += Nodes::wgk[j] * (std::fabs(f1) + std::fabs(f2));
      if (j % 2 == 1) resg += Nodes::wg[j / 2] * (f1 + f2);
    }
    const Real reskh = resk / 2;
    Real resasc = Nodes::wgk[7] * std::fabs(fc[i] - reskh);
    for (int j = 0; j < 7; ++j) {
      resasc += Nodes::wgk[j] *
                (std::fabs(fv[2 * j][i] - reskh) + std::fabs(fv[2 * j + 1][i] - reskh));
    }
    const Real result = resk * half;
    resabs *= abs_half;
    resasc *= abs_half;
    Real err = std::fabs((resk - resg) * half);
    if (resasc != 0 && err != 0) {
      err = resasc * std::min(Real(1), std::pow(200 * err / resasc, Real(1.5)));
    }
    if (resabs > uflow / (50 * eps)) err = std::max(50 * eps * resabs, err);
    seg.value[i] = result;
    seg.error[i] = err;
    seg.abs_value[i] = resabs;
  }
  return seg;
}

/// `points` is the sorted partition a = p0 < p1 < ... < pk = b.
template <class Real, std::size_t N, class F>
GkResult<Real, N> integrate_partition(F&& f, std::span<const Real> points,
                                      const GkSettings& s) {
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  GkResult<Real, N> out;
  std::vector<GkSegment<Real, N>> segs;
  segs.reserve(points.size() + static_cast<std::size_t>(s.max_subdivisions) + 1);
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    if (!(points[k] < points[k + 1])) continue;
    segs.push_back(gk15<Real, N>(f, points[k], points[k + 1]));
    out.evaluations += 15;
  }

  auto totals = [&] {
    out.value.fill(0);
    out.error.fill(0);
    out.abs_value.fill(0);
    for (const auto& sg : segs) {
      for (std::size_t i = 0; i < N; ++i) {
        out.value[i] += sg.value[i];
        out.error[i] += sg.error[i];
        out.abs_value[i] += sg.abs_value[i];
      }
    }
  };
  auto tolerance = [&](std::size_t i) {
    return std::max(Real(s.abs_tol), Real(s.rel_tol) * std::fabs(out.value[i]));
  };
  auto status = [&] {
    bool ok = true, round_ok = true;
    for (std::size_t i = 0; i < N; ++i) {
      if (!(out.error[i] <= tolerance(i))) ok = false;
      const Real floor = Real(s.roundoff_factor) * eps * out.abs_value[i];
      if (!(out.error[i] <= std::max(tolerance(i), floor))) {
        round_ok = false;
      }
    }
    out.converged = ok;
    out.roundoff_limited = !ok && round_ok;
    return ok || round_ok;
  };

  totals();
  for (int iter = 0; iter < s.max_subdivisions; ++iter) {
    if (status()) return out;
    std::size_t worst = segs.size();
    Real worst_score = -1;
    for (std::size_t k = 0; k < segs.size(); ++k) {
      if (!segs[k].splittable) continue;
      Real score = 0;
      for (std::size_t i = 0; i < N; ++i) {
        const Real tol = std::max(tolerance(i), std::numeric_limits<Real>::min());
        score = std::max(score, segs[k].error[i] / tol);
      }
      if (score > worst_score) {
        worst_score = score;
        worst = k;
      }
    }
    if (worst == segs.size()) break;
    const auto parent = segs[worst];
    const Real mid = (parent.a + parent.b) / 2;
    if (!(parent.a < mid && mid < parent.b)) {
      segs[worst].splittable = false;
      continue;
    }
    segs[worst] = gk15<Real, N>(f, parent.a, mid);
    segs.push_back(gk15<Real, N>(f, mid, parent.b));
    out.evaluations += 30;
    totals();
  }
  status();
  return out;
}

}  // namespace symstable::detail
