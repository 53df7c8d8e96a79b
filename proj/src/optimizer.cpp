#include "entweb/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "entweb/concurrence.hpp"
#include "entweb/error.hpp"
#include "entweb/kernels.hpp"
#include "entweb/parallel.hpp"
#include "entweb/random.hpp"

namespace entweb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlatTol = 1e-8;
constexpr double kSamePoint = 1e-9;

FamilyParams permuted(const FamilyParams &p, const std::array<int, 3> &axes) {
  FamilyParams out = p;
  for (int k = 0; k < 3; ++k) {
    out.a[k] = p.a[axes[k]];
    out.b[k] = p.b[axes[k]];
    out.s2[k] = p.s2[axes[k]];
  }
  return out;
}

void require_physical(const FamilyParams &p) {
  for (int mu = 0; mu < 3; ++mu)
    if (p.s2[mu] < -1e-9)
      throw InputError("family weights give a negative second moment S^2 = " + std::to_string(p.s2[mu]));
}

double dist(const RegionPoint &a, const RegionPoint &b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

bool lex_less(const RegionPoint &a, const RegionPoint &b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

CaseLabel label_from(double c1, double c2, double tol) {
  const bool first = c1 >= -tol; // A_x A_y >= S_z^2
  const bool second = c2 > tol;  // A_y A_z > S_x^2
  if (first && second) return CaseLabel::I;
  if (!first && !second) return CaseLabel::II;
  if (first) return CaseLabel::III;
  return CaseLabel::IV;
}

CaseLabel classify_with_tol(const FamilyParams &p, double tol) {
  return label_from(p.a[0] * p.a[1] - p.s2[2], p.a[1] * p.a[2] - p.s2[0], tol);
}

// Largest t >= 0 keeping the point physical when coordinate `axis` is set to
// t with the other two fixed; empty if even t = 0 is outside.
std::optional<double> axis_limit(const FamilyParams &p, RegionPoint pt, int axis) {
  pt[axis] = 0.0;
  if (!in_physical_region(p, pt, 0.0)) return std::nullopt;
  const int j = (axis + 1) % 3;
  const int k = (axis + 2) % 3;
  double limit = p.a[j] * p.a[k];
  if (p.a[axis] > 0.0) limit = std::min(limit, f_A(p, pt) / p.a[axis]);
  if (p.s2[axis] > 1e-15) {
    limit = std::min(limit, f_S(p, pt) * p.s2[axis]);
  } else {
    limit = 0.0;
  }
  return std::max(limit, 0.0);
}

// f_A = f_S = 0 inside the coordinate plane orthogonal to `skip`.
std::optional<RegionPoint> plane_crossing(const FamilyParams &p, int skip) {
  const int u = (skip + 1) % 3;
  const int v = (skip + 2) % 3;
  if (p.s2[u] <= 1e-15 || p.s2[v] <= 1e-15) return std::nullopt;
  // a_u U + a_v V = prod A;  U / s_u + V / s_v = 1.
  const double au = p.a[u], av = p.a[v];
  const double rhs = p.a[0] * p.a[1] * p.a[2];
  const double det = au / p.s2[v] - av / p.s2[u];
  if (std::abs(det) < 1e-14) return std::nullopt;
  RegionPoint pt;
  pt[u] = (rhs / p.s2[v] - av) / det;
  pt[v] = (au - rhs / p.s2[u]) / det;
  if (pt[u] < -kRegionTol || pt[v] < -kRegionTol) return std::nullopt;
  pt[u] = std::max(pt[u], 0.0);
  pt[v] = std::max(pt[v], 0.0);
  return pt;
}

std::optional<double> gamma_at(const FamilyParams &p, const RegionPoint &pt) {
  if (!in_physical_region(p, pt, kRegionTol)) return std::nullopt;
  try {
    return lambdas(p, pt).gamma;
  } catch (const NumericError &) {
    return std::nullopt;
  }
}

void push_candidate(std::vector<Candidate> &out, const FamilyParams &p, std::string name, const RegionPoint &pt) {
  if (auto g = gamma_at(p, pt)) out.push_back({std::move(name), pt, *g});
}

// gamma at P_1 from the smaller root of t^2 - 2 f_0 t + f_B = 0 (lambda_3 = 0 there).
void push_p1(std::vector<Candidate> &out, const FamilyParams &p) {
  const auto pt = plane_crossing(p, 1);
  if (!pt || !in_physical_region(p, *pt, kRegionTol)) return;
  try {
    const auto roots = p1_quadratic_roots(p, *pt);
    out.push_back({"P_1", *pt, std::sqrt(std::max(std::min(roots[0], roots[1]), 0.0))});
  } catch (const NumericError &) {
  }
}

std::vector<Candidate> union_candidates(const FamilyParams &p) {
  static constexpr const char *axis_name = "XYZ";
  std::vector<Candidate> out;
  for (int mu = 0; mu < 3; ++mu) {
    RegionPoint pa;
    pa[mu] = std::max(p.a[(mu + 1) % 3] * p.a[(mu + 2) % 3], 0.0);
    push_candidate(out, p, std::string("P_A") + axis_name[mu], pa);
    RegionPoint ps;
    ps[mu] = std::max(p.s2[mu], 0.0);
    push_candidate(out, p, std::string("P_S") + axis_name[mu], ps);
  }
  for (int skip = 0; skip < 3; ++skip)
    if (auto pt = plane_crossing(p, skip)) {
      static constexpr const char *plane = "XYZ";
      push_candidate(out, p, std::string("P_1(") + plane[skip] + "=0)", *pt);
    }
  if (auto g = region_geometry(p); g.p0) push_candidate(out, p, "P_0", g.p0->point);
  push_candidate(out, p, "origin", RegionPoint{});
  return out;
}

const Candidate &best_of(const std::vector<Candidate> &c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i].gamma > c[best].gamma) best = i;
  return c[best];
}

bool is_flat(const std::vector<Candidate> &c, double gamma_star, double tol = kFlatTol, double same = kSamePoint) {
  std::vector<RegionPoint> tops;
  for (const auto &cand : c) {
    if (cand.gamma < gamma_star - tol) continue;
    if (std::none_of(tops.begin(), tops.end(), [&](const RegionPoint &q) { return dist(q, cand.point) <= same; }))
      tops.push_back(cand.point);
  }
  return tops.size() > 1;
}

double beta_at(const FamilyParams &p, const RegionPoint &pt) {
  if (!in_physical_region(p, pt, 0.0)) return kInf;
  try {
    return lambdas(p, pt).beta;
  } catch (const NumericError &) {
    return kInf;
  }
}

// 26 neighbours of the 3x3x3 stencil, normalized.
std::vector<Vec3> stencil_directions() {
  std::vector<Vec3> dirs;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      for (int k = -1; k <= 1; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const double norm = std::sqrt(double(i * i + j * j + k * k));
        dirs.push_back({i / norm, j / norm, k / norm});
      }
  return dirs;
}

} // namespace

const char *case_name(CaseLabel label) {
  switch (label) {
  case CaseLabel::I:
    return "I";
  case CaseLabel::II:
    return "II";
  case CaseLabel::III:
    return "III";
  case CaseLabel::IV:
    return "IV";
  case CaseLabel::DEGENERATE:
    return "DEGENERATE";
  }
  return "?";
}

CanonicalParams canonicalize(const FamilyParams &params) {
  CanonicalParams out;
  std::stable_sort(out.axes.begin(), out.axes.end(), [&](int i, int j) { return params.a[i] > params.a[j]; });
  out.params = permuted(params, out.axes);
  return out;
}

RegionPoint to_input_axes(const RegionPoint &canonical, const std::array<int, 3> &axes) {
  RegionPoint out;
  for (int k = 0; k < 3; ++k) out[axes[k]] = canonical[k];
  return out;
}

CaseLabel classify_inequalities(const FamilyParams &canonical) { return classify_with_tol(canonical, kCaseTol); }

CaseLabel classify_case(const FamilyParams &canonical) {
  const auto &a = canonical.a;
  if (a[1] - a[0] > kOrderTol || a[2] - a[1] > kOrderTol)
    throw InputError("classify_case expects canonical ordering A_x >= A_y >= A_z");
  if (a[0] - a[1] <= kOrderTol || a[1] - a[2] <= kOrderTol) return CaseLabel::DEGENERATE;
  return classify_inequalities(canonical);
}

std::optional<CaseLabel> perturbed_case(const FamilyParams &canonical) {
  std::optional<CaseLabel> seen;
  for (double eps : {1e-9, 1e-10}) {
    std::array<double, 3> a = canonical.a;
    double a0 = canonical.a0;
    a[0] += eps;
    if (a[2] >= eps) {
      a[2] -= eps;
    } else if (a0 >= eps) {
      a0 -= eps;
    } else {
      return std::nullopt;
    }
    const FamilyParams shifted = family_from_weights(canonical.n, a, a0);
    if (!(shifted.a[0] > shifted.a[1] && shifted.a[1] > shifted.a[2])) return std::nullopt;
    const CaseLabel label = classify_with_tol(shifted, 0.0);
    if (seen && *seen != label) return std::nullopt;
    seen = label;
  }
  return seen;
}

std::vector<Candidate> case_candidates(const FamilyParams &p, CaseLabel label) {
  std::vector<Candidate> out;
  RegionPoint psz;
  psz.z = std::max(p.s2[2], 0.0);
  RegionPoint pax;
  pax.x = std::max(p.a[1] * p.a[2], 0.0);
  switch (label) {
  case CaseLabel::I:
    push_candidate(out, p, "P_SZ", psz);
    break;
  case CaseLabel::II:
    push_candidate(out, p, "P_AX", pax);
    break;
  case CaseLabel::III:
    push_candidate(out, p, "P_SZ", psz);
    push_candidate(out, p, "P_AX", pax);
    break;
  case CaseLabel::IV:
    push_p1(out, p);
    break;
  case CaseLabel::DEGENERATE:
    return union_candidates(p);
  }
  return out;
}

InnerResult max_gamma_inner(const FamilyParams &params) {
  require_physical(params);
  const auto canon = canonicalize(params);
  const auto &p = canon.params;
  InnerResult r;
  r.case_label = classify_case(p);
  r.resolved_case = r.case_label == CaseLabel::DEGENERATE ? perturbed_case(p) : std::optional(r.case_label);
  auto cands = case_candidates(p, r.case_label);
  const auto all = r.case_label == CaseLabel::DEGENERATE ? cands : union_candidates(p);
  if (cands.empty()) cands = all; // candidate left the region through rounding
  if (cands.empty()) throw NumericError("max_gamma_inner: physical region has no candidate vertex");
  const Candidate &best = best_of(cands);
  r.gamma_star = best.gamma;
  r.vertex = best.name;
  r.point_star = to_input_axes(best.point, canon.axes);
  r.flat = is_flat(all, r.gamma_star);
  const double beta = lambdas(p, best.point).beta;
  const double n = params.n;
  r.beta_min = beta;
  r.concurrence_star = std::max({(r.gamma_star - params.a0) / n, (params.a0 - beta) / n, 0.0});
  r.beta_branch = (params.a0 - beta) > (r.gamma_star - params.a0) && params.a0 - beta > 0.0;
  return r;
}

BetaResult min_beta(const FamilyParams &params, int resolution) {
  require_physical(params);
  const auto &p = params;
  std::array<double, 3> h{};
  for (int mu = 0; mu < 3; ++mu)
    h[mu] = std::max(std::min(p.a[(mu + 1) % 3] * p.a[(mu + 2) % 3], p.s2[mu]), 0.0) / resolution;

  RegionPoint best_pt;
  double best = beta_at(p, best_pt);
  auto consider = [&](const RegionPoint &pt) {
    const double v = beta_at(p, pt);
    if (v < best || (v == best && lex_less(pt, best_pt))) {
      best = v;
      best_pt = pt;
    }
  };
  for (int i = 0; i <= resolution; ++i)
    for (int j = 0; j <= resolution; ++j) {
      RegionPoint pt;
      pt.x = i * h[0];
      pt.y = j * h[1];
      const auto zmax = axis_limit(p, pt, 2);
      if (!zmax) continue;
      const int kmax = h[2] > 0.0 ? static_cast<int>(std::floor(*zmax / h[2] + 1e-9)) : 0;
      for (int k = 0; k <= std::min(kmax, resolution); ++k) {
        pt.z = k * h[2];
        consider(pt);
      }
      pt.z = *zmax;
      consider(pt);
      for (int axis = 0; axis < 2; ++axis) {
        RegionPoint q = pt;
        q.z = 0.0;
        if (auto lim = axis_limit(p, q, axis)) {
          q[axis] = *lim;
          consider(q);
        }
      }
    }

  // Compass search; beta is concave in the mean spin, so its minimum sits on
  // the boundary, which the projected lattice points already sample.
  const auto dirs = stencil_directions();
  double step = std::max({h[0], h[1], h[2]});
  const double floor_step = 1e-12 * std::max(1.0, static_cast<double>(p.n));
  while (step > floor_step) {
    bool moved = false;
    for (const auto &d : dirs) {
      RegionPoint q;
      for (int mu = 0; mu < 3; ++mu) q[mu] = std::max(best_pt[mu] + step * d[mu], 0.0);
      const double v = beta_at(p, q);
      if (v < best) {
        best = v;
        best_pt = q;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return {best, best_pt};
}

InnerResult max_concurrence_inner(const FamilyParams &params) {
  InnerResult r = max_gamma_inner(params);
  const double n = params.n;
  const double gamma_branch = std::max((r.gamma_star - params.a0) / n, 0.0);
  // beta >= 0, so the beta branch cannot beat A_0 / N.
  if (params.a0 / n > gamma_branch) {
    const BetaResult b = min_beta(params);
    r.beta_min = b.beta_min;
    const double beta_branch = (params.a0 - b.beta_min) / n;
    if (params.a0 - b.beta_min >= n / (n - 1.0))
      throw NumericError("beta branch breaks A_0 - beta < N/(N-1)");
    if (beta_branch > gamma_branch) {
      r.beta_branch = true;
      r.point_star = b.point;
      r.concurrence_star = beta_branch;
      return r;
    }
  }
  r.beta_branch = false;
  r.concurrence_star = gamma_branch;
  return r;
}

namespace {

struct Cell {
  std::array<double, 3> a{};
  double a0 = 0.0;
};

// Physical weights for the outer search, or empty.
std::optional<FamilyParams> outer_params(int n, const std::array<double, 3> &a) {
  const double a0 = n - a[0] - a[1] - a[2];
  if (a0 < 0.0 || a[0] < 0.0 || a[1] < 0.0 || a[2] < 0.0) return std::nullopt;
  const double cap = static_cast<double>(n) * n / (2.0 * (n - 1.0));
  for (double w : a)
    if (w + a0 > cap) return std::nullopt;
  return family_from_weights(n, a, a0);
}

// Alternating projections onto {a >= 0, sum <= N, a_mu + A_0 <= cap}. The
// optimum sits on the A_0 = 0 face; rejecting outside points outright starves
// the local searches there.
std::array<double, 3> project_outer(int n, std::array<double, 3> a) {
  const double cap = static_cast<double>(n) * n / (2.0 * (n - 1.0));
  for (int pass = 0; pass < 8; ++pass) {
    for (auto &w : a) w = std::max(w, 0.0);
    const double excess = a[0] + a[1] + a[2] - n;
    if (excess > 0.0)
      for (auto &w : a) w -= excess / 3.0;
    for (auto &w : a) w = std::max(w, 0.0);
    // a_mu + A_0 <= cap reads as a_nu + a_rho >= N - cap for the other two.
    bool moved = false;
    for (int mu = 0; mu < 3; ++mu) {
      double &u = a[(mu + 1) % 3];
      double &v = a[(mu + 2) % 3];
      const double short_by = (n - cap) - (u + v);
      if (short_by > 0.0) {
        u += short_by / 2.0;
        v += short_by / 2.0;
        moved = true;
      }
    }
    if (!moved && excess <= 0.0) break;
  }
  return a;
}

double outer_value(int n, const std::array<double, 3> &a) {
  const auto p = outer_params(n, project_outer(n, a));
  if (!p) return -kInf;
  try {
    return max_concurrence_inner(*p).concurrence_star;
  } catch (const NumericError &) {
    return -kInf;
  }
}

double constraint_error(const FamilyParams &p, const RegionPoint &pt) {
  const double n = p.n;
  const double t = (n / 2.0 - 1.0) * (n / 2.0 - 1.0);
  const double wide = (3.0 * n - 2.0) / 4.0;
  std::array<double, 3> target{t, wide, wide};
  std::array<double, 3> got = p.s2;
  std::sort(target.begin(), target.end());
  std::sort(got.begin(), got.end());
  double err = std::abs(p.a0);
  for (int k = 0; k < 3; ++k) err = std::max(err, std::abs(got[k] - target[k]));
  // The mean spin lies in the eigenspace where S_mu^2 = (N/2-1)^2 with squared
  // length (N/2-1)^2. At N = 6 that eigenspace is all of R^3 and the optimum
  // is any rotation of the Dicke state.
  double inside = 0.0, outside = 0.0;
  bool any = false;
  for (int mu = 0; mu < 3; ++mu) {
    if (std::abs(p.s2[mu] - t) <= 1e-3) {
      inside += pt[mu];
      any = true;
    } else {
      outside = std::max(outside, std::abs(pt[mu]));
    }
  }
  const double mean_err = any ? std::max(std::abs(inside - t), outside) : kInf;
  return std::max(err, mean_err);
}

} // namespace

GlobalResult global_max(int n, int grid_depth, int refine_iters, std::uint64_t seed) {
  if (n < 3 || n > 64) throw InputError("global_max needs 3 <= N <= 64");
  if (grid_depth < 1) throw InputError("grid_depth must be positive");
  const double step0 = static_cast<double>(n) / grid_depth;

  std::vector<std::array<double, 3>> cells;
  for (int i = grid_depth; i >= 0; --i)
    for (int j = std::min(i, grid_depth - i); j >= 0; --j)
      for (int k = std::min(j, grid_depth - i - j); k >= 0; --k) {
        const std::array<double, 3> a{i * step0, j * step0, k * step0};
        if (outer_params(n, a)) cells.push_back(a);
      }
  std::vector<double> values(cells.size());
  parallel_for(cells.size(), 8, [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c) values[c] = outer_value(n, cells[c]);
  });
  std::size_t best_cell = 0;
  for (std::size_t c = 1; c < cells.size(); ++c)
    if (values[c] > values[best_cell]) best_cell = c;

  std::array<double, 3> best = cells[best_cell];
  double best_value = values[best_cell];
  auto dirs = stencil_directions();
  auto rng = sample_engine(seed, 0x6f7574, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < 16; ++r) {
    Vec3 d{gauss(rng), gauss(rng), gauss(rng)};
    const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    for (auto &v : d) v /= norm;
    dirs.push_back(d);
  }
  double step = step0;
  const double floor_step = 1e-13 * n;
  for (int it = 0; it < refine_iters && step > floor_step; ++it) {
    std::vector<double> trial(dirs.size());
    parallel_for(dirs.size(), 1, [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        std::array<double, 3> a = best;
        for (int mu = 0; mu < 3; ++mu) a[mu] += step * dirs[k][mu];
        trial[k] = outer_value(n, a);
      }
    });
    std::size_t arg = dirs.size();
    double top = best_value;
    for (std::size_t k = 0; k < dirs.size(); ++k)
      if (trial[k] > top) {
        top = trial[k];
        arg = k;
      }
    if (arg == dirs.size()) {
      step *= 0.5;
      continue;
    }
    for (int mu = 0; mu < 3; ++mu) best[mu] += step * dirs[arg][mu];
    best_value = top;
  }

  // The maximum sits on a narrow ridge that fixed stencils cannot follow;
  // restarted Nelder-Mead adapts its simplex to it.
  const auto nm = [&](double size) {
    std::array<std::array<double, 3>, 4> xs;
    std::array<double, 4> fs;
    xs[0] = best;
    fs[0] = best_value;
    for (int k = 1; k < 4; ++k) {
      xs[k] = best;
      xs[k][k - 1] += (best[k - 1] > size ? -size : size);
      fs[k] = outer_value(n, xs[k]);
    }
    const auto mix = [](const std::array<double, 3> &c, const std::array<double, 3> &w, double t) {
      std::array<double, 3> r;
      for (int mu = 0; mu < 3; ++mu) r[mu] = c[mu] + t * (w[mu] - c[mu]);
      return r;
    };
    for (int it = 0; it < refine_iters; ++it) {
      std::array<int, 4> idx{0, 1, 2, 3};
      std::sort(idx.begin(), idx.end(), [&](int u, int v) { return fs[u] > fs[v]; });
      const int hi = idx[0], lo = idx[3];
      double spread = 0.0;
      for (int k = 0; k < 4; ++k)
        for (int mu = 0; mu < 3; ++mu) spread = std::max(spread, std::abs(xs[k][mu] - xs[hi][mu]));
      if (spread < floor_step) break;
      std::array<double, 3> c{};
      for (int k = 0; k < 4; ++k)
        if (k != lo)
          for (int mu = 0; mu < 3; ++mu) c[mu] += xs[k][mu] / 3.0;
      const auto xr = mix(c, xs[lo], -1.0);
      const double fr = outer_value(n, xr);
      if (fr > fs[hi]) {
        const auto xe = mix(c, xs[lo], -2.0);
        const double fe = outer_value(n, xe);
        if (fe > fr) { xs[lo] = xe; fs[lo] = fe; } else { xs[lo] = xr; fs[lo] = fr; }
      } else if (fr > fs[idx[2]]) {
        xs[lo] = xr;
        fs[lo] = fr;
      } else {
        const auto xc = fr > fs[lo] ? mix(c, xs[lo], -0.5) : mix(c, xs[lo], 0.5);
        const double fc = outer_value(n, xc);
        if (fc > std::max(fr, fs[lo])) {
          xs[lo] = xc;
          fs[lo] = fc;
        } else {
          for (int k = 0; k < 4; ++k)
            if (k != hi) {
              xs[k] = mix(xs[hi], xs[k], 0.5);
              fs[k] = outer_value(n, xs[k]);
            }
        }
      }
    }
    for (int k = 0; k < 4; ++k)
      if (fs[k] > best_value) {
        best_value = fs[k];
        best = xs[k];
      }
  };
  int idle = 0;
  for (int r = 0; r < 400 && idle < 12; ++r) {
    const double before = best_value;
    nm(step0 * std::pow(0.5, r % 6));
    idle = best_value > before ? 0 : idle + 1;
  }

  GlobalResult out;
  out.n = n;
  out.grid_cells = cells.size();
  best = project_outer(n, best);
  const auto final_params = outer_params(n, best);
  if (!final_params) throw NumericError("global_max: refined point left the physical region");
  out.argmax_params = canonicalize(*final_params).params;
  const InnerResult inner = max_concurrence_inner(out.argmax_params);
  out.c_max = inner.concurrence_star;
  out.argmax_point = inner.point_star;
  out.case_label = inner.case_label;
  // The refined weights are only good to about the square root of the
  // objective accuracy, so flatness is judged at the constraint tolerance.
  out.flat = is_flat(union_candidates(out.argmax_params), inner.gamma_star, 1e-3, 1e-3);
  out.constraint_error = constraint_error(out.argmax_params, out.argmax_point);
  out.constraints_ok = out.constraint_error <= 1e-3;
  const GridOracleResult oracle = grid_oracle(out.argmax_params, 60);
  out.oracle_gamma = oracle.gamma_max;
  out.oracle_spacing = oracle.spacing;
  out.oracle_agrees = std::abs(oracle.gamma_max - inner.gamma_star) <= 2.0 * oracle.spacing + 1e-12;
  return out;
}

GridOracleResult grid_oracle(const FamilyParams &params, int resolution) {
  if (resolution < 8) throw InputError("grid_oracle needs resolution >= 8");
  require_physical(params);
  const auto &p = params;
  std::array<double, 3> h{};
  for (int mu = 0; mu < 3; ++mu)
    h[mu] = std::max(std::min(p.a[(mu + 1) % 3] * p.a[(mu + 2) % 3], p.s2[mu]), 0.0) / resolution;

  const auto block = triplet_block(p);
  const std::size_t rows = static_cast<std::size_t>(resolution) + 1;

  struct Partial {
    double gamma = -kInf;
    RegionPoint point;
    std::size_t evaluated = 0;
  };
  std::vector<Partial> partials(rows);

  parallel_for(rows, 1, [&](std::size_t b, std::size_t e) {
    std::vector<double> xs, ys, zs, c2, c1, c0;
    for (std::size_t i = b; i < e; ++i) {
      xs.clear();
      ys.clear();
      zs.clear();
      auto add = [&](const RegionPoint &q) {
        xs.push_back(q.x);
        ys.push_back(q.y);
        zs.push_back(q.z);
      };
      for (int j = 0; j <= resolution; ++j) {
        RegionPoint pt;
        pt.x = static_cast<double>(i) * h[0];
        pt.y = j * h[1];
        // Lattice column along Z plus its end point on the boundary.
        if (auto zmax = axis_limit(p, pt, 2)) {
          const int kmax = h[2] > 0.0 ? std::min(resolution, static_cast<int>(std::floor(*zmax / h[2] + 1e-9))) : 0;
          for (int k = 0; k <= kmax; ++k) {
            pt.z = k * h[2];
            add(pt);
          }
          if (*zmax > kmax * h[2]) {
            pt.z = *zmax;
            add(pt);
          }
        }
        // Projections along X and Y from the (j, i) lattice of the other planes.
        RegionPoint qx;
        qx.y = j * h[1];
        qx.z = static_cast<double>(i) * h[2];
        if (auto lim = axis_limit(p, qx, 0)) {
          qx.x = *lim;
          add(qx);
        }
        RegionPoint qy;
        qy.x = j * h[0];
        qy.z = static_cast<double>(i) * h[2];
        if (auto lim = axis_limit(p, qy, 1)) {
          qy.y = *lim;
          add(qy);
        }
      }
      const std::size_t count = xs.size();
      c2.resize(count);
      c1.resize(count);
      c0.resize(count);
      kernels::triplet_charpoly(block, xs, ys, zs, c2, c1, c0);
      Partial &part = partials[i];
      for (std::size_t q = 0; q < count; ++q) {
        double g;
        try {
          g = spectral_from_charpoly(c2[q], c1[q], c0[q]).gamma;
        } catch (const NumericError &) {
          continue;
        }
        ++part.evaluated;
        const RegionPoint pt{xs[q], ys[q], zs[q]};
        if (g > part.gamma || (g == part.gamma && lex_less(pt, part.point))) {
          part.gamma = g;
          part.point = pt;
        }
      }
    }
  });

  GridOracleResult out;
  out.gamma_max = -kInf;
  for (const auto &part : partials) {
    out.evaluated += part.evaluated;
    if (part.gamma > out.gamma_max || (part.gamma == out.gamma_max && lex_less(part.point, out.point))) {
      out.gamma_max = part.gamma;
      out.point = part.point;
    }
  }
  out.spacing = std::max({h[0], h[1], h[2]});
  if (out.evaluated == 0) throw NumericError("grid_oracle: no feasible lattice point");
  return out;
}

PairDensity symmetrized_pair_marginal(const DensityOperator &rho) {
  const int n = rho.n_qubits();
  if (n < 2) throw InputError("pair marginals need at least two qubits");
  if (n <= 5) return partial_trace_pair(permutation_twirl(rho), 1, 2);
  ComplexMatrix acc(4, 4);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const ComplexMatrix m = partial_trace_pair(rho, i, j).matrix();
      acc += m;
      // The (j, i) marginal is the (i, j) one with the two qubits swapped.
      static constexpr std::array<int, 4> swap = {0, 2, 1, 3};
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) acc(a, c) += m(swap[a], swap[c]);
    }
  acc *= cplx(1.0 / (static_cast<double>(n) * (n - 1)));
  for (int a = 0; a < 4; ++a) {
    acc(a, a) = acc(a, a).real();
    for (int c = a + 1; c < 4; ++c) acc(c, a) = std::conj(acc(a, c));
  }
  return PairDensity(std::move(acc));
}

RandomCheckResult random_state_bound_check(int n, std::size_t samples, std::uint64_t seed, bool symmetric_pure_only) {
  if (n < 2 || n > 8) throw InputError("random_state_bound_check needs 2 <= N <= 8");
  RandomCheckResult out;
  out.samples.resize(samples);
  const std::size_t dim = std::size_t{1} << n;
  parallel_for(samples, 16, [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) {
      auto rng = sample_engine(seed, 0x72616e64, s);
      RandomSample &rs = out.samples[s];
      ComplexMatrix pair(4, 4);
      if (symmetric_pure_only || s % 2 == 1) {
        rs.pure_symmetric = true;
        pair = partial_trace_pair(random_symmetric_pure(n, rng), 1, 2).matrix();
      } else {
        std::uniform_int_distribution<std::size_t> rank_dist(1, dim);
        const std::size_t rank = rank_dist(rng);
        rs.rank = static_cast<int>(rank);
        pair = symmetrized_pair_marginal(DensityOperator(n, ginibre_density(dim, rank, rng))).matrix();
      }
      rs.concurrence = wootters_concurrence(pair).value;
      // Singlet weight <psi-|rho|psi-> with psi- = (|01> - |10>)/sqrt2.
      rs.a0 = n * 0.5 * (pair(1, 1) + pair(2, 2) - pair(1, 2) - pair(2, 1)).real();
    }
  });
  for (std::size_t s = 0; s < samples; ++s)
    if (out.samples[s].concurrence > out.max_concurrence || s == 0) {
      out.max_concurrence = out.samples[s].concurrence;
      out.argmax_index = s;
    }
  if (samples > 0) {
    const auto &top = out.samples[out.argmax_index];
    out.argmax_description = "sample " + std::to_string(out.argmax_index) + ": " +
                             (top.pure_symmetric ? std::string("random symmetric pure state")
                                                 : "twirled Ginibre state of rank " + std::to_string(top.rank));
  }
  return out;
}

} // namespace entweb
