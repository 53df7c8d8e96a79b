#include "entweb/symmetric_family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "entweb/error.hpp"

namespace entweb {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Columns: (|11>-|00>)/sqrt2, (|11>+|00>)/sqrt2, (|10>+|01>)/sqrt2,
// (|10>-|01>)/sqrt2 in the computational basis {|00>,|01>,|10>,|11>}.
const ComplexMatrix &family_basis() {
  static const ComplexMatrix e(4, 4,
                               {-kInvSqrt2, kInvSqrt2, 0.0, 0.0,   //
                                0.0, 0.0, kInvSqrt2, -kInvSqrt2,  //
                                0.0, 0.0, kInvSqrt2, kInvSqrt2,   //
                                kInvSqrt2, kInvSqrt2, 0.0, 0.0});
  return e;
}

FamilyParams complete(int n, std::array<double, 3> a, double a0) {
  FamilyParams p;
  p.n = n;
  p.a = a;
  p.a0 = a0;
  const double sum = a[0] + a[1] + a[2];
  const double nn = static_cast<double>(n);
  for (int mu = 0; mu < 3; ++mu) {
    p.b[mu] = sum - 2.0 * a[mu];
    p.s2[mu] = (nn * nn - 2.0 * (nn - 1.0) * (a[mu] + a0)) / 4.0;
  }
  p.total_spin_sq = p.s2[0] + p.s2[1] + p.s2[2];
  return p;
}

double sq(double v) { return v * v; }

} // namespace

FamilyParams family_from_weights(int n, std::array<double, 3> a, double a0) {
  if (n < 2) throw InputError("family parameters need N >= 2");
  for (double w : {a[0], a[1], a[2], a0})
    if (w < -1e-12) throw InputError("family weight " + std::to_string(w) + " is negative");
  if (std::abs(a[0] + a[1] + a[2] + a0 - n) > 1e-10) throw InputError("family weights must sum to N");
  return complete(n, a, a0);
}

FamilyParams family_from_second_moments(int n, std::array<double, 3> s2) {
  if (n < 2) throw InputError("family parameters need N >= 2");
  const double nn = static_cast<double>(n);
  const double total = s2[0] + s2[1] + s2[2];
  const double a0 = (nn * (nn + 2.0) - 4.0 * total) / (4.0 * (nn - 1.0));
  std::array<double, 3> a{};
  for (int mu = 0; mu < 3; ++mu) a[mu] = (nn * nn - 4.0 * s2[mu]) / (2.0 * (nn - 1.0)) - a0;
  for (double w : {a[0], a[1], a[2], a0})
    if (w < -1e-9) throw NumericError("second moments give a negative family weight " + std::to_string(w));
  FamilyParams p = complete(n, a, a0);
  p.s2 = s2;
  p.total_spin_sq = total;
  return p;
}

FamilyState params_from_moments(const CollectiveMoments &moments) {
  double scale = 1.0;
  for (int mu = 0; mu < 3; ++mu) scale = std::max(scale, std::abs(moments.corr[mu][mu]));
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu)
      if (mu != nu && std::abs(moments.corr[mu][nu]) > 1e-9 * scale)
        throw InputError("params_from_moments: correlation tensor is not diagonal; apply principal_axes first");
  FamilyState out;
  out.params = family_from_second_moments(moments.n,
                                          {moments.corr[0][0], moments.corr[1][1], moments.corr[2][2]});
  for (int mu = 0; mu < 3; ++mu) {
    out.point[mu] = sq(moments.mean_spin[mu]);
    out.signs[mu] = moments.mean_spin[mu] < 0.0 ? -1 : 1;
  }
  return out;
}

ComplexMatrix family_matrix(const FamilyParams &params, const RegionPoint &point, const SignVector &signs) {
  const double inv_n = 1.0 / params.n;
  std::array<double, 3> m{};
  for (int mu = 0; mu < 3; ++mu) m[mu] = signs[mu] * std::sqrt(std::max(point[mu], 0.0));
  const cplx i(0.0, 1.0);
  // Right-handed spin operators with |1> = up put -i<S_y> above the diagonal.
  const ComplexMatrix block(4, 4,
                            {params.a[0], m[2], -i * m[1], 0.0, //
                             m[2], params.a[1], m[0], 0.0,      //
                             i * m[1], m[0], params.a[2], 0.0,  //
                             0.0, 0.0, 0.0, params.a0});
  const auto &e = family_basis();
  return (e * block * e.adjoint()) * cplx(inv_n);
}

PairDensity build_rho(const FamilyParams &params, const RegionPoint &point, const SignVector &signs) {
  ComplexMatrix m = family_matrix(params, point, signs);
  for (int r = 0; r < 4; ++r)
    for (int c = r; c < 4; ++c) {
      const cplx avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
      m(r, c) = avg;
      m(c, r) = std::conj(avg);
    }
  if (!is_psd(m, 1e-10)) throw NumericError("build_rho: point lies outside the physical region");
  return PairDensity(std::move(m));
}

double f_A(const FamilyParams &p, const RegionPoint &pt) {
  return p.a[0] * p.a[1] * p.a[2] - p.a[0] * pt.x - p.a[1] * pt.y - p.a[2] * pt.z;
}

double f_S(const FamilyParams &p, const RegionPoint &pt) {
  double value = 1.0;
  for (int mu = 0; mu < 3; ++mu) {
    if (p.s2[mu] <= 1e-15) {
      if (pt[mu] > 1e-15) return -std::numeric_limits<double>::infinity();
      continue;
    }
    value -= pt[mu] / p.s2[mu];
  }
  return value;
}

double f_0(const FamilyParams &p, const RegionPoint &pt) {
  return sq(p.a[0]) + sq(p.a[1]) + sq(p.a[2]) - 2.0 * (pt.x + pt.y + pt.z);
}

double f_B(const FamilyParams &p, const RegionPoint &pt) {
  const auto &b = p.b;
  return -b[0] * b[1] * b[2] * (b[0] + b[1] + b[2]) + 4.0 * b[1] * b[2] * pt.x + 4.0 * b[0] * b[2] * pt.y +
         4.0 * b[0] * b[1] * pt.z;
}

bool in_region_V(const FamilyParams &p, const RegionPoint &pt, double tol) {
  return pt.x >= -tol && pt.y >= -tol && pt.z >= -tol && f_A(p, pt) >= -tol && f_S(p, pt) >= -tol;
}

bool in_region_W(const FamilyParams &p, const RegionPoint &pt, double tol) {
  return f_A(p, pt) >= -tol && f_B(p, pt) >= -tol;
}

bool in_physical_region(const FamilyParams &p, const RegionPoint &pt, double tol) {
  if (!in_region_V(p, pt, tol)) return false;
  for (int mu = 0; mu < 3; ++mu)
    if (p.a[(mu + 1) % 3] * p.a[(mu + 2) % 3] - pt[mu] < -tol) return false;
  return true;
}

namespace {

// t: roots of t^3 - e1 t^2 + e2 t - e3, descending.
SpectralData from_squares(std::array<double, 3> t, double e1, double e3, double fa) {
  SpectralData s;
  const double scale = std::max(1.0, t[0]);
  // With the top root well separated, the lower pair is better obtained from
  // its sum e1 - t0 and product e3 / t0 than from the trigonometric formula,
  // which loses half the digits when both are near zero.
  if (t[0] > 0.0 && t[1] < 0.5 * t[0]) {
    const double sum = e1 - t[0];
    const double prod = e3 / t[0];
    const double root = std::sqrt(std::max(sum * sum - 4.0 * prod, 0.0));
    const double upper = sum >= 0.0 ? 0.5 * (sum + root) : 0.5 * (sum - root);
    const double lower = upper != 0.0 ? prod / upper : 0.0;
    t[1] = std::max(upper, lower);
    t[2] = std::min(upper, lower);
  }
  for (int k = 0; k < 3; ++k) {
    if (t[k] < -1e-9 * scale) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e (largest %.3e)", t[k], t[0]);
      throw NumericError(std::string("triplet spectrum has a negative eigenvalue ") + buf);
    }
    s.lambdas[k] = std::sqrt(std::max(t[k], 0.0));
  }
  // The smallest root loses half its digits under the square root; recover it
  // from the product l1 l2 l3 = f_A when it is small.
  if (fa >= 0.0 && t[2] < 1e-6 * scale) {
    const double l12 = s.lambdas[0] * s.lambdas[1];
    if (l12 > 1e-9 * scale) s.lambdas[2] = std::min(fa / l12, s.lambdas[1]);
  }
  s.beta = s.lambdas[0] + s.lambdas[1] + s.lambdas[2];
  s.gamma = s.lambdas[0] - s.lambdas[1] - s.lambdas[2];
  return s;
}

} // namespace

SpectralData lambdas(const FamilyParams &params, const RegionPoint &point) {
  // On a coordinate axis the cubic factorizes; use the exact roots there.
  int nonzero = 0;
  int axis = 2;
  for (int mu = 0; mu < 3; ++mu)
    if (point[mu] != 0.0) {
      ++nonzero;
      axis = mu;
    }
  if (nonzero <= 1) {
    const int j = (axis + 1) % 3;
    const int k = (axis + 2) % 3;
    const double disc = sq(params.a[j] + params.a[k]) - 4.0 * std::max(point[axis], 0.0);
    if (disc >= 0.0) {
      // The signed roots square to the eigenvalues of the block product.
      auto roots = axis_roots(params, static_cast<Axis>(axis), std::sqrt(std::max(point[axis], 0.0)));
      for (auto &r : roots) r = std::abs(r);
      std::sort(roots.begin(), roots.end(), std::greater<>());
      SpectralData s;
      s.lambdas = roots;
      s.beta = s.lambdas[0] + s.lambdas[1] + s.lambdas[2];
      s.gamma = s.lambdas[0] - s.lambdas[1] - s.lambdas[2];
      return s;
    }
  }
  const double e1 = f_0(params, point);
  const double fa = f_A(params, point);
  const double e2 = (e1 * e1 - f_B(params, point)) / 4.0;
  const double e3 = fa * fa;
  return from_squares(cubic_roots_real(-e1, e2, -e3), e1, e3, fa);
}

kernels::TripletBlock triplet_block(const FamilyParams &params) {
  static const std::array<cplx, 9> flip = [] {
    // Q = E^dagger (sigma_y x sigma_y) conj(E), restricted to the triplet block.
    const auto &e = family_basis();
    ComplexMatrix yy(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const ComplexMatrix q = e.adjoint() * yy * e.conjugate();
    std::array<cplx, 9> out{};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) out[3 * r + c] = q(r, c);
    return out;
  }();
  return kernels::TripletBlock{params.a, flip};
}

SpectralData spectral_from_charpoly(double c2, double c1, double c0) {
  // Roots are lambda^2; the product of the roots is -c0 = f_A^2.
  const double prod = -c0;
  return from_squares(cubic_roots_real(c2, c1, c0), -c2, prod, prod >= 0.0 ? std::sqrt(prod) : -1.0);
}

namespace {

// Columns c_k with T = sum c_k c_k^dagger, pivoting on the largest remaining
// diagonal. Empty when T is indefinite beyond rounding.
std::optional<ComplexMatrix> pivoted_cholesky(ComplexMatrix t) {
  const std::size_t n = t.rows();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, t(i, i).real());
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
  ComplexMatrix l(n, n);
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && (piv == n || t(i, i).real() > t(piv, piv).real())) piv = i;
    const double d = t(piv, piv).real();
    if (d < -floor) return std::nullopt;
    if (d <= floor) break; // remaining Schur block is rounding noise
    used[piv] = true;
    const double root = std::sqrt(d);
    for (std::size_t i = 0; i < n; ++i) l(i, k) = used[i] && i != piv ? cplx(0.0) : t(i, piv) / root;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) -= l(i, k) * std::conj(l(j, k));
  }
  return l;
}

} // namespace

SpectralData lambdas_matrix(const FamilyParams &params, const RegionPoint &point) {
  const auto block = triplet_block(params);
  const double mx = std::sqrt(std::max(point.x, 0.0));
  const double my = std::sqrt(std::max(point.y, 0.0));
  const double mz = std::sqrt(std::max(point.z, 0.0));
  ComplexMatrix t(3, 3);
  t(0, 0) = params.a[0];
  t(1, 1) = params.a[1];
  t(2, 2) = params.a[2];
  t(0, 1) = t(1, 0) = mz;
  t(1, 2) = t(2, 1) = mx;
  t(0, 2) = cplx(0.0, -my);
  t(2, 0) = cplx(0.0, my);
  // With T = L L^dagger the lambda^2 are eig(T Q conj(T) Q^dagger), which
  // equal the squared singular values of L^T Q^dagger L. Jacobi singular
  // values keep full absolute accuracy where the cubic has close roots.
  if (const auto l = pivoted_cholesky(t)) {
    ComplexMatrix q(3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) q(r, c) = block.flip[3 * r + c];
    ComplexMatrix lt(3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) lt(r, c) = (*l)(c, r);
    const auto sv = singular_values(lt * q.adjoint() * *l);
    SpectralData s;
    for (int k = 0; k < 3; ++k) s.lambdas[k] = sv[k];
    s.beta = s.lambdas[0] + s.lambdas[1] + s.lambdas[2];
    s.gamma = s.lambdas[0] - s.lambdas[1] - s.lambdas[2];
    return s;
  }
  // Outside V the block is indefinite; fall back to its characteristic polynomial.
  const double x = std::max(point.x, 0.0);
  const double y = std::max(point.y, 0.0);
  const double z = std::max(point.z, 0.0);
  double c2 = 0, c1 = 0, c0 = 0;
  kernels::triplet_charpoly(kernels::Isa::scalar, block, {&x, 1}, {&y, 1}, {&z, 1}, {&c2, 1}, {&c1, 1}, {&c0, 1});
  return spectral_from_charpoly(c2, c1, c0);
}

double closed_form_concurrence(const FamilyParams &params, const RegionPoint &point) {
  if (!in_region_V(params, point, 1e-9)) throw NumericError("closed_form_concurrence: point outside region V");
  const auto s = lambdas(params, point);
  const double n = params.n;
  return std::max({(s.gamma - params.a0) / n, (params.a0 - s.beta) / n, 0.0});
}

std::optional<Gradient> grad_gamma(const FamilyParams &params, const RegionPoint &point, double tol_kappa) {
  const auto s = lambdas(params, point);
  const auto &l = s.lambdas;
  const double kappa = 2.0 * (l[0] - l[1]) * (l[0] - l[2]) * (l[1] + l[2]);
  if (!(kappa > tol_kappa)) return std::nullopt;
  const double g = s.gamma;
  const auto &b = params.b;
  return Gradient{{(g + b[1]) * (g + b[2]) / kappa, (g + b[2]) * (g + b[0]) / kappa, (g + b[0]) * (g + b[1]) / kappa},
                  kappa};
}

std::array<double, 3> axis_roots(const FamilyParams &params, Axis axis, double mean_value) {
  const int i = static_cast<int>(axis);
  const int j = (i + 1) % 3;
  const int k = (i + 2) % 3;
  const auto &a = params.a;
  const double disc = sq(a[j] + a[k]) - 4.0 * sq(mean_value);
  if (disc < -1e-12) throw NumericError("axis_roots: point lies beyond the f_A = 0 plane");
  const double root = std::sqrt(std::max(disc, 0.0));
  return {a[i], (root + (a[j] - a[k])) / 2.0, (root - (a[j] - a[k])) / 2.0};
}

double gamma_from_roots(std::array<double, 3> roots) {
  for (auto &r : roots) r = std::abs(r);
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots[0] - roots[1] - roots[2];
}

Vec3 direction_vector(const FamilyParams &p, Direction dir) {
  const auto &a = p.a;
  const auto &s = p.s2;
  switch (dir) {
  case Direction::q_yx:
    return {a[1] * a[2], -a[2] * a[0], 0.0};
  case Direction::q_zx:
    return {a[1] * a[2], 0.0, -a[0] * a[1]};
  case Direction::q_yz:
    return {0.0, -a[2] * a[0], a[0] * a[1]};
  case Direction::p_xy:
    return {-s[0], s[1], 0.0};
  case Direction::p_yz:
    return {0.0, -s[1], s[2]};
  case Direction::p_xz:
    return {-s[0], 0.0, s[2]};
  }
  return {};
}

double gamma_m(const FamilyParams &params) {
  return static_cast<double>(params.n) / (params.n - 1.0) - params.a0;
}

std::optional<double> directional_derivative(const FamilyParams &p, const RegionPoint &point, Direction dir,
                                             double tol_kappa) {
  const auto s = lambdas(p, point);
  const auto &l = s.lambdas;
  const double kappa = 2.0 * (l[0] - l[1]) * (l[0] - l[2]) * (l[1] + l[2]);
  if (!(kappa > tol_kappa)) return std::nullopt;
  const double g = s.gamma;
  const auto &a = p.a;
  const auto &b = p.b;
  const auto &s2 = p.s2;
  const double gm = gamma_m(p);
  switch (dir) {
  case Direction::q_yx:
    return a[2] * (sq(b[2]) - g * g) * (a[0] - a[1]) / kappa;
  case Direction::q_zx:
    return a[1] * (sq(b[1]) - g * g) * (a[0] - a[2]) / kappa;
  case Direction::q_yz:
    return a[0] * (g * g - sq(b[0])) * (a[1] - a[2]) / kappa;
  case Direction::p_xy:
    return (g + b[2]) * (g - gm) * (s2[1] - s2[0]) / kappa;
  case Direction::p_xz:
    return (g + b[1]) * (g - gm) * (s2[2] - s2[0]) / kappa;
  case Direction::p_yz:
    return (g + b[0]) * (g - gm) * (s2[2] - s2[1]) / kappa;
  }
  return std::nullopt;
}

namespace {

Vertex make_vertex(const FamilyParams &p, const RegionPoint &pt) {
  Vertex v;
  v.point = pt;
  v.in_w = in_region_W(p, pt, kRegionTol);
  v.in_v = in_region_V(p, pt, kRegionTol);
  if (v.in_w) v.gamma = lambdas(p, pt).gamma;
  return v;
}

} // namespace

RegionGeometry region_geometry(const FamilyParams &p) {
  RegionGeometry g;
  const auto &a = p.a;
  const auto &b = p.b;
  const double bsum = b[0] + b[1] + b[2];
  for (int mu = 0; mu < 3; ++mu) {
    const int j = (mu + 1) % 3;
    const int k = (mu + 2) % 3;
    RegionPoint pa;
    pa[mu] = a[j] * a[k];
    g.p_a[mu] = make_vertex(p, pa);
    RegionPoint ps;
    ps[mu] = std::max(p.s2[mu], 0.0);
    g.p_s[mu] = make_vertex(p, ps);
    if (std::abs(b[j] * b[k]) > 1e-14) {
      RegionPoint pb;
      pb[mu] = b[mu] * bsum / 4.0;
      g.p_b[mu] = make_vertex(p, pb);
    }
  }
  constexpr double strict = 1e-9;
  if (a[0] - a[1] > strict && a[1] - a[2] > strict && a[2] > strict) {
    RegionPoint p0;
    p0.x = sq(a[2]) * (a[0] - a[1]) / (a[0] - a[2]);
    p0.z = sq(a[0]) * (a[1] - a[2]) / (a[0] - a[2]);
    g.p0 = make_vertex(p, p0);
  }
  // f_A = 0 and f_S = 0 with Y = 0:  A_x X + A_z Z = A_x A_y A_z,
  // X / S_x^2 + Z / S_z^2 = 1.
  if (p.s2[0] > 1e-15 && p.s2[2] > 1e-15) {
    const double det = a[0] / p.s2[2] - a[2] / p.s2[0];
    if (std::abs(det) > 1e-14) {
      const double rhs = a[0] * a[1] * a[2];
      RegionPoint p1;
      p1.x = (rhs / p.s2[2] - a[2]) / det;
      p1.z = (a[0] - rhs / p.s2[0]) / det;
      if (p1.x >= -kRegionTol && p1.z >= -kRegionTol) {
        p1.x = std::max(p1.x, 0.0);
        p1.z = std::max(p1.z, 0.0);
        g.p1 = make_vertex(p, p1);
      }
    }
  }
  g.gamma_m = gamma_m(p);
  return g;
}

std::optional<double> gamma_psz_closed_form(const FamilyParams &p) {
  const double w = p.a[2] + p.a0;
  const double arg = w * (w - 2.0);
  if (arg < -1e-12) return std::nullopt;
  return p.a[2] - std::sqrt(std::max(arg, 0.0));
}

std::array<double, 2> p1_quadratic_roots(const FamilyParams &params, const RegionPoint &point) {
  const double f0 = f_0(params, point);
  const double fb = f_B(params, point);
  const double disc = f0 * f0 - fb;
  if (disc < -1e-9 * std::max(1.0, f0 * f0)) throw NumericError("p1_quadratic_roots: complex roots");
  const double root = std::sqrt(std::max(disc, 0.0));
  // Smaller root via the product to avoid cancellation.
  const double big = f0 + root;
  const double small = big != 0.0 ? fb / big : 0.0;
  return {small, big};
}

double t_beta_compact(const FamilyParams &p) {
  const double n = p.n;
  const double gm = gamma_m(p);
  return 4.0 * p.a[0] * p.a[2] / ((p.b[1] - gm) * (n - 1.0)) + p.a0 * (p.a0 - 2.0);
}

double t_beta_expanded(const FamilyParams &p) {
  const double n = p.n;
  const double gm = gamma_m(p);
  const auto &b = p.b;
  const double a0 = p.a0;
  return sq(2.0 - a0) + 2.0 * a0 * (b[1] + a0 - 2.0) / (b[1] - gm) -
         (2.0 * (b[1] + a0 - 2.0) * (b[1] + n) + (b[2] - b[1]) * (b[1] - b[0])) / ((n - 1.0) * (b[1] - gm));
}

} // namespace entweb
