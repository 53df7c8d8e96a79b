#pragma once

// Pair marginals of N-qubit states whose two-qubit reduced state is the same
// for every pair. In the principal frame of the total-spin correlation tensor
// the marginal is fixed by four weights (A_x, A_y, A_z, A_0) and the squared
// mean spin (X, Y, Z) = (<S_x>^2, <S_y>^2, <S_z>^2).

#include <array>
#include <optional>

#include "entweb/kernels.hpp"
#include "entweb/qstate.hpp"

namespace entweb {

inline constexpr double kTolKappa = 1e-10;

enum class Axis : int { x = 0, y = 1, z = 2 };

struct FamilyParams {
  int n = 0;
  std::array<double, 3> a{};  // A_x, A_y, A_z
  double a0 = 0.0;            // singlet weight A_0
  std::array<double, 3> b{};  // B_mu = A_x + A_y + A_z - 2 A_mu
  std::array<double, 3> s2{}; // S_mu^2 = <S_mu^2>
  double total_spin_sq = 0.0; // <S^2>
};

/// Builds the parameter set from the weights; B, S^2 and <S^2> follow.
/// Throws InputError when a weight is below -1e-12, the weights do not sum to
/// N within 1e-10, or N < 2.
FamilyParams family_from_weights(int n, std::array<double, 3> a, double a0);

/// Builds the parameter set from principal second moments S_mu^2.
FamilyParams family_from_second_moments(int n, std::array<double, 3> s2);

struct RegionPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int axis) const { return axis == 0 ? x : axis == 1 ? y : z; }
  double &operator[](int axis) { return axis == 0 ? x : axis == 1 ? y : z; }
};

using SignVector = std::array<int, 3>;

struct SpectralData {
  std::array<double, 3> lambdas{}; // descending, >= 0
  double beta = 0.0;               // l1 + l2 + l3
  double gamma = 0.0;              // l1 - l2 - l3
};

struct FamilyState {
  FamilyParams params;
  RegionPoint point;
  SignVector signs{1, 1, 1};
};

/// Reads the family parameters off collective moments whose correlation
/// tensor is already diagonal. Axes are taken as given.
FamilyState params_from_moments(const CollectiveMoments &moments);

/// Family marginal in the computational basis, without validation.
ComplexMatrix family_matrix(const FamilyParams &params, const RegionPoint &point, const SignVector &signs);

/// Validated pair density; throws NumericError for points outside the
/// physical region.
PairDensity build_rho(const FamilyParams &params, const RegionPoint &point, const SignVector &signs = {1, 1, 1});

double f_A(const FamilyParams &params, const RegionPoint &point);
double f_S(const FamilyParams &params, const RegionPoint &point);
double f_0(const FamilyParams &params, const RegionPoint &point);
/// Division-free expansion, so B_mu = 0 is an ordinary point.
double f_B(const FamilyParams &params, const RegionPoint &point);

bool in_region_V(const FamilyParams &params, const RegionPoint &point, double tol);
bool in_region_W(const FamilyParams &params, const RegionPoint &point, double tol);

/// Region V together with the 2x2 principal minors of the triplet block
/// (A_y A_z >= X and cyclic). The two coincide when every A_mu > 0; with a
/// vanishing weight V alone admits non-physical points.
bool in_physical_region(const FamilyParams &params, const RegionPoint &point, double tol);

/// Triplet-block spectrum from the (f_0, f_A, f_B) relations via the cubic in
/// lambda^2 with e1 = f_0, e2 = (f_0^2 - f_B)/4, e3 = f_A^2.
SpectralData lambdas(const FamilyParams &params, const RegionPoint &point);

/// Triplet-block spectrum from the eigenvalues of rho rho~ built explicitly.
SpectralData lambdas_matrix(const FamilyParams &params, const RegionPoint &point);

/// Constant block data for the triplet kernels.
kernels::TripletBlock triplet_block(const FamilyParams &params);

/// Spectrum from the characteristic-polynomial coefficients of the N-scaled
/// triplet block product.
SpectralData spectral_from_charpoly(double c2, double c1, double c0);

/// max{(gamma - A_0)/N, (A_0 - beta)/N, 0}. Throws NumericError outside V.
double closed_form_concurrence(const FamilyParams &params, const RegionPoint &point);

struct Gradient {
  Vec3 value{};
  double kappa = 0.0;
};

/// Gradient of gamma in (X, Y, Z); empty where kappa <= tol_kappa.
std::optional<Gradient> grad_gamma(const FamilyParams &params, const RegionPoint &point,
                                   double tol_kappa = kTolKappa);

/// Triplet roots on a coordinate axis, e.g. for z:
/// {A_z, [sqrt((A_x+A_y)^2 - 4<S_z>^2) +- (A_x - A_y)]/2}.
std::array<double, 3> axis_roots(const FamilyParams &params, Axis axis, double mean_value);

/// gamma from an unordered root triple.
double gamma_from_roots(std::array<double, 3> roots);

enum class Direction { q_yx, q_zx, q_yz, p_xy, p_yz, p_xz };

Vec3 direction_vector(const FamilyParams &params, Direction dir);

/// Closed-form derivative of gamma along `dir`; empty where kappa <= tol_kappa.
std::optional<double> directional_derivative(const FamilyParams &params, const RegionPoint &point, Direction dir,
                                             double tol_kappa = kTolKappa);

struct Vertex {
  RegionPoint point;
  bool in_w = false;
  bool in_v = false;
  std::optional<double> gamma; // set only when the point lies in W
};

struct RegionGeometry {
  std::array<std::optional<Vertex>, 3> p_b; // f_B = 0 axis intercepts
  std::array<Vertex, 3> p_a;                // f_A = 0 axis intercepts
  std::array<Vertex, 3> p_s;                // f_S = 0 axis intercepts
  std::optional<Vertex> p0;                 // tangency point of the kappa = 0 parabola
  std::optional<Vertex> p1;                 // f_A = f_S = 0 with Y = 0
  double gamma_m = 0.0;                     // N/(N-1) - A_0
};

/// Tolerance used for W/V membership of geometry vertices.
inline constexpr double kRegionTol = 1e-9;

RegionGeometry region_geometry(const FamilyParams &params);

double gamma_m(const FamilyParams &params);

/// gamma at P_SZ written through the weights: A_z - sqrt((A_z+A_0)(A_z+A_0-2)).
std::optional<double> gamma_psz_closed_form(const FamilyParams &params);

/// Roots t_alpha <= t_beta (or reversed) of t^2 - 2 f_0 t + f_B = 0 at a point.
std::array<double, 2> p1_quadratic_roots(const FamilyParams &params, const RegionPoint &point);

/// The two closed forms of the second root at P_1.
double t_beta_compact(const FamilyParams &params);
double t_beta_expanded(const FamilyParams &params);

} // namespace entweb
