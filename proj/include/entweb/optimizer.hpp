#pragma once

// Maximization of the pair concurrence over the symmetric family: the inner
// problem over (X, Y, Z) for fixed weights, the outer problem over the
// weights, and brute-force oracles for both.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entweb/symmetric_family.hpp"

namespace entweb {

enum class CaseLabel { I, II, III, IV, DEGENERATE };

const char *case_name(CaseLabel label);

/// Boundary tolerance on A_x A_y - S_z^2 and A_y A_z - S_x^2.
inline constexpr double kCaseTol = 1e-10;
/// Two weights closer than this count as tied.
inline constexpr double kOrderTol = 1e-9;

/// Parameters relabeled so that A_x >= A_y >= A_z (S_z^2 >= S_y^2 >= S_x^2).
/// Canonical axis k is axis `axes[k]` of the input.
struct CanonicalParams {
  FamilyParams params;
  std::array<int, 3> axes{0, 1, 2};
};

CanonicalParams canonicalize(const FamilyParams &params);

/// Maps a point from canonical axes back to the input axes.
RegionPoint to_input_axes(const RegionPoint &canonical, const std::array<int, 3> &axes);

/// Case label of canonical parameters. Ties in the weight ordering give
/// DEGENERATE; a tie on A_x A_y = S_z^2 gives III, whose candidate set
/// contains those of I and II. Throws InputError on non-canonical input.
CaseLabel classify_case(const FamilyParams &canonical);

/// The label from the bare inequalities, ignoring ordering ties.
CaseLabel classify_inequalities(const FamilyParams &canonical);

/// Label reached by the symmetric perturbation (A_x + e, A_y, A_z - e) at
/// e = 1e-9 and e = 1e-10; empty when the two disagree or the perturbation
/// is not admissible.
std::optional<CaseLabel> perturbed_case(const FamilyParams &canonical);

struct Candidate {
  std::string name;
  RegionPoint point; // canonical axes
  double gamma = 0.0;
};

/// Closed-form candidates for the maximum of gamma in a given case, in
/// canonical axes. For DEGENERATE this is every vertex of V in the physical
/// region together with the f_A = f_S = 0 points on each coordinate plane.
std::vector<Candidate> case_candidates(const FamilyParams &canonical, CaseLabel label);

struct InnerResult {
  double gamma_star = 0.0;
  RegionPoint point_star; // input axes
  CaseLabel case_label = CaseLabel::I;
  std::optional<CaseLabel> resolved_case;
  std::string vertex;
  double concurrence_star = 0.0;
  double beta_min = 0.0;     // only filled by max_concurrence_inner
  bool beta_branch = false;  // the (A_0 - beta) branch gives the maximum
  bool flat = false;         // distinct candidate points tie within 1e-8
};

InnerResult max_gamma_inner(const FamilyParams &params);

struct BetaResult {
  double beta_min = 0.0;
  RegionPoint point; // input axes
};

/// Numerical minimum of beta over the physical region: lattice scan with
/// boundary projections, then a compass search.
BetaResult min_beta(const FamilyParams &params, int resolution = 24);

/// Maximizes max{(gamma - A_0)/N, (A_0 - beta)/N, 0}. Throws NumericError if
/// the beta branch ever breaks A_0 - beta < N/(N-1).
InnerResult max_concurrence_inner(const FamilyParams &params);

struct GlobalResult {
  int n = 0;
  double c_max = 0.0;
  FamilyParams argmax_params;
  RegionPoint argmax_point;
  CaseLabel case_label = CaseLabel::I;
  bool flat = false;
  std::size_t grid_cells = 0;
  /// Largest deviation of the argmax from the W-state moments: sorted S_mu^2
  /// against {(N/2-1)^2, (3N-2)/4, (3N-2)/4}, A_0 against 0, and the squared
  /// mean along the distinguished axis against (N/2-1)^2.
  double constraint_error = 0.0;
  bool constraints_ok = false;
  /// Brute-force check of the inner maximum at the argmax.
  double oracle_gamma = 0.0;
  double oracle_spacing = 0.0;
  bool oracle_agrees = false;
};

/// Outer maximization over the weight simplex: all canonical compositions at
/// `grid_depth` subdivisions, then a shrinking-step pattern search from the
/// best cell. Deterministic for fixed arguments.
GlobalResult global_max(int n, int grid_depth = 24, int refine_iters = 2000, std::uint64_t seed = 1);

struct GridOracleResult {
  double gamma_max = 0.0;
  RegionPoint point; // input axes
  double spacing = 0.0; // largest lattice step
  std::size_t evaluated = 0;
};

/// Exhaustive lattice scan of the physical region with gamma from the
/// block-product characteristic polynomial. Ties go to the lexicographically
/// smallest point.
GridOracleResult grid_oracle(const FamilyParams &params, int resolution);

struct RandomSample {
  double concurrence = 0.0;
  double a0 = 0.0; // N times the singlet weight of the pair marginal
  bool pure_symmetric = false;
  int rank = 0; // Ginibre rank; 0 for pure samples
};

struct RandomCheckResult {
  double max_concurrence = 0.0;
  std::size_t argmax_index = 0;
  std::string argmax_description;
  std::vector<RandomSample> samples;
};

/// Even sample indices draw a permutation-symmetrized random density operator
/// (Ginibre of random rank), odd ones a random symmetric pure state. With
/// `symmetric_pure_only` every sample is a symmetric pure state.
RandomCheckResult random_state_bound_check(int n, std::size_t samples, std::uint64_t seed,
                                           bool symmetric_pure_only = false);

/// Pair marginal of the permutation average of rho: the full twirl for
/// n <= 5, otherwise the average of all ordered pair marginals (equal by
/// linearity).
PairDensity symmetrized_pair_marginal(const DensityOperator &rho);

} // namespace entweb
