#include "support/draws.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "entweb/error.hpp"
#include "entweb/random.hpp"

namespace entweb::testing {

namespace {

constexpr std::array<int, 5> kDrawSizes = {3, 4, 6, 8, 10};

bool weights_physical(int n, const std::array<double, 3> &a, double a0) {
  const double cap = static_cast<double>(n) * n / (2.0 * (n - 1.0));
  for (double w : a)
    if (w < 0.0 || w + a0 > cap) return false;
  return a0 >= 0.0;
}

} // namespace

FamilyParams random_physical_params(int n, std::mt19937_64 &rng) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::array<double, 4> w{g(rng), g(rng), g(rng), g(rng)};
    if (u(rng) < 0.25) w[3] = 0.0;
    const double sum = w[0] + w[1] + w[2] + w[3];
    std::array<double, 3> a{n * w[0] / sum, n * w[1] / sum, n * w[2] / sum};
    const double a0 = n - a[0] - a[1] - a[2];
    if (!weights_physical(n, a, std::max(a0, 0.0))) continue;
    return family_from_weights(n, a, std::max(a0, 0.0));
  }
}

double ray_limit(const FamilyParams &params, const RegionPoint &dir) {
  double hi = 0.0;
  for (int mu = 0; mu < 3; ++mu)
    if (dir[mu] > 0.0) {
      const double cap = std::max(params.a[(mu + 1) % 3] * params.a[(mu + 2) % 3], 0.0);
      const double t = cap / dir[mu];
      hi = hi == 0.0 ? t : std::min(hi, t);
    }
  double lo = 0.0;
  auto at = [&](double t) { return RegionPoint{t * dir.x, t * dir.y, t * dir.z}; };
  if (in_physical_region(params, at(hi), 0.0)) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (in_physical_region(params, at(mid), 0.0) ? lo : hi) = mid;
  }
  return lo;
}

RegionPoint random_physical_point(const FamilyParams &params, std::mt19937_64 &rng, double boundary) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RegionPoint dir{u(rng), u(rng), u(rng)};
  if (u(rng) < 0.125) dir[static_cast<int>(u(rng) * 3.0) % 3] = 0.0;
  if (dir.x + dir.y + dir.z == 0.0) dir.z = 1.0;
  const double t = ray_limit(params, dir) * (u(rng) < boundary ? 1.0 : std::cbrt(u(rng)));
  return RegionPoint{t * dir.x, t * dir.y, t * dir.z};
}

std::vector<Draw> criterion_draws(std::size_t count, std::uint64_t seed) {
  std::vector<Draw> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto rng = sample_engine(seed, 0x64726177, k);
    Draw d;
    d.params = random_physical_params(kDrawSizes[k % kDrawSizes.size()], rng);
    d.point = random_physical_point(d.params, rng);
    std::bernoulli_distribution flip(0.5);
    for (auto &s : d.signs) s = flip(rng) ? -1 : 1;
    out.push_back(d);
  }
  return out;
}

std::optional<FamilyParams> case_params(CaseLabel label, int n, std::mt19937_64 &rng) {
  if (label == CaseLabel::III) {
    // Strictly ordered weights never give c1 >= 0 and c2 <= 0 together; the
    // label survives only inside the 1e-10 tolerance band beside the corner
    // A = (N/2, N/2, 0), A_0 = 0, where c1 = (u^2 - 2u - d^2)/4 with
    // u = A_z + A_0 and d = A_x - A_y.
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double nn = n;
    const double u = 1e-10 * u01(rng);
    const double d_max = std::sqrt(4e-10 - 2.0 * u);
    const double d = 2e-9 + (d_max - 2e-9) * u01(rng);
    const double az = u * u01(rng);
    const double ax = 0.5 * (nn - u + d);
    const double ay = 0.5 * (nn - u - d);
    if (!weights_physical(n, {ax, ay, az}, u - az)) return std::nullopt;
    FamilyParams p = family_from_weights(n, {ax, ay, az}, u - az);
    if (classify_case(p) != CaseLabel::III) return std::nullopt;
    return p;
  }
  const FamilyParams p = canonicalize(random_physical_params(n, rng)).params;
  if (classify_case(p) != label) return std::nullopt;
  return p;
}

std::vector<FamilyParams> case_draws(CaseLabel label, std::size_t count, std::uint64_t seed) {
  std::vector<FamilyParams> out;
  for (std::uint64_t k = 0; out.size() < count; ++k) {
    if (k > 1000000) throw NumericError("case_draws: label too rare");
    auto rng = sample_engine(seed, 0x63617365 + static_cast<int>(label), k);
    const int n = 3 + static_cast<int>(k % 8);
    if (auto p = case_params(label, n, rng)) out.push_back(*p);
  }
  return out;
}

} // namespace entweb::testing
