// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "entweb/cli.hpp"
#include "entweb/concurrence.hpp"
#include "entweb/error.hpp"
#include "entweb/optimizer.hpp"
#include "entweb/random.hpp"
#include "entweb/symmetric_family.hpp"
#include "entweb/webs.hpp"
#include "support/draws.hpp"

using namespace entweb;
using entweb::testing::Draw;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const std::vector<Draw> &shared_draws() {
  static const std::vector<Draw> d = entweb::testing::criterion_draws(1000, kSeed);
  return d;
}

Outcome w_state() {
  double worst = 0.0;
  for (int n = 2; n <= 12; ++n) worst = std::max(worst, std::abs(w_state_concurrence(n).concurrence - 2.0 / n));
  return {worst <= 1e-10, "max |C - 2/N| = " + fmt("%.2e", worst) + " over N = 2..12"};
}

Outcome closed_form() {
  double worst = 0.0;
  for (const auto &d : shared_draws()) {
    const double a = closed_form_concurrence(d.params, d.point);
    const double b = wootters_concurrence(build_rho(d.params, d.point, d.signs)).value;
    worst = std::max(worst, std::abs(a - b));
  }
  return {worst <= 1e-8, "max |closed - Wootters| = " + fmt("%.2e", worst) + " on 1000 draws"};
}

Outcome verify_bound() {
  cli::RunConfig cfg;
  cfg.command = "verify-bound";
  cfg.n_spec = "3..8";
  std::ostringstream out;
  const int code = cli::cmd_verify_bound(cfg, out);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0, constraints = 0;
  double worst = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'N') continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    ++rows;
    worst = std::max(worst, std::stod(f[3]));
    if (f[14] == "1") ++constraints;
  }
  const bool pass = code == cli::kOk && rows == 6 && constraints == 6 && worst <= 1e-6;
  return {pass, "max gap " + fmt("%.2e", worst) + ", constraints met " + std::to_string(constraints) + "/" +
                    std::to_string(rows) + ", exit " + std::to_string(code)};
}

Outcome spectral_relations() {
  double worst = 0.0;
  for (const auto &d : shared_draws()) {
    const auto s = lambdas(d.params, d.point);
    const auto &l = s.lambdas;
    const double f0 = f_0(d.params, d.point);
    const double fb = f_B(d.params, d.point);
    const double e2 = l[0] * l[0] * l[1] * l[1] + l[0] * l[0] * l[2] * l[2] + l[1] * l[1] * l[2] * l[2];
    worst = std::max({worst, std::abs(l[0] * l[0] + l[1] * l[1] + l[2] * l[2] - f0),
                      std::abs(l[0] * l[1] * l[2] - f_A(d.params, d.point)), std::abs(f0 * f0 - 4.0 * e2 - fb),
                      std::abs(s.beta * s.gamma * (l[0] + l[2] - l[1]) * (l[0] + l[1] - l[2]) - fb)});
  }
  return {worst < 1e-7, "max residual " + fmt("%.2e", worst) + " on 1000 draws"};
}

Outcome gradient() {
  // Central differences at interior points.
  double worst_fd = 0.0;
  int fd_points = 0;
  auto rng_stream = [](std::uint64_t k) { return sample_engine(kSeed, 5, k); };
  for (std::uint64_t k = 0; fd_points < 200 && k < 100000; ++k) {
    auto rng = rng_stream(k);
    const auto p = entweb::testing::random_physical_params(static_cast<int>(3 + k % 8), rng);
    const auto pt = entweb::testing::random_physical_point(p, rng, 0.0);
    if (std::min({pt.x, pt.y, pt.z})  < 1e-3 || f_A(p, pt) < 1e-3 || f_B(p, pt) < 1e-3) continue;
    const auto g = grad_gamma(p, pt);
    if (!g || g->kappa <= 1e-6) continue;
    for (int mu = 0; mu < 3; ++mu) {
      const double h = 1e-6 * std::max(1.0, pt[mu]);
      RegionPoint a = pt, b = pt;
      a[mu] += h;
      b[mu] -= h;
      const double fd = (lambdas(p, a).gamma - lambdas(p, b).gamma) / (2 * h);
      worst_fd = std::max(worst_fd, std::abs(fd - g->value[mu]) / std::max(1.0, std::abs(g->value[mu])));
    }
    ++fd_points;
  }

  // Directional closed forms on pi_A (q) and pi_S (p), and the sign claims.
  const std::array<Direction, 6> dirs = {Direction::q_yx, Direction::q_zx, Direction::q_yz,
                                         Direction::p_xy, Direction::p_yz, Direction::p_xz};
  double worst_dir = 0.0;
  int q_points = 0, p_points = 0, sign_bad = 0, sign_checked = 0;
  for (std::uint64_t k = 0; (q_points < 200 || p_points < 200) && k < 200000; ++k) {
    auto rng = sample_engine(kSeed, 6, k);
    const auto p = canonicalize(entweb::testing::random_physical_params(static_cast<int>(3 + k % 8), rng)).params;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int family = k % 2;
    RegionPoint q;
    if (family == 0) {
      if (p.a[2] < 1e-6) continue;
      q.x = u(rng) * p.a[1] * p.a[2];
      q.y = u(rng) * p.a[2] * p.a[0];
      q.z = (p.a[0] * p.a[1] * p.a[2] - p.a[0] * q.x - p.a[1] * q.y) / p.a[2];
    } else {
      if (p.s2[0] < 1e-9 || p.s2[1] < 1e-9 || p.s2[2] < 1e-6) continue;
      q.x = u(rng) * p.s2[0];
      q.y = u(rng) * p.s2[1];
      q.z = p.s2[2] * (1.0 - q.x / p.s2[0] - q.y / p.s2[1]);
    }
    if (q.z <= 0 || !in_physical_region(p, q, 1e-12) || f_B(p, q) <= 0) continue;
    const auto g = grad_gamma(p, q, 1e-6);
    if (!g) continue;
    const double gamma = lambdas(p, q).gamma;
    for (int j = 3 * family; j < 3 * family + 3; ++j) {
      const auto v = direction_vector(p, dirs[j]);
      const double dot = v[0] * g->value[0] + v[1] * g->value[1] + v[2] * g->value[2];
      const double closed = *directional_derivative(p, q, dirs[j], 1e-6);
      worst_dir = std::max(worst_dir, std::abs(closed - dot) / std::max(1.0, std::abs(dot)));
    }
    if (family == 0 && p.a[0] - p.a[1] > 1e-6) {
      ++sign_checked;
      if (!(*directional_derivative(p, q, Direction::q_yx, 1e-6) > 0.0)) ++sign_bad;
    }
    if (family == 1 && gamma > gamma_m(p) && p.s2[1] - p.s2[0] > 1e-6) {
      ++sign_checked;
      if (!(*directional_derivative(p, q, Direction::p_xy, 1e-6) > 0.0)) ++sign_bad;
      if (!(*directional_derivative(p, q, Direction::p_xz, 1e-6) > 0.0)) ++sign_bad;
    }
    (family == 0 ? q_points : p_points) += 1;
  }

  // q^{zx} . grad gamma vanishes on P_0 P_AX.
  double worst_seg = 0.0;
  int seg_points = 0;
  for (std::uint64_t k = 0; seg_points < 200 && k < 200000; ++k) {
    auto rng = sample_engine(kSeed, 7, k);
    const auto p = canonicalize(entweb::testing::random_physical_params(static_cast<int>(3 + k % 8), rng)).params;
    const auto geo = region_geometry(p);
    if (!geo.p0 || !geo.p0->in_v || !geo.p0->in_w) continue;
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double t = u(rng);
    RegionPoint q;
    q.x = geo.p0->point.x + t * (geo.p_a[0].point.x - geo.p0->point.x);
    q.z = (1 - t) * geo.p0->point.z;
    const auto d = directional_derivative(p, q, Direction::q_zx, 1e-6);
    if (!d) continue;
    const auto v = direction_vector(p, Direction::q_zx);
    const auto g = grad_gamma(p, q, 1e-6);
    worst_seg = std::max({worst_seg, std::abs(*d), std::abs(v[0] * g->value[0] + v[2] * g->value[2])});
    ++seg_points;
  }

  const bool pass = fd_points == 200 && worst_fd < 1e-5 && q_points >= 200 && p_points >= 200 && worst_dir < 1e-7 &&
                    sign_bad == 0 && seg_points == 200 && worst_seg < 1e-7;
  return {pass, "fd rel err " + fmt("%.2e", worst_fd) + " at " + std::to_string(fd_points) + " points; closed vs dot " +
                    fmt("%.2e", worst_dir) + "; sign violations " + std::to_string(sign_bad) + "/" +
                    std::to_string(sign_checked) + "; q_zx on P0-PAX " + fmt("%.2e", worst_seg) + " at " +
                    std::to_string(seg_points) + " points"};
}

Outcome vertices() {
  double worst = 0.0;
  int chain_bad = 0, p1_points = 0, psz_points = 0, psz_outside = 0, vertex_points = 0;
  for (CaseLabel label : {CaseLabel::I, CaseLabel::II, CaseLabel::III, CaseLabel::IV}) {
    for (const auto &p : entweb::testing::case_draws(label, 200, kSeed)) {
      const auto g = region_geometry(p);
      auto check = [&](const Vertex &v, double want) {
        if (!v.in_w) return;
        worst = std::max(worst, std::abs(lambdas_matrix(p, v.point).gamma - want));
        ++vertex_points;
      };
      check(g.p_a[0], p.b[1]);
      check(g.p_a[1], std::abs(p.b[0]));
      check(g.p_a[2], std::abs(p.b[0]));
      if (g.p_s[2].in_w && g.p_s[2].in_v) {
        // The closed form needs (A_z + A_0)(A_z + A_0 - 2) >= 0; the case III
        // band has A_z + A_0 near 0, where it is complex.
        const double w = p.a[2] + p.a0;
        const auto closed = gamma_psz_closed_form(p);
        if (w < 2.0) {
          ++psz_outside;
        } else if (!closed) {
          ++chain_bad;
        } else {
          worst = std::max(worst, std::abs(lambdas_matrix(p, g.p_s[2].point).gamma - *closed));
          if (!(2.0 - p.a0 > *closed && *closed > g.gamma_m)) ++chain_bad;
          ++psz_points;
        }
      }
      if (g.p1 && g.p1->in_w && std::abs(p.b[1] - g.gamma_m) > 1e-6) {
        const auto roots = p1_quadratic_roots(p, g.p1->point);
        const double scale = std::max(1.0, roots[1]);
        const double by2 = p.b[1] * p.b[1];
        const double tb = t_beta_compact(p);
        const double pair =
            std::min(std::abs(roots[0] - by2) + std::abs(roots[1] - tb), std::abs(roots[1] - by2) + std::abs(roots[0] - tb));
        const double gm = lambdas_matrix(p, g.p1->point).gamma;
        // gamma at P_1 squares to one of the two roots: the smaller one in case IV.
        const double root_gap = label == CaseLabel::IV ? std::abs(gm * gm - roots[0])
                                                       : std::min(std::abs(gm * gm - roots[0]), std::abs(gm * gm - roots[1]));
        worst = std::max({worst, pair / scale, root_gap / scale, std::abs(t_beta_expanded(p) - tb) / std::max(1.0, std::abs(tb))});
        ++p1_points;
      }
    }
  }
  const bool pass = worst <= 1e-8 && chain_bad == 0 && psz_points > 0 && p1_points > 0;
  return {pass, "max deviation " + fmt("%.2e", worst) + " over " + std::to_string(vertex_points) + " P_A, " +
                    std::to_string(psz_points) + " P_SZ (" + std::to_string(psz_outside) +
                    " outside the closed form's domain), " + std::to_string(p1_points) + " P_1 evaluations; chain violations " +
                    std::to_string(chain_bad)};
}

Outcome case_vs_grid() {
  int bad = 0, total = 0;
  double worst = 0.0;
  for (CaseLabel label : {CaseLabel::I, CaseLabel::II, CaseLabel::III, CaseLabel::IV}) {
    for (const auto &p : entweb::testing::case_draws(label, 125, kSeed + 1)) {
      const double inner = max_gamma_inner(p).gamma_star;
      const auto g = grid_oracle(p, 200);
      const double gap = std::abs(inner - g.gamma_max);
      worst = std::max(worst, gap / g.spacing);
      if (gap > 2.0 * g.spacing) ++bad;
      ++total;
    }
  }
  return {bad == 0 && total == 500, std::to_string(total - bad) + "/" + std::to_string(total) +
                                        " within 2 spacings (worst " + fmt("%.3f", worst) + " spacings)"};
}

Outcome monte_carlo() {
  bool pass = true;
  std::string detail;
  for (int n : {3, 4, 5}) {
    const auto r = random_state_bound_check(n, 10000, kSeed);
    pass = pass && r.max_concurrence <= 2.0 / n + 1e-9;
    detail += "N=" + std::to_string(n) + " max " + fmt("%.6f", r.max_concurrence) + " (bound " + fmt("%.6f", 2.0 / n) + ") ";
  }
  return {pass, detail};
}

Outcome rings() {
  const auto two = ring_formula_exact(2);
  const auto three = ring_formula_exact(3);
  bool exact = two.num == 1 && two.den == 2 && three.num == 2 && three.den == 5;
  bool monotone = true;
  for (int h = 3; h <= 40; ++h) monotone = monotone && ring_formula(h) < ring_formula(h - 1) && ring_formula(h) > 0.25;
  const double tail = ring_formula(40) - 0.25;
  const auto search = ring_search(2, kSeed);
  const auto six = ring_search(3, kSeed);
  const bool pass = exact && monotone && tail < 1e-10 && search.concurrence >= 0.5 - 1e-3;
  return {pass, std::string("exact 1/2 and 2/5 ") + (exact ? "ok" : "wrong") + ", monotone to 40 " +
                    (monotone ? "ok" : "broken") + ", search(2) " + fmt("%.6f", search.concurrence) +
                    ", search(3) " + fmt("%.6f", six.concurrence) + " (reported only)"};
}

Outcome beta_bound() {
  double worst = -1e300;
  for (const auto &d : shared_draws()) {
    const double n = d.params.n;
    worst = std::max(worst, d.params.a0 - lambdas(d.params, d.point).beta - n / (n - 1.0));
  }
  // The numeric minimum of beta as well, one per parameter set.
  for (std::size_t k = 0; k < shared_draws().size(); k += 5) {
    const auto &p = shared_draws()[k].params;
    worst = std::max(worst, p.a0 - min_beta(p).beta_min - p.n / (p.n - 1.0));
  }
  return {worst < 0.0, "max (A_0 - beta) - N/(N-1) = " + fmt("%.4f", worst)};
}

} // namespace

// Optional arguments pick criteria by number; default runs all.
int main(int argc, char **argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "W-state concurrence equals 2/N", w_state},
      {2, "closed form matches Wootters", closed_form},
      {3, "verify-bound reaches 2/N for N = 3..8", verify_bound},
      {4, "spectral relations", spectral_relations},
      {5, "gradient and directional derivatives", gradient},
      {6, "vertex formulas", vertices},
      {7, "case analysis matches grid oracle", case_vs_grid},
      {8, "Monte-Carlo non-violation", monte_carlo},
      {9, "loop formula and ring search", rings},
      {10, "beta-branch bound", beta_bound},
  };
  int failed = 0, ran = 0;
  for (const auto &c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s  %s: %s [%.2f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
