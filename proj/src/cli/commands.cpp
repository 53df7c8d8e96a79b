#include "entweb/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include "entweb/concurrence.hpp"
#include "entweb/error.hpp"
#include "entweb/io.hpp"
#include "entweb/kernels.hpp"
#include "entweb/optimizer.hpp"
#include "entweb/symmetric_family.hpp"
#include "entweb/webs.hpp"

namespace entweb::cli {

namespace {

std::string num(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

std::string opt_num(const std::optional<double> &v) { return v ? num(*v) : std::string(); }

// Row writer with a fixed separator.
class Table {
public:
  Table(std::ostream &out, char sep) : out_(out), sep_(sep) {}

  template <typename... T> void row(const T &...fields) {
    bool first = true;
    ((out_ << (first ? "" : std::string(1, sep_)) << fields, first = false), ...);
    out_ << '\n';
  }

  void row(const std::vector<std::string> &fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) out_ << (k ? std::string(1, sep_) : "") << fields[k];
    out_ << '\n';
  }

private:
  std::ostream &out_;
  char sep_;
};

std::string config_comment(const RunConfig &cfg) {
  std::ostringstream ss;
  ss << "# command=" << cfg.command;
  if (!cfg.input.empty()) ss << " input=" << cfg.input;
  if (!cfg.n_spec.empty()) ss << " n=" << cfg.n_spec;
  if (cfg.command == "web") ss << " kind=" << cfg.web_kind << " half_n=" << cfg.half_n;
  if (cfg.command == "concurrence") ss << " pair=" << cfg.pair[0] << ',' << cfg.pair[1];
  if (cfg.weights) {
    const auto &w = *cfg.weights;
    ss << " weights=" << num(w[0]) << ';' << num(w[1]) << ';' << num(w[2]) << ';' << num(w[3]);
  }
  ss << " grid_depth=" << cfg.grid_depth << " refine_iters=" << cfg.refine_iters << " resolution=" << cfg.resolution
     << " samples=" << cfg.samples << " seed=" << cfg.seed << " tol=" << num(cfg.tol)
     << " formula_only=" << cfg.formula_only << " symmetric_pure=" << cfg.symmetric_pure
     << " format=" << (cfg.separator == '\t' ? "tsv" : "csv");
  return ss.str();
}

int single_n(const RunConfig &cfg) {
  const auto r = parse_n_range(cfg.n_spec);
  if (r[0] != r[1]) throw InputError("this command takes a single --n");
  return r[0];
}

// Family parameters and point from a state whose pair marginals all agree.
std::optional<FamilyState> family_of(const StateVariant &state) {
  return std::visit(
      [](const auto &s) -> std::optional<FamilyState> {
        if (s.n_qubits() < 3 || !is_pair_marginal_uniform(s, 1e-9)) return std::nullopt;
        const auto frame = principal_axes(collective_moments(s));
        return params_from_moments(frame.rotated);
      },
      state);
}

} // namespace

std::array<int, 2> parse_n_range(const std::string &spec) {
  if (spec.empty()) throw InputError("--n is required");
  auto to_int = [&](const std::string &s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception &) {
      throw InputError("bad --n value '" + spec + "'");
    }
    if (used != s.size()) throw InputError("bad --n value '" + spec + "'");
    return v;
  };
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(spec);
    return {v, v};
  }
  const int lo = to_int(spec.substr(0, dots));
  const int hi = to_int(spec.substr(dots + 2));
  if (lo > hi) throw InputError("empty --n range '" + spec + "'");
  return {lo, hi};
}

int cmd_concurrence(const RunConfig &cfg, std::ostream &out) {
  const StateVariant state = read_state_file(cfg.input);
  const PairDensity pair =
      std::visit([&](const auto &s) { return partial_trace_pair(s, cfg.pair[0], cfg.pair[1]); }, state);
  const ConcurrenceResult c = wootters_concurrence(pair);
  out << config_comment(cfg) << '\n';
  out << "C = " << num(c.value) << '\n';
  out << "l = " << num(c.sqrt_eigs[0]) << ' ' << num(c.sqrt_eigs[1]) << ' ' << num(c.sqrt_eigs[2]) << ' '
      << num(c.sqrt_eigs[3]) << '\n';
  if (const auto fam = family_of(state)) {
    const auto &p = fam->params;
    out << "family N=" << p.n << " A_x=" << num(p.a[0]) << " A_y=" << num(p.a[1]) << " A_z=" << num(p.a[2])
        << " A_0=" << num(p.a0) << " X=" << num(fam->point.x) << " Y=" << num(fam->point.y)
        << " Z=" << num(fam->point.z) << '\n';
  }
  return kOk;
}

int cmd_verify_bound(const RunConfig &cfg, std::ostream &out) {
  const auto range = parse_n_range(cfg.n_spec);
  if (range[0] < 3 || range[1] > 64) throw InputError("verify-bound needs 3 <= N <= 64");
  Table t(out, cfg.separator);
  t.row("N", "c_max", "two_over_n", "gap", "A_x", "A_y", "A_z", "A_0", "X", "Y", "Z", "case", "flat",
        "oracle_agrees", "constraints_ok");
  out << config_comment(cfg) << '\n';
  bool ok = true;
  for (int n = range[0]; n <= range[1]; ++n) {
    const GlobalResult g = global_max(n, cfg.grid_depth, cfg.refine_iters, cfg.seed);
    const double target = 2.0 / n;
    const double gap = std::abs(g.c_max - target);
    ok = ok && gap <= cfg.tol;
    const auto &p = g.argmax_params;
    t.row(n, num(g.c_max), num(target), num(gap), num(p.a[0]), num(p.a[1]), num(p.a[2]), num(p.a0),
          num(g.argmax_point.x), num(g.argmax_point.y), num(g.argmax_point.z), case_name(g.case_label),
          int(g.flat), int(g.oracle_agrees), int(g.constraints_ok));
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_region(const RunConfig &cfg, std::ostream &out) {
  FamilyParams p;
  if (cfg.weights) {
    const auto &w = *cfg.weights;
    p = family_from_weights(single_n(cfg), {w[0], w[1], w[2]}, w[3]);
  } else if (!cfg.input.empty()) {
    const auto fam = family_of(read_state_file(cfg.input));
    if (!fam) throw InputError("state does not have identical pair marginals");
    p = fam->params;
  } else {
    throw InputError("region needs --weights with --n, or --input");
  }
  for (double s : p.s2)
    if (s < -1e-9) throw InputError("weights give a negative second moment");
  if (cfg.resolution < 1) throw InputError("--resolution must be positive");

  Table t(out, cfg.separator);
  t.row("section", "label", "X", "Y", "Z", "gamma", "f_A", "f_S", "dX", "dY", "dZ");
  out << config_comment(cfg) << '\n';

  auto point_row = [&](const std::string &section, const std::string &label, const RegionPoint &pt,
                       std::optional<double> gamma) {
    t.row(section, label, num(pt.x), num(pt.y), num(pt.z), opt_num(gamma), num(f_A(p, pt)), num(f_S(p, pt)), "", "",
          "");
  };
  const RegionGeometry g = region_geometry(p);
  static constexpr const char *axis = "XYZ";
  for (int mu = 0; mu < 3; ++mu) point_row("vertex", std::string("P_A") + axis[mu], g.p_a[mu].point, g.p_a[mu].gamma);
  for (int mu = 0; mu < 3; ++mu) point_row("vertex", std::string("P_S") + axis[mu], g.p_s[mu].point, g.p_s[mu].gamma);
  for (int mu = 0; mu < 3; ++mu)
    if (g.p_b[mu]) point_row("vertex", std::string("P_B") + axis[mu], g.p_b[mu]->point, g.p_b[mu]->gamma);
  if (g.p0) point_row("vertex", "P_0", g.p0->point, g.p0->gamma);
  if (g.p1) point_row("vertex", "P_1", g.p1->point, g.p1->gamma);
  t.row("scalar", "gamma_m", "", "", "", num(g.gamma_m), "", "", "", "", "");

  auto gamma_if_physical = [&](const RegionPoint &pt) -> std::optional<double> {
    if (!in_physical_region(p, pt, 1e-9)) return std::nullopt;
    try {
      return lambdas(p, pt).gamma;
    } catch (const NumericError &) {
      return std::nullopt;
    }
  };
  const int res = cfg.resolution;
  auto triangle = [&](const std::string &name, const std::array<RegionPoint, 3> &v) {
    for (int i = 0; i <= res; ++i)
      for (int j = 0; i + j <= res; ++j) {
        const double wx = double(i) / res, wy = double(j) / res, wz = 1.0 - wx - wy;
        RegionPoint pt;
        for (int mu = 0; mu < 3; ++mu) pt[mu] = wx * v[0][mu] + wy * v[1][mu] + wz * v[2][mu];
        point_row(name, std::to_string(i) + ":" + std::to_string(j), pt, gamma_if_physical(pt));
      }
  };
  triangle("pi_A", {g.p_a[0].point, g.p_a[1].point, g.p_a[2].point});
  triangle("pi_S", {g.p_s[0].point, g.p_s[1].point, g.p_s[2].point});
  if (g.p_b[0] && g.p_b[1] && g.p_b[2]) triangle("pi_B", {g.p_b[0]->point, g.p_b[1]->point, g.p_b[2]->point});

  // Gradient arrows at strictly interior lattice points.
  std::array<double, 3> h{};
  for (int mu = 0; mu < 3; ++mu)
    h[mu] = std::max(std::min(p.a[(mu + 1) % 3] * p.a[(mu + 2) % 3], p.s2[mu]), 0.0) / res;
  for (int i = 1; i < res; ++i)
    for (int j = 1; j < res; ++j)
      for (int k = 1; k < res; ++k) {
        const RegionPoint pt{i * h[0], j * h[1], k * h[2]};
        if (!(f_A(p, pt) > 0.0 && f_S(p, pt) > 0.0)) continue;
        std::optional<Gradient> grad;
        try {
          grad = grad_gamma(p, pt);
        } catch (const NumericError &) {
        }
        if (!grad) continue;
        t.row("arrow", std::to_string(i) + ":" + std::to_string(j) + ":" + std::to_string(k), num(pt.x), num(pt.y),
              num(pt.z), num(lambdas(p, pt).gamma), num(f_A(p, pt)), num(f_S(p, pt)), num(grad->value[0]),
              num(grad->value[1]), num(grad->value[2]));
      }
  return kOk;
}

int cmd_web(const RunConfig &cfg, std::ostream &out) {
  Table t(out, cfg.separator);
  t.row("kind", "size", "concurrence", "reference", "abs_diff", "status", "neighbour_spread", "shift_defect",
        "pipeline");
  out << config_comment(cfg) << '\n';
  if (cfg.web_kind == "w") {
    const WebReport r = w_state_concurrence(single_n(cfg));
    const double diff = std::abs(r.concurrence - r.reference_value);
    const bool pass = diff <= cfg.tol;
    t.row("w_state", r.size, num(r.concurrence), num(r.reference_value), num(diff), pass ? "pass" : "fail", "", "",
          r.pipeline);
    return pass ? kOk : kVerificationFailed;
  }
  if (cfg.web_kind == "ring") {
    if (cfg.formula_only) {
      const double f = ring_formula(cfg.half_n);
      t.row("ring", cfg.half_n, "", num(f), "", "formula-only", "", "", "closed formula");
      return kOk;
    }
    if (cfg.half_n < 2 || 2 * cfg.half_n > 10) throw InputError("ring search supports --half-n 2..5");
    const WebReport r = ring_search(cfg.half_n, cfg.seed);
    t.row("ring", r.size, num(r.concurrence), num(r.reference_value), num(std::abs(r.concurrence - r.reference_value)),
          r.reached ? "reached" : "not-found", num(r.neighbour_spread), num(r.shift_defect), r.pipeline);
    return r.reached ? kOk : kVerificationFailed;
  }
  throw InputError("web kind must be 'w' or 'ring'");
}

int cmd_random_check(const RunConfig &cfg, std::ostream &out) {
  const int n = single_n(cfg);
  if (n < 2 || n > 8) throw InputError("random-check needs 2 <= N <= 8");
  const RandomCheckResult r = random_state_bound_check(n, cfg.samples, cfg.seed, cfg.symmetric_pure);
  Table t(out, cfg.separator);
  t.row("row", "lo", "hi", "count", "max_concurrence", "max_abs_a0");
  out << config_comment(cfg) << '\n';
  if (cfg.samples == 0) return kOk;
  constexpr int bins = 20;
  std::array<std::size_t, bins> count{};
  std::array<double, bins> top{}, a0{};
  double a0_all = 0.0;
  for (const auto &s : r.samples) {
    const int b = std::clamp(static_cast<int>(s.concurrence * bins), 0, bins - 1);
    ++count[b];
    top[b] = std::max(top[b], s.concurrence);
    a0[b] = std::max(a0[b], std::abs(s.a0));
    a0_all = std::max(a0_all, std::abs(s.a0));
  }
  for (int b = 0; b < bins; ++b)
    t.row("bin", num(double(b) / bins), num(double(b + 1) / bins), count[b], num(top[b]), num(a0[b]));
  t.row("total", num(0.0), num(1.0), r.samples.size(), num(r.max_concurrence), num(a0_all));
  out << "# max=" << num(r.max_concurrence) << " bound=" << num(2.0 / n) << " argmax=" << r.argmax_description
      << '\n';
  return r.max_concurrence <= 2.0 / n + 1e-9 ? kOk : kVerificationFailed;
}

int run(int argc, char **argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Pairwise concurrence bounds for permutation-symmetric qubit states", "entweb"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "csv";
  std::vector<double> weights;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "tsv"}));
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--tol", cfg.tol, "Verification tolerance");
  };

  auto *conc = app.add_subcommand("concurrence", "Concurrence of a pair in a QSV/QDM state file");
  conc->add_option("input", cfg.input, "State file")->required();
  std::vector<int> pair;
  conc->add_option("--pair", pair, "Qubit pair (1-based)")->expected(2);
  common(conc);

  auto *verify = app.add_subcommand("verify-bound", "Maximize the concurrence over the symmetric family");
  verify->add_option("--n", cfg.n_spec, "N or range such as 3..8")->required();
  verify->add_option("--grid-depth", cfg.grid_depth, "Simplex subdivisions of the outer grid");
  verify->add_option("--refine-iters", cfg.refine_iters, "Pattern-search iterations");
  common(verify);

  auto *region = app.add_subcommand("region", "Export the region geometry and gamma field");
  region->add_option("--n", cfg.n_spec, "Number of qubits (with --weights)");
  region->add_option("--weights", weights, "A_x A_y A_z A_0")->expected(4)->delimiter(',');
  region->add_option("--input", cfg.input, "Derive the weights from a state file");
  region->add_option("--resolution", cfg.resolution, "Subdivisions per triangle edge and per axis");
  common(region);

  auto *web = app.add_subcommand("web", "W-state bound or ring search");
  web->add_option("kind", cfg.web_kind, "w or ring")->required()->check(CLI::IsMember({"w", "ring"}));
  web->add_option("--n", cfg.n_spec, "W-state size");
  web->add_option("--half-n", cfg.half_n, "Ring of 2*half_n qubits");
  web->add_flag("--formula-only", cfg.formula_only, "Print the closed formula without searching");
  common(web);

  auto *rnd = app.add_subcommand("random-check", "Monte-Carlo search for bound violations");
  rnd->add_option("--n", cfg.n_spec, "Number of qubits")->required();
  rnd->add_option("--samples", cfg.samples, "Number of random states");
  rnd->add_flag("--symmetric-pure", cfg.symmetric_pure, "Draw symmetric pure states only");
  common(rnd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  cfg.separator = format == "tsv" ? '\t' : ',';
  if (pair.size() == 2) cfg.pair = {pair[0], pair[1]};
  if (weights.size() == 4) cfg.weights = std::array<double, 4>{weights[0], weights[1], weights[2], weights[3]};
  if (web->parsed() && cfg.web_kind == "w" && cfg.n_spec.empty()) {
    err << "error: web w needs --n\n";
    return kInputError;
  }

  std::ofstream file;
  std::ostream *sink = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kInputError;
    }
    sink = &file;
  }

  try {
    if (conc->parsed()) {
      cfg.command = "concurrence";
      return cmd_concurrence(cfg, *sink);
    }
    if (verify->parsed()) {
      cfg.command = "verify-bound";
      return cmd_verify_bound(cfg, *sink);
    }
    if (region->parsed()) {
      cfg.command = "region";
      return cmd_region(cfg, *sink);
    }
    if (web->parsed()) {
      cfg.command = "web";
      return cmd_web(cfg, *sink);
    }
    cfg.command = "random-check";
    return cmd_random_check(cfg, *sink);
  } catch (const InputError &e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericError &e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  }
}

} // namespace entweb::cli
