#include "entweb/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "entweb/error.hpp"

namespace entweb {

namespace {

struct Line {
  int number;
  std::string text;
};

std::vector<Line> content_lines(std::istream &in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back({number, raw});
  }
  return out;
}

[[noreturn]] void fail(const Line &line, const std::string &why) {
  throw InputError("line " + std::to_string(line.number) + ": " + why);
}

template <typename... T> void parse_exact(const Line &line, T &...fields) {
  std::istringstream ss(line.text);
  if (!((ss >> fields) && ...)) fail(line, "expected " + std::to_string(sizeof...(T)) + " fields");
  std::string extra;
  if (ss >> extra) fail(line, "unexpected trailing field '" + extra + "'");
}

} // namespace

StateVariant read_state(std::istream &in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw InputError("state file is empty");
  std::string tag;
  int version = 0, n = 0;
  parse_exact(lines[0], tag, version, n);
  if (version != 1) fail(lines[0], "unsupported format version " + std::to_string(version));
  if (n < 1 || n > kMaxQubits) fail(lines[0], "qubit count must be in 1..12");
  const std::size_t dim = std::size_t{1} << n;

  if (tag == "qsv") {
    if (lines.size() - 1 != dim)
      throw InputError("qsv file has " + std::to_string(lines.size() - 1) + " amplitudes, expected " +
                       std::to_string(dim));
    std::vector<cplx> amps(dim);
    double norm = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      double re = 0, im = 0;
      parse_exact(lines[k + 1], re, im);
      if (!std::isfinite(re) || !std::isfinite(im)) fail(lines[k + 1], "non-finite amplitude");
      amps[k] = {re, im};
      norm += std::norm(amps[k]);
    }
    if (std::abs(norm - 1.0) > 1e-6) throw InputError("qsv amplitudes are not normalized (norm^2 = " + std::to_string(norm) + ")");
    // Files written at 17 digits are already unit norm to rounding; leave
    // them bit-identical and rescale only genuinely truncated input.
    if (std::abs(norm - 1.0) <= 1e-14) return PureState(n, std::move(amps));
    return PureState::normalized(n, std::move(amps));
  }

  if (tag == "qdm") {
    ComplexMatrix m(dim, dim);
    std::vector<char> seen(dim * dim, 0);
    for (std::size_t k = 1; k < lines.size(); ++k) {
      long long row = -1, col = -1;
      double re = 0, im = 0;
      parse_exact(lines[k], row, col, re, im);
      if (row < 0 || col < 0 || static_cast<std::size_t>(row) >= dim || static_cast<std::size_t>(col) >= dim)
        fail(lines[k], "index out of range");
      if (!std::isfinite(re) || !std::isfinite(im)) fail(lines[k], "non-finite entry");
      auto &flag = seen[static_cast<std::size_t>(row) * dim + static_cast<std::size_t>(col)];
      if (flag) fail(lines[k], "duplicate entry");
      flag = 1;
      m(row, col) = {re, im};
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > 1e-6) throw InputError("qdm trace is " + std::to_string(tr) + ", expected 1");
    if (std::abs(tr - 1.0) > 1e-14) m *= cplx(1.0 / tr);
    if (hermiticity_defect(m) > 1e-10) throw InputError("qdm matrix is not Hermitian");
    for (std::size_t r = 0; r < dim; ++r) {
      m(r, r) = m(r, r).real();
      for (std::size_t c = r + 1; c < dim; ++c) {
        const cplx avg = 0.5 * (m(r, c) + std::conj(m(c, r)));
        m(r, c) = avg;
        m(c, r) = std::conj(avg);
      }
    }
    return DensityOperator(n, std::move(m));
  }
  fail(lines[0], "unknown format tag '" + tag + "' (expected qsv or qdm)");
}

StateVariant read_state_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file '" + path + "'");
  return read_state(in);
}

void write_qsv(std::ostream &out, const PureState &state) {
  out << "qsv 1 " << state.n_qubits() << '\n' << std::setprecision(17);
  for (const auto &a : state.amplitudes()) out << a.real() << ' ' << a.imag() << '\n';
}

void write_qdm(std::ostream &out, const DensityOperator &state) {
  out << "qdm 1 " << state.n_qubits() << '\n' << std::setprecision(17);
  const auto &m = state.matrix();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != cplx(0.0)) out << r << ' ' << c << ' ' << m(r, c).real() << ' ' << m(r, c).imag() << '\n';
}

} // namespace entweb
