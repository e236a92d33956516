#include "bnp/analyze.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace bnp {

namespace {

constexpr int kMaxOrder = 12;
constexpr double kInf = std::numeric_limits<double>::infinity();

Complex normalized_boundary_point(Complex t) {
  const double m = std::abs(t);
  if (std::abs(m - 1.0) > 1e-9)
    throw InvalidData("boundary point must lie on the unit circle");
  return t / m;
}

struct EntryValue {
  Complex value;
  double magnitude = 0.0;  // sum of term moduli, tracks cancellation
};

// Entry (l, r) of the Schwarz-Pick matrix at z from the jet w_0..w_n of w.
EntryValue sp_entry(const std::vector<Complex>& wjet, Complex z, int l, int r) {
  const Complex zc = std::conj(z);
  const double omz = 1.0 - std::norm(z);
  EntryValue out;
  Complex first(0.0);
  for (int s = 0; s <= std::min(l, r); ++s) {
    const double f = factorial(l + r - s) /
                     (factorial(l - s) * factorial(r - s) * factorial(s));
    const Complex term = f * std::pow(z, r - s) * std::pow(zc, l - s) /
                         std::pow(omz, l + r - s + 1);
    first += term;
    out.magnitude += std::abs(term);
  }
  Complex second(0.0);
  for (int a = 0; a <= l; ++a)
    for (int b = 0; b <= r; ++b) {
      const Complex w2 = wjet[static_cast<size_t>(l - a)] *
                         std::conj(wjet[static_cast<size_t>(r - b)]);
      for (int s = 0; s <= std::min(a, b); ++s) {
        const double f = factorial(a + b - s) /
                         (factorial(a - s) * factorial(b - s) * factorial(s));
        const Complex term = f * std::pow(z, b - s) * std::pow(zc, a - s) * w2 /
                             std::pow(omz, a + b - s + 1);
        second += term;
        out.magnitude += std::abs(term);
      }
    }
  out.value = first - second;
  return out;
}

std::vector<Complex> interior_jet(const RationalFunction& w, Complex z, int n) {
  if (n < 0 || n > kMaxOrder) throw InvalidData("order out of range");
  if (std::abs(z) >= 1.0 - 1e-12)
    throw InvalidData("Schwarz-Pick matrix needs an interior point");
  return rat_taylor(w, z, n).coeffs;
}

bool strictly_increasing_tail(const std::vector<double>& v, size_t count) {
  if (v.size() < count) return false;
  for (size_t i = v.size() - count + 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

}  // namespace

double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(31, 1.0);
    for (int i = 1; i <= 30; ++i)
      t[static_cast<size_t>(i)] = t[static_cast<size_t>(i - 1)] * i;
    return t;
  }();
  if (n < 0 || n > 30) throw InvalidData("factorial argument out of range");
  return table[static_cast<size_t>(n)];
}

MatrixXc interior_sp_matrix(const RationalFunction& w, Complex z, int n) {
  const std::vector<Complex> jet = interior_jet(w, z, n);
  MatrixXc p(n + 1, n + 1);
  for (int l = 0; l <= n; ++l)
    for (int r = 0; r <= n; ++r) p(l, r) = sp_entry(jet, z, l, r).value;
  return p;
}

double d_lower(const RationalFunction& w, Complex z, int n) {
  const std::vector<Complex> jet = interior_jet(w, z, n);
  const EntryValue e = sp_entry(jet, z, n, n);
  const double allow = 1e-10 * (1.0 + std::abs(e.value)) + 1e-14 * e.magnitude;
  if (std::abs(e.value.imag()) > allow)
    throw InvalidData("lower Schwarz-Pick entry has a non-real value");
  return e.value.real();
}

MatrixXc boundary_sp_matrix_jet(const Jet& jet) {
  const size_t sz = jet.coeffs.size();
  if (sz < 2 || sz % 2 != 0)
    throw InvalidData("boundary jet needs 2n+2 coefficients");
  const int n = static_cast<int>(sz) / 2 - 1;
  return node_block(normalized_boundary_point(jet.center), n, jet.coeffs);
}

MatrixXc generalized_boundary_sp(const std::vector<Jet>& jets) {
  const int k = static_cast<int>(jets.size());
  if (k == 0) throw InvalidData("no jets given");
  std::vector<Complex> ts(static_cast<size_t>(k));
  std::vector<int> ns(static_cast<size_t>(k));
  std::vector<int> offs(static_cast<size_t>(k));
  int total = 0;
  for (int i = 0; i < k; ++i) {
    const auto& jet = jets[static_cast<size_t>(i)];
    const size_t sz = jet.coeffs.size();
    if (sz < 2 || sz % 2 != 0)
      throw InvalidData("boundary jet needs 2n+2 coefficients");
    ts[static_cast<size_t>(i)] = normalized_boundary_point(jet.center);
    ns[static_cast<size_t>(i)] = static_cast<int>(sz) / 2 - 1;
    offs[static_cast<size_t>(i)] = total;
    total += ns[static_cast<size_t>(i)] + 1;
  }
  MatrixXc p = MatrixXc::Zero(total, total);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const auto& ci = jets[static_cast<size_t>(i)].coeffs;
      const auto& cj = jets[static_cast<size_t>(j)].coeffs;
      MatrixXc block;
      if (i == j)
        block = node_block(ts[static_cast<size_t>(i)], ns[static_cast<size_t>(i)], ci);
      else
        block = cross_node_block(ts[static_cast<size_t>(i)], ns[static_cast<size_t>(i)],
                                 ci, ts[static_cast<size_t>(j)],
                                 ns[static_cast<size_t>(j)], cj);
      p.block(offs[static_cast<size_t>(i)], offs[static_cast<size_t>(j)],
              ns[static_cast<size_t>(i)] + 1, ns[static_cast<size_t>(j)] + 1) = block;
    }
  return p;
}

RadialSchedule RadialSchedule::standard() { return geometric(8); }

RadialSchedule RadialSchedule::geometric(int steps) {
  if (steps < 1) throw InvalidData("radial schedule needs at least one step");
  RadialSchedule sched;
  double eps = 0.1;
  for (int i = 0; i < steps; ++i) {
    sched.epsilons.push_back(eps);
    eps *= 0.1;
  }
  return sched;
}

std::pair<Complex, double> neville_zero(const std::vector<double>& xs,
                                        const std::vector<Complex>& ys) {
  const size_t m = xs.size();
  if (m == 0 || ys.size() != m) throw InvalidData("mismatched extrapolation data");
  std::vector<Complex> t = ys;
  Complex prev_diag = t[0];
  double correction = 0.0;
  for (size_t j = 1; j < m; ++j) {
    for (size_t i = m - 1; i >= j; --i) {
      const double xi = xs[i];
      const double xij = xs[i - j];
      t[i] = (xi * t[i - 1] - xij * t[i]) / (xi - xij);
      if (i == j) break;
    }
    correction = std::abs(t[j] - prev_diag);
    prev_diag = t[j];
  }
  return {t[m - 1], correction};
}

LimitEstimate boundary_limit_d(const RationalFunction& w, Complex t0, int n,
                               const RadialSchedule& sched) {
  const Complex t = normalized_boundary_point(t0);
  if (n < 0 || n > kMaxOrder) throw InvalidData("order out of range");
  if (sched.epsilons.empty()) throw InvalidData("empty radial schedule");

  LimitEstimate est;
  std::vector<double> xs;
  std::vector<double> raws;
  std::vector<double> diags;
  std::vector<double> row;        // Neville row for the last consumed point
  std::vector<double> row_noise;  // propagated rounding bounds

  for (double eps : sched.epsilons) {
    if (eps <= 0.0 || eps >= 1.0) throw InvalidData("radial offsets must be in (0,1)");
    const Complex z = (1.0 - eps) * t;
    const std::vector<Complex> jet = rat_taylor(w, z, n).coeffs;
    const EntryValue e = sp_entry(jet, z, n, n);
    const double raw = e.value.real();
    const double noise = 1e-15 * e.magnitude;
    if (!xs.empty() && noise > 0.25 * (1.0 + std::abs(raw))) break;

    std::vector<double> next(xs.size() + 1);
    std::vector<double> next_noise(xs.size() + 1);
    next[0] = raw;
    next_noise[0] = noise;
    for (size_t j = 1; j < next.size(); ++j) {
      const double xij = xs[xs.size() - j];
      next[j] = (eps * row[j - 1] - xij * next[j - 1]) / (eps - xij);
      next_noise[j] = (eps * row_noise[j - 1] + xij * next_noise[j - 1]) /
                      std::abs(eps - xij);
    }
    xs.push_back(eps);
    raws.push_back(raw);
    row = std::move(next);
    row_noise = std::move(next_noise);
    diags.push_back(row.back());
    est.trace.emplace_back(eps, diags.back());

    if (diags.size() >= 2) {
      const double diff = std::abs(diags.back() - diags[diags.size() - 2]);
      const double scale = sched.rtol * (1.0 + std::abs(diags.back()));
      if (diff <= scale && row_noise.back() <= scale) {
        est.converged = true;
        est.value = diags.back();
        return est;
      }
    }
    if (raws.size() >= 3 && raws.back() > sched.cap &&
        strictly_increasing_tail(raws, 3)) {
      est.value = kInf;
      return est;
    }
  }

  if (raws.size() >= 3 && strictly_increasing_tail(raws, 3) && raws.back() > 1e3 &&
      raws.back() > 100.0 * std::max(raws.front(), 1e-300)) {
    est.value = kInf;
    return est;
  }
  est.value = diags.empty() ? std::numeric_limits<double>::quiet_NaN() : diags.back();
  return est;
}

double dval(const RationalFunction& omega, Complex t0, Complex b) {
  const Complex t = normalized_boundary_point(t0);
  if (std::abs(b) > 1.0 + 1e-12)
    throw InvalidData("target value must lie in the closed unit disk");
  const Jet jet = rat_taylor(omega, t, 1);
  if (std::abs(std::abs(b) - 1.0) > 1e-9) return kInf;
  if (std::abs(jet.coeffs[0] - b) > 1e-9 * (1.0 + std::abs(b))) return kInf;
  const double d = (t * jet.coeffs[1] * std::conj(b)).real();
  return std::max(0.0, d);
}

// s is unimodular at the nodes in exact arithmetic; strip the rounding in the
// evaluated value so downstream disk checks see a boundary point.
Complex reunimodularize(Complex v) {
  const double m = std::abs(v);
  if (m > 0.0 && std::abs(m - 1.0) <= 1e-6) return v / m;
  return v;
}

GapResult gap(const PickSystem& sys, const CoefficientMatrix& cm,
              const SchurParameter& param, int node_index,
              const RadialSchedule& sched) {
  if (node_index < 0 || node_index >= static_cast<int>(sys.data.nodes.size()))
    throw InvalidData("node index out of range");
  const auto& node = sys.data.nodes[static_cast<size_t>(node_index)];
  const double gamma = node.gamma_value();

  const RationalFunction w = apply_parameter(cm, param.function());
  const LimitEstimate d_est = boundary_limit_d(w, node.t(), node.n(), sched);

  GapResult out;
  out.direct.converged = d_est.converged;
  out.direct.value = gamma - d_est.value;
  for (const auto& [eps, v] : d_est.trace)
    out.direct.trace.emplace_back(eps, gamma - v);

  const Complex s_t = reunimodularize(rat_eval(cm.s, node.t()));
  const Jet s2jet = rat_taylor(cm.s2, node.t(), node.n() + 1);
  const double d_param = dval(param.function(), node.t(), std::conj(s_t));
  const double d_s = dval(cm.s, node.t(), s_t);
  const double denom = d_param + d_s;
  out.formula = std::isinf(denom)
                    ? 0.0
                    : std::norm(s2jet.coeffs[static_cast<size_t>(node.n() + 1)]) / denom;
  return out;
}

bool classify_equality(const SchurParameter& param, const CoefficientMatrix& cm,
                       Complex t) {
  const Complex s_t = reunimodularize(rat_eval(cm.s, normalized_boundary_point(t)));
  return std::isinf(dval(param.function(), t, std::conj(s_t)));
}

void write_limit_csv(const LimitEstimate& estimate, std::ostream& out) {
  out << "epsilon,estimate\n";
  char buf[64];
  for (const auto& [eps, v] : estimate.trace) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", eps, v);
    out << buf;
  }
}

}  // namespace bnp
