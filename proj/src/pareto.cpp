#include "gps/pareto.hpp"

#include <cmath>

#include "gps/error.hpp"

namespace gps {

namespace {

constexpr double kNearInteger = 1e-8;

cplx ipow(int k) {
  static const cplx cycle[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return cycle[((k % 4) + 4) % 4];
}

double factorial(int n) { return std::tgamma(n + 1.0); }

// beta (beta-1) ... (beta-k+1); 1 for k = 0.
double falling(double beta, int k) {
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= beta - j;
  return p;
}

struct Layout {
  double beta;
  int n;        // [beta]
  double P;     // beta ... (beta - n + 2)
  bool integer;
};

Layout layout(double& beta, std::vector<std::string>& warnings) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    fail(ErrorKind::InvalidArgument, "beta must be positive");
  const double r = std::round(beta);
  bool integer = beta == r;
  if (!integer && r >= 1.0 && std::abs(beta - r) < kNearInteger) {
    warnings.push_back("beta within 1e-8 of an integer; integer branch used");
    beta = r;
    integer = true;
  }
  Layout l{beta, static_cast<int>(std::floor(beta)), 1.0, integer};
  if (l.n >= 1) l.P = falling(beta, l.n - 1);
  return l;
}

// Coefficient of u^m (integer m) in the regular part.
cplx regular_integer_coef(const Layout& l, int m) {
  if (l.n == 0) return ipow(m) / (factorial(m) * (l.beta - m));
  cplx c{};
  // boundary sum: sum_{k=1}^{n-1} (iu)^{k-1} e^{iu} / (beta...(beta-k+1))
  for (int k = 1; k <= std::min(l.n - 1, m + 1); ++k)
    c += ipow(m) / (falling(l.beta, k) * factorial(m - k + 1));
  // k-family: k = m - n + 1, k not in {1, 2}
  const int k = m - l.n + 1;
  if (k >= 0 && k != 1 && k != 2)
    c -= ipow(m) / (factorial(k) * (k - l.beta + l.n - 1) * l.P);
  return c;
}

// Coefficient of u^beta in the regular part (beta not an integer, or the
// integer case where the same power is kept separate from u^m).
cplx regular_beta_coef(const Layout& l, cplx constant) {
  if (l.n == 0) return constant;
  const double t = l.beta - l.n + 1;  // s - 1 with s = beta - n + 2
  cplx sum = constant;
  for (int k = 0; k < 200; ++k) {
    if (k == 1 || k == 2) continue;
    const cplx term = ipow(k) / (factorial(k) * (k - t));
    sum += term;
    if (k > 10 && std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return ipow(l.n - 1) * sum / l.P;
}

SingularPart singular_of(const Layout& l) {
  SingularPart s;
  s.beta = l.beta;
  s.floor_beta = l.n;
  if (l.n == 0) return s;
  s.present = true;
  s.log_branch = l.integer;
  const int n = l.n;
  const cplx second = ipow(n + 1) / (2.0 * (l.beta - n - 1) * l.P);
  s.c_floor1 = second;
  s.c_beta = -second;
  if (l.integer) {
    s.c_log = -ipow(n) / l.P;
  } else {
    const cplx first = ipow(n) / ((l.beta - n) * l.P);
    s.c_floor = first;
    s.c_beta -= first;
  }
  return s;
}

SingularPart conj_scaled(const SingularPart& s, cplx phase) {
  SingularPart out = s;
  out.c_floor = phase * std::conj(s.c_floor);
  out.c_floor1 = phase * std::conj(s.c_floor1);
  out.c_beta = phase * std::conj(s.c_beta);
  out.c_log = phase * std::conj(s.c_log);
  return out;
}

// Sum of |coef| u^m over the first integer exponents above the cutoff.
double regular_remainder(const Layout& l, double cutoff, double u) {
  double tail = 0.0;
  const int m0 = static_cast<int>(std::floor(cutoff)) + 1;
  for (int m = m0; m < m0 + 60; ++m) {
    const double term = std::abs(regular_integer_coef(l, m)) * std::pow(u, m);
    tail += term;
    if (term < 1e-300) break;
  }
  return tail;
}

}  // namespace

cplx SingularPart::operator()(double u) const {
  if (!present) return {};
  const double n = floor_beta;
  cplx v = c_floor * std::pow(u, n) + c_floor1 * std::pow(u, n + 1.0) +
           c_beta * std::pow(u, beta);
  if (c_log != cplx{}) v += c_log * std::pow(u, beta) * std::log(u);
  return v;
}

cplx oscillatory_constant(double s) {
  if (!(s > 0.0))
    fail(ErrorKind::InvalidArgument, "exponent must be positive");
  // int_1^inf e^{ix} x^{-s} dx = i e^{i} int_0^inf e^{-t} (1 + it)^{-s} dt
  auto f = [s](double t) {
    return std::exp(-t) * std::pow(cplx(1.0, t), -s);
  };
  cplx total{};
  const double edges[] = {0.0, 1.0, 4.0, 12.0, 30.0, 60.0, 800.0};
  for (int j = 0; j + 1 < 7; ++j)
    total += numerics::integrate(f, edges[j], edges[j + 1], 1e-17, 1e-14).value;
  return cplx(0.0, 1.0) * std::exp(cplx(0.0, 1.0)) * total;
}

ParetoExpansion pareto_fourier(double beta, double R, double cutoff) {
  if (!(R > 0.0)) fail(ErrorKind::InvalidArgument, "R must be positive");
  ParetoExpansion out{beta, R, false,
                      GenSeries(SemigroupSpec(), 1.0, Variable::Ascending,
                                Normalization::Raw),
                      {}, {}, {}};
  const Layout l = layout(beta, out.warnings);
  out.beta = beta;

  if (l.n == 0) {
    cplx c2 = oscillatory_constant(beta + 1.0);
    for (int k = 0; k < 200; ++k) {
      const cplx term = ipow(k) / (factorial(k) * (k - beta));
      c2 += term;
      if (k > 10 && std::abs(term) < 1e-18 * std::abs(c2)) break;
    }
    out.constant = c2;
  } else {
    out.constant = oscillatory_constant(beta - l.n + 2.0);
  }

  const auto spec = SemigroupSpec::for_index(beta);
  GenSeries reg(spec, cutoff, Variable::Ascending, Normalization::Raw);
  std::vector<cplx> dense(reg.size());
  const auto& table = *reg.table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double v = table.value(i);
    const double rpow = std::pow(R, v);
    if (numerics::near_integer(v, 1e-9)) {
      const int m = static_cast<int>(std::lround(v));
      dense[i] += regular_integer_coef(l, m) * rpow;
    }
    if (same_exponent(v, beta)) dense[i] += regular_beta_coef(l, out.constant) * rpow;
  }
  out.regular = GenSeries(reg.table(), Variable::Ascending, Normalization::Raw,
                          0, std::move(dense), true);
  out.singular = singular_of(l);
  return out;
}

ParetoExpansion negative_tail_fourier(double beta, double R, double cutoff) {
  ParetoExpansion out = pareto_fourier(beta, R, cutoff);
  const cplx phase = std::exp(cplx(0.0, (out.beta + 1.0) * kPi));
  out.negative_tail = true;
  out.regular = out.regular.map([phase](cplx c, double) {
    return phase * std::conj(c);
  });
  out.singular = conj_scaled(out.singular, phase);
  out.constant = std::conj(out.constant);
  return out;
}

Evaluation ParetoExpansion::evaluate(double z) const {
  if (!(z > 0.0)) fail(ErrorKind::DomainError, "expansion holds for z > 0");
  Evaluation e;
  for (const auto& t : regular.terms())
    e.value += t.coefficient * std::pow(z, t.exponent);
  const double u = R * z;
  e.value += singular(u);
  std::vector<std::string> ignored;
  double b = beta;
  e.tail_bound = regular_remainder(layout(b, ignored), regular.cutoff(), u);
  return e;
}

CancellationResidual cancellation_residual(cplx a_beta, double beta, double R,
                                           double z) {
  if (!(z > 0.0)) fail(ErrorKind::DomainError, "z must be positive");
  if (!(R > 0.0)) fail(ErrorKind::InvalidArgument, "R must be positive");
  std::vector<std::string> warnings;
  const Layout l = layout(beta, warnings);
  const SingularPart f = singular_of(l);
  const double A = a_beta.imag();
  const double B =
      (std::exp(cplx(0.0, (l.beta + 1.0) * kPi)) * a_beta).imag();
  CancellationResidual r;
  r.c_floor = A * f.c_floor + B * std::conj(f.c_floor);
  r.c_floor1 = A * f.c_floor1 + B * std::conj(f.c_floor1);
  r.c_beta = A * f.c_beta + B * std::conj(f.c_beta);
  r.c_log = A * f.c_log + B * std::conj(f.c_log);
  SingularPart combined = f;
  combined.c_floor = r.c_floor;
  combined.c_floor1 = r.c_floor1;
  combined.c_beta = r.c_beta;
  combined.c_log = r.c_log;
  r.value = combined(R * z);
  return r;
}

}  // namespace gps
