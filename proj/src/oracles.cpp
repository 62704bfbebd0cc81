#include "gps/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "gps/error.hpp"

namespace gps {

namespace {

namespace bq = boost::math::quadrature;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kPanelBudget = 2000;
constexpr double kTailTol = 1e-10;

using CFn = std::function<cplx(double)>;

struct Piece {
  cplx value;
  double error = 0.0;
};

Piece tanh_sinh(const CFn& f, double a, double b) {
  bq::tanh_sinh<double> ts(15);
  double er = 0.0, ei = 0.0;
  const double re = ts.integrate([&](double x) { return f(x).real(); }, a, b,
                                 1e-13, &er);
  const double im = ts.integrate([&](double x) { return f(x).imag(); }, a, b,
                                 1e-13, &ei);
  return {{re, im}, er + ei};
}

// int_lo^hi pdf(x) w(x) dx; next to a finite end of the support the density
// is read through pdf_edge with the exact offset from that end.
Piece density_piece(const DensityModel& d, const CFn& w, double lo, double hi) {
  auto dens = [&](double x, double xc) {
    if (d.pdf_edge) {
      if (xc < 0.0 && lo == d.lower) return d.pdf_edge(lo, -xc);
      if (xc >= 0.0 && hi == d.upper) return d.pdf_edge(hi, -xc);
    }
    return d.pdf(x);
  };
  bq::tanh_sinh<double> ts(15);
  double er = 0.0, ei = 0.0;
  const double re = ts.integrate(
      [&](double x, double xc) { return (dens(x, xc) * w(x)).real(); }, lo, hi,
      1e-13, &er);
  const double im = ts.integrate(
      [&](double x, double xc) { return (dens(x, xc) * w(x)).imag(); }, lo, hi,
      1e-13, &ei);
  return {{re, im}, er + ei};
}

Piece exp_sinh(const CFn& f, double a) {
  bq::exp_sinh<double> es(12);
  double er = 0.0, ei = 0.0;
  const double re =
      es.integrate([&](double x) { return f(x).real(); }, a, kInf, 1e-13, &er);
  const double im =
      es.integrate([&](double x) { return f(x).imag(); }, a, kInf, 1e-13, &ei);
  return {{re, im}, er + ei};
}

Piece kronrod(const CFn& f, double a, double b) {
  double er = 0.0, ei = 0.0;
  const double re = bq::gauss_kronrod<double, 61>::integrate(
      [&](double x) { return f(x).real(); }, a, b, 4, 1e-13, &er);
  const double im = bq::gauss_kronrod<double, 61>::integrate(
      [&](double x) { return f(x).imag(); }, a, b, 4, 1e-13, &ei);
  return {{re, im}, er + ei};
}

// Wynn's epsilon algorithm; returns the even-column entry whose last two
// values agree best, with that difference as the error.
cplx wynn_epsilon(const std::vector<cplx>& s, double& err) {
  std::vector<cplx> prev(s.size() + 1, cplx{});
  std::vector<cplx> cur = s;
  cplx best = s.back();
  err = s.size() >= 2 ? std::abs(s.back() - s[s.size() - 2]) : kInf;
  for (int k = 1; cur.size() > 1; ++k) {
    std::vector<cplx> next(cur.size() - 1);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const cplx d = cur[i + 1] - cur[i];
      if (d == cplx{}) {
        ok = false;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / d;
    }
    if (!ok) break;
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0 && cur.size() >= 2) {
      const double e = std::abs(cur.back() - cur[cur.size() - 2]);
      if (e < err) {
        err = e;
        best = cur.back();
      }
    }
  }
  return best;
}

// int_start^inf g over panels of length h. `bound` gives an analytic bound
// for the integral beyond a point (or nothing). Past the panel budget the
// partial sums are extrapolated.
QuadratureResult panel_sum(const CFn& g, double start, double h,
                           const std::function<double(double)>& bound,
                           bool first_singular = false) {
  QuadratureResult r;
  std::vector<cplx> sums;
  sums.reserve(kPanelBudget);
  cplx S{};
  int quiet = 0;
  for (int k = 0; k < kPanelBudget; ++k) {
    const double a = start + k * h, b = a + h;
    const Piece p =
        k == 0 && first_singular ? tanh_sinh(g, a, b) : kronrod(g, a, b);
    S += p.value;
    r.error_estimate += p.error;
    sums.push_back(S);
    const double scale = std::max(std::abs(S), 1e-300);
    if (bound) {
      const double B = bound(b);
      if (B < kTailTol * scale) {
        r.value = S;
        r.tail_bound = B;
        return r;
      }
    }
    quiet = std::abs(p.value) < 1e-17 * scale ? quiet + 1 : 0;
    if (quiet >= 4) {
      r.value = S;
      r.tail_bound = 4.0 * std::abs(p.value) + 1e-17 * scale;
      return r;
    }
  }
  const std::vector<cplx> last(sums.end() - 40, sums.end());
  double err = 0.0;
  r.value = wynn_epsilon(last, err);
  r.tail_bound = err;
  return r;
}

// Finite pieces of [a, b] split at the given points and into chunks of at
// most `chunk`.
std::vector<std::pair<double, double>> pieces(double a, double b,
                                              std::vector<double> cuts,
                                              double chunk) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(a, cuts[i]), hi = std::min(b, cuts[i + 1]);
    if (!(hi > lo)) continue;
    const int n = std::isfinite(chunk)
                      ? std::max(1, static_cast<int>(std::ceil((hi - lo) / chunk)))
                      : 1;
    for (int j = 0; j < n; ++j)
      out.emplace_back(lo + (hi - lo) * j / n, lo + (hi - lo) * (j + 1) / n);
  }
  return out;
}

double inner_edge(const DensityModel& d) {
  return std::max(d.envelope_from, 1.0);
}

// Finite ends of the support are kept; infinite ones are cut at +-X, or
// just past the other end when that lies beyond X.
std::pair<double, double> inner_range(const DensityModel& d, double X) {
  const double a = std::isfinite(d.lower) ? d.lower : std::min(-X, d.upper - 1.0);
  const double b = std::isfinite(d.upper) ? d.upper : std::max(X, a + 1.0);
  return {a, b};
}

double envelope(const DensityModel& d, double x) {
  return d.envelope_C * std::pow(x, -d.envelope_beta - 1.0);
}

}  // namespace

void check_density(const DensityModel& d) {
  if (!d.pdf) fail(ErrorKind::InvalidDensity, "no density function");
  if (!(d.upper > d.lower)) fail(ErrorKind::InvalidDensity, "empty support");
  const bool unbounded = !std::isfinite(d.lower) || !std::isfinite(d.upper);
  if (unbounded && !(d.envelope_C > 0.0 && d.envelope_beta > 0.0))
    fail(ErrorKind::InvalidDensity,
         "unbounded support needs an envelope C|x|^{-beta-1} with beta > 0");
}

QuadratureResult quadrature_fourier(const DensityModel& d, double z) {
  check_density(d);
  const auto [a, b] = inner_range(d, inner_edge(d));
  auto g = [&d, z](double x) { return std::polar(d.pdf(x), x * z); };
  const double chunk = z != 0.0 ? 4.0 * kPi / std::abs(z) : kInf;
  QuadratureResult r;
  const CFn w = [z](double x) { return std::polar(1.0, x * z); };
  for (const auto& [lo, hi] : pieces(a, b, d.breaks, chunk)) {
    const Piece p = density_piece(d, w, lo, hi);
    r.value += p.value;
    r.error_estimate += p.error;
  }
  auto tail = [&](bool right) {
    // x = +-t, t >= X
    const double s = right ? 1.0 : -1.0;
    const double X = right ? b : -a;
    const CFn gt = [&, s](double t) { return g(s * t); };
    if (z == 0.0) {
      const Piece p = exp_sinh(gt, X);
      r.value += p.value;
      r.error_estimate += p.error;
      return;
    }
    // alternating panels of a decreasing envelope: |tail| <= 2 env(X)/|z|
    const QuadratureResult q = panel_sum(
        gt, X, kPi / std::abs(z),
        [&d, z](double t) { return 2.0 * envelope(d, t) / std::abs(z); });
    r.value += q.value;
    r.error_estimate += q.error_estimate;
    r.tail_bound += q.tail_bound;
  };
  if (!std::isfinite(d.upper)) tail(true);
  if (!std::isfinite(d.lower)) tail(false);
  return r;
}

QuadratureResult quadrature_stieltjes(const DensityModel& d, cplx z) {
  check_density(d);
  if (!(z.imag() < 0.0))
    fail(ErrorKind::DomainError, "Stieltjes quadrature needs Im z < 0");
  const auto [a, b] =
      inner_range(d, std::max(inner_edge(d), std::abs(z.real()) + 1.0));
  auto g = [&d, z](double x) { return d.pdf(x) / (z - x); };
  std::vector<double> cuts = d.breaks;
  cuts.push_back(z.real());
  QuadratureResult r;
  const CFn w = [z](double x) { return 1.0 / (z - x); };
  for (const auto& [lo, hi] : pieces(a, b, cuts, kInf)) {
    const Piece p = density_piece(d, w, lo, hi);
    r.value += p.value;
    r.error_estimate += p.error;
  }
  if (!std::isfinite(d.upper)) {
    const Piece p = exp_sinh(g, b);
    r.value += p.value;
    r.error_estimate += p.error;
  }
  if (!std::isfinite(d.lower)) {
    const Piece p = exp_sinh([&g](double t) { return g(-t); }, -a);
    r.value += p.value;
    r.error_estimate += p.error;
  }
  return r;
}

QuadratureResult fourier_inversion(const CFn& phi, double x) {
  const CFn g = [&phi, x](double t) {
    return std::polar(1.0, -x * t) * phi(t);
  };
  QuadratureResult q;
  if (x == 0.0) {
    const Piece p = exp_sinh(g, 0.0);
    q.value = p.value;
    q.error_estimate = p.error;
  } else {
    q = panel_sum(g, 0.0, kPi / std::abs(x), {}, true);
  }
  QuadratureResult r;
  r.value = q.value.real() / kPi;
  r.error_estimate = q.error_estimate / kPi;
  r.tail_bound = q.tail_bound / kPi;
  return r;
}

QuadratureResult stieltjes_from_fourier(const CFn& phi, cplx z) {
  if (!(z.imag() < 0.0))
    fail(ErrorKind::DomainError, "needs Im z < 0");
  const double y = -z.imag();
  const CFn g = [&phi, z](double t) {
    return std::exp(cplx(0.0, -1.0) * z * t) * phi(t);
  };
  // |phi| <= 1
  auto bound = [y](double T) { return std::exp(-y * T) / y; };
  QuadratureResult q;
  if (std::abs(z.real()) < 1e-3) {
    const Piece p = exp_sinh(g, 0.0);
    q.value = p.value;
    q.error_estimate = p.error;
  } else {
    q = panel_sum(g, 0.0, kPi / std::abs(z.real()), bound, true);
  }
  q.value *= cplx(0.0, 1.0);
  return q;
}

InversionResult stieltjes_inversion(const std::function<cplx(cplx)>& G,
                                    double x,
                                    const std::vector<double>& ys,
                                    double guard) {
  if (!(std::abs(x) > guard))
    fail(ErrorKind::OutsideValidityRegion,
         "|x| must exceed " + std::to_string(guard));
  if (ys.size() < 2)
    fail(ErrorKind::InvalidArgument, "need at least two y values");
  InversionResult r;
  r.y = ys;
  for (double y : ys) {
    if (!(y > 0.0)) fail(ErrorKind::InvalidArgument, "y values must be > 0");
    r.values.push_back(G(cplx(x, -y)).imag() / kPi);
  }
  // Neville at y = 0
  std::vector<double> P = r.values;
  const std::size_t n = ys.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      P[i] = (ys[i + m] * P[i] - ys[i] * P[i + 1]) / (ys[i + m] - ys[i]);
  r.density = P[0];
  const auto smallest =
      std::min_element(ys.begin(), ys.end()) - ys.begin();
  r.error_estimate = std::abs(r.density - r.values[smallest]);
  return r;
}

LaplaceLink laplace_link_check(const MomentSeries& m, double y,
                               const CFn& fourier) {
  const StieltjesEvaluator G(m);
  const double cA = G.guard_radius() / 1.25;
  if (!(y > 2.0 * cA))
    fail(ErrorKind::InvalidArgument,
         "y must exceed 2cA = " + std::to_string(2.0 * cA));
  CFn F = fourier;
  if (!F) {
    auto ev = std::make_shared<FourierEvaluator>(m);
    F = [ev](double z) { return (*ev)(z).value; };
  }
  const double Z = 60.0 / y;
  const CFn g = [&F, y](double z) { return F(z) * std::exp(-y * z); };
  LaplaceLink out;
  for (const auto& [lo, hi] : pieces(0.0, Z, {}, 2.0))
    out.lhs += tanh_sinh(g, lo, hi).value;
  out.rhs = cplx(0.0, -1.0) * G(cplx(0.0, -y)).value;
  out.discrepancy = std::abs(out.lhs - out.rhs);
  return out;
}

GenSeries brute_series_product(const GenSeries& f, const GenSeries& g) {
  if (!(f.spec() == g.spec()) || f.variable() != g.variable() ||
      f.normalization() != g.normalization())
    fail(ErrorKind::IncompatibleSeries, "product of unlike series");
  const double cutoff = std::min(f.cutoff(), g.cutoff());
  const std::vector<Exponent> values = enumerate_up_to(f.spec(), cutoff);
  std::vector<cplx> out(values.size());
  const bool gamma = f.normalization() == Normalization::Gamma;
  for (const auto& s : f.terms()) {
    for (const auto& t : g.terms()) {
      const double v = s.exponent + t.exponent;
      std::optional<std::size_t> at;
      for (std::size_t i = 0; i < values.size(); ++i)
        if (same_exponent(values[i].value, v)) at = i;
      if (!at) continue;
      double w = 1.0;
      if (gamma)
        w = std::tgamma(v + 1.0) /
            (std::tgamma(s.exponent + 1.0) * std::tgamma(t.exponent + 1.0));
      out[*at] += w * s.coefficient * t.coefficient;
    }
  }
  GenSeries r(f.spec(), cutoff, f.variable(), f.normalization(),
              f.shift() + g.shift());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (out[i] != cplx{}) r = r.with_coeff(values[i].value, out[i]);
  return r;
}

namespace {

struct Brute {
  std::vector<double> v;

  std::optional<std::size_t> at(double x) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (same_exponent(v[i], x)) return i;
    return std::nullopt;
  }

  std::vector<cplx> mul(const std::vector<cplx>& a,
                        const std::vector<cplx>& b) const {
    std::vector<cplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (a[i] == cplx{}) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (b[j] == cplx{}) continue;
        if (auto k = at(v[i] + v[j])) out[*k] += a[i] * b[j];
      }
    }
    return out;
  }

  // (1 + h)^beta, h without constant term
  std::vector<cplx> pow1p(const std::vector<cplx>& h, double beta) const {
    std::vector<cplx> out(v.size()), hn(v.size());
    out[0] = 1.0;
    hn[0] = 1.0;
    double c = 1.0;
    for (int n = 1; n <= 64; ++n) {
      hn = mul(hn, h);
      if (std::all_of(hn.begin(), hn.end(), [](cplx x) { return x == cplx{}; }))
        break;
      c *= (beta - (n - 1)) / n;
      for (std::size_t i = 0; i < v.size(); ++i) out[i] += c * hn[i];
    }
    return out;
  }
};

}  // namespace

GenSeries brute_revert(const GenSeries& F) {
  if (!is_F_form(F)) fail(ErrorKind::InvalidForm, "expected an F-form");
  if (F.cutoff() > 6.0)
    fail(ErrorKind::InvalidArgument, "brute reversion is limited to cutoff 6");
  Brute B;
  for (const auto& e : enumerate_up_to(F.spec(), F.cutoff()))
    B.v.push_back(e.value);
  const std::size_t n = B.v.size();
  std::vector<cplx> b(n);
  for (const auto& t : F.terms()) b[*B.at(t.exponent)] = t.coefficient;

  // F(z(1+h)) = sum_g b_g z^{1-g} (1+h)^{1-g}; solve coefficient by coefficient
  std::vector<cplx> h(n);
  auto compose = [&]() {
    std::vector<cplx> out(n);
    for (std::size_t g = 0; g < n; ++g) {
      if (b[g] == cplx{}) continue;
      const std::vector<cplx> p = B.pow1p(h, 1.0 - B.v[g]);
      for (std::size_t i = 0; i < n; ++i)
        if (p[i] != cplx{})
          if (auto k = B.at(B.v[g] + B.v[i])) out[*k] += b[g] * p[i];
    }
    return out;
  };
  for (std::size_t d = 1; d < n; ++d) {
    h[d] = 0.0;
    h[d] = -compose()[d];
  }
  GenSeries r = GenSeries::unit(F.spec(), F.cutoff(), Variable::Descending,
                                Normalization::Raw, -1);
  for (std::size_t i = 1; i < n; ++i)
    if (h[i] != cplx{}) r = r.with_coeff(B.v[i], h[i]);
  return r;
}

namespace closed_form {

double cauchy_density(double x) { return 1.0 / (kPi * (1.0 + x * x)); }

cplx cauchy_fourier(double z) { return std::exp(-std::abs(z)); }

cplx cauchy_stieltjes(cplx z) { return 1.0 / (z - cplx(0.0, 1.0)); }

DensityModel cauchy_model() {
  DensityModel d;
  d.pdf = cauchy_density;
  d.envelope_C = 1.0 / kPi;
  d.envelope_beta = 1.0;
  d.envelope_from = 1.0;
  return d;
}

double arcsine_density(double x) {
  const double r = std::sqrt(2.0);
  const double s = (r - x) * (r + x);
  return s > 0.0 ? 1.0 / (kPi * std::sqrt(s)) : 0.0;
}

cplx arcsine_fourier(double z) {
  return std::cyl_bessel_j(0.0, std::sqrt(2.0) * std::abs(z));
}

DensityModel arcsine_model() {
  DensityModel d;
  d.pdf = arcsine_density;
  d.pdf_edge = [](double, double offset) {
    const double t = std::abs(offset);
    const double s = t * (2.0 * std::sqrt(2.0) - t);
    return s > 0.0 ? 1.0 / (kPi * std::sqrt(s)) : 0.0;
  };
  d.lower = -std::sqrt(2.0);
  d.upper = std::sqrt(2.0);
  d.envelope_from = std::sqrt(2.0);
  return d;
}

double levy_density(double x) {
  if (!(x > 0.0)) return 0.0;
  return std::exp(-1.0 / (4.0 * x) - 1.5 * std::log(x)) / (2.0 * std::sqrt(kPi));
}

cplx levy_fourier(double z) {
  return std::exp(-std::sqrt(cplx(0.0, -z)));
}

DensityModel levy_model() {
  DensityModel d;
  d.pdf = levy_density;
  d.lower = 0.0;
  d.envelope_C = 1.0 / (2.0 * std::sqrt(kPi));
  d.envelope_beta = 0.5;
  d.envelope_from = 1.0;
  return d;
}

DensityModel pareto_model(double beta, double R) {
  if (!(beta > 0.0) || !(R > 0.0))
    fail(ErrorKind::InvalidDensity, "Pareto needs beta > 0 and R > 0");
  DensityModel d;
  d.pdf = [beta, R](double x) {
    return x >= R ? beta * std::pow(R, beta) * std::pow(x, -beta - 1.0) : 0.0;
  };
  d.lower = R;
  d.envelope_C = beta * std::pow(R, beta);
  d.envelope_beta = beta;
  d.envelope_from = R;
  return d;
}

cplx mixture_uniform_fourier(double alpha, double z) {
  const double s = std::pow(std::abs(z), alpha);
  if (s < 1e-8) return 1.0 - s / 2.0;
  return -std::expm1(-s) / s;
}

}  // namespace closed_form

}  // namespace gps
