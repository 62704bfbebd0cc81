#include "gps/numerics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "gps/error.hpp"

namespace gps {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::IncompatibleSeries: return "incompatible-series";
    case ErrorKind::NotInvertible: return "not-invertible";
    case ErrorKind::NormalizeFirst: return "normalize-first";
    case ErrorKind::InvalidForm: return "invalid-form";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::InvalidModel: return "invalid-model";
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::OutsideValidityRegion: return "outside-validity-region";
    case ErrorKind::ResonanceError: return "resonance-error";
    case ErrorKind::UnsupportedSpec: return "unsupported-spec";
    case ErrorKind::LogTermObstruction: return "log-term-obstruction";
    case ErrorKind::InconclusivePrecision: return "inconclusive-precision";
    case ErrorKind::InvalidDensity: return "invalid-density";
    case ErrorKind::InternalError: return "internal-error";
  }
  return "unknown";
}

namespace numerics {

double gamma(double x) { return std::tgamma(x); }

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x < 0.5) {
    // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    return std::sin(kPi * x) * std::tgamma(1.0 - x) / kPi;
  }
  return 1.0 / std::tgamma(x);
}

double binomial(double beta, int n) {
  double c = 1.0;
  for (int k = 0; k < n; ++k) c *= (beta - k) / (k + 1);
  return c;
}

cplx i_pow(double gamma) {
  const double phase = 0.5 * kPi * gamma;
  return {std::cos(phase), std::sin(phase)};
}

bool near_integer(double x, double tol) {
  return std::abs(x - std::round(x)) <= tol;
}

namespace {

// Kronrod 15-point nodes/weights with the embedded 7-point Gauss weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
  int depth;
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b,
           int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx resk = fc * kWgk[7];
  cplx resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const cplx f1 = f(c - dx);
    const cplx f2 = f(c + dx);
    resk += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) resg += (f1 + f2) * kWg[j / 2];
  }
  resk *= h;
  resg *= h;
  return {a, b, resk, std::abs(resk - resg), depth};
}

}  // namespace

IntegralEstimate integrate(const std::function<cplx(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           int max_depth) {
  if (a == b) return {};
  std::vector<Panel> todo{gk15(f, a, b, 0)};
  std::vector<Panel> done;
  // Total of the first pass sets the relative scale.
  const double scale = std::abs(todo.front().value);
  const double tol = std::max(abs_tol, rel_tol * scale);
  while (!todo.empty()) {
    Panel p = todo.back();
    todo.pop_back();
    const double width_share = (p.b - p.a) / (b - a);
    if (p.error <= tol * std::max(width_share, 1e-3) ||
        p.depth >= max_depth) {
      done.push_back(p);
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    todo.push_back(gk15(f, p.a, mid, p.depth + 1));
    todo.push_back(gk15(f, mid, p.b, p.depth + 1));
  }
  IntegralEstimate out;
  for (const auto& p : done) {
    out.value += p.value;
    out.error += p.error;
  }
  return out;
}

}  // namespace numerics
}  // namespace gps
