#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "gps/transforms.hpp"

namespace gps {

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
  /// Bound (or, past the panel budget, extrapolation estimate) for the part
  /// of the integral beyond the last panel.
  double tail_bound = 0.0;
};

/// A probability density with its support and a power-law envelope
/// |pdf(x)| <= C |x|^{-beta-1} for |x| >= from, used for tail bounds.
struct DensityModel {
  std::function<double(double)> pdf;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  /// Optional: density at end + offset for a finite end of the support, with
  /// the offset exact. Lets integrable singularities at an end be resolved
  /// closer than one ulp of the end.
  std::function<double(double end, double offset)> pdf_edge;
  /// Interior points where pdf is singular or not smooth.
  std::vector<double> breaks;
  double envelope_C = 0.0;
  double envelope_beta = 0.0;
  double envelope_from = 0.0;
};

/// Throws invalid-density for an empty support or an unbounded support
/// without an integrable envelope.
void check_density(const DensityModel& d);

/// int e^{ixz} pdf(x) dx.
QuadratureResult quadrature_fourier(const DensityModel& d, double z);

/// int pdf(x)/(z - x) dx for Im z < 0.
QuadratureResult quadrature_stieltjes(const DensityModel& d, cplx z);

/// Density at x from a Fourier transform phi (phi(-z) = conj phi(z)):
/// (1/pi) Re int_0^inf e^{-ixz} phi(z) dz.
QuadratureResult fourier_inversion(const std::function<cplx(double)>& phi,
                                   double x);

/// G(z) = i int_0^inf e^{-izt} phi(t) dt for Im z < 0.
QuadratureResult stieltjes_from_fourier(
    const std::function<cplx(double)>& phi, cplx z);

struct InversionResult {
  double density = 0.0;
  /// |extrapolated value - value at the smallest y|
  double error_estimate = 0.0;
  std::vector<double> y;
  std::vector<double> values;
};

/// (1/pi) Im G(x - iy) extrapolated to y = 0 through the y sequence
/// (polynomial in y, Neville). Throws outside-validity-region when
/// |x| <= guard.
InversionResult stieltjes_inversion(
    const std::function<cplx(cplx)>& G, double x,
    const std::vector<double>& y_sequence = {1e-1, 3.1622776601683794e-3,
                                             1e-4},
    double guard = 0.0);

struct LaplaceLink {
  cplx lhs;
  cplx rhs;
  double discrepancy = 0.0;
};

/// lhs = int_0^inf F(z) e^{-yz} dz by quadrature (F from the moments unless a
/// closed form is supplied), rhs = -i G(-iy) from the series. Needs
/// y > 2cA.
LaplaceLink laplace_link_check(
    const MomentSeries& m, double y,
    const std::function<cplx(double)>& fourier = {});

/// Nested loop over all pairs of exponents, matching sums by value.
GenSeries brute_series_product(const GenSeries& f, const GenSeries& g);

/// Compositional inverse of an F-form by solving for one coefficient at a
/// time (cutoff <= 6).
GenSeries brute_revert(const GenSeries& F);

namespace closed_form {

double cauchy_density(double x);
cplx cauchy_fourier(double z);
/// 1/(z - i) for Im z < 0.
cplx cauchy_stieltjes(cplx z);
DensityModel cauchy_model();

/// 1/(pi sqrt(2 - x^2)) on (-sqrt 2, sqrt 2); Fourier transform J0(sqrt2 z).
double arcsine_density(double x);
cplx arcsine_fourier(double z);
DensityModel arcsine_model();

/// x^{-3/2} e^{-1/(4x)} / (2 sqrt pi); Fourier transform exp(-sqrt(-iz)).
double levy_density(double x);
cplx levy_fourier(double z);
DensityModel levy_model();

/// beta R^beta x^{-beta-1} on [R, inf).
DensityModel pareto_model(double beta, double R);

/// (1 - e^{-z^alpha}) / z^alpha: the alpha-stable mixture over a uniform
/// scale.
cplx mixture_uniform_fourier(double alpha, double z);

}  // namespace closed_form

}  // namespace gps
