#pragma once

#include <complex>
#include <functional>

namespace gps {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

namespace numerics {

/// Gamma function for real arguments, including negative non-integers.
double gamma(double x);

/// 1/Gamma(x); entire, so it returns exactly 0 at the poles of Gamma.
double rgamma(double x);

/// Generalized binomial coefficient C(beta, n) = beta(beta-1)...(beta-n+1)/n!.
double binomial(double beta, int n);

/// i^gamma on the principal branch, i.e. exp(i*pi*gamma/2).
cplx i_pow(double gamma);

/// True when |x - round(x)| <= tol.
bool near_integer(double x, double tol);

struct IntegralEstimate {
  cplx value;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of a complex-valued integrand on
/// a finite interval. Bisects until the Kronrod/Gauss difference on every
/// panel is below max(abs_tol, rel_tol*|total|) or the depth limit is hit.
IntegralEstimate integrate(const std::function<cplx(double)>& f, double a,
                           double b, double abs_tol = 1e-15,
                           double rel_tol = 1e-13, int max_depth = 40);

}  // namespace numerics
}  // namespace gps
