#include <doctest.h>

#include <cmath>

#include "gps/error.hpp"
#include "gps/oracles.hpp"
#include "gps/pareto.hpp"

using namespace gps;

namespace {

// int_R^inf e^{ixz} x^{-b-1} dx * R^b by quadrature
cplx quad_positive(double beta, double R, double z) {
  return quadrature_fourier(closed_form::pareto_model(beta, R), z).value / beta;
}

DensityModel negative_power(double beta) {
  DensityModel d;
  d.pdf = [beta](double x) { return x <= -1.0 ? std::pow(-x, -beta - 1.0) : 0.0; };
  d.upper = -1.0;
  d.envelope_C = 1.0;
  d.envelope_beta = beta;
  d.envelope_from = 1.0;
  return d;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("small z limit is the total mass") {
  const ParetoExpansion e = pareto_fourier(0.5, 1.0);
  CHECK(std::abs(e.evaluate(1e-14).value - cplx(2.0)) < 1e-6);
  const ParetoExpansion n = negative_tail_fourier(0.5, 1.0);
  CHECK(std::abs(n.evaluate(1e-14).value - std::polar(2.0, 1.5 * kPi)) < 1e-6);
}

TEST_CASE("expansion against quadrature") {
  for (double beta : {0.5, 1.3, 2.7}) {
    const ParetoExpansion e = pareto_fourier(beta, 1.0);
    const cplx s = e.evaluate(0.3).value, q = quad_positive(beta, 1.0, 0.3);
    CHECK(std::abs(s - q) <= 1e-8 * std::abs(q));
  }
}

TEST_CASE("negative tail against quadrature") {
  const double beta = 0.5;
  const ParetoExpansion n = negative_tail_fourier(beta, 1.0);
  const cplx q = std::polar(1.0, (beta + 1.0) * kPi) *
                 quadrature_fourier(negative_power(beta), 0.3).value;
  CHECK(std::abs(n.evaluate(0.3).value - q) <= 1e-8 * std::abs(q));
}

TEST_CASE("integer beta carries a log term") {
  for (int b = 1; b <= 3; ++b) {
    const ParetoExpansion e = pareto_fourier(b, 1.0);
    CHECK(e.singular.log_branch);
    // d^b/du^b of the integral is i^b E1(-iu) ~ -i^b log u
    const cplx want = -std::pow(cplx(0, 1), b) / factorial(b);
    CHECK(std::abs(e.singular.c_log - want) < 1e-14);
    const ParetoExpansion n = negative_tail_fourier(b, 1.0);
    CHECK(std::abs(n.singular.c_log -
                   std::polar(1.0, (b + 1.0) * kPi) * std::conj(e.singular.c_log)) <
          1e-14);
    // and the whole expansion still matches quadrature
    const cplx q = quad_positive(b, 1.0, 0.2);
    CHECK(std::abs(e.evaluate(0.2).value - q) <= 1e-8 * std::abs(q));
  }
}

TEST_CASE("near-integer beta routes to the log formula with a warning") {
  const ParetoExpansion e = pareto_fourier(2.0 + 1e-12, 1.0);
  CHECK(e.singular.log_branch);
  CHECK_FALSE(e.warnings.empty());
  CHECK(pareto_fourier(2.5, 1.0).warnings.empty());
  CHECK_FALSE(pareto_fourier(2.5, 1.0).singular.log_branch);
}

TEST_CASE("no singular part below one") {
  CHECK_FALSE(pareto_fourier(0.3, 1.0).singular.present);
}

TEST_CASE("oscillatory constants") {
  for (double s : {2.0, 1.5}) {
    const double beta = s - 1.0;
    const cplx q = quad_positive(beta, 1.0, 1.0);
    CHECK(std::abs(oscillatory_constant(s) - q) < 1e-8);
  }
  CHECK(oscillatory_constant(3.0).imag() > 0.0);
  CHECK_THROWS_AS(oscillatory_constant(0.0), Error);
}

TEST_CASE("cancellation residual") {
  const double z = 0.4;
  const auto r = cancellation_residual(cplx(0.3, 0.8), 1.5, 1.0, z);
  CHECK(r.c_log == cplx(0.0));

  const auto real_a = cancellation_residual(cplx(0.7, 0.0), 2.0, 1.0, z);
  CHECK(std::abs(real_a.value) < 1e-15);
  CHECK(std::abs(real_a.c_log) < 1e-15);

  // direct: (Im a) f(z) + Im(e^{i(b+1)pi} a) conj f(z)
  for (double beta : {0.5, 1.5}) {
    const cplx a(0.0, 1.0);
    const ParetoExpansion e = pareto_fourier(beta, 1.0);
    const cplx f = e.singular(z);
    const cplx want = a.imag() * f +
                      (std::polar(1.0, (beta + 1) * kPi) * a).imag() * std::conj(f);
    CHECK(std::abs(cancellation_residual(a, beta, 1.0, z).value - want) < 1e-12);
  }
  CHECK(std::abs(pareto_fourier(1.5, 1.0).singular(z)) > 0.0);
}

TEST_CASE("property: series within its tail bound of quadrature") {
  for (double beta : {0.3, 0.8, 1.5, 2.2, 3.4})
    for (double R : {1.0, 2.0}) {
      const ParetoExpansion e = pareto_fourier(beta, R);
      for (double z : {0.05 / R, 0.2 / R, 0.5 / R}) {
        const auto ev = e.evaluate(z);
        const auto q = quadrature_fourier(closed_form::pareto_model(beta, R), z);
        const double slack = (q.error_estimate + q.tail_bound) / beta +
                             1e-12 * std::abs(ev.value);
        CHECK(std::abs(ev.value - q.value / beta) <= ev.tail_bound + slack);
      }
    }
}
