#include <doctest.h>

#include <cmath>
#include <random>

#include "gps/error.hpp"
#include "gps/oracles.hpp"
#include "gps/pareto.hpp"
#include "gps/stable_laws.hpp"
#include "support.hpp"

using namespace gps;
using gps::test::max_diff;
using gps::test::random_series;

namespace {

const cplx I{0.0, 1.0};

// normal density with standard deviation s, truncated to +-40 s
DensityModel bump(double s, double center = 0.0) {
  DensityModel d;
  d.pdf = [s, center](double x) {
    const double u = (x - center) / s;
    return std::exp(-0.5 * u * u) / (s * std::sqrt(2 * kPi));
  };
  d.lower = center - 40 * s;
  d.upper = center + 40 * s;
  return d;
}

}  // namespace

TEST_CASE("fourier quadrature of the Cauchy law") {
  const auto r = quadrature_fourier(closed_form::cauchy_model(), 1.0);
  CHECK(std::abs(r.value - std::exp(-1.0)) < 1e-8);
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.tail_bound >= 0.0);
  CHECK(std::abs(quadrature_fourier(closed_form::cauchy_model(), 0.0).value - 1.0) < 1e-8);
}

TEST_CASE("fourier quadrature against closed forms") {
  for (double z : {0.2, 1.0, 3.0}) {
    CHECK(std::abs(quadrature_fourier(closed_form::arcsine_model(), z).value -
                   closed_form::arcsine_fourier(z)) < 1e-8);
    CHECK(std::abs(quadrature_fourier(closed_form::levy_model(), z).value -
                   closed_form::levy_fourier(z)) < 1e-7);
  }
  // normal: exp(-z^2 s^2 / 2)
  CHECK(std::abs(quadrature_fourier(bump(0.5), 2.0).value - std::exp(-0.5)) < 1e-10);
}

TEST_CASE("pareto quadrature against the expansion") {
  const ParetoExpansion e = pareto_fourier(0.5, 1.0);
  const auto q = quadrature_fourier(closed_form::pareto_model(0.5, 1.0), 0.3);
  const auto s = e.evaluate(0.3);
  CHECK(std::abs(q.value / 0.5 - s.value) <=
        (q.error_estimate + q.tail_bound) / 0.5 + s.tail_bound +
            1e-14 * std::abs(s.value));
}

TEST_CASE("property: conjugate symmetry") {
  for (const auto& d : {closed_form::cauchy_model(), closed_form::levy_model(),
                        closed_form::pareto_model(1.3, 2.0), bump(0.3, 1.0)})
    for (double z : {0.1, 0.7, 2.5}) {
      const auto a = quadrature_fourier(d, z), b = quadrature_fourier(d, -z);
      CHECK(std::abs(a.value - std::conj(b.value)) <=
            2 * (a.error_estimate + a.tail_bound + b.error_estimate + b.tail_bound) +
                1e-14);
    }
}

TEST_CASE("stieltjes quadrature") {
  const auto c = quadrature_stieltjes(closed_form::cauchy_model(), cplx(0, -3));
  CHECK(std::abs(c.value - 0.25 * I) < 1e-9);
  CHECK(std::abs(quadrature_stieltjes(closed_form::cauchy_model(), cplx(-5, -2)).value -
                 closed_form::cauchy_stieltjes(cplx(-5, -2))) < 1e-9);

  const cplx z(0, -10);
  const auto b = quadrature_stieltjes(bump(1e-3), z);
  // 1/(z - x) = 1/z + x/z^2 + x^2/z^3 ...: second moment term
  CHECK(std::abs(b.value - 1.0 / z) < 2e-6 / std::pow(std::abs(z), 3));

  // arcsine against the monotone stable series (alpha = 2, b = 2)
  const GenSeries G = stieltjes_from_moments(monotone_stable(2.0, 2.0, 40));
  for (cplx w : {cplx(0, -5), cplx(3, -4)}) {
    const auto q = quadrature_stieltjes(closed_form::arcsine_model(), w);
    const Evaluation s = evaluate(G, w);
    CHECK(std::abs(q.value - s.value) <= q.error_estimate + q.tail_bound + s.tail_bound +
                                             1e-12);
    CHECK(std::abs(q.value - s.value) < 1e-9);
  }
  CHECK_THROWS_AS(quadrature_stieltjes(closed_form::cauchy_model(), cplx(1, 0.5)), Error);
}

TEST_CASE("stieltjes inversion") {
  const auto c = stieltjes_inversion(closed_form::cauchy_stieltjes, 5.0);
  CHECK(std::abs(c.density - 1.0 / (26 * kPi)) < 1e-7);
  CHECK(c.y.size() == 3);

  const DensityModel b = bump(0.1);
  const auto far = stieltjes_inversion(
      [&b](cplx z) { return quadrature_stieltjes(b, z).value; }, 20.0);
  CHECK(std::abs(far.density) < 1e-8);

  // positive 1/2-stable: G from its Fourier transform
  const auto phi = [](double z) {
    return std::exp(std::polar(1.0, 0.5 * kPi) * std::pow(cplx(0, z), 0.5));
  };
  const auto inv = stieltjes_inversion(
      [&phi](cplx z) { return stieltjes_from_fourier(phi, z).value; }, 4.0);
  CHECK(std::abs(inv.density - positive_stable_density(0.5)(4.0).value.real()) < 1e-5);
  CHECK(std::abs(inv.density - closed_form::levy_density(4.0)) < 1e-5);

  try {
    stieltjes_inversion(closed_form::cauchy_stieltjes, 0.5, {1e-1, 1e-2}, 1.0);
    FAIL("expected outside-validity-region");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideValidityRegion);
  }
}

TEST_CASE("fourier inversion") {
  for (double x : {-3.0, 0.0, 2.0})
    CHECK(std::abs(fourier_inversion(closed_form::cauchy_fourier, x).value.real() -
                   closed_form::cauchy_density(x)) < 1e-8);
  CHECK(std::abs(fourier_inversion(closed_form::levy_fourier, 1.0).value.real() -
                 closed_form::levy_density(1.0)) < 1e-7);
}

TEST_CASE("laplace link") {
  const MomentSeries cauchy = stable_moments([] {
    StableParams p;
    p.kind = StableKind::Classical;
    p.alpha = 1.0;
    p.b = cplx(0, 1);
    return p;
  }());
  const LaplaceLink c = laplace_link_check(cauchy, 3.0);
  CHECK(std::abs(c.lhs - 0.25) < 1e-7);
  CHECK(std::abs(c.rhs - 0.25) < 1e-7);
  CHECK(c.discrepancy < 1e-7);

  const LaplaceLink d = laplace_link_check(MomentSeries::delta0(), 5.0);
  CHECK(std::abs(d.lhs - 0.2) < 1e-12);
  CHECK(std::abs(d.rhs - 0.2) < 1e-12);

  std::vector<double> nu;
  for (int k = 0; k <= 40; ++k) nu.push_back(1.0 / (k + 1));
  const StableMixture u = stable_mixture(nu, 0.5);
  const LaplaceLink m = laplace_link_check(
      u.moments, 4.0, [](double z) { return closed_form::mixture_uniform_fourier(0.5, z); });
  CHECK(m.discrepancy < 1e-6);
  CHECK_THROWS_AS(laplace_link_check(cauchy, 0.5), Error);
}

TEST_CASE("property: brute force product matches product") {
  std::mt19937 rng(11);
  const std::vector<SemigroupSpec> specs{SemigroupSpec(), SemigroupSpec({0.5}),
                                         SemigroupSpec({std::sqrt(2.0)}),
                                         SemigroupSpec({0.3, std::sqrt(3.0)})};
  for (int trial = 0; trial < 20; ++trial) {
    const SemigroupSpec& s = specs[trial % specs.size()];
    const Variable v = trial % 2 ? Variable::Ascending : Variable::Descending;
    const Normalization n = trial % 3 ? Normalization::Raw : Normalization::Gamma;
    const GenSeries f = random_series(rng, s, 4.0, v, n);
    const GenSeries g = random_series(rng, s, 4.0, v, n);
    CHECK(max_diff(brute_series_product(f, g), product(f, g)) < 1e-12);
    const GenSeries one = GenSeries::unit(s, 4.0, v, n);
    CHECK(max_diff(brute_series_product(one, f), f) == 0.0);
  }
}

TEST_CASE("brute force reversion") {
  const GenSeries F =
      GenSeries::unit({}, 6, Variable::Descending, Normalization::Raw, -1).with_coeff(2, -1.0);
  const GenSeries R = brute_revert(F);
  CHECK(std::abs(R.coeff(0) - 1.0) < 1e-15);
  CHECK(std::abs(R.coeff(2) - 1.0) < 1e-15);
  CHECK(std::abs(R.coeff(4) + 1.0) < 1e-15);
  CHECK(std::abs(R.coeff(6) - 2.0) < 1e-15);
  CHECK(max_diff(R, revert_F(F)) < 1e-12);
  CHECK_THROWS_AS(
      brute_revert(GenSeries::unit({}, 8, Variable::Descending, Normalization::Raw, -1)),
      Error);
}

TEST_CASE("density models are checked") {
  DensityModel empty = bump(1.0);
  empty.lower = 1.0;
  empty.upper = 1.0;
  CHECK_THROWS_AS(check_density(empty), Error);
  DensityModel heavy;
  heavy.pdf = [](double) { return 0.0; };
  heavy.lower = 1.0;
  CHECK_THROWS_AS(check_density(heavy), Error);
  heavy.envelope_C = 1.0;
  heavy.envelope_beta = 0.0;
  heavy.envelope_from = 1.0;
  CHECK_THROWS_AS(check_density(heavy), Error);
  heavy.envelope_beta = 0.5;
  CHECK_NOTHROW(check_density(heavy));
  try {
    quadrature_fourier(empty, 1.0);
    FAIL("expected invalid-density");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDensity);
  }
}
