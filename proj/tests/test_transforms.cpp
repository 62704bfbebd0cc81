#include <doctest.h>

#include <cmath>
#include <random>

#include "gps/error.hpp"
#include "gps/oracles.hpp"
#include "gps/stable_laws.hpp"
#include "gps/transforms.hpp"
#include "support.hpp"

using namespace gps;
using gps::test::max_diff;
using gps::test::random_series;

namespace {

const cplx I{0.0, 1.0};

MomentSeries cauchy(double cutoff = 20) {
  std::vector<std::pair<double, cplx>> v;
  cplx p = 1.0;
  for (int n = 1; n <= cutoff; ++n) v.push_back({double(n), p *= I});
  return MomentSeries::from_values({}, cutoff, v);
}

MomentSeries bernoulli(double cutoff = 20) {
  std::vector<std::pair<double, cplx>> v;
  for (int n = 2; n <= cutoff; n += 2) v.push_back({double(n), 1.0});
  return MomentSeries::from_values({}, cutoff, v);
}

MomentSeries semicircle(double cutoff = 20) {
  StableParams p;
  p.alpha = 2.0;
  p.b = 1.0;
  p.kind = StableKind::Free;
  return stable_moments(p, cutoff);
}

MomentSeries positive_half(double cutoff = 20) {
  return PositiveStableDensity(0.5, cutoff).moments();
}

GenSeries F_form(double cutoff, std::initializer_list<std::pair<double, cplx>> t) {
  GenSeries f = GenSeries::unit({}, cutoff, Variable::Descending,
                                Normalization::Raw, -1);
  for (const auto& [g, c] : t) f = f.with_coeff(g, c);
  return f;
}

double mdiff(const MomentSeries& a, const MomentSeries& b) {
  return max_diff(a.series(), b.series());
}

MomentSeries random_law(std::mt19937& rng, const SemigroupSpec& s,
                        double cutoff) {
  return MomentSeries(random_series(rng, s, cutoff, Variable::Ascending,
                                    Normalization::Gamma, 0, 1.0));
}

}  // namespace

TEST_CASE("fourier from moments") {
  const FourierEvaluator F(cauchy());
  CHECK(std::abs(F(1.0).value - std::exp(-1.0)) < 1e-10);
  CHECK(FourierEvaluator(MomentSeries::delta0())(0.7).value == cplx(1.0));

  const SemigroupSpec s({0.5});
  std::vector<std::pair<double, cplx>> v;
  cplx bn = 1.0;
  for (int n = 1; 0.5 * n <= 20; ++n) {
    bn *= I / double(n);
    v.push_back({0.5 * n, std::tgamma(0.5 * n + 1) * bn});
  }
  const FourierEvaluator G(MomentSeries::from_values(s, 20, v));
  const cplx want = std::exp(std::sqrt(I) * I * std::sqrt(0.4));
  CHECK(std::abs(G(0.4).value - want) < 1e-8);
  CHECK_THROWS_AS(F(-1.0), Error);
}

TEST_CASE("stieltjes series equals the moments") {
  const GenSeries G = stieltjes_from_moments(cauchy());
  CHECK(std::abs(evaluate(G, cplx(0, -3)).value - cplx(0, 0.25)) < 1e-10);
  const GenSeries d = stieltjes_from_moments(MomentSeries::delta0());
  CHECK(std::abs(evaluate(d, cplx(2, -3)).value - 1.0 / cplx(2, -3)) < 1e-15);

  const cplx z(0, -5);
  const StieltjesEvaluator S(semicircle());
  cplx root = std::sqrt(z * z - 4.0);
  if (std::abs(z * ((z - root) / 2.0) - 1.0) > 0.5) root = -root;  // G ~ 1/z
  CHECK(std::abs(S(z).value - (z - root) / 2.0) < 1e-9);
}

TEST_CASE("moments from a tail model") {
  const double alpha = 0.5, c = 0.1;
  TailDensityModel model;
  model.spec = SemigroupSpec({alpha});
  const cplx a = c / std::sin((alpha + 1) * kPi) * std::polar(1.0, (alpha + 1) * kPi);
  model.a = {{alpha, a}};
  model.r = 0.5;
  model.R = 2.0;
  const MomentSeries m = moments_from_tail(model);
  CHECK(std::abs(m.moment(alpha) - kPi * a) < 1e-15);

  TailDensityModel inner;
  inner.inner_moments = {1.0, 0.0, 0.5};
  const MomentSeries mi = moments_from_tail(inner);
  CHECK(mi.moment(2) == cplx(0.5));
  CHECK(mi.series().terms().size() == 2);

  model.a = {{alpha, cplx(2.0)}};
  CHECK_THROWS_AS(moments_from_tail(model), Error);
}

TEST_CASE("tail density from moments") {
  const TailDensity t(cauchy());
  CHECK(std::abs(t(5.0).value.real() - 1.0 / (26 * kPi)) < 1e-10);
  CHECK_THROWS_AS(t(0.5), Error);
  const TailDensity d(MomentSeries::delta0());
  CHECK(d(3.0).value.real() == 0.0);
  const TailDensity h(positive_half());
  CHECK(std::abs(h(4.0).value - positive_stable_density(0.5)(4.0).value) < 1e-12);
}

TEST_CASE("reciprocal Cauchy transforms") {
  CHECK(max_diff(F_from_moments(cauchy()), F_form(20, {{1, -I}})) < 1e-13);
  CHECK(max_diff(F_from_moments(MomentSeries::delta0()), F_form(20, {})) == 0.0);
  const GenSeries want = binomial_power(
      GenSeries::unit({}, 20, Variable::Descending).with_coeff(2, -2.0), 0.5);
  CHECK(max_diff(F_from_moments(monotone_stable(2.0, 2.0)), want.with_shift(-1)) <
        1e-12);
}

TEST_CASE("voiculescu transforms") {
  const GenSeries phi = voiculescu_from_moments(semicircle());
  CHECK(std::abs(voiculescu_coefficient(phi, 1) - 1.0) < 1e-10);
  for (const auto& t : phi.terms())
    if (t.exponent != 2.0) CHECK(std::abs(t.coefficient) < 1e-10);
  CHECK(voiculescu_from_moments(MomentSeries::delta0()).is_zero());
  // F = z - i inverts to z + i
  const GenSeries pc = voiculescu_from_moments(cauchy());
  CHECK(std::abs(voiculescu_coefficient(pc, 0) - I) < 1e-13);
  CHECK(pc.terms().size() == 1);
}

TEST_CASE("classical convolution") {
  const MomentSeries c2 = classical_convolve(cauchy(), cauchy());
  cplx p = 1.0;
  for (int n = 0; n <= 20; ++n, p *= 2.0 * I)
    CHECK(std::abs(c2.moment(n) - p) <= 1e-12 * std::abs(p));
  CHECK(mdiff(classical_convolve(semicircle(), MomentSeries::delta0()),
              semicircle()) == 0.0);
  const MomentSeries h = positive_half();
  const cplx one = FourierEvaluator(h)(0.3).value;
  CHECK(std::abs(FourierEvaluator(classical_convolve(h, h))(0.3).value - one * one) <
        1e-8);
}

TEST_CASE("boolean convolution") {
  const MomentSeries b2 = boolean_convolve(bernoulli(), bernoulli());
  for (int n = 1; 2 * n <= 20; ++n)
    CHECK(std::abs(b2.moment(2 * n) - std::pow(2.0, n)) < 1e-9 * std::pow(2.0, n));
  CHECK(mdiff(boolean_convolve(bernoulli(), MomentSeries::delta0()), bernoulli()) <
        1e-12);
  CHECK(max_diff(F_from_moments(boolean_convolve(cauchy(), cauchy())),
                 F_form(20, {{1, -2.0 * I}})) < 1e-10);
}

TEST_CASE("monotone convolution") {
  CHECK(max_diff(F_from_moments(monotone_convolve(cauchy(), cauchy())),
                 F_form(20, {{1, -2.0 * I}})) < 1e-10);
  CHECK(mdiff(monotone_convolve(MomentSeries::delta0(), semicircle()),
              semicircle()) < 1e-10);
  const MomentSeries a = monotone_stable(2.0, 2.0);
  CHECK(std::abs(monotone_convolve(a, a).moment(2) - 2.0) < 1e-12);
}

TEST_CASE("free convolution") {
  const MomentSeries s2 = free_convolve(semicircle(), semicircle());
  CHECK(std::abs(s2.moment(2) - 2.0) < 1e-10);
  CHECK(std::abs(s2.moment(4) - 8.0) < 1e-10);
  CHECK(mdiff(free_convolve(semicircle(), MomentSeries::delta0()), semicircle()) <
        1e-9);
  const MomentSeries c2 = free_convolve(cauchy(), cauchy());
  cplx p = 1.0;
  for (int n = 0; n <= 20; ++n, p *= 2.0 * I)
    CHECK(std::abs(c2.moment(n) - p) <= 1e-9 * std::abs(p));
}

TEST_CASE("real tail coefficients to complex") {
  const ComplexTail t = tail_real_to_complex({{0.5, 1.0}, {0.25, 1.0}},
                                             SemigroupSpec({0.25}));
  REQUIRE(t.a.size() == 2);
  for (const auto& [b, a] : t.a) {
    if (b == 0.5) CHECK(std::abs(a - I) < 1e-15);
    if (b == 0.25) CHECK(std::abs(a - cplx(-1.0, 1.0)) < 1e-15);
  }
  try {
    tail_real_to_complex({{2.0, 1.0}}, SemigroupSpec({0.25}));
    FAIL("expected log-term-obstruction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LogTermObstruction);
  }
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const SemigroupSpec s({phi});
  std::vector<std::pair<double, double>> b;
  for (const auto& e : enumerate_up_to(s, 20))
    if (std::abs(e.value - std::round(e.value)) > 1e-9)
      b.push_back({e.value, std::pow(0.1, e.value)});
  const ComplexTail g = tail_real_to_complex(b, s);
  CHECK(std::isfinite(g.A));
  CHECK(g.A < 1.0);
}

TEST_CASE("property: stieltjes coefficients are the moments") {
  std::mt19937 rng(21);
  for (int t = 0; t < 10; ++t) {
    const SemigroupSpec s({0.3 + 0.07 * t});
    const MomentSeries m = random_law(rng, s, 6);
    const GenSeries G = stieltjes_from_moments(m);
    CHECK(G.shift() == 1);
    CHECK(G.variable() == Variable::Descending);
    for (std::size_t i = 0; i < G.size(); ++i)
      CHECK(G.coeff_at(i) == m.series().coeff_at(i));
    CHECK(mdiff(moments_from_stieltjes(G), m) == 0.0);
  }
}

TEST_CASE("property: representation round trips") {
  std::mt19937 rng(22);
  const SemigroupSpec s({0.45});
  for (int t = 0; t < 10; ++t) {
    const MomentSeries m = random_law(rng, s, 5);
    CHECK(mdiff(moments_from_F(F_from_moments(m)), m) < 1e-9);
    CHECK(mdiff(moments_from_voiculescu(voiculescu_from_moments(m)), m) < 1e-9);

    TailDensityModel model;
    model.spec = s;
    model.cutoff = 5;
    double r = 0.0;
    for (const auto& x : m.series().terms()) {
      if (x.exponent == 0.0) continue;
      model.a.push_back({x.exponent, x.coefficient / kPi});
      r = std::max(r, std::pow(std::abs(x.coefficient) / kPi, 1.0 / x.exponent));
    }
    model.r = 1.01 * r;
    model.R = 4.0 * model.r * density_constant(s, 5) + 1.0;
    std::vector<cplx> inner(6);
    inner[0] = 1.0;
    for (int n = 1; n <= 5; ++n) inner[n] = m.moment(n).real();
    model.inner_moments = inner;
    CHECK(mdiff(moments_from_tail(model), m) < 1e-12);
  }
}

TEST_CASE("property: laplace link on constructed laws") {
  std::vector<double> nu;
  for (int n = 0; n <= 60; ++n) nu.push_back(1.0 / (n + 1));
  for (const MomentSeries& m :
       {cauchy(), semicircle(), bernoulli(), stable_mixture(nu, 0.7).moments}) {
    const double y = 2.5 * StieltjesEvaluator(m).guard_radius() / 1.25;
    CHECK(laplace_link_check(m, y).discrepancy < 1e-6);
  }
}

TEST_CASE("property: convolutions commute and associate") {
  std::mt19937 rng(23);
  const SemigroupSpec s({0.6});
  for (int t = 0; t < 5; ++t) {
    const MomentSeries a = random_law(rng, s, 5), b = random_law(rng, s, 5),
                       c = random_law(rng, s, 5);
    for (auto op : {classical_convolve, boolean_convolve, free_convolve}) {
      CHECK(mdiff(op(a, b), op(b, a)) < 1e-9);
      const MomentSeries l = op(op(a, b), c), r = op(a, op(b, c));
      double scale = 1.0;
      for (const auto& x : l.series().terms())
        scale = std::max(scale, std::abs(x.coefficient));
      CHECK(mdiff(l, r) < 1e-9 * scale);
    }
    const MomentSeries l = monotone_convolve(monotone_convolve(a, b), c);
    const MomentSeries r = monotone_convolve(a, monotone_convolve(b, c));
    double scale = 1.0;
    for (const auto& x : l.series().terms())
      scale = std::max(scale, std::abs(x.coefficient));
    CHECK(mdiff(l, r) < 1e-9 * scale);
  }
  // bernoulli and semicircle do not commute under the monotone product
  const MomentSeries ab = monotone_convolve(bernoulli(), semicircle());
  const MomentSeries ba = monotone_convolve(semicircle(), bernoulli());
  CHECK(mdiff(ab, ba) > 1e-3);
}

TEST_CASE("property: convolution growth stays bounded") {
  std::mt19937 rng(24);
  const SemigroupSpec s({0.5});
  for (int t = 0; t < 5; ++t) {
    const MomentSeries a = random_law(rng, s, 8), b = random_law(rng, s, 8);
    const double A = std::max(growth_fit(a.series()).A, growth_fit(b.series()).A);
    const double c = density_constant(s, 8);
    for (auto op : {classical_convolve, boolean_convolve, free_convolve,
                    monotone_convolve}) {
      const MomentSeries m = op(a, b);
      CHECK(std::isfinite(growth_fit(m.series()).A));
      for (const auto& x : m.series().terms()) {
        if (x.exponent == 0.0) continue;
        const double fl = std::floor(x.exponent);
        const double bound = x.exponent * std::log(2.0 * A) +
                             fl * std::log(c + 1) + std::log(c * (fl + 2)) +
                             2.0;
        CHECK(std::log(std::abs(x.coefficient)) <= bound);
      }
    }
  }
}
