#include <doctest.h>

#include <cmath>
#include <random>

#include "gps/error.hpp"
#include "gps/gpseries.hpp"
#include "gps/stable_laws.hpp"
#include "support.hpp"

using namespace gps;
using gps::test::max_diff;
using gps::test::random_series;

namespace {

const cplx I{0.0, 1.0};

GenSeries desc(double cutoff, std::initializer_list<std::pair<double, cplx>> t,
               int shift = 0, const SemigroupSpec& s = {}) {
  GenSeries f(s, cutoff, Variable::Descending, Normalization::Raw, shift);
  for (const auto& [g, c] : t) f = f.with_coeff(g, c);
  return f;
}

GenSeries F_form(double cutoff,
                 std::initializer_list<std::pair<double, cplx>> t,
                 const SemigroupSpec& s = {}) {
  GenSeries f = GenSeries::unit(s, cutoff, Variable::Descending,
                                Normalization::Raw, -1);
  for (const auto& [g, c] : t) f = f.with_coeff(g, c);
  return f;
}

GenSeries cauchy_moments(double cutoff) {
  GenSeries m(SemigroupSpec(), cutoff, Variable::Ascending,
              Normalization::Gamma);
  cplx p = 1.0;
  for (int n = 0; n <= cutoff; ++n, p *= I) m = m.with_coeff(n, p);
  return m;
}

long catalan(int n) {
  long c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

}  // namespace

TEST_CASE("linear combinations") {
  const SemigroupSpec s({0.5});
  const GenSeries one = GenSeries::unit(s, 4, Variable::Ascending);
  const GenSeries half =
      GenSeries(s, 4, Variable::Ascending, Normalization::Raw).with_coeff(0.5, 1.0);
  CHECK(max_diff(linear_combine(1.0, one, 0.0, half), one) == 0.0);
  CHECK(linear_combine(1.0, half, -1.0, half).is_zero());
  const GenSeries sum = linear_combine(1.0, one, 1.0, half);
  CHECK(sum.coeff(0) == cplx(1.0));
  CHECK(sum.coeff(0.5) == cplx(1.0));
  CHECK(sum.terms().size() == 2);
  const GenSeries g = GenSeries::unit(s, 4, Variable::Descending);
  CHECK_THROWS_AS(linear_combine(1.0, one, 1.0, g), Error);
}

TEST_CASE("products") {
  const GenSeries c = cauchy_moments(10);
  const GenSeries sq = product(c, c);
  cplx p = 1.0;
  for (int n = 0; n <= 10; ++n, p *= 2.0 * I)
    CHECK(std::abs(sq.coeff(n) - p) < 1e-12 * std::abs(p));
  CHECK(std::abs(sq.coeff(2) - cplx(-4.0)) < 1e-13);

  const SemigroupSpec s({0.3});
  const GenSeries f = GenSeries::unit(s, 3, Variable::Ascending).with_coeff(0.3, 1.0);
  const GenSeries f2 = product(f, f);
  CHECK(f2.coeff(0) == cplx(1.0));
  CHECK(f2.coeff(0.3) == cplx(2.0));
  CHECK(f2.coeff(0.6) == cplx(1.0));
  CHECK(f2.terms().size() == 3);
  CHECK(max_diff(product(f, GenSeries::unit(s, 3, Variable::Ascending)), f) == 0.0);
}

TEST_CASE("reciprocal") {
  GenSeries zg(SemigroupSpec(), 12, Variable::Descending, Normalization::Raw);
  cplx p = 1.0;
  for (int n = 0; n <= 12; ++n, p *= I) zg = zg.with_coeff(n, p);
  const GenSeries r = reciprocal(zg);
  CHECK(max_diff(r, desc(12, {{0, 1.0}, {1, -I}})) < 1e-14);

  const GenSeries u = GenSeries::unit({}, 6, Variable::Descending);
  CHECK(max_diff(reciprocal(u), u) == 0.0);

  const GenSeries h = desc(6, {{0, 1.0}, {2, -2.0}});
  CHECK(max_diff(reciprocal(h), desc(6, {{0, 1.0}, {2, 2.0}, {4, 4.0}, {6, 8.0}})) <
        1e-14);
  CHECK_THROWS_AS(reciprocal(desc(6, {{1, 1.0}})), Error);
}

TEST_CASE("binomial powers") {
  const GenSeries h = desc(6, {{0, 1.0}, {2, -2.0}});
  CHECK(max_diff(binomial_power(h, 0.5),
                 desc(6, {{0, 1.0}, {2, -1.0}, {4, -0.5}, {6, -0.5}})) < 1e-14);
  CHECK(max_diff(binomial_power(h, 1.0), h) < 1e-15);
  const GenSeries k = desc(6, {{0, 1.0}, {2, -4.0}});
  CHECK(max_diff(binomial_power(k, 0.5),
                 desc(6, {{0, 1.0}, {2, -2.0}, {4, -2.0}, {6, -4.0}})) < 1e-13);
  try {
    binomial_power(desc(6, {{0, 2.0}}), 0.5);
    FAIL("expected normalize-first");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NormalizeFirst);
  }
}

TEST_CASE("composition of F-forms") {
  const GenSeries a = F_form(8, {{1, -I}});
  CHECK(max_diff(compose_F(a, a), F_form(8, {{1, -2.0 * I}})) < 1e-14);
  const GenSeries id = F_form(8, {});
  CHECK(max_diff(compose_F(id, a), a) < 1e-15);
  // (z - 1/z) o (z - 1/z) = z - 2/z - z^{-3} - z^{-5} - z^{-7}
  const GenSeries b = F_form(8, {{2, -1.0}});
  CHECK(max_diff(compose_F(b, b),
                 F_form(8, {{2, -2.0}, {4, -1.0}, {6, -1.0}, {8, -1.0}})) < 1e-13);
  CHECK_THROWS_AS(compose_F(desc(4, {{0, 1.0}}), a), Error);
}

TEST_CASE("reversion") {
  GenSeries F = F_form(14, {});
  for (int n = 1; 2 * n <= 14; ++n) F = F.with_coeff(2 * n, -double(catalan(n - 1)));
  CHECK(max_diff(revert_F(F), F_form(14, {{2, 1.0}})) < 1e-10);
  CHECK(max_diff(revert_F(F_form(6, {})), F_form(6, {})) == 0.0);
  CHECK(max_diff(revert_F(F_form(6, {{1, -I}})), F_form(6, {{1, I}})) < 1e-15);
  CHECK_THROWS_AS(revert_F(desc(4, {{0, 2.0}}, -1)), Error);
}

TEST_CASE("evaluation") {
  GenSeries G(SemigroupSpec(), 20, Variable::Descending, Normalization::Raw, 1);
  cplx p = 1.0;
  for (int n = 0; n <= 20; ++n, p *= I) G = G.with_coeff(n, p);
  const Evaluation e = evaluate(G, cplx(0.0, -3.0));
  CHECK(std::abs(e.value - cplx(0.0, 0.25)) <= e.tail_bound + 1e-15);
  CHECK_FALSE(e.guard_violated);

  const GenSeries one = GenSeries::unit({}, 5, Variable::Ascending);
  CHECK(evaluate(one, cplx(0.3, 0.7)).value == cplx(1.0));

  const GenSeries half =
      GenSeries(SemigroupSpec({0.5}), 2, Variable::Ascending, Normalization::Raw)
          .with_coeff(0.5, 1.0);
  CHECK(std::abs(evaluate(half, cplx(0, -1)).value - std::polar(1.0, -kPi / 4)) <
        1e-15);
  // monotone branch: arg i = -3pi/2
  CHECK(std::abs(evaluate(half, cplx(0, 1), Branch::Monotone).value -
                 std::polar(1.0, -3 * kPi / 4)) < 1e-15);
  CHECK_THROWS_AS(evaluate(half, cplx(-1.0, 0.0)), Error);
  CHECK_THROWS_AS(evaluate(half, cplx(1.0, 0.0), Branch::Monotone), Error);

  // inside the guard the result is flagged
  CHECK(evaluate(G, cplx(0.0, -1.05)).guard_violated);
}

TEST_CASE("growth fits") {
  const GenSeries c = cauchy_moments(20);
  CHECK(growth_fit(c).A == doctest::Approx(1.0));
  CHECK(growth_fit(product(c, c)).A == doctest::Approx(2.0));
  StableParams p;
  p.alpha = 1.5;
  p.b = 1.0;
  const double a10 = growth_fit(classical_stable(p, 10).moments.series()).A;
  const double a20 = growth_fit(classical_stable(p, 20).moments.series()).A;
  CHECK(a20 > 1.1 * a10);
}

TEST_CASE("property: product is commutative and associative") {
  std::mt19937 rng(11);
  const SemigroupSpec s({0.37, 1.61});
  for (auto norm : {Normalization::Raw, Normalization::Gamma}) {
    for (int t = 0; t < 10; ++t) {
      const auto f = random_series(rng, s, 5, Variable::Ascending, norm);
      const auto g = random_series(rng, s, 5, Variable::Ascending, norm);
      const auto h = random_series(rng, s, 5, Variable::Ascending, norm);
      CHECK(max_diff(product(f, g), product(g, f)) < 1e-12);
      const auto a = product(product(f, g), h), b = product(f, product(g, h));
      double scale = 1.0;
      for (const auto& x : a.terms()) scale = std::max(scale, std::abs(x.coefficient));
      CHECK(max_diff(a, b) < 1e-12 * scale);
    }
  }
}

TEST_CASE("property: gamma product keeps c0 = 1") {
  std::mt19937 rng(12);
  const SemigroupSpec s({0.5});
  for (int t = 0; t < 10; ++t) {
    const auto f = random_series(rng, s, 6, Variable::Ascending,
                                 Normalization::Gamma, 0, 1.0);
    const auto g = random_series(rng, s, 6, Variable::Ascending,
                                 Normalization::Gamma, 0, 1.0);
    CHECK(product(f, g).coeff(0) == cplx(1.0));
  }
}

TEST_CASE("property: reciprocal round trip") {
  std::mt19937 rng(13);
  const SemigroupSpec s({0.45});
  for (int t = 0; t < 10; ++t) {
    const auto f = random_series(rng, s, 6, Variable::Descending,
                                 Normalization::Raw, 0, 1.0 + t);
    const auto u = product(f, reciprocal(f));
    CHECK(max_diff(u, GenSeries::unit(s, 6, Variable::Descending)) < 1e-9);
  }
}

TEST_CASE("property: binomial exponents add") {
  std::mt19937 rng(14);
  const SemigroupSpec s({0.7});
  for (int t = 0; t < 10; ++t) {
    const auto f = random_series(rng, s, 5, Variable::Descending,
                                 Normalization::Raw, 0, 1.0);
    const double b1 = 0.3 + 0.1 * t, b2 = -0.8 + 0.05 * t;
    const auto lhs = binomial_power(f, b1 + b2);
    const auto rhs = product(binomial_power(f, b1), binomial_power(f, b2));
    double scale = 1.0;
    for (const auto& x : lhs.terms()) scale = std::max(scale, std::abs(x.coefficient));
    CHECK(max_diff(lhs, rhs) < 1e-11 * scale);
  }
}

TEST_CASE("property: reversion round trip") {
  std::mt19937 rng(15);
  const SemigroupSpec s({0.6});
  for (int t = 0; t < 8; ++t) {
    GenSeries F = random_series(rng, s, 5, Variable::Descending,
                                Normalization::Raw, -1, 1.0);
    F = F.map([](cplx c, double) { return 0.3 * c; }).with_coeff(0.0, 1.0);
    const GenSeries H = revert_F(F);
    CHECK(max_diff(compose_F(F, H), F_form(5, {}, s)) < 1e-10);

    const double A = growth_fit(F).A;
    const cplx z = std::polar(std::max(4.0 * A, 3.0), -0.7);
    const Evaluation eh = evaluate(H, z);
    const Evaluation ef = evaluate(F, eh.value);
    // F is Lipschitz ~1 out here, so H's tail passes through nearly unchanged
    CHECK(std::abs(ef.value - z) <= ef.tail_bound + 2.0 * eh.tail_bound);
  }
}

TEST_CASE("property: conjugation symmetry") {
  std::mt19937 rng(16);
  const SemigroupSpec s({0.4});
  for (int t = 0; t < 10; ++t) {
    const auto f = random_series(rng, s, 6, Variable::Ascending,
                                 Normalization::Raw);
    const auto fc = f.map([](cplx c, double) { return std::conj(c); });
    const cplx z(0.3 + 0.05 * t, -0.2 + 0.04 * t);
    CHECK(std::abs(evaluate(fc, std::conj(z)).value -
                   std::conj(evaluate(f, z).value)) < 1e-13);
  }
}
