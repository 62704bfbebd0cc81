#include "gps/stable_laws.hpp"

#include <algorithm>
#include <cmath>

#include "gps/error.hpp"

namespace gps {

namespace {

constexpr double kArgTol = 1e-12;
constexpr double kResonance = 1e-8;

double principal_arg(cplx b) {
  double a = std::arg(b);
  if (a <= -kPi + kArgTol) a = kPi;
  return a;
}

void check_sector(double alpha, cplx b, const char* who) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    fail(ErrorKind::InvalidParams,
         std::string(who) + ": alpha must lie in (0, 2]");
  if (b == cplx{}) return;
  const double a = principal_arg(b);
  double lo = 0.0, hi = kPi;
  if (alpha < 1.0) {
    lo = (1.0 - alpha) * kPi;
  } else if (alpha > 1.0) {
    hi = (2.0 - alpha) * kPi;
  }
  if (a < lo - kArgTol || a > hi + kArgTol)
    fail(ErrorKind::InvalidParams,
         std::string(who) + ": arg b = " + std::to_string(a) +
             " outside [" + std::to_string(lo) + ", " + std::to_string(hi) +
             "]");
}

// 1 + c1*w + cb*w^alpha as a RAW series.
GenSeries two_term(double alpha, cplx c1, cplx cb, double cutoff,
                   Variable variable) {
  const auto spec = SemigroupSpec::for_index(alpha);
  GenSeries s = GenSeries::unit(spec, cutoff, variable);
  if (cutoff >= 1.0) s = s.with_coeff(1.0, c1);
  if (alpha <= cutoff) s = s.with_coeff(alpha, s.coeff(alpha) + cb);
  return s;
}

}  // namespace

void check_stable_params(const StableParams& params) {
  check_sector(params.alpha, params.b, "stable law");
}

cplx stable_b_from_scale_skew(double alpha, double c, double skew) {
  if (alpha == 1.0)
    fail(ErrorKind::InvalidParams,
         "the (c, skew) form is not used at alpha = 1");
  const cplx rhs = -c * cplx(1.0, -skew * std::tan(kPi * alpha / 2.0));
  return rhs / numerics::i_pow(alpha);
}

MembershipDiagnosis diagnose_growth(const MomentSeries& low,
                                    const MomentSeries& high) {
  return diagnose_growth(low.series(), high.series());
}

MembershipDiagnosis diagnose_growth(const GenSeries& low,
                                    const GenSeries& high) {
  MembershipDiagnosis d;
  d.cutoff_low = low.cutoff();
  d.cutoff_high = high.cutoff();
  d.A_low = growth_fit(low).A;
  d.A_high = growth_fit(high).A;
  d.relative_change = d.A_low > 0.0 ? (d.A_high - d.A_low) / d.A_low
                                    : (d.A_high > 0.0 ? 1.0 : 0.0);
  d.stable = std::abs(d.relative_change) < 0.01;
  return d;
}

namespace {

MomentSeries classical_moments(const StableParams& p, double cutoff) {
  GenSeries h = two_term(p.alpha, p.gamma_shift, p.b, cutoff,
                         Variable::Ascending);
  h = h.with_coeff(0.0, 0.0);
  return MomentSeries(exp_series(h).with_normalization(Normalization::Gamma));
}

}  // namespace

StableLaw classical_stable(const StableParams& params, double cutoff) {
  check_stable_params(params);
  StableParams p = params;
  p.kind = StableKind::Classical;
  MomentSeries high = classical_moments(p, cutoff);
  MomentSeries low = classical_moments(p, cutoff / 2.0);
  auto diagnosis = diagnose_growth(low, high);
  if (p.alpha > 1.0 && p.b != cplx{}) diagnosis.stable = false;
  return {std::move(high), diagnosis};
}

namespace {

GenSeries free_inverse_F(const StableParams& params, double cutoff) {
  return two_term(params.alpha, -params.gamma_shift, params.b, cutoff,
                  Variable::Descending)
      .with_shift(-1);
}

GenSeries boolean_F(const StableParams& params, double cutoff) {
  return two_term(params.alpha, params.gamma_shift, -params.b, cutoff,
                  Variable::Descending)
      .with_shift(-1);
}

GenSeries monotone_F(double alpha, cplx b, double cutoff) {
  const GenSeries base =
      two_term(alpha, 0.0, -b, cutoff, Variable::Descending);
  return binomial_power(base, 1.0 / alpha).with_shift(-1);
}

}  // namespace

MomentSeries free_stable(const StableParams& params, double cutoff) {
  check_stable_params(params);
  return moments_from_F(revert_F(free_inverse_F(params, cutoff)));
}

MomentSeries boolean_stable(const StableParams& params, double cutoff) {
  check_stable_params(params);
  return moments_from_F(boolean_F(params, cutoff));
}

MomentSeries monotone_stable(double alpha, cplx b, double cutoff) {
  check_sector(alpha, b, "monotone stable law");
  return moments_from_F(monotone_F(alpha, b, cutoff), Branch::Monotone);
}

GenSeries defining_series(const StableParams& params, double cutoff) {
  check_stable_params(params);
  switch (params.kind) {
    case StableKind::Classical:
      return classical_moments(params, cutoff).series();
    case StableKind::Free:
      return free_inverse_F(params, cutoff).with_coeff(0.0, 0.0);
    case StableKind::Boolean: return boolean_F(params, cutoff);
    case StableKind::Monotone:
      return monotone_F(params.alpha, params.b, cutoff);
  }
  fail(ErrorKind::InternalError, "unknown stable kind");
}

StableLaw stable_law(const StableParams& params, double cutoff) {
  if (params.kind == StableKind::Classical)
    return classical_stable(params, cutoff);
  MomentSeries moments = stable_moments(params, cutoff);
  const auto diagnosis = diagnose_growth(defining_series(params, cutoff / 2.0),
                                         defining_series(params, cutoff));
  return {std::move(moments), diagnosis};
}

MomentSeries stable_moments(const StableParams& params, double cutoff) {
  switch (params.kind) {
    case StableKind::Classical: {
      check_stable_params(params);
      return classical_moments(params, cutoff);
    }
    case StableKind::Free: return free_stable(params, cutoff);
    case StableKind::Boolean: return boolean_stable(params, cutoff);
    case StableKind::Monotone:
      if (params.gamma_shift != 0.0)
        fail(ErrorKind::InvalidParams, "monotone stable law takes no shift");
      return monotone_stable(params.alpha, params.b, cutoff);
  }
  fail(ErrorKind::InternalError, "unknown stable kind");
}

namespace {

MomentSeries positive_moments(double alpha, double cutoff) {
  if (!(alpha > 0.0 && alpha < 1.0))
    fail(ErrorKind::InvalidParams, "positive stable law needs 0 < alpha < 1");
  StableParams p{alpha, std::polar(1.0, (1.0 - alpha) * kPi), 0.0,
                 StableKind::Classical};
  return classical_moments(p, cutoff);
}

}  // namespace

PositiveStableDensity::PositiveStableDensity(double alpha, double cutoff)
    : alpha_(alpha),
      moments_(positive_moments(alpha, cutoff)),
      tail_(moments_) {}

Evaluation PositiveStableDensity::operator()(double x) const {
  if (!(x > 0.0))
    fail(ErrorKind::OutsideValidityRegion, "one-sided law: x must be > 0");
  return tail_(x);
}

PositiveStableDensity positive_stable_density(double alpha, double cutoff) {
  return PositiveStableDensity(alpha, cutoff);
}

StableMixture stable_mixture(const std::vector<double>& nu_moments,
                             double alpha, double cutoff) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    fail(ErrorKind::InvalidParams, "stable mixture needs 0 < alpha <= 1");
  const int nmax = static_cast<int>(std::floor(cutoff / alpha + 1e-9));
  if (static_cast<int>(nu_moments.size()) < nmax + 1)
    fail(ErrorKind::InvalidArgument,
         "need " + std::to_string(nmax + 1) + " moments of nu");
  if (std::abs(nu_moments[0] - 1.0) > 1e-12)
    fail(ErrorKind::InvalidArgument, "nu must be a probability measure");
  const auto spec = SemigroupSpec::for_index(alpha);
  GenSeries s = GenSeries::unit(spec, cutoff, Variable::Ascending,
                                Normalization::Gamma);
  double fact = 1.0;
  for (int n = 1; n <= nmax; ++n) {
    fact *= n;
    const double g = alpha * n;
    const double sign = n % 2 ? -1.0 : 1.0;
    const cplx m = sign * nu_moments[n] * std::tgamma(g + 1.0) / fact *
                   std::polar(1.0, -g * kPi / 2.0);
    s = s.with_coeff(g, s.coeff(g) + m);
  }
  MomentSeries moments(std::move(s));
  TailDensity density(moments);
  return {std::move(moments), std::move(density)};
}

double supremum_coefficient(double alpha, double rho, int m, int n) {
  double prod = 1.0;
  for (int j = 1; j <= m; ++j) {
    const double den = std::sin(kPi * j / alpha);
    if (std::abs(den) < kResonance)
      fail(ErrorKind::ResonanceError,
           "sin(pi j/alpha) vanishes at j = " + std::to_string(j));
    prod *= std::sin(kPi / alpha * (alpha * rho + j - 1)) / den;
  }
  for (int j = 1; j <= n; ++j) {
    const double den = std::sin(kPi * alpha * j);
    if (std::abs(den) < kResonance)
      fail(ErrorKind::ResonanceError,
           "sin(pi alpha j) vanishes at j = " + std::to_string(j));
    prod *= std::sin(kPi * alpha * (rho + j - 1)) / den;
  }
  const double sign = (m + n) % 2 ? -1.0 : 1.0;
  return sign * numerics::rgamma(1.0 + m / alpha + n) *
         numerics::rgamma(-m - alpha * n) * prod;
}

SupremumDensity::SupremumDensity(const SupremumSeriesParams& params)
    : params_(params) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0))
    fail(ErrorKind::InvalidParams, "supremum density needs 0 < alpha < 1");
  if (!(params.rho > 0.0 && params.rho < 1.0))
    fail(ErrorKind::InvalidParams, "rho must lie in (0, 1)");
  if (params.M < 1 || params.N < 1)
    fail(ErrorKind::InvalidParams, "truncation orders must be positive");
  b_.assign(params.M + 1, std::vector<double>(params.N + 1));
  for (int m = 0; m <= params.M; ++m)
    for (int n = 0; n <= params.N; ++n)
      b_[m][n] = supremum_coefficient(params.alpha, params.rho, m, n + 1);
}

Evaluation SupremumDensity::operator()(double x) const {
  if (!(x > 0.0))
    fail(ErrorKind::OutsideValidityRegion, "supremum density needs x > 0");
  const double a = params_.alpha;
  const double lx = std::log(x);
  double sum = 0.0, rem = 0.0;
  for (int m = 0; m <= params_.M; ++m)
    for (int n = 0; n <= params_.N; ++n) {
      const double t = b_[m][n] * std::exp(-(1.0 + a + m + n * a) * lx);
      if (m < params_.M && n < params_.N)
        sum += t;
      else
        rem += std::abs(t);
    }
  Evaluation e;
  e.value = sum;
  e.tail_bound = rem;
  return e;
}

SupremumDensity supremum_density(const SupremumSeriesParams& params) {
  return SupremumDensity(params);
}

LastPassageDensity::LastPassageDensity(const LastPassageParams& params)
    : params_(params) {
  if (params.d < 1 || !(params.alpha > 1.0 && params.alpha < params.d))
    fail(ErrorKind::InvalidParams, "last passage density needs 1 < alpha < d");
  if (params.M < 1) fail(ErrorKind::InvalidParams, "M must be positive");
  const double a = params.alpha;
  const double h = (params.d - a) / 2.0;
  const double lead = 2.0 / (a * std::tgamma(h));
  for (int m = 0; m <= params.M; ++m) {
    const double lg = std::lgamma((params.d + 2.0 * m) / a) -
                      std::lgamma(m + 1.0) - std::lgamma(h + m + 1.0);
    coef_.push_back((m % 2 ? -1.0 : 1.0) * lead * std::exp(lg));
  }
}

double LastPassageDensity::exponent(int m) const {
  return (params_.d + 2.0 * m) / params_.alpha;
}

Evaluation LastPassageDensity::operator()(double t) const {
  if (!(t > 0.0))
    fail(ErrorKind::OutsideValidityRegion, "last passage density needs t > 0");
  const double lt = std::log(t);
  Evaluation e;
  double sum = 0.0;
  for (int m = 0; m < params_.M; ++m)
    sum += coef_[m] * std::exp(-exponent(m) * lt);
  e.value = sum;
  e.tail_bound = std::abs(coef_[params_.M]) *
                 std::exp(-exponent(params_.M) * lt);
  return e;
}

LastPassageDensity last_passage_density(const LastPassageParams& params) {
  return LastPassageDensity(params);
}

GenSeries mu_br(double alpha, cplx b, double r, double cutoff) {
  check_sector(alpha, b, "mu_br");
  if (b == cplx{}) fail(ErrorKind::InvalidParams, "mu_br needs b != 0");
  if (!(r >= 1.0) || !std::isfinite(r))
    fail(ErrorKind::InvalidParams, "mu_br needs 1 <= r < inf");
  // (1 - b w^alpha)^{1/r} = 1 - (b/r) w^alpha (1 + ...), built alpha past
  // the cutoff so the quotient by w^alpha is complete.
  const GenSeries inner = binomial_power(
      two_term(alpha, 0.0, -b, cutoff + alpha, Variable::Descending), 1.0 / r);
  const auto table = exponent_table(SemigroupSpec::for_index(alpha), cutoff);
  std::vector<cplx> q(table->size());
  for (std::size_t i = 0; i < table->size(); ++i) {
    const auto k = inner.table()->find(table->value(i) + alpha);
    if (k) q[i] = -inner.coeff_at(*k) * r / b;
  }
  q[0] = 1.0;
  const GenSeries Q(table, Variable::Descending, Normalization::Raw, 0,
                    std::move(q), inner.truncated());
  return binomial_power(Q, 1.0 / alpha).with_shift(1);
}

}  // namespace gps
