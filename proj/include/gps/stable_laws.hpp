#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gps/transforms.hpp"

namespace gps {

enum class StableKind { Classical, Free, Boolean, Monotone };

struct StableParams {
  double alpha = 1.0;
  cplx b;
  double gamma_shift = 0.0;
  StableKind kind = StableKind::Classical;
};

/// Throws invalid-params unless arg b lies in the admissible sector for
/// alpha: [(1-alpha)pi, pi] for alpha < 1, [0, (2-alpha)pi] for alpha > 1,
/// [0, pi] for alpha = 1. b = 0 is always admissible.
void check_stable_params(const StableParams& params);

/// b from the (c, skewness) parametrization: i^alpha b = -c(1 - i*skew*tan(pi alpha/2)).
cplx stable_b_from_scale_skew(double alpha, double c, double skew);

/// Growth fits at two cutoffs; a relative change below 1% is read as
/// membership of the series class.
struct MembershipDiagnosis {
  double cutoff_low = 0.0;
  double cutoff_high = 0.0;
  double A_low = 0.0;
  double A_high = 0.0;
  double relative_change = 0.0;
  bool stable = false;
};

MembershipDiagnosis diagnose_growth(const GenSeries& low,
                                    const GenSeries& high);
MembershipDiagnosis diagnose_growth(const MomentSeries& low,
                                    const MomentSeries& high);

struct StableLaw {
  MomentSeries moments;
  MembershipDiagnosis diagnosis;
};

/// Moments of exp(i*gamma*z + i^alpha b z^alpha): the exponential of
/// gamma*w + b*w^alpha in w = iz, renormalized by Gamma(g+1). The diagnosis
/// compares the cutoff with half of it.
StableLaw classical_stable(const StableParams& params,
                           double cutoff = kDefaultCutoff);

/// Any kind, with the diagnosis taken on the series that defines the law:
/// moments (classical), phi (free), F (Boolean, monotone).
StableLaw stable_law(const StableParams& params,
                     double cutoff = kDefaultCutoff);

/// The defining series of a law (see stable_law) at one cutoff.
GenSeries defining_series(const StableParams& params,
                          double cutoff = kDefaultCutoff);

/// Moments only, at one cutoff, for any kind.
MomentSeries stable_moments(const StableParams& params,
                            double cutoff = kDefaultCutoff);

/// F^{-1}(z) = z(1 - gamma z^{-1} + b z^{-alpha}).
MomentSeries free_stable(const StableParams& params,
                         double cutoff = kDefaultCutoff);

/// F(z) = z(1 + gamma z^{-1} - b z^{-alpha}).
MomentSeries boolean_stable(const StableParams& params,
                            double cutoff = kDefaultCutoff);

/// F(z) = z(1 - b z^{-alpha})^{1/alpha}; monotone branch recorded.
MomentSeries monotone_stable(double alpha, cplx b,
                             double cutoff = kDefaultCutoff);

/// One-sided alpha-stable density
/// (1/pi) sum_n (-1)^{n-1} sin(pi alpha n) Gamma(n alpha+1)/n! x^{-1-n alpha}.
class PositiveStableDensity {
 public:
  PositiveStableDensity(double alpha, double cutoff = kDefaultCutoff);
  Evaluation operator()(double x) const;
  double alpha() const { return alpha_; }
  double x_min() const { return tail_.validity_radius(); }
  /// Moments m_{n alpha} = Gamma(n alpha + 1) b^n / n!, b = e^{i(1-alpha)pi}.
  const MomentSeries& moments() const { return moments_; }

 private:
  double alpha_;
  MomentSeries moments_;
  TailDensity tail_;
};

PositiveStableDensity positive_stable_density(double alpha,
                                              double cutoff = kDefaultCutoff);

/// Mixture with Fourier transform sum (-1)^n m_n(nu) z^{alpha n}/n!:
/// m_{alpha n} = (-1)^n m_n(nu) Gamma(alpha n + 1)/n! e^{-i alpha n pi/2}.
struct StableMixture {
  MomentSeries moments;
  TailDensity density;
};

StableMixture stable_mixture(const std::vector<double>& nu_moments,
                             double alpha, double cutoff = kDefaultCutoff);

struct SupremumSeriesParams {
  double alpha = 0.5;
  double rho = 0.5;
  int M = 12;
  int N = 12;
};

/// b_{m,n} of the supremum density; throws resonance-error when a needed
/// sine is below 1e-8.
double supremum_coefficient(double alpha, double rho, int m, int n);

/// x^{-1-alpha} sum_{m<M, n<N} b_{m,n+1} x^{-m-n alpha}.
class SupremumDensity {
 public:
  explicit SupremumDensity(const SupremumSeriesParams& params);
  /// value plus a remainder estimate from the last row and column.
  Evaluation operator()(double x) const;
  double coefficient(int m, int n) const { return b_[m][n]; }
  const SupremumSeriesParams& params() const { return params_; }

 private:
  SupremumSeriesParams params_;
  std::vector<std::vector<double>> b_;  // b_[m][n] = b_{m,n+1}
};

SupremumDensity supremum_density(const SupremumSeriesParams& params);

struct LastPassageParams {
  double alpha = 1.5;
  int d = 3;
  int M = 20;
};

/// 2/(alpha Gamma((d-alpha)/2)) sum_m (-1)^m Gamma((d+2m)/alpha) /
/// (m! Gamma((d-alpha)/2+m+1)) t^{-(d+2m)/alpha}.
class LastPassageDensity {
 public:
  explicit LastPassageDensity(const LastPassageParams& params);
  Evaluation operator()(double t) const;
  double coefficient(int m) const { return coef_[m]; }
  double exponent(int m) const;

 private:
  LastPassageParams params_;
  std::vector<double> coef_;
};

LastPassageDensity last_passage_density(const LastPassageParams& params);

/// G(z) = z^{-1}(1 + h)^{1/alpha} from
/// r^{1/alpha}((1 - (1 - b z^{-alpha})^{1/r})/b)^{1/alpha}.
GenSeries mu_br(double alpha, cplx b, double r,
                double cutoff = kDefaultCutoff);

}  // namespace gps
