#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gps/gpseries.hpp"

namespace gps {

/// gamma-complex moments m_g, stored as an ASCENDING GAMMA series in w = iz,
/// so that the Fourier transform is sum m_g (iz)^g / Gamma(g+1).
class MomentSeries {
 public:
  /// Throws invalid-model unless the series is ASCENDING, GAMMA, unshifted
  /// and m_0 = 1.
  explicit MomentSeries(GenSeries series, Branch branch = Branch::Principal);

  /// Moments given as (exponent, value) pairs; m_0 defaults to 1.
  static MomentSeries from_values(
      const SemigroupSpec& spec, double cutoff,
      const std::vector<std::pair<double, cplx>>& values,
      Branch branch = Branch::Principal);

  /// Point mass at 0.
  static MomentSeries delta0(const SemigroupSpec& spec = {},
                             double cutoff = kDefaultCutoff);

  const GenSeries& series() const { return series_; }
  const SemigroupSpec& spec() const { return series_.spec(); }
  double cutoff() const { return series_.cutoff(); }
  cplx moment(double exponent) const { return series_.coeff(exponent); }
  /// Branch used when the law's transforms are evaluated.
  Branch branch() const { return branch_; }

 private:
  GenSeries series_;
  Branch branch_;
};

/// Tail coefficients a_b for |x| >= R, plus inner-part moments m_n(mu_0)
/// (index n). Integer-exponent moments are not fixed by the tail: missing
/// inner moments are taken as 0, and m_0 as 1.
struct TailDensityModel {
  SemigroupSpec spec;
  std::vector<std::pair<double, cplx>> a;
  double r = 0.0;
  double R = 1.0;
  std::vector<cplx> inner_moments;
  double cutoff = kDefaultCutoff;
};

class FourierEvaluator {
 public:
  explicit FourierEvaluator(const MomentSeries& m);
  /// Series value of the Fourier transform at z > 0.
  Evaluation operator()(double z) const;

 private:
  SeriesEvaluator ev_;
};

FourierEvaluator fourier_from_moments(const MomentSeries& m);

/// G(z) = sum m_g z^{-g-1}: DESCENDING, RAW, shift 1, coefficients equal to
/// the moments.
GenSeries stieltjes_from_moments(const MomentSeries& m);
MomentSeries moments_from_stieltjes(const GenSeries& G,
                                    Branch branch = Branch::Principal);

/// Evaluator of G on the lower half-plane with the 1.25*c*A guard.
class StieltjesEvaluator {
 public:
  explicit StieltjesEvaluator(const MomentSeries& m);
  Evaluation operator()(cplx z) const;
  double guard_radius() const { return ev_.guard_radius(); }

 private:
  SeriesEvaluator ev_;
};

MomentSeries moments_from_tail(const TailDensityModel& model);

/// (1/pi) sum_{g>0} Im(m_g (1/x)^{g+1}) for |x| > B = 1.25*c*A; for x < 0,
/// (1/x)^{g+1} = e^{i(g+1)pi} |x|^{-g-1}.
class TailDensity {
 public:
  explicit TailDensity(const MomentSeries& m);
  /// Throws outside-validity-region when |x| <= B.
  Evaluation operator()(double x) const;
  double validity_radius() const { return radius_; }

 private:
  std::vector<std::pair<double, cplx>> terms_;
  SeriesEvaluator ev_;
  double radius_;
};

TailDensity tail_from_moments(const MomentSeries& m);

/// F = 1/G as an F-form z*(1 + ...).
GenSeries F_from_moments(const MomentSeries& m);
MomentSeries moments_from_F(const GenSeries& F,
                            Branch branch = Branch::Principal);

/// phi(z) = F^{-1}(z) - z, stored as DESCENDING RAW with shift -1, so the
/// coefficient at g multiplies z^{1-g}.
GenSeries voiculescu_from_moments(const MomentSeries& m);
MomentSeries moments_from_voiculescu(const GenSeries& phi,
                                     Branch branch = Branch::Principal);

/// Coefficient e_k of z^{-k} in phi.
cplx voiculescu_coefficient(const GenSeries& phi, double k);

/// Moment series on the semigroup generated by both inputs, at the smaller
/// cutoff.
std::pair<MomentSeries, MomentSeries> on_common_semigroup(
    const MomentSeries& m1, const MomentSeries& m2);

MomentSeries classical_convolve(const MomentSeries& m1,
                                const MomentSeries& m2);
MomentSeries boolean_convolve(const MomentSeries& m1, const MomentSeries& m2);
MomentSeries monotone_convolve(const MomentSeries& m1,
                               const MomentSeries& m2);
MomentSeries free_convolve(const MomentSeries& m1, const MomentSeries& m2);

struct ComplexTail {
  std::vector<std::pair<double, cplx>> a;
  /// max |a_b|^{1/b}
  double A = 0.0;
};

/// Im a_b = b_b, Re a_b = -cot(pi b) b_b. Nonzero b_b at an integer exponent
/// throws log-term-obstruction.
ComplexTail tail_real_to_complex(
    const std::vector<std::pair<double, double>>& b,
    const SemigroupSpec& spec);

}  // namespace gps
