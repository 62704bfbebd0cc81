#include "gps/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gps/error.hpp"

namespace gps {

namespace {

std::vector<cplx> copy_dense(const GenSeries& f) {
  return {f.dense().begin(), f.dense().end()};
}

GenSeries relabel(const GenSeries& f, Variable v, Normalization n, int shift) {
  return {f.table(), v, n, shift, copy_dense(f), f.truncated()};
}

}  // namespace

MomentSeries::MomentSeries(GenSeries series, Branch branch)
    : series_(std::move(series)), branch_(branch) {
  if (series_.variable() != Variable::Ascending ||
      series_.normalization() != Normalization::Gamma || series_.shift() != 0)
    fail(ErrorKind::InvalidModel,
         "moment series must be ascending, gamma-normalized and unshifted");
  if (std::abs(series_.coeff_at(0) - 1.0) > 1e-12)
    fail(ErrorKind::InvalidModel, "moment series needs m_0 = 1");
}

MomentSeries MomentSeries::from_values(
    const SemigroupSpec& spec, double cutoff,
    const std::vector<std::pair<double, cplx>>& values, Branch branch) {
  GenSeries s = GenSeries::unit(spec, cutoff, Variable::Ascending,
                                Normalization::Gamma);
  for (const auto& [g, v] : values) s = s.with_coeff(g, v);
  return MomentSeries(std::move(s), branch);
}

MomentSeries MomentSeries::delta0(const SemigroupSpec& spec, double cutoff) {
  return MomentSeries(GenSeries::unit(spec, cutoff, Variable::Ascending,
                                      Normalization::Gamma));
}

FourierEvaluator::FourierEvaluator(const MomentSeries& m)
    : ev_(m.series(), Branch::Principal) {}

Evaluation FourierEvaluator::operator()(double z) const {
  if (!(z > 0.0))
    fail(ErrorKind::DomainError, "Fourier series is evaluated at z > 0");
  return ev_(cplx(0.0, z));
}

FourierEvaluator fourier_from_moments(const MomentSeries& m) {
  return FourierEvaluator(m);
}

GenSeries stieltjes_from_moments(const MomentSeries& m) {
  return relabel(m.series(), Variable::Descending, Normalization::Raw, 1);
}

MomentSeries moments_from_stieltjes(const GenSeries& G, Branch branch) {
  if (G.variable() != Variable::Descending ||
      G.normalization() != Normalization::Raw || G.shift() != 1)
    fail(ErrorKind::InvalidForm, "expected a Cauchy-Stieltjes series");
  return MomentSeries(
      relabel(G, Variable::Ascending, Normalization::Gamma, 0), branch);
}

StieltjesEvaluator::StieltjesEvaluator(const MomentSeries& m)
    : ev_(stieltjes_from_moments(m), m.branch()) {}

Evaluation StieltjesEvaluator::operator()(cplx z) const { return ev_(z); }

MomentSeries moments_from_tail(const TailDensityModel& model) {
  const double c = density_constant(
      model.spec, std::max(1, static_cast<int>(std::ceil(model.cutoff))));
  if (!(model.R > 0.0) || !(model.r >= 0.0))
    fail(ErrorKind::InvalidModel, "radii must satisfy r >= 0, R > 0");
  if (!(model.r < model.R / c))
    fail(ErrorKind::InvalidModel, "need r < R/c");
  double top = model.cutoff;
  for (const auto& [b, a] : model.a) {
    if (!(b > 0.0)) fail(ErrorKind::InvalidModel, "tail exponents must be > 0");
    if (std::abs(a) > std::pow(model.r, b) * (1.0 + 1e-12) + 1e-300)
      fail(ErrorKind::InvalidModel,
           "coefficient exceeds r^beta at beta = " + std::to_string(b));
    top = std::max(top, b);
  }
  GenSeries s = GenSeries::unit(model.spec, top, Variable::Ascending,
                                Normalization::Gamma);
  for (std::size_t n = 1; n < model.inner_moments.size(); ++n)
    if (static_cast<double>(n) <= top)
      s = s.with_coeff(static_cast<double>(n), model.inner_moments[n]);
  if (!model.inner_moments.empty()) s = s.with_coeff(0.0, model.inner_moments[0]);
  for (const auto& [b, a] : model.a) {
    if (numerics::near_integer(b, 1e-12)) {
      // only the imaginary part is fixed by the tail
      const cplx base = s.coeff(b);
      s = s.with_coeff(b, cplx(base.real(), kPi * a.imag()));
    } else {
      s = s.with_coeff(b, kPi * a);
    }
  }
  return MomentSeries(std::move(s));
}

TailDensity::TailDensity(const MomentSeries& m)
    : ev_(stieltjes_from_moments(m), Branch::Principal),
      radius_(ev_.guard_radius()) {
  for (const auto& t : m.series().terms())
    if (t.exponent > 0.0) terms_.emplace_back(t.exponent, t.coefficient);
}

Evaluation TailDensity::operator()(double x) const {
  if (!(std::abs(x) > radius_))
    fail(ErrorKind::OutsideValidityRegion,
         "|x| must exceed " + std::to_string(radius_));
  const double ax = std::abs(x);
  const double lx = std::log(ax);
  double sum = 0.0;
  for (const auto& [g, m] : terms_) {
    const double mag = std::exp(-(g + 1.0) * lx);
    const double phase = x > 0.0 ? 0.0 : (g + 1.0) * kPi;
    sum += (m * std::polar(mag, phase)).imag();
  }
  Evaluation e;
  e.value = sum / kPi;
  const Evaluation bound = ev_(cplx(ax, 0.0));
  e.tail_bound = bound.tail_bound / kPi;
  e.guard_violated = bound.guard_violated;
  return e;
}

TailDensity tail_from_moments(const MomentSeries& m) { return TailDensity(m); }

GenSeries F_from_moments(const MomentSeries& m) {
  return reciprocal(stieltjes_from_moments(m));
}

MomentSeries moments_from_F(const GenSeries& F, Branch branch) {
  if (!is_F_form(F)) fail(ErrorKind::InvalidForm, "expected an F-form");
  return moments_from_stieltjes(reciprocal(F), branch);
}

GenSeries voiculescu_from_moments(const MomentSeries& m) {
  GenSeries inv = revert_F(F_from_moments(m));
  return inv.with_coeff(0.0, 0.0);
}

MomentSeries moments_from_voiculescu(const GenSeries& phi, Branch branch) {
  if (phi.variable() != Variable::Descending ||
      phi.normalization() != Normalization::Raw || phi.shift() != -1)
    fail(ErrorKind::InvalidForm, "expected a Voiculescu series");
  if (phi.coeff_at(0) != cplx{})
    fail(ErrorKind::InvalidForm, "Voiculescu series has no z^1 term");
  return moments_from_F(revert_F(phi.with_coeff(0.0, 1.0)), branch);
}

cplx voiculescu_coefficient(const GenSeries& phi, double k) {
  return phi.coeff(k + 1.0);
}

std::pair<MomentSeries, MomentSeries> on_common_semigroup(
    const MomentSeries& m1, const MomentSeries& m2) {
  const double cutoff = std::min(m1.cutoff(), m2.cutoff());
  const Branch branch = m1.branch() == Branch::Monotone &&
                                m2.branch() == Branch::Monotone
                            ? Branch::Monotone
                            : Branch::Principal;
  if (m1.spec() == m2.spec())
    return {MomentSeries(m1.series().truncated_to(cutoff), m1.branch()),
            MomentSeries(m2.series().truncated_to(cutoff), m2.branch())};
  std::vector<double> extra;
  for (const auto* s : {&m1.spec(), &m2.spec()})
    for (double g : s->generators())
      if (g != 1.0 && std::none_of(extra.begin(), extra.end(), [g](double e) {
            return same_exponent(e, g);
          }))
        extra.push_back(g);
  const auto table = exponent_table(SemigroupSpec(extra), cutoff);
  return {MomentSeries(embed(m1.series(), table), branch),
          MomentSeries(embed(m2.series(), table), branch)};
}

MomentSeries classical_convolve(const MomentSeries& m1,
                                const MomentSeries& m2) {
  auto [a, b] = on_common_semigroup(m1, m2);
  return MomentSeries(product(a.series(), b.series()));
}

MomentSeries boolean_convolve(const MomentSeries& m1, const MomentSeries& m2) {
  auto [a, b] = on_common_semigroup(m1, m2);
  const GenSeries F1 = F_from_moments(a);
  const GenSeries F2 = F_from_moments(b);
  // F1 + F2 - z
  const GenSeries sum = linear_combine(1.0, F1, 1.0, F2);
  return moments_from_F(sum.with_coeff(0.0, sum.coeff_at(0) - 1.0),
                        a.branch());
}

MomentSeries monotone_convolve(const MomentSeries& m1,
                               const MomentSeries& m2) {
  auto [a, b] = on_common_semigroup(m1, m2);
  return moments_from_F(compose_F(F_from_moments(a), F_from_moments(b)),
                        a.branch());
}

MomentSeries free_convolve(const MomentSeries& m1, const MomentSeries& m2) {
  auto [a, b] = on_common_semigroup(m1, m2);
  return moments_from_voiculescu(
      linear_combine(1.0, voiculescu_from_moments(a), 1.0,
                     voiculescu_from_moments(b)),
      a.branch());
}

ComplexTail tail_real_to_complex(
    const std::vector<std::pair<double, double>>& b,
    const SemigroupSpec& spec) {
  ComplexTail out;
  for (const auto& [beta, v] : b) {
    if (!(beta > 0.0))
      fail(ErrorKind::InvalidArgument, "tail exponents must be positive");
    if (!exponent_table(spec, std::max(beta, 1.0))->find(beta))
      fail(ErrorKind::InvalidArgument,
           "exponent " + std::to_string(beta) + " is not in " + spec.describe());
    if (numerics::near_integer(beta, 1e-12)) {
      if (v != 0.0)
        fail(ErrorKind::LogTermObstruction,
             "nonzero coefficient at integer exponent " + std::to_string(beta));
      out.a.emplace_back(beta, 0.0);
      continue;
    }
    const cplx a(-v * std::cos(kPi * beta) / std::sin(kPi * beta), v);
    out.a.emplace_back(beta, a);
    if (a != cplx{}) out.A = std::max(out.A, std::pow(std::abs(a), 1.0 / beta));
  }
  return out;
}

}  // namespace gps
