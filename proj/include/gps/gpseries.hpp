#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gps/numerics.hpp"
#include "gps/semigroup.hpp"

namespace gps {

/// Which variable the exponents apply to: w = z (ascending) or w = 1/z
/// (descending).
enum class Variable { Ascending, Descending };

/// RAW stores c with term c*w^g; GAMMA stores c with term c*w^g/Gamma(g+1).
enum class Normalization { Raw, Gamma };

/// PRINCIPAL: Im log z in (-pi, pi). MONOTONE: Im log z in (-2pi, 0].
enum class Branch { Principal, Monotone };

inline constexpr double kDefaultCutoff = 20.0;

/// A generalized power series  w^shift * sum_{g in S, g <= cutoff} c_g w^g.
///
/// The integer shift carries the fixed prefactor of the common transform
/// shapes: a Cauchy-Stieltjes series (sum d_g z^{-g-1}) is DESCENDING with
/// shift 1, an F-form z*sum b_g z^{-g} is DESCENDING with shift -1.
/// Coefficients live on the shared exponent table of (spec, cutoff); terms()
/// reports only the nonzero ones.
class GenSeries {
 public:
  GenSeries(TablePtr table, Variable variable, Normalization normalization,
            int shift = 0);
  GenSeries(TablePtr table, Variable variable, Normalization normalization,
            int shift, std::vector<cplx> dense, bool truncated = false);
  GenSeries(const SemigroupSpec& spec, double cutoff, Variable variable,
            Normalization normalization, int shift = 0);

  /// The series with the single term 1 (at exponent 0).
  static GenSeries unit(const SemigroupSpec& spec, double cutoff,
                        Variable variable,
                        Normalization normalization = Normalization::Raw,
                        int shift = 0);

  const SemigroupSpec& spec() const { return table_->spec(); }
  const TablePtr& table() const { return table_; }
  double cutoff() const { return table_->cutoff(); }
  Variable variable() const { return variable_; }
  Normalization normalization() const { return normalization_; }
  int shift() const { return shift_; }

  /// Nonzero coefficients were discarded above the cutoff while building.
  bool truncated() const { return truncated_; }

  std::span<const cplx> dense() const { return coefs_; }
  std::size_t size() const { return coefs_.size(); }

  /// Coefficient at an exponent of S (0 when absent). Throws
  /// invalid-argument when the exponent is not an enumerated element.
  cplx coeff(double exponent) const;
  cplx coeff_at(std::size_t index) const { return coefs_[index]; }

  struct Term {
    std::size_t index;
    double exponent;
    const ExponentIndex* representative;
    cplx coefficient;
  };
  std::vector<Term> terms() const;
  bool is_zero() const;

  /// Smallest exponent carrying a nonzero coefficient (index into table), or
  /// size() for the zero series.
  std::size_t order_index() const;

  /// Copy with a coefficient replaced.
  GenSeries with_coeff(double exponent, cplx value) const;
  GenSeries with_shift(int shift) const;
  GenSeries with_normalization(Normalization normalization) const;

  /// Restrict to a smaller cutoff (no-op when cutoff >= current).
  GenSeries truncated_to(double cutoff) const;

  /// Coefficientwise map.
  template <class F>
  GenSeries map(F&& fn) const {
    std::vector<cplx> out(coefs_.size());
    for (std::size_t i = 0; i < coefs_.size(); ++i)
      if (coefs_[i] != cplx{}) out[i] = fn(coefs_[i], table_->value(i));
    return {table_, variable_, normalization_, shift_, std::move(out),
            truncated_};
  }

 private:
  TablePtr table_;
  Variable variable_;
  Normalization normalization_;
  int shift_;
  std::vector<cplx> coefs_;
  bool truncated_ = false;
};

/// Bound shapes |c_g| <= A^g or |c_g| <= A^(g+1).
enum class BoundShape { PowGamma, PowGammaPlusOne };

struct GrowthBound {
  double A = 0.0;
  BoundShape shape = BoundShape::PowGamma;
  double fitted_over = 0.0;
};

/// a*f + b*g. Mismatched variable, normalization or shift ->
/// incompatible-series; differing cutoffs truncate to the smaller one.
GenSeries linear_combine(cplx a, const GenSeries& f, cplx b,
                         const GenSeries& g);

/// Cauchy product; in GAMMA mode the binomial-type weights
/// Gamma(b+1)/(Gamma(g+1)Gamma(d+1)) apply. Shifts add.
GenSeries product(const GenSeries& f, const GenSeries& g);

/// Multiplicative inverse of a RAW series with nonzero constant term, by the
/// graded geometric series (1/c0) sum_k (-(f/c0 - 1))^k. The shift negates.
GenSeries reciprocal(const GenSeries& f);

/// (1 + h)^beta = sum_n C(beta, n) h^n for a RAW series with constant term 1.
GenSeries binomial_power(const GenSeries& f, double beta);

/// exp(h) = sum_k h^k/k! for a RAW series without constant term.
GenSeries exp_series(const GenSeries& h);

/// Composition F_outer(F_inner(z)) of two F-forms z*(1 + ...).
GenSeries compose_F(const GenSeries& outer, const GenSeries& inner);

/// Right compositional inverse of an F-form by fixed-point iteration on
/// f in F^{-1}(z) = z(1 + f(1/z)).
GenSeries revert_F(const GenSeries& F);

/// The same series on a larger table (same or wider semigroup, any cutoff).
/// Terms above the target cutoff are dropped; exponents missing from the
/// target throw incompatible-series.
GenSeries embed(const GenSeries& f, const TablePtr& target);

/// True when f is an F-form: DESCENDING, RAW, shift -1, constant term 1.
bool is_F_form(const GenSeries& f);

GrowthBound growth_fit(const GenSeries& f,
                       BoundShape shape = BoundShape::PowGamma);

struct Evaluation {
  cplx value;
  double tail_bound = 0.0;
  /// z lies where c*A*|w| >= 0.8; the tail bound is then not a bound.
  bool guard_violated = false;
};

/// log z on the requested branch; throws domain-error on the branch cut.
cplx branch_log(cplx z, Branch branch);

/// Precomputed evaluator for repeated evaluation of one series.
class SeriesEvaluator {
 public:
  explicit SeriesEvaluator(const GenSeries& f,
                           Branch branch = Branch::Principal);

  Evaluation operator()(cplx z) const;

  /// Descending: |z| must exceed this (1.25 * c * A). Ascending RAW: |z|
  /// must stay below it. Infinite/zero when no constraint applies.
  double guard_radius() const { return guard_; }
  const GrowthBound& growth() const { return growth_; }

 private:
  struct Item {
    double exponent;
    cplx coefficient;  // already divided by Gamma(g+1) in GAMMA mode
  };
  std::vector<Item> items_;
  Variable variable_;
  Normalization normalization_;
  int shift_;
  Branch branch_;
  GrowthBound growth_;
  double density_c_;
  double cutoff_;
  double guard_;
};

Evaluation evaluate(const GenSeries& f, cplx z,
                    Branch branch = Branch::Principal);

}  // namespace gps
