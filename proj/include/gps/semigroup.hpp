#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gps {

/// Finitely generated additive semigroup S = {n0 + n1*a1 + ... + np*ap}.
/// The unit generator is always present, so N is contained in S.
class SemigroupSpec {
 public:
  /// The naturals (no extra generators).
  SemigroupSpec();

  /// Extra generators a1 < ... < ap, each positive and finite. Input is
  /// sorted; duplicates throw invalid-argument.
  explicit SemigroupSpec(std::vector<double> extra_generators);

  /// S_alpha, collapsing to the naturals when alpha is a positive integer.
  static SemigroupSpec for_index(double alpha);

  /// All generators, unit first.
  std::span<const double> generators() const { return generators_; }
  std::size_t rank() const { return generators_.size(); }

  /// Common denominator when every generator is rational with a small
  /// denominator; exponent arithmetic is then exact on integer keys.
  std::optional<std::int64_t> common_denominator() const { return denom_; }

  /// Integer key of each generator in units of 1/common_denominator.
  std::span<const std::int64_t> generator_keys() const { return keys_; }

  /// Smallest positive element of S.
  double min_positive() const;

  bool operator==(const SemigroupSpec& other) const {
    return generators_ == other.generators_;
  }

  std::string describe() const;

 private:
  void detect_rational();

  std::vector<double> generators_;
  std::optional<std::int64_t> denom_;
  std::vector<std::int64_t> keys_;
};

/// Multi-index (n0, ..., np) representing the exponent sum n_i * g_i.
struct ExponentIndex {
  std::vector<std::uint32_t> counts;

  double value(const SemigroupSpec& spec) const;
  bool is_zero() const;
  auto operator<=>(const ExponentIndex&) const = default;
};

struct Exponent {
  double value;
  ExponentIndex representative;
};

/// Two exponents are the same element of S when they agree to this relative
/// tolerance (used only when exact rational keys are unavailable).
bool same_exponent(double a, double b);

/// Every element of S in [0, cutoff], ascending, coincident values merged and
/// represented by the lexicographically smallest multi-index.
std::vector<Exponent> enumerate_up_to(const SemigroupSpec& spec,
                                      double cutoff);

/// Smallest c >= 1 with #(S ∩ [n, n+1)) <= c^(n+1) for 0 <= n <= horizon.
double density_constant(const SemigroupSpec& spec, int horizon);

/// Enumerated exponents of S up to a cutoff with an addition table, shared by
/// every series over the same (spec, cutoff).
class ExponentTable {
 public:
  ExponentTable(SemigroupSpec spec, double cutoff);

  const SemigroupSpec& spec() const { return spec_; }
  double cutoff() const { return cutoff_; }
  std::size_t size() const { return entries_.size(); }
  const Exponent& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Exponent> entries() const { return entries_; }
  double value(std::size_t i) const { return entries_[i].value; }

  /// Index of the table entry equal to v, if v is an enumerated element.
  std::optional<std::size_t> find(double v) const;

  static constexpr std::uint32_t npos = 0xffffffffu;

  /// Index of value(i) + value(j), or npos when the sum exceeds the cutoff.
  std::uint32_t sum_index(std::size_t i, std::size_t j) const {
    return sums_[i * entries_.size() + j];
  }

  /// Density constant over the table's horizon (ceil(cutoff)).
  double density_constant() const { return density_constant_; }

  /// Gamma(value(i) + 1), cached for the GAMMA normalization.
  double gamma1(std::size_t i) const { return gamma1_[i]; }

 private:
  SemigroupSpec spec_;
  double cutoff_;
  std::vector<Exponent> entries_;
  std::vector<std::int64_t> keys_;
  std::vector<std::uint32_t> sums_;
  std::vector<double> gamma1_;
  double density_constant_;
};

using TablePtr = std::shared_ptr<const ExponentTable>;

/// Memoized table for (spec, cutoff). Thread-safe.
TablePtr exponent_table(const SemigroupSpec& spec, double cutoff);

}  // namespace gps
