#pragma once

#include <cmath>
#include <random>

#include "gps/gpseries.hpp"

namespace gps::test {

inline bool close(cplx a, cplx b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

/// Termwise comparison over the union of both supports.
inline double max_diff(const GenSeries& f, const GenSeries& g) {
  double d = 0.0;
  for (const auto& t : f.terms())
    d = std::max(d, std::abs(t.coefficient - g.coeff(t.exponent)));
  for (const auto& t : g.terms())
    d = std::max(d, std::abs(t.coefficient - f.coeff(t.exponent)));
  return d;
}

/// Random series with coefficients in the unit box and the given constant
/// term (NaN keeps it random).
inline GenSeries random_series(std::mt19937& rng, const SemigroupSpec& spec,
                               double cutoff, Variable v, Normalization n,
                               int shift = 0, double c0 = NAN,
                               double density = 0.7) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), p(0.0, 1.0);
  const TablePtr table = exponent_table(spec, cutoff);
  std::vector<cplx> dense(table->size());
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (p(rng) < density) dense[i] = {u(rng), u(rng)};
  if (!std::isnan(c0)) dense[0] = c0;
  return GenSeries(table, v, n, shift, std::move(dense));
}

}  // namespace gps::test
