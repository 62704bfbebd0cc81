#include "gps/gpseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gps/error.hpp"

namespace gps {

namespace {

using Dense = std::vector<cplx>;

constexpr double kInf = std::numeric_limits<double>::infinity();

Dense mul_dense(const ExponentTable& t, const Dense& a, const Dense& b,
                bool& truncated) {
  const std::size_t n = t.size();
  Dense out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == cplx{}) continue;
      const auto k = t.sum_index(i, j);
      if (k == ExponentTable::npos) {
        truncated = true;
        break;  // sums grow with j
      }
      out[k] += a[i] * b[j];
    }
  }
  return out;
}

bool all_zero(const Dense& d) {
  return std::all_of(d.begin(), d.end(), [](cplx c) { return c == cplx{}; });
}

// h^1, h^2, ... until the product vanishes below the cutoff. h must have no
// constant term.
std::vector<Dense> powers_of(const ExponentTable& t, const Dense& h,
                             bool& truncated) {
  std::vector<Dense> out;
  if (all_zero(h)) return out;
  out.push_back(h);
  for (;;) {
    Dense next = mul_dense(t, out.back(), h, truncated);
    if (all_zero(next)) break;
    out.push_back(std::move(next));
  }
  return out;
}

// Multiply a dense vector by the monomial w^{value(index)}.
void add_shifted(const ExponentTable& t, Dense& out, const Dense& src,
                 std::size_t index, cplx scale, bool& truncated) {
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (src[j] == cplx{}) continue;
    const auto k = t.sum_index(index, j);
    if (k == ExponentTable::npos) {
      truncated = true;
      break;
    }
    out[k] += scale * src[j];
  }
}

Dense to_raw(const GenSeries& f) {
  Dense d(f.dense().begin(), f.dense().end());
  if (f.normalization() == Normalization::Gamma)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] /= f.table()->gamma1(i);
  return d;
}

void from_raw(const ExponentTable& t, Dense& d, Normalization norm) {
  if (norm == Normalization::Gamma)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] *= t.gamma1(i);
}

void require_same_spec(const GenSeries& f, const GenSeries& g) {
  if (!(f.spec() == g.spec()))
    fail(ErrorKind::IncompatibleSeries,
         "series live on different semigroups: " + f.spec().describe() +
             " vs " + g.spec().describe());
  if (f.variable() != g.variable())
    fail(ErrorKind::IncompatibleSeries, "ascending/descending mismatch");
  if (f.normalization() != g.normalization())
    fail(ErrorKind::IncompatibleSeries, "normalization mismatch");
}

// Both series brought onto the table with the smaller cutoff.
std::pair<GenSeries, GenSeries> common(const GenSeries& f,
                                       const GenSeries& g) {
  require_same_spec(f, g);
  const double c = std::min(f.cutoff(), g.cutoff());
  return {f.truncated_to(c), g.truncated_to(c)};
}

}  // namespace

GenSeries::GenSeries(TablePtr table, Variable variable,
                     Normalization normalization, int shift)
    : table_(std::move(table)),
      variable_(variable),
      normalization_(normalization),
      shift_(shift),
      coefs_(table_->size()) {}

GenSeries::GenSeries(TablePtr table, Variable variable,
                     Normalization normalization, int shift,
                     std::vector<cplx> dense, bool truncated)
    : table_(std::move(table)),
      variable_(variable),
      normalization_(normalization),
      shift_(shift),
      coefs_(std::move(dense)),
      truncated_(truncated) {
  if (coefs_.size() != table_->size())
    fail(ErrorKind::InternalError, "dense coefficient size mismatch");
  for (const auto& c : coefs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      fail(ErrorKind::InvalidArgument, "non-finite coefficient");
}

GenSeries::GenSeries(const SemigroupSpec& spec, double cutoff,
                     Variable variable, Normalization normalization, int shift)
    : GenSeries(exponent_table(spec, cutoff), variable, normalization, shift) {
}

GenSeries GenSeries::unit(const SemigroupSpec& spec, double cutoff,
                          Variable variable, Normalization normalization,
                          int shift) {
  GenSeries s(spec, cutoff, variable, normalization, shift);
  s.coefs_[0] = 1.0;
  return s;
}

cplx GenSeries::coeff(double exponent) const {
  if (exponent > cutoff() && !same_exponent(exponent, cutoff())) return {};
  const auto i = table_->find(exponent);
  if (!i)
    fail(ErrorKind::InvalidArgument,
         "exponent is not an element of " + spec().describe());
  return coefs_[*i];
}

std::vector<GenSeries::Term> GenSeries::terms() const {
  std::vector<Term> out;
  for (std::size_t i = 0; i < coefs_.size(); ++i)
    if (coefs_[i] != cplx{})
      out.push_back({i, table_->value(i), &(*table_)[i].representative,
                     coefs_[i]});
  return out;
}

bool GenSeries::is_zero() const { return all_zero(coefs_); }

std::size_t GenSeries::order_index() const {
  for (std::size_t i = 0; i < coefs_.size(); ++i)
    if (coefs_[i] != cplx{}) return i;
  return coefs_.size();
}

GenSeries GenSeries::with_coeff(double exponent, cplx value) const {
  const auto i = table_->find(exponent);
  if (!i) {
    if (exponent > cutoff()) {
      GenSeries out = *this;
      if (value != cplx{}) out.truncated_ = true;
      return out;
    }
    fail(ErrorKind::InvalidArgument,
         "exponent is not an element of " + spec().describe());
  }
  Dense d = coefs_;
  d[*i] = value;
  return {table_, variable_, normalization_, shift_, std::move(d),
          truncated_};
}

GenSeries GenSeries::with_shift(int shift) const {
  return {table_, variable_, normalization_, shift, coefs_, truncated_};
}

GenSeries GenSeries::with_normalization(Normalization normalization) const {
  if (normalization == normalization_) return *this;
  Dense d = to_raw(*this);
  from_raw(*table_, d, normalization);
  return {table_, variable_, normalization, shift_, std::move(d), truncated_};
}

GenSeries GenSeries::truncated_to(double cutoff) const {
  if (cutoff >= this->cutoff()) return *this;
  return embed(*this, exponent_table(spec(), cutoff));
}

GenSeries embed(const GenSeries& f, const TablePtr& target) {
  if (target == f.table()) return f;
  Dense d(target->size());
  bool truncated = f.truncated();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const cplx c = f.coeff_at(i);
    if (c == cplx{}) continue;
    const double v = f.table()->value(i);
    const auto k = target->find(v);
    if (!k) {
      if (v > target->cutoff()) {
        truncated = true;
        continue;
      }
      fail(ErrorKind::IncompatibleSeries,
           "exponent missing from " + target->spec().describe());
    }
    d[*k] = c;
  }
  return {target, f.variable(), f.normalization(), f.shift(), std::move(d),
          truncated};
}

GenSeries linear_combine(cplx a, const GenSeries& f, cplx b,
                         const GenSeries& g) {
  if (f.shift() != g.shift())
    fail(ErrorKind::IncompatibleSeries, "shift mismatch");
  auto [ff, gg] = common(f, g);
  Dense d(ff.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = a * ff.coeff_at(i) + b * gg.coeff_at(i);
  return {ff.table(), ff.variable(), ff.normalization(), ff.shift(),
          std::move(d), ff.truncated() || gg.truncated()};
}

GenSeries product(const GenSeries& f, const GenSeries& g) {
  auto [ff, gg] = common(f, g);
  bool truncated = ff.truncated() || gg.truncated();
  Dense d = mul_dense(*ff.table(), to_raw(ff), to_raw(gg), truncated);
  from_raw(*ff.table(), d, ff.normalization());
  return {ff.table(), ff.variable(), ff.normalization(),
          ff.shift() + gg.shift(), std::move(d), truncated};
}

GenSeries reciprocal(const GenSeries& f) {
  const auto& t = *f.table();
  Dense raw = to_raw(f);
  const cplx c0 = raw[0];
  if (c0 == cplx{})
    fail(ErrorKind::NotInvertible, "constant term is zero");
  Dense h(raw.size());
  for (std::size_t i = 1; i < raw.size(); ++i) h[i] = raw[i] / c0;
  bool truncated = f.truncated();
  // r = 1 - h + h^2 - ..., by Horner r <- 1 - h*r.
  Dense r(raw.size());
  r[0] = 1.0;
  if (!all_zero(h)) {
    const std::size_t ord = GenSeries(f.table(), f.variable(),
                                      Normalization::Raw, 0, h)
                                .order_index();
    const int steps =
        static_cast<int>(std::ceil(t.cutoff() / t.value(ord))) + 1;
    for (int k = 0; k < steps; ++k) {
      Dense hr = mul_dense(t, h, r, truncated);
      for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = (i == 0 ? 1.0 : 0.0) - hr[i];
    }
  }
  for (auto& c : r) c /= c0;
  from_raw(t, r, f.normalization());
  return {f.table(), f.variable(), f.normalization(), -f.shift(),
          std::move(r), truncated};
}

GenSeries binomial_power(const GenSeries& f, double beta) {
  const auto& t = *f.table();
  Dense raw = to_raw(f);
  if (std::abs(raw[0] - 1.0) > 1e-12)
    fail(ErrorKind::NormalizeFirst,
         "binomial power needs constant term 1; divide by it first");
  const double s = f.shift() * beta;
  if (s != std::round(s))
    fail(ErrorKind::InvalidForm, "shift times exponent is not an integer");
  Dense h = raw;
  h[0] = 0.0;
  bool truncated = f.truncated();
  const auto pw = powers_of(t, h, truncated);
  Dense out(raw.size());
  out[0] = 1.0;
  for (std::size_t n = 0; n < pw.size(); ++n) {
    const double c = numerics::binomial(beta, static_cast<int>(n + 1));
    if (c == 0.0) break;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * pw[n][i];
  }
  from_raw(t, out, f.normalization());
  return {f.table(), f.variable(), f.normalization(), static_cast<int>(s),
          std::move(out), truncated};
}

GenSeries exp_series(const GenSeries& h) {
  const auto& t = *h.table();
  Dense raw = to_raw(h);
  if (raw[0] != cplx{})
    fail(ErrorKind::NormalizeFirst, "exp needs a series without constant term");
  if (h.shift() != 0)
    fail(ErrorKind::InvalidForm, "exp of a shifted series");
  bool truncated = h.truncated();
  const auto pw = powers_of(t, raw, truncated);
  Dense out(raw.size());
  out[0] = 1.0;
  double fact = 1.0;
  for (std::size_t n = 0; n < pw.size(); ++n) {
    fact *= static_cast<double>(n + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += pw[n][i] / fact;
  }
  from_raw(t, out, h.normalization());
  return {h.table(), h.variable(), h.normalization(), 0, std::move(out),
          truncated};
}

bool is_F_form(const GenSeries& f) {
  return f.variable() == Variable::Descending &&
         f.normalization() == Normalization::Raw && f.shift() == -1 &&
         std::abs(f.coeff_at(0) - 1.0) <= 1e-12;
}

namespace {

void require_F(const GenSeries& f, const char* what) {
  if (!is_F_form(f))
    fail(ErrorKind::InvalidForm,
         std::string(what) + " must be an F-form z*(1 + o(1))");
}

// sum_g b_g w^g (1 + h)^{1-g}, using the cached powers of h.
Dense substitute(const ExponentTable& t, const Dense& b,
                 const std::vector<Dense>& pw, bool skip_zero,
                 bool& truncated) {
  Dense out(t.size());
  for (std::size_t g = skip_zero ? 1 : 0; g < b.size(); ++g) {
    if (b[g] == cplx{}) continue;
    const double e = 1.0 - t.value(g);
    out[g] += b[g];
    for (std::size_t n = 0; n < pw.size(); ++n) {
      const double c = numerics::binomial(e, static_cast<int>(n + 1));
      if (c == 0.0) break;
      add_shifted(t, out, pw[n], g, b[g] * c, truncated);
    }
  }
  return out;
}

}  // namespace

GenSeries compose_F(const GenSeries& outer, const GenSeries& inner) {
  require_F(outer, "outer");
  require_F(inner, "inner");
  auto [o, in] = common(outer, inner);
  const auto& t = *o.table();
  bool truncated = o.truncated() || in.truncated();
  Dense h(in.dense().begin(), in.dense().end());
  h[0] = 0.0;
  const auto pw = powers_of(t, h, truncated);
  Dense b(o.dense().begin(), o.dense().end());
  Dense out = substitute(t, b, pw, false, truncated);
  return {o.table(), Variable::Descending, Normalization::Raw, -1,
          std::move(out), truncated};
}

GenSeries revert_F(const GenSeries& F) {
  require_F(F, "argument");
  const auto& t = *F.table();
  Dense b(F.dense().begin(), F.dense().end());
  bool truncated = F.truncated();
  std::size_t first = F.size();
  for (std::size_t i = 1; i < b.size(); ++i)
    if (b[i] != cplx{}) {
      first = i;
      break;
    }
  Dense f(t.size());
  if (first < b.size()) {
    const double delta = t.value(first);
    const int iterations = static_cast<int>(std::ceil(t.cutoff() / delta)) + 2;
    Dense prev;
    for (int k = 0; k < iterations; ++k) {
      bool tr = false;
      const auto pw = powers_of(t, f, tr);
      Dense next = substitute(t, b, pw, true, tr);
      for (auto& c : next) c = -c;
      prev = std::move(f);
      f = std::move(next);
      if (k == iterations - 1) truncated = truncated || tr;
    }
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      scale = std::max(scale, std::abs(f[i]));
      diff = std::max(diff, std::abs(f[i] - prev[i]));
    }
    if (diff > 1e-9 * std::max(1.0, scale))
      fail(ErrorKind::InternalError, "reversion fixed point did not settle");
  }
  f[0] = 1.0;
  return {F.table(), Variable::Descending, Normalization::Raw, -1,
          std::move(f), truncated};
}

GrowthBound growth_fit(const GenSeries& f, BoundShape shape) {
  GrowthBound out;
  out.shape = shape;
  out.fitted_over = f.cutoff();
  const double offset = shape == BoundShape::PowGammaPlusOne ? 1.0 : 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    const double a = std::abs(f.coeff_at(i));
    if (a == 0.0) continue;
    out.A = std::max(out.A,
                     std::pow(a, 1.0 / (f.table()->value(i) + offset)));
  }
  return out;
}

cplx branch_log(cplx z, Branch branch) {
  if (z == cplx{}) fail(ErrorKind::DomainError, "log of zero");
  if (branch == Branch::Principal) {
    if (z.imag() == 0.0 && z.real() < 0.0)
      fail(ErrorKind::DomainError, "point on the cut (-inf, 0]");
    return std::log(z);
  }
  if (z.imag() == 0.0 && z.real() > 0.0)
    fail(ErrorKind::DomainError, "point on the cut [0, inf)");
  cplx l = std::log(z);
  if (l.imag() > 0.0) l -= cplx(0.0, 2.0 * kPi);
  return l;
}

SeriesEvaluator::SeriesEvaluator(const GenSeries& f, Branch branch)
    : variable_(f.variable()),
      normalization_(f.normalization()),
      shift_(f.shift()),
      branch_(branch),
      growth_(growth_fit(f)),
      density_c_(f.table()->density_constant()),
      cutoff_(f.cutoff()) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    cplx c = f.coeff_at(i);
    if (c == cplx{}) continue;
    if (normalization_ == Normalization::Gamma) c /= f.table()->gamma1(i);
    items_.push_back({f.table()->value(i), c});
  }
  const double ca = density_c_ * growth_.A;
  if (normalization_ == Normalization::Gamma)
    guard_ = variable_ == Variable::Descending ? 0.0 : kInf;
  else if (variable_ == Variable::Descending)
    guard_ = 1.25 * ca;
  else
    guard_ = ca > 0.0 ? 1.0 / (1.25 * ca) : kInf;
}

Evaluation SeriesEvaluator::operator()(cplx z) const {
  const cplx lz = branch_log(z, branch_);
  const cplx lw = variable_ == Variable::Descending ? -lz : lz;
  const double aw = std::exp(lw.real());
  Evaluation out;
  cplx sum{};
  for (const auto& it : items_) {
    if (it.exponent == 0.0)
      sum += it.coefficient;
    else
      sum += it.coefficient * std::exp(it.exponent * lw);
  }
  const cplx pre = shift_ == 0 ? cplx(1.0) : std::exp(double(shift_) * lw);
  out.value = pre * sum;

  const double q = growth_.A * aw;
  const double c = density_c_;
  const bool gamma = normalization_ == Normalization::Gamma;
  out.guard_violated = !gamma && c * q >= 0.8;
  const int n0 = static_cast<int>(std::floor(cutoff_));
  double tail = 0.0;
  if (q > 0.0) {
    if (!gamma && c * q >= 1.0) {
      tail = kInf;
    } else {
      // sum_{n >= n0} c^{n+1} max(q^n, q^{n+1}) [/ n!]
      double log_fact = std::lgamma(n0 + 1.0);
      for (int n = n0; n < n0 + 5000; ++n) {
        if (n > n0) log_fact += std::log(static_cast<double>(n));
        double lt = (n + 1) * std::log(c) +
                    std::max(n * std::log(q), (n + 1) * std::log(q));
        if (gamma) lt -= n == 0 ? std::log(0.8856) : log_fact;
        const double term = std::exp(lt);
        tail += term;
        if (n > n0 + 5 && term <= 1e-17 * tail) break;
      }
    }
  }
  out.tail_bound = tail * std::abs(pre);
  return out;
}

Evaluation evaluate(const GenSeries& f, cplx z, Branch branch) {
  return SeriesEvaluator(f, branch)(z);
}

}  // namespace gps
