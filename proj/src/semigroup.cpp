#include "gps/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "gps/error.hpp"

namespace gps {

namespace {

constexpr std::int64_t kMaxDenominator = 1000000;

// Best rational approximation p/q of x with q <= kMaxDenominator that agrees
// with x to a few ulps; nullopt when x is not (representably) such a rational.
std::optional<std::pair<std::int64_t, std::int64_t>> as_small_rational(
    double x) {
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() *
                     std::max(1.0, std::abs(x));
  long double y = x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a = std::floor(y);
    if (a > 1e12L) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > kMaxDenominator) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <=
        tol)
      return std::make_pair(p1, q1);
    const long double frac = y - a;
    if (frac <= 0.0L) break;
    y = 1.0L / frac;
  }
  return std::nullopt;
}

}  // namespace

bool same_exponent(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
}

SemigroupSpec::SemigroupSpec() : generators_{1.0} { detect_rational(); }

SemigroupSpec::SemigroupSpec(std::vector<double> extra) {
  for (double g : extra)
    if (!(g > 0.0) || !std::isfinite(g))
      fail(ErrorKind::InvalidArgument,
           "semigroup generators must be positive and finite");
  std::sort(extra.begin(), extra.end());
  for (std::size_t i = 1; i < extra.size(); ++i)
    if (extra[i] == extra[i - 1])
      fail(ErrorKind::InvalidArgument,
           "semigroup generators must be strictly increasing");
  generators_.reserve(extra.size() + 1);
  generators_.push_back(1.0);
  generators_.insert(generators_.end(), extra.begin(), extra.end());
  detect_rational();
}

SemigroupSpec SemigroupSpec::for_index(double alpha) {
  if (alpha > 0.0 && alpha == std::floor(alpha)) return SemigroupSpec();
  return SemigroupSpec({alpha});
}

void SemigroupSpec::detect_rational() {
  std::vector<std::pair<std::int64_t, std::int64_t>> fracs;
  std::int64_t lcm = 1;
  for (double g : generators_) {
    auto r = as_small_rational(g);
    if (!r) return;
    lcm = std::lcm(lcm, r->second);
    if (lcm > kMaxDenominator) return;
    fracs.push_back(*r);
  }
  denom_ = lcm;
  keys_.clear();
  for (const auto& [p, q] : fracs) keys_.push_back(p * (lcm / q));
}

double SemigroupSpec::min_positive() const {
  return *std::min_element(generators_.begin(), generators_.end());
}

std::string SemigroupSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "S{";
  for (std::size_t i = 0; i < generators_.size(); ++i)
    os << (i ? "," : "") << generators_[i];
  os << "}";
  return os.str();
}

double ExponentIndex::value(const SemigroupSpec& spec) const {
  const auto gens = spec.generators();
  double v = 0.0;
  for (std::size_t i = 0; i < counts.size() && i < gens.size(); ++i)
    v += counts[i] * gens[i];
  return v;
}

bool ExponentIndex::is_zero() const {
  return std::all_of(counts.begin(), counts.end(),
                     [](std::uint32_t c) { return c == 0; });
}

namespace {

struct RawExponent {
  double value;
  std::int64_t key;  // exact key in rational mode, unused otherwise
  std::vector<std::uint32_t> counts;
};

void enumerate_raw(const SemigroupSpec& spec, double cutoff,
                   std::vector<RawExponent>& out) {
  const auto gens = spec.generators();
  const auto denom = spec.common_denominator();
  const auto keys = spec.generator_keys();
  const std::size_t p = gens.size();
  const double limit = cutoff * (1.0 + 1e-12) + 1e-12;
  const std::int64_t key_limit =
      denom ? static_cast<std::int64_t>(
                  std::floor(cutoff * static_cast<double>(*denom) + 1e-6))
            : 0;
  std::vector<std::uint32_t> counts(p, 0);
  // Depth-first over coordinates; each coordinate bounded by the remaining
  // budget divided by its generator.
  auto rec = [&](auto&& self, std::size_t coord, double value,
                 std::int64_t key) -> void {
    if (coord == p) {
      out.push_back({value, key, counts});
      return;
    }
    for (std::uint32_t n = 0;; ++n) {
      const double v = value + n * gens[coord];
      const std::int64_t k = denom ? key + n * keys[coord] : 0;
      if (denom ? k > key_limit : v > limit) break;
      counts[coord] = n;
      self(self, coord + 1, v, k);
    }
    counts[coord] = 0;
  };
  rec(rec, 0, 0.0, 0);
}

std::vector<Exponent> merge_sorted(const SemigroupSpec& spec,
                                   std::vector<RawExponent> raw,
                                   std::vector<std::int64_t>* keys_out) {
  const bool exact = spec.common_denominator().has_value();
  std::sort(raw.begin(), raw.end(),
            [exact](const RawExponent& a, const RawExponent& b) {
              if (exact) {
                if (a.key != b.key) return a.key < b.key;
              } else if (a.value != b.value) {
                return a.value < b.value;
              }
              return a.counts < b.counts;
            });
  std::vector<Exponent> out;
  const double denom =
      exact ? static_cast<double>(*spec.common_denominator()) : 1.0;
  std::int64_t last_key = -1;
  for (auto& r : raw) {
    bool merge = false;
    if (!out.empty()) {
      merge = exact ? r.key == last_key
                    : same_exponent(out.back().value, r.value);
    }
    if (merge) {
      // Keep the lexicographically smallest representative.
      if (r.counts < out.back().representative.counts)
        out.back().representative.counts = std::move(r.counts);
      continue;
    }
    const double v = exact ? static_cast<double>(r.key) / denom : r.value;
    out.push_back({v, ExponentIndex{std::move(r.counts)}});
    last_key = r.key;
    if (keys_out) keys_out->push_back(r.key);
  }
  return out;
}

}  // namespace

std::vector<Exponent> enumerate_up_to(const SemigroupSpec& spec,
                                      double cutoff) {
  if (!(cutoff > 0.0))
    fail(ErrorKind::InvalidArgument, "cutoff must be positive");
  std::vector<RawExponent> raw;
  enumerate_raw(spec, cutoff, raw);
  return merge_sorted(spec, std::move(raw), nullptr);
}

double density_constant(const SemigroupSpec& spec, int horizon) {
  if (horizon < 1)
    fail(ErrorKind::InvalidArgument, "horizon must be at least 1");
  const auto values = enumerate_up_to(spec, horizon + 1.0);
  std::vector<int> counts(horizon + 1, 0);
  for (const auto& e : values) {
    const double v = e.value + 1e-9 * std::max(1.0, e.value);
    const auto window = static_cast<std::int64_t>(std::floor(v));
    if (window >= 0 && window <= horizon) ++counts[window];
  }
  double c = 1.0;
  for (int n = 0; n <= horizon; ++n)
    if (counts[n] > 0)
      c = std::max(c, std::pow(static_cast<double>(counts[n]), 1.0 / (n + 1)));
  return c;
}

ExponentTable::ExponentTable(SemigroupSpec spec, double cutoff)
    : spec_(std::move(spec)), cutoff_(cutoff) {
  if (!(cutoff > 0.0))
    fail(ErrorKind::InvalidArgument, "cutoff must be positive");
  std::vector<RawExponent> raw;
  enumerate_raw(spec_, cutoff_, raw);
  entries_ = merge_sorted(spec_, std::move(raw), &keys_);
  if (entries_.size() > 20000)
    fail(ErrorKind::InvalidArgument,
         "exponent table too large; lower the cutoff");

  const std::size_t n = entries_.size();
  sums_.assign(n * n, npos);
  const bool exact = spec_.common_denominator().has_value();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t hint = i;
    for (std::size_t j = 0; j < n; ++j) {
      std::optional<std::size_t> k;
      if (exact) {
        const std::int64_t target = keys_[i] + keys_[j];
        auto it = std::lower_bound(keys_.begin() + hint, keys_.end(), target);
        if (it != keys_.end() && *it == target) {
          k = static_cast<std::size_t>(it - keys_.begin());
        } else if (it == keys_.end()) {
          break;
        }
      } else {
        const double target = entries_[i].value + entries_[j].value;
        if (target > cutoff_ * (1.0 + 1e-9) + 1e-9) break;
        k = find(target);
      }
      if (k) {
        sums_[i * n + j] = static_cast<std::uint32_t>(*k);
        hint = *k;
      }
    }
  }
  gamma1_.reserve(n);
  for (const auto& e : entries_) gamma1_.push_back(std::tgamma(e.value + 1.0));
  density_constant_ = gps::density_constant(
      spec_, std::max(1, static_cast<int>(std::ceil(cutoff_))));
}

std::optional<std::size_t> ExponentTable::find(double v) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), v,
      [](const Exponent& e, double x) {
        return e.value < x && !same_exponent(e.value, x);
      });
  if (it != entries_.end() && same_exponent(it->value, v))
    return static_cast<std::size_t>(it - entries_.begin());
  return std::nullopt;
}

TablePtr exponent_table(const SemigroupSpec& spec, double cutoff) {
  using Key = std::pair<std::vector<double>, double>;
  static std::mutex mutex;
  static std::map<Key, TablePtr> cache;
  Key key{{spec.generators().begin(), spec.generators().end()}, cutoff};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const ExponentTable>(spec, cutoff);
  cache.emplace(std::move(key), table);
  return table;
}

}  // namespace gps
