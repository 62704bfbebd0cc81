#include "gps/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gps/error.hpp"
#include "gps/numerics.hpp"

namespace gps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Largest partial quotient (decimal digits) that is ever materialized.
constexpr double kMaxDigits = 20000.0;
// Relative accuracy demanded of <beta n> in profiles and witnesses.
constexpr double kRelGoal = 1e-9;
// Float certificates are accepted at this looser relative accuracy.
constexpr double kFloatRelGoal = 1e-3;

double log_abs(const mpz_class& v) {
  if (v == 0) return -kInf;
  long e = 0;
  const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

double log_abs(const mpq_class& v) {
  return log_abs(v.get_num()) - log_abs(v.get_den());
}

mpz_class floor_q(const mpq_class& v) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return out;
}

struct Term {
  bool exact = true;
  mpz_class value;
  double log_value = 0.0;
};

// Partial quotients of a certificate without its Mobius map, with the
// convergents built so far.
class Stream {
 public:
  explicit Stream(const RealCertificate& c) : cert_(c) {
    if (c.kind == RealCertificate::Kind::Rational) {
      num_ = c.p;
      den_ = c.q;
    } else if (c.kind == RealCertificate::Kind::Quadratic) {
      D_ = c.qD * c.qb * c.qb * c.qc * c.qc;
      if (c.qb * c.qc > 0) {
        P_ = c.qa * c.qc;
        Q_ = c.qc * c.qc;
      } else {
        P_ = -c.qa * c.qc;
        Q_ = -c.qc * c.qc;
      }
      root_ = sqrt(D_);
    }
  }

  std::optional<Term> next() {
    switch (cert_.kind) {
      case RealCertificate::Kind::Rational: {
        if (den_ == 0) return std::nullopt;
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        mpz_class r = num_ - a * den_;
        num_ = den_;
        den_ = r;
        return Term{true, a, 0.0};
      }
      case RealCertificate::Kind::Quadratic: {
        mpz_class a;
        mpz_class top = Q_ > 0 ? mpz_class(P_ + root_) : mpz_class(P_ + root_ + 1);
        mpz_fdiv_q(a.get_mpz_t(), top.get_mpz_t(), Q_.get_mpz_t());
        P_ = a * Q_ - P_;
        Q_ = (D_ - P_ * P_) / Q_;
        return Term{true, a, 0.0};
      }
      case RealCertificate::Kind::ContinuedFraction: return cf_term();
      case RealCertificate::Kind::Float: break;
    }
    fail(ErrorKind::InternalError, "float certificates have no exact stream");
  }

  void push(const mpz_class& a) {
    const std::size_t k = q.size();
    const mpz_class p1 = k >= 1 ? p[k - 1] : mpz_class(1);
    const mpz_class p2 = k >= 2 ? p[k - 2] : mpz_class(k == 1 ? 1 : 0);
    const mpz_class q1 = k >= 1 ? q[k - 1] : mpz_class(0);
    const mpz_class q2 = k >= 2 ? q[k - 2] : mpz_class(k == 1 ? 0 : 1);
    p.push_back(a * p1 + p2);
    q.push_back(a * q1 + q2);
  }

  std::vector<mpz_class> p, q;

 private:
  std::optional<Term> cf_term() {
    const std::size_t j = q.size();
    const auto& pre = cert_.prefix;
    if (j < pre.size()) return Term{true, pre[j], 0.0};
    const TailRule& t = cert_.tail;
    switch (t.type) {
      case TailRule::Type::None: return std::nullopt;
      case TailRule::Type::Periodic:
        return Term{true, t.period[(j - pre.size()) % t.period.size()], 0.0};
      case TailRule::Type::Liouville: {
        const unsigned long k = j - 1;
        const mpz_class& qk = q[k];
        const double lb = std::log(static_cast<double>(t.base));
        const double scale = t.growth > 0 ? t.growth * (k + 1.0) : 1.0;
        const double log_a =
            (t.power > 0 ? t.power * std::log(static_cast<double>(k)) : 0.0) +
            scale * std::exp(log_abs(qk)) * lb;
        if (log_a / std::log(10.0) > kMaxDigits) return Term{false, 0, log_a};
        mpz_class base;
        mpz_ui_pow_ui(base.get_mpz_t(), t.base,
                      t.growth > 0 ? t.growth * (k + 1) : 1);
        mpz_class a;
        mpz_pow_ui(a.get_mpz_t(), base.get_mpz_t(), qk.get_ui());
        if (t.power > 0) {
          mpz_class kp;
          mpz_ui_pow_ui(kp.get_mpz_t(), k, t.power);
          a *= kp;
        }
        return Term{true, a, log_a};
      }
    }
    return std::nullopt;
  }

  const RealCertificate& cert_;
  mpz_class num_, den_;
  mpz_class P_, Q_, D_, root_;
};

// Convergents p_k/q_k of beta with a bound on |beta - p_K/q_K| for the last.
struct Approx {
  std::vector<mpz_class> p, q;
  bool ended = false;
  double log_err = -kInf;

  double rel_log_err() const { return log_err + log_abs(q.back()); }
};

struct Goal {
  std::size_t terms = 1;
  mpz_class min_q = 0;
  double rel_log = -kInf;  // needed bound on log_err + log q_K

  bool met(const Approx& a) const {
    if (a.ended) return true;
    return a.q.size() >= terms && a.q.back() > min_q &&
           a.rel_log_err() <= rel_log;
  }
};

Approx exact_approx(const RealCertificate& cert, const Goal& goal) {
  Stream s(cert);
  Approx out;
  for (;;) {
    std::optional<Term> t = s.next();
    if (!t) {
      out.p = s.p;
      out.q = s.q;
      out.ended = true;
      return out;
    }
    if (!t->exact) {
      // q_{K+1} >= a_{K+1} q_K
      out.p = s.p;
      out.q = s.q;
      out.log_err = -(2.0 * log_abs(s.q.back()) + t->log_value);
      return out;
    }
    s.push(t->value);
    const std::size_t n = s.q.size();
    if (n >= 2) {
      Approx a;
      a.p.assign(s.p.begin(), s.p.end() - 1);
      a.q.assign(s.q.begin(), s.q.end() - 1);
      a.log_err = -(log_abs(s.q[n - 2]) + log_abs(s.q[n - 1]));
      if (goal.met(a)) return a;
    }
  }
}

// Terms shared by the expansions of lo and hi.
Approx common_expansion(mpq_class lo, mpq_class hi) {
  Approx out;
  const mpq_class lo0 = lo, hi0 = hi;
  std::vector<mpz_class> terms;
  for (int guard = 0; guard < 100000; ++guard) {
    const mpz_class a = floor_q(lo), b = floor_q(hi);
    if (a != b) break;
    terms.push_back(a);
    lo -= a;
    hi -= a;
    if (lo == 0 && hi == 0) {
      out.ended = true;
      break;
    }
    if (lo == 0 || hi == 0) break;
    lo = 1 / lo;
    hi = 1 / hi;
  }
  mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  for (const auto& a : terms) {
    mpz_class pn = a * p1 + p2, qn = a * q1 + q2;
    p2 = p1;
    p1 = pn;
    q2 = q1;
    q1 = qn;
    out.p.push_back(pn);
    out.q.push_back(qn);
  }
  if (out.q.empty()) return out;
  if (!out.ended) {
    const mpq_class conv(out.p.back(), out.q.back());
    const mpq_class e1 = abs(lo0 - conv), e2 = abs(hi0 - conv);
    out.log_err = log_abs(e1 > e2 ? e1 : e2);
  }
  return out;
}

mpq_class apply(const Mobius& m, const mpq_class& x) {
  return mpq_class(m.a * x + m.b) / mpq_class(m.c * x + m.d);
}

// Image of beta = [prefix; tail] under the Mobius map, as an interval, from
// the first base_terms quotients. `exhausted` is set when the base stream
// cannot deliver that many.
struct MobiusAttempt {
  std::optional<Approx> approx;
  bool exhausted = false;
};

MobiusAttempt mobius_approx(const RealCertificate& cert,
                            std::size_t base_terms) {
  MobiusAttempt out;
  Stream s(cert);
  std::optional<Term> next;
  for (;;) {
    next = s.next();
    if (!next || !next->exact || s.q.size() == base_terms) break;
    s.push(next->value);
  }
  out.exhausted = s.q.size() < base_terms;
  const std::size_t K = s.q.size();
  if (K == 0) return out;
  const mpz_class pK = s.p[K - 1], qK = s.q[K - 1];
  const mpz_class pK1 = K >= 2 ? s.p[K - 2] : mpz_class(1);
  const mpz_class qK1 = K >= 2 ? s.q[K - 2] : mpz_class(0);
  if (!next) {
    const mpq_class y = apply(cert.mobius, mpq_class(pK, qK));
    out.approx = common_expansion(y, y);
    return out;
  }
  // beta = (pK t + pK1)/(qK t + qK1) with the tail t in [L, U]
  const Mobius T = cert.mobius.after(Mobius{pK, pK1, qK, qK1});
  mpq_class L;
  std::optional<mpq_class> U;
  if (next->exact) {
    L = next->value;
    U = mpq_class(next->value + 1);
  } else {
    const double digits = std::min(next->log_value / std::log(10.0), 4000.0);
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    L = big;
  }
  if (!U && T.c == 0) return out;
  auto den_sign = [&T](const mpq_class& t) { return sgn(T.c * t + T.d); };
  const int sL = den_sign(L);
  const int sU = U ? den_sign(*U) : sgn(T.c);
  if (sL == 0 || sU == 0 || sL != sU) return out;
  const mpq_class a = apply(T, L);
  mpq_class b = U ? apply(T, *U) : mpq_class(T.a, T.c);
  b.canonicalize();
  out.approx = a < b ? common_expansion(a, b) : common_expansion(b, a);
  return out;
}

bool uses_interval(const RealCertificate& c) {
  return c.kind == RealCertificate::Kind::Float ||
         (c.kind == RealCertificate::Kind::ContinuedFraction &&
          !c.mobius.identity());
}

Approx approximate(const RealCertificate& cert, const Goal& goal) {
  if (cert.kind == RealCertificate::Kind::Float) {
    const mpq_class v(cert.value);
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(cert.digits));
    const mpq_class err =
        (cert.value == 0.0 ? mpq_class(1) : mpq_class(abs(v))) / mpq_class(ten);
    Approx a = common_expansion(v - err, v + err);
    if (a.q.empty())
      fail(ErrorKind::InconclusivePrecision, "float carries no usable digits");
    if (a.ended) a.log_err = log_abs(err);
    a.ended = false;
    return a;
  }
  if (!uses_interval(cert)) return exact_approx(cert, goal);
  std::optional<Approx> best;
  for (std::size_t m = 4; m <= 1u << 16; m *= 2) {
    MobiusAttempt at = mobius_approx(cert, m);
    if (at.approx && !at.approx->q.empty()) {
      if (goal.met(*at.approx)) return *at.approx;
      best = std::move(at.approx);
    }
    if (at.exhausted) break;
  }
  if (best) return *best;
  fail(ErrorKind::InconclusivePrecision,
       "could not separate the transformed value from a pole");
}

bool is_rational(const RealCertificate& c) {
  return c.kind == RealCertificate::Kind::Rational ||
         (c.kind == RealCertificate::Kind::ContinuedFraction &&
          c.tail.type == TailRule::Type::None);
}

double log_sin_pi(double log_t) {
  if (log_t == -kInf) return -kInf;
  if (log_t < -20.0) return std::log(kPi) + log_t;
  return std::log(std::sin(kPi * std::exp(log_t)));
}

// log<n p/q> for the reduced rational p/q.
double log_frac_dist(const mpz_class& n, const mpz_class& p,
                     const mpz_class& q) {
  mpz_class r;
  mpz_class np = n * p;
  mpz_fdiv_r(r.get_mpz_t(), np.get_mpz_t(), q.get_mpz_t());
  const mpz_class other = q - r;
  const mpz_class& m = r < other ? r : other;
  if (m == 0) return -kInf;
  return log_abs(m) - log_abs(q);
}

Goal profile_goal(const RealCertificate& cert, long reach) {
  Goal g;
  g.min_q = mpz_class(static_cast<unsigned long>(reach));
  g.rel_log = std::log(cert.kind == RealCertificate::Kind::Float
                           ? kFloatRelGoal
                           : kRelGoal) -
              std::log(static_cast<double>(reach));
  return g;
}

void check_goal(const RealCertificate& cert, const Approx& a, long reach) {
  if (a.ended) return;
  const Goal g = profile_goal(cert, reach);
  if (a.q.empty() || !(a.q.back() > g.min_q) || a.rel_log_err() > g.rel_log)
    fail(ErrorKind::InconclusivePrecision,
         "certificate precision does not resolve <beta n> up to n = " +
             std::to_string(reach));
}

std::string describe(const CertificateOp& op) {
  switch (op.type) {
    case CertificateOp::Type::Scale: return " scaled by " + op.r.get_str();
    case CertificateOp::Type::Shift: return " shifted by " + op.r.get_str();
    case CertificateOp::Type::Invert: return " inverted";
  }
  return "";
}

Mobius op_matrix(const CertificateOp& op) {
  const mpz_class u = op.r.get_num(), v = op.r.get_den();
  switch (op.type) {
    case CertificateOp::Type::Scale: return {u, 0, 0, v};
    case CertificateOp::Type::Shift: return {v, u, 0, v};
    case CertificateOp::Type::Invert: return {0, 1, 1, 0};
  }
  return {};
}

mpq_class cf_value(const std::vector<mpz_class>& terms) {
  mpq_class x = terms.back();
  for (std::size_t i = terms.size() - 1; i-- > 0;) x = terms[i] + 1 / x;
  x.canonicalize();
  return x;
}

}  // namespace

Mobius Mobius::after(const Mobius& in) const {
  Mobius m{a * in.a + b * in.c, a * in.b + b * in.d, c * in.a + d * in.c,
           c * in.b + d * in.d};
  mpz_class g = gcd(gcd(m.a, m.b), gcd(m.c, m.d));
  if (g > 1) {
    m.a /= g;
    m.b /= g;
    m.c /= g;
    m.d /= g;
  }
  return m;
}

RealCertificate RealCertificate::rational(mpz_class p, mpz_class q) {
  if (q == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const mpz_class g = gcd(p, q);
  RealCertificate c;
  c.kind = Kind::Rational;
  c.p = p / g;
  c.q = q / g;
  return c;
}

RealCertificate RealCertificate::quadratic(mpz_class a, mpz_class b,
                                           mpz_class D, mpz_class c) {
  if (c == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  if (D < 0) fail(ErrorKind::InvalidArgument, "negative discriminant");
  if (b == 0 || mpz_perfect_square_p(D.get_mpz_t())) {
    const mpz_class r = sqrt(D);
    return rational(a + b * r, c);
  }
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  const mpz_class g = gcd(gcd(a, b), c);
  RealCertificate out;
  out.kind = Kind::Quadratic;
  out.qa = a / g;
  out.qb = b / g;
  out.qc = c / g;
  out.qD = D;
  return out;
}

RealCertificate RealCertificate::continued_fraction(
    std::vector<mpz_class> prefix, TailRule tail, Mobius mobius) {
  RealCertificate c;
  c.kind = Kind::ContinuedFraction;
  c.prefix = std::move(prefix);
  c.tail = std::move(tail);
  c.mobius = std::move(mobius);
  c.validate();
  return c;
}

RealCertificate RealCertificate::floating(double value, int digits) {
  RealCertificate c;
  c.kind = Kind::Float;
  c.value = value;
  c.digits = digits;
  c.validate();
  return c;
}

void RealCertificate::validate() const {
  switch (kind) {
    case Kind::Rational:
      if (q < 1 || gcd(p, q) != 1)
        fail(ErrorKind::InvalidArgument, "rational needs q >= 1, gcd(p, q) = 1");
      return;
    case Kind::Quadratic:
      if (qc == 0 || qb == 0 || qD <= 0 ||
          mpz_perfect_square_p(qD.get_mpz_t()))
        fail(ErrorKind::InvalidArgument,
             "quadratic needs c != 0, b != 0 and a positive non-square D");
      return;
    case Kind::ContinuedFraction: {
      if (prefix.empty())
        fail(ErrorKind::InvalidArgument, "continued fraction needs a_0");
      for (std::size_t i = 1; i < prefix.size(); ++i)
        if (prefix[i] < 1)
          fail(ErrorKind::InvalidArgument,
               "partial quotients after a_0 must be positive");
      if (tail.type == TailRule::Type::Periodic) {
        if (tail.period.empty())
          fail(ErrorKind::InvalidArgument, "empty period");
        for (const auto& a : tail.period)
          if (a < 1)
            fail(ErrorKind::InvalidArgument,
                 "periodic quotients must be positive");
      }
      if (tail.type == TailRule::Type::Liouville) {
        if (tail.base < 2) fail(ErrorKind::InvalidArgument, "base must be >= 2");
        if (tail.power > 0 && prefix.size() < 2)
          fail(ErrorKind::InvalidArgument,
               "with a power factor the rule must start at k >= 1");
      }
      if (mobius.a * mobius.d - mobius.b * mobius.c == 0)
        fail(ErrorKind::InvalidArgument, "singular Mobius map");
      return;
    }
    case Kind::Float:
      if (!std::isfinite(value) || digits < 1 || digits > 17)
        fail(ErrorKind::InvalidArgument,
             "float needs a finite value and 1..17 digits");
      return;
  }
}

RealCertificate golden_ratio_certificate() {
  TailRule t;
  t.type = TailRule::Type::Periodic;
  t.period = {1};
  auto c = RealCertificate::continued_fraction({1}, t);
  c.name = "golden ratio";
  return c;
}

RealCertificate super_liouville_certificate() {
  TailRule t;
  t.type = TailRule::Type::Liouville;
  t.power = 0;
  t.base = 10;
  t.growth = 1;
  auto c = RealCertificate::continued_fraction({0}, t);
  c.name = "super-Liouville";
  return c;
}

std::vector<std::pair<mpz_class, mpz_class>> convergents(
    const RealCertificate& cert, int n) {
  cert.validate();
  if (n < 1) fail(ErrorKind::InvalidArgument, "need n >= 1");
  std::vector<std::pair<mpz_class, mpz_class>> out;
  if (!uses_interval(cert)) {
    Stream s(cert);
    while (static_cast<int>(s.q.size()) < n) {
      auto t = s.next();
      if (!t) break;
      if (!t->exact)
        fail(ErrorKind::InconclusivePrecision,
             "partial quotient " + std::to_string(s.q.size()) + " has about " +
                 std::to_string(static_cast<long long>(t->log_value /
                                                       std::log(10.0))) +
                 " digits");
      s.push(t->value);
    }
    for (std::size_t k = 0; k < s.q.size(); ++k) out.emplace_back(s.p[k], s.q[k]);
    return out;
  }
  Goal g;
  g.terms = static_cast<std::size_t>(n);
  g.rel_log = kInf;
  const Approx a = approximate(cert, g);
  if (!a.ended && static_cast<int>(a.q.size()) < n)
    fail(ErrorKind::InconclusivePrecision,
         "only " + std::to_string(a.q.size()) + " convergents are resolved");
  for (std::size_t k = 0; k < a.q.size() && static_cast<int>(k) < n; ++k)
    out.emplace_back(a.p[k], a.q[k]);
  return out;
}

double SinGrowthProfile::max_per_n() const {
  return points.empty() ? 0.0 : points.back().max_per_n;
}

double SinGrowthProfile::max_per_log_n() const {
  return points.empty() ? 0.0 : points.back().max_per_log_n;
}

SinGrowthProfile sin_growth_profile(const RealCertificate& cert, long N) {
  cert.validate();
  if (N < 1) fail(ErrorKind::InvalidArgument, "need N >= 1");
  Goal g = profile_goal(cert, N);
  const Approx a = approximate(cert, g);
  check_goal(cert, a, N);
  const mpz_class& P = a.p.back();
  const mpz_class& Q = a.q.back();
  SinGrowthProfile out;
  out.points.reserve(static_cast<std::size_t>(N));
  double mx_n = 0.0, mx_log = 0.0;
  for (long n = 1; n <= N; ++n) {
    ProfilePoint pt;
    pt.n = n;
    pt.log_dist = log_frac_dist(mpz_class(n), P, Q);
    if (pt.log_dist == -kInf && !out.exact_zero_at) out.exact_zero_at = n;
    const double v = -log_sin_pi(pt.log_dist);
    pt.per_n = v / static_cast<double>(n);
    pt.per_log_n = n >= 2 ? v / std::log(static_cast<double>(n)) : 0.0;
    mx_n = std::max(mx_n, pt.per_n);
    if (n >= 2) mx_log = std::max(mx_log, pt.per_log_n);
    pt.max_per_n = mx_n;
    pt.max_per_log_n = mx_log;
    out.points.push_back(pt);
  }
  return out;
}

std::string_view to_string(DVerdict v) {
  switch (v) {
    case DVerdict::NotInDEvidence: return "NOT_IN_D_EVIDENCE";
    case DVerdict::DCandidate: return "D_CANDIDATE";
    case DVerdict::Rational: return "RATIONAL";
    case DVerdict::CertifiedInD: return "CERTIFIED_IN_D";
  }
  return "?";
}

DiophantineEvidence classify(const RealCertificate& cert,
                             const ClassifyParams& params) {
  cert.validate();
  if (params.tested_range < 1 || params.profile_N < 1)
    fail(ErrorKind::InvalidArgument, "ranges must be positive");
  DiophantineEvidence ev;
  ev.tested_range = params.tested_range;
  ev.profile_N = params.profile_N;

  // a float only supports witnesses as far as its digits resolve them
  const bool is_float = cert.kind == RealCertificate::Kind::Float;
  const long reach =
      is_float ? params.profile_N
               : std::max(params.tested_range, params.profile_N);
  const Approx a = approximate(cert, profile_goal(cert, reach));
  check_goal(cert, a, reach);
  const mpz_class& P = a.p.back();
  const mpz_class& Q = a.q.back();
  const mpz_class limit(static_cast<unsigned long>(params.tested_range));
  for (std::size_t k = 0; k < a.q.size(); ++k) {
    const mpz_class& qk = a.q[k];
    if (qk > limit) break;
    // a repeated denominator: the later convergent is the closer one
    if (!ev.witnesses.empty() && ev.witnesses.back().q == qk) ev.witnesses.pop_back();
    // |q_k beta - p_k| from the best convergent
    const mpz_class num = abs(qk * P - a.p[k] * Q);
    if (num == 0) continue;
    Witness w;
    w.q = qk;
    w.log_dist = log_abs(num) - log_abs(Q);
    if (is_float &&
        log_abs(qk) + a.log_err - w.log_dist > std::log(kFloatRelGoal)) {
      ev.tested_range = static_cast<long>(qk.get_d()) - 1;
      break;
    }
    w.dist = std::exp(w.log_dist);
    const double qd = qk.get_d();
    w.implied_b = std::exp(-w.log_dist / qd);
    w.implied_A = std::exp(-log_sin_pi(w.log_dist) / qd);
    ev.witnesses.push_back(w);
  }

  const SinGrowthProfile prof = sin_growth_profile(cert, params.profile_N);
  ev.profile_max_per_n = prof.max_per_n();
  ev.profile_max_per_log_n = prof.max_per_log_n();

  if (is_rational(cert) || a.ended) {
    if (cert.kind == RealCertificate::Kind::Float)
      fail(ErrorKind::InconclusivePrecision,
           "a float cannot be certified rational");
    ev.verdict = DVerdict::Rational;
    ev.symbolic = true;
    ev.reason = "rational value " + mpq_class(P, Q).get_str();
    return ev;
  }
  const bool evidence_only = cert.kind == RealCertificate::Kind::Float;
  if (!evidence_only && params.use_rules) {
    if (cert.kind == RealCertificate::Kind::Quadratic ||
        cert.tail.type == TailRule::Type::Periodic) {
      ev.verdict = DVerdict::NotInDEvidence;
      ev.symbolic = true;
      ev.reason =
          "quadratic irrational: bounded partial quotients, so <beta n> >= c/n";
      return ev;
    }
    if (cert.tail.type == TailRule::Type::Liouville) {
      const TailRule& t = cert.tail;
      ev.symbolic = true;
      if (t.growth > 0) {
        ev.verdict = DVerdict::CertifiedInD;
        ev.reason = "a_{k+1} >= (" + std::to_string(t.base) + "^{" +
                    std::to_string(t.growth) +
                    "(k+1)})^{q_k}, so for every b > 1 the error at q_k is "
                    "below b^{-q_k} once " +
                    std::to_string(t.base) + "^{" + std::to_string(t.growth) +
                    "(k+1)} > b; rational Mobius maps preserve this";
      } else {
        ev.verdict = DVerdict::NotInDEvidence;
        ev.reason = "a_{k+1} <= k^" + std::to_string(t.power) + " " +
                    std::to_string(t.base) +
                    "^{q_k} bounds every approximation error below by about " +
                    std::to_string(t.base) +
                    "^{-q}/q^2, so the condition fails for b > " +
                    std::to_string(t.base);
      }
      return ev;
    }
  }
  if (ev.profile_max_per_log_n > params.log_scale_threshold) {
    if (evidence_only)
      fail(ErrorKind::InconclusivePrecision,
           "profile grows, but a float cannot support a D verdict");
    ev.verdict = DVerdict::DCandidate;
    ev.reason = "profile running max on the log scale exceeds threshold";
  } else {
    ev.verdict = DVerdict::NotInDEvidence;
    ev.reason = "profile bounded on the log scale up to n = " +
                std::to_string(params.profile_N);
  }
  return ev;
}

RealCertificate transform_certificate(const RealCertificate& cert,
                                      const CertificateOp& op) {
  cert.validate();
  if (op.type == CertificateOp::Type::Scale && op.r == 0)
    fail(ErrorKind::InvalidArgument, "scale factor must be nonzero");
  RealCertificate out;
  switch (cert.kind) {
    case RealCertificate::Kind::Rational: {
      mpq_class x(cert.p, cert.q);
      switch (op.type) {
        case CertificateOp::Type::Scale: x *= op.r; break;
        case CertificateOp::Type::Shift: x += op.r; break;
        case CertificateOp::Type::Invert:
          if (x == 0) fail(ErrorKind::InvalidArgument, "cannot invert zero");
          x = 1 / x;
          break;
      }
      x.canonicalize();
      out = RealCertificate::rational(x.get_num(), x.get_den());
      break;
    }
    case RealCertificate::Kind::Quadratic: {
      const mpz_class u = op.r.get_num(), v = op.r.get_den();
      switch (op.type) {
        case CertificateOp::Type::Scale:
          out = RealCertificate::quadratic(cert.qa * u, cert.qb * u, cert.qD,
                                           cert.qc * v);
          break;
        case CertificateOp::Type::Shift:
          out = RealCertificate::quadratic(cert.qa * v + u * cert.qc,
                                           cert.qb * v, cert.qD, cert.qc * v);
          break;
        case CertificateOp::Type::Invert: {
          const mpz_class n = cert.qa * cert.qa - cert.qb * cert.qb * cert.qD;
          out = RealCertificate::quadratic(cert.qc * cert.qa,
                                           -cert.qc * cert.qb, cert.qD, n);
          break;
        }
      }
      break;
    }
    case RealCertificate::Kind::ContinuedFraction: {
      if (cert.tail.type == TailRule::Type::None) {
        const mpq_class x = apply(cert.mobius, cf_value(cert.prefix));
        RealCertificate r = RealCertificate::rational(x.get_num(), x.get_den());
        out = transform_certificate(r, op);
        break;
      }
      out = cert;
      if (op.type == CertificateOp::Type::Shift && op.r.get_den() == 1 &&
          cert.mobius.identity()) {
        // q_k does not depend on a_0, so the tail is unchanged
        out.prefix[0] += op.r.get_num();
      } else {
        out.mobius = op_matrix(op).after(cert.mobius);
      }
      break;
    }
    case RealCertificate::Kind::Float: {
      const double r = op.r.get_d();
      const double err = std::abs(cert.value) * std::pow(10.0, -cert.digits);
      double v = cert.value;
      int digits = cert.digits;
      switch (op.type) {
        case CertificateOp::Type::Scale: v *= r; break;
        case CertificateOp::Type::Shift: {
          v += r;
          const double d = v == 0.0 ? 0.0 : -std::log10(err / std::abs(v));
          digits = std::clamp(static_cast<int>(std::floor(d)), 1, 17);
          if (d < 1.0)
            fail(ErrorKind::InconclusivePrecision,
                 "shift leaves no significant digits");
          break;
        }
        case CertificateOp::Type::Invert:
          if (v == 0.0) fail(ErrorKind::InvalidArgument, "cannot invert zero");
          v = 1.0 / v;
          break;
      }
      out = RealCertificate::floating(v, digits);
      break;
    }
  }
  out.name = cert.name.empty() ? "" : cert.name + describe(op);
  return out;
}

}  // namespace gps
