#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gps {

/// (a x + b) / (c x + d) with integer entries and nonzero determinant.
struct Mobius {
  mpz_class a = 1, b = 0, c = 0, d = 1;

  bool identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  /// this o inner
  Mobius after(const Mobius& inner) const;
};

/// Partial quotients after the prefix. For the Liouville rule the quotient
/// with index j = k + 1 is k^power * base_k^{q_k}, where q_k is the k-th
/// convergent denominator and base_k = base^{growth (k+1)} (growth > 0) or
/// base (growth = 0).
struct TailRule {
  enum class Type { None, Periodic, Liouville };
  Type type = Type::None;
  std::vector<mpz_class> period;
  unsigned power = 0;
  unsigned base = 10;
  unsigned growth = 1;
};

struct RealCertificate {
  enum class Kind { Rational, Quadratic, ContinuedFraction, Float };

  Kind kind = Kind::Rational;
  std::string name;

  // Rational: p/q, q >= 1, gcd 1.
  mpz_class p = 0, q = 1;

  // Quadratic: (qa + qb sqrt(qD)) / qc, qD > 0 not a square, qb != 0.
  mpz_class qa, qb, qc = 1, qD;

  // Continued fraction [prefix; tail], then the Mobius map.
  std::vector<mpz_class> prefix;
  TailRule tail;
  Mobius mobius;

  // Float: value with `digits` correct significant decimal digits.
  double value = 0.0;
  int digits = 15;

  static RealCertificate rational(mpz_class p, mpz_class q);
  /// Collapses to a rational when b = 0 or D is a perfect square.
  static RealCertificate quadratic(mpz_class a, mpz_class b, mpz_class D,
                                   mpz_class c);
  static RealCertificate continued_fraction(std::vector<mpz_class> prefix,
                                            TailRule tail = {},
                                            Mobius mobius = {});
  static RealCertificate floating(double value, int digits);

  /// Throws invalid-argument on a malformed certificate.
  void validate() const;
};

/// Golden ratio [1; 1, 1, ...].
RealCertificate golden_ratio_certificate();
/// [0; 10, 10^20, 10^{3 q_2}, ...]: quotient k+1 is (10^{k+1})^{q_k}.
RealCertificate super_liouville_certificate();

/// First n convergents (fewer when a rational expansion ends). Throws
/// inconclusive-precision when the certificate cannot deliver them.
std::vector<std::pair<mpz_class, mpz_class>> convergents(
    const RealCertificate& cert, int n);

struct ProfilePoint {
  long n = 0;
  /// log<beta n>; -inf at an exact zero.
  double log_dist = 0.0;
  /// log(1/|sin(pi beta n)|)/n and its running max.
  double per_n = 0.0;
  double max_per_n = 0.0;
  /// log(1/|sin(pi beta n)|)/log n for n >= 2 (0 at n = 1) and running max.
  double per_log_n = 0.0;
  double max_per_log_n = 0.0;
};

struct SinGrowthProfile {
  std::vector<ProfilePoint> points;
  std::optional<long> exact_zero_at;
  double max_per_n() const;
  double max_per_log_n() const;
};

SinGrowthProfile sin_growth_profile(const RealCertificate& cert, long N);

enum class DVerdict { NotInDEvidence, DCandidate, Rational, CertifiedInD };
std::string_view to_string(DVerdict v);

struct Witness {
  mpz_class q;
  /// log<beta q>; dist underflows to 0 when it is tiny.
  double log_dist = 0.0;
  double dist = 0.0;
  /// <beta q>^{-1/q}
  double implied_b = 0.0;
  /// (1/|sin(pi beta q)|)^{1/q}
  double implied_A = 0.0;
};

struct ClassifyParams {
  long tested_range = 100000;
  long profile_N = 10000;
  /// Profile running max (log scale) above this reads as a D candidate.
  double log_scale_threshold = 10.0;
  /// false skips the symbolic verdicts and always decides from the profile.
  bool use_rules = true;
};

struct DiophantineEvidence {
  DVerdict verdict = DVerdict::NotInDEvidence;
  bool symbolic = false;
  std::string reason;
  long tested_range = 0;
  std::vector<Witness> witnesses;
  long profile_N = 0;
  double profile_max_per_n = 0.0;
  double profile_max_per_log_n = 0.0;
};

DiophantineEvidence classify(const RealCertificate& cert,
                             const ClassifyParams& params = {});

struct CertificateOp {
  enum class Type { Scale, Shift, Invert };
  Type type = Type::Invert;
  mpq_class r = 0;

  static CertificateOp scale(mpq_class r) { return {Type::Scale, std::move(r)}; }
  static CertificateOp shift(mpq_class r) { return {Type::Shift, std::move(r)}; }
  static CertificateOp invert() { return {Type::Invert, 0}; }
};

RealCertificate transform_certificate(const RealCertificate& cert,
                                      const CertificateOp& op);

}  // namespace gps
