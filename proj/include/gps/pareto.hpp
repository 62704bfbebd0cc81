#pragma once

#include <string>
#include <vector>

#include "gps/gpseries.hpp"

namespace gps {

/// Exceptional part of the Pareto expansion in u = R*z:
///   c_floor*u^[b] + c_floor1*u^([b]+1) + c_beta*u^b + c_log*u^b*log(u).
/// Absent (all zero) for 0 < beta < 1.
struct SingularPart {
  double beta = 0.0;
  int floor_beta = 0;
  bool present = false;
  bool log_branch = false;
  cplx c_floor;
  cplx c_floor1;
  cplx c_beta;
  cplx c_log;

  cplx operator()(double u) const;
};

struct ParetoExpansion {
  double beta = 0.0;
  double R = 1.0;
  bool negative_tail = false;
  /// Powers z^k and z^beta (ASCENDING, RAW) with R^gamma folded in.
  GenSeries regular;
  SingularPart singular;  // in the variable u = R*z
  /// c1(beta) for beta >= 1, c2(beta) for beta < 1.
  cplx constant;
  std::vector<std::string> warnings;

  /// Sum of the regular series and the singular part at z > 0, with a
  /// bound on the discarded regular terms.
  Evaluation evaluate(double z) const;
};

/// R^b * int_R^inf e^{ixz} x^{-b-1} dx for z > 0, split into the boundary
/// sum, the constant carrying z^b, the regular k-family and f_b.
ParetoExpansion pareto_fourier(double beta, double R,
                               double cutoff = kDefaultCutoff);

/// R^b * int_{-inf}^{-R} e^{ixz} e^{i(b+1)pi} |x|^{-b-1} dx, i.e. the
/// positive-tail expansion conjugated and multiplied by e^{i(b+1)pi}.
ParetoExpansion negative_tail_fourier(double beta, double R,
                                      double cutoff = kDefaultCutoff);

/// int_1^inf e^{ix} x^{-s} dx by the rotation x = 1 + it.
cplx oscillatory_constant(double s);

/// (Im a) f_b(z) + Im(e^{i(b+1)pi} a) conj(f_b(z)), decomposed on
/// {u^[b], u^([b]+1), u^b} plus the coefficient of u^b log u (u = R*z).
struct CancellationResidual {
  cplx c_floor;
  cplx c_floor1;
  cplx c_beta;
  cplx c_log;
  cplx value;
};

CancellationResidual cancellation_residual(cplx a_beta, double beta, double R,
                                           double z);

}  // namespace gps
