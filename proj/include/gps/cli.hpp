#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gps/error.hpp"
#include "gps/serialize.hpp"
#include "gps/transforms.hpp"

namespace gps::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInternal = 1,
  kValidation = 2,
  kVerificationFailure = 3,
  kGuardViolation = 4,
};

int exit_code(ErrorKind kind);

/// Everything a command needs. Unset optionals take the documented default,
/// which is written back into the echoed job record.
struct JobSpec {
  std::string command;
  std::string law;
  std::string repr = "moments";
  double cutoff = kDefaultCutoff;
  double alpha = 0.5;
  std::string b;  // complex, "re", "re,im", "i" or "-i"; empty = canonical
  double gamma = 0.0;
  double beta = 0.5;
  double R = 1.0;
  double r = 2.0;
  double rho = 0.5;
  int d = 3;
  int M = 12;
  int N = 12;
  // density grid
  double from = 3.0;
  double to = 50.0;
  int points = 100;
  // convolve
  std::string kind = "free";
  std::vector<std::string> inputs;
  // classify
  long tested_range = 100000;
  long profile_N = 10000;
  std::string output;
};

/// GPS_CUTOFF when set, else 20. Throws invalid-argument on a bad value.
double default_cutoff();

cplx parse_complex(const std::string& s);

/// Moments of a named law (delta0, cauchy, semicircle, bernoulli, arcsine,
/// classical-stable, free-stable, boolean-stable, monotone-stable,
/// positive-stable, mixture-uniform, mu-br).
MomentSeries law_moments(const JobSpec& job);

json job_to_json(const JobSpec& job);

json cmd_expand(const JobSpec& job);

struct DensityTable {
  std::string csv;
  int warnings = 0;
};
DensityTable cmd_density(const JobSpec& job);

json cmd_convolve(const JobSpec& job);
json cmd_classify(const JobSpec& job);

struct VerifyReport {
  json report;
  bool pass = true;
};
VerifyReport cmd_verify(const JobSpec& job);

/// Parses argv, runs the command and writes its artifact to --output or
/// stdout. Returns the process exit code.
int run(int argc, char** argv);

}  // namespace gps::cli
