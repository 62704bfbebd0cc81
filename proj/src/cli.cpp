#include "gps/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "gps/diophantine.hpp"
#include "gps/oracles.hpp"
#include "gps/pareto.hpp"
#include "gps/stable_laws.hpp"

namespace gps::cli {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

bool is_stable_law(const std::string& law) {
  return law == "classical-stable" || law == "free-stable" ||
         law == "boolean-stable" || law == "monotone-stable";
}

StableParams stable_params(const JobSpec& job) {
  StableParams p;
  p.alpha = job.alpha;
  p.gamma_shift = job.gamma;
  if (job.law == "classical-stable") p.kind = StableKind::Classical;
  if (job.law == "free-stable") p.kind = StableKind::Free;
  if (job.law == "boolean-stable") p.kind = StableKind::Boolean;
  if (job.law == "monotone-stable") p.kind = StableKind::Monotone;
  if (!job.b.empty()) {
    p.b = parse_complex(job.b);
  } else if (job.alpha < 1.0) {
    p.b = -1.0;
  } else if (job.alpha == 1.0) {
    p.b = cplx(0.0, 1.0);
  } else {
    p.b = 1.0;
  }
  return p;
}

cplx positive_stable_fourier(double alpha, double z) {
  const cplx b = std::polar(1.0, (1.0 - alpha) * kPi);
  return std::exp(b * std::pow(cplx(0.0, z), alpha));
}

std::vector<double> uniform_nu(double alpha, double cutoff) {
  std::vector<double> nu;
  const int n = static_cast<int>(std::ceil(cutoff / alpha)) + 1;
  for (int k = 0; k <= n; ++k) nu.push_back(1.0 / (k + 1));
  return nu;
}

GenSeries representation(const MomentSeries& m, const std::string& repr) {
  if (repr == "moments") return m.series();
  if (repr == "fourier")
    return m.series()
        .map([](cplx c, double g) { return c * numerics::i_pow(g); })
        .with_normalization(Normalization::Raw);
  if (repr == "stieltjes") return stieltjes_from_moments(m);
  if (repr == "F") return F_from_moments(m);
  if (repr == "voiculescu") return voiculescu_from_moments(m);
  if (repr == "tail-density")
    return stieltjes_from_moments(m)
        .with_coeff(0.0, 0.0)
        .map([](cplx c, double) { return c / kPi; });
  fail(ErrorKind::InvalidArgument, "unknown representation '" + repr + "'");
}

MomentSeries to_moments(const SeriesFile& f) {
  if (f.representation == "moments") return MomentSeries(f.series);
  if (f.representation == "stieltjes") return moments_from_stieltjes(f.series);
  if (f.representation == "F") return moments_from_F(f.series);
  if (f.representation == "voiculescu")
    return moments_from_voiculescu(f.series);
  fail(ErrorKind::InvalidArgument, "cannot convolve a '" + f.representation +
                                       "' series; expand to moments first");
}

json singular_to_json(const SingularPart& s) {
  json j;
  j["beta"] = s.beta;
  j["floor_beta"] = s.floor_beta;
  j["present"] = s.present;
  j["log_branch"] = s.log_branch;
  auto c = [](cplx v) { return json::array({v.real(), v.imag()}); };
  j["c_floor"] = c(s.c_floor);
  j["c_floor1"] = c(s.c_floor1);
  j["c_beta"] = c(s.c_beta);
  j["c_log"] = c(s.c_log);
  return j;
}

struct Check {
  std::string name;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string flag;
};

json check_json(const Check& c) {
  json j;
  j["name"] = c.name;
  j["discrepancy"] = c.discrepancy;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  if (!c.flag.empty()) j["flag"] = c.flag;
  return j;
}

Check compare(std::string name, cplx a, cplx b, double tol) {
  Check c;
  c.name = std::move(name);
  c.discrepancy = std::abs(a - b);
  c.tolerance = tol;
  c.pass = c.discrepancy <= tol;
  return c;
}

std::vector<Check> verify_cauchy(const JobSpec& job) {
  using namespace closed_form;
  std::vector<Check> out;
  const MomentSeries m = law_moments(job);
  const FourierEvaluator F(m);
  for (double z : {0.5, 1.0, 2.0}) {
    const auto q = quadrature_fourier(cauchy_model(), z);
    out.push_back(compare("fourier series vs quadrature z=" + label(z),
                          F(z).value, q.value, 1e-7));
  }
  const StieltjesEvaluator G(m);
  for (cplx z : {cplx(0.0, -3.0), cplx(-5.0, -2.0)}) {
    const auto q = quadrature_stieltjes(cauchy_model(), z);
    out.push_back(compare(
        "stieltjes series vs quadrature z=" + label(z.real()) + (z.imag() < 0 ? "" : "+") + label(z.imag()) + "i",
        G(z).value, q.value, 1e-7));
  }
  const double y = 2.5 * G.guard_radius() / 1.25;
  const LaplaceLink L = laplace_link_check(m, y, cauchy_fourier);
  out.push_back(compare("laplace link y=" + label(y), L.lhs, L.rhs, 1e-7));
  const auto inv = stieltjes_inversion(cauchy_stieltjes, 5.0);
  const TailDensity tail(m);
  out.push_back(compare("stieltjes inversion vs tail density x=5",
                        inv.density, tail(5.0).value.real(), 1e-7));
  return out;
}

std::vector<Check> verify_arcsine(const JobSpec& job) {
  using namespace closed_form;
  std::vector<Check> out;
  const MomentSeries m = law_moments(job);
  const StieltjesEvaluator G(m);
  for (cplx z : {cplx(0.0, -5.0), cplx(3.0, -4.0)}) {
    const auto q = quadrature_stieltjes(arcsine_model(), z);
    out.push_back(compare(
        "stieltjes series vs quadrature z=" + label(z.real()) + (z.imag() < 0 ? "" : "+") + label(z.imag()) + "i",
        G(z).value, q.value, 1e-7));
  }
  const double y = 2.5 * G.guard_radius() / 1.25;
  const LaplaceLink L = laplace_link_check(m, y, arcsine_fourier);
  out.push_back(compare("laplace link y=" + label(y), L.lhs, L.rhs, 1e-6));
  return out;
}

std::vector<Check> verify_positive_stable(const JobSpec& job) {
  std::vector<Check> out;
  const double a = job.alpha;
  const PositiveStableDensity p(a, job.cutoff);
  const auto phi = [a](double z) { return positive_stable_fourier(a, z); };
  for (double x : {2.0, 4.0, 8.0}) {
    if (!(x > p.x_min())) continue;
    const double s = p(x).value.real();
    const auto fi = fourier_inversion(phi, x);
    out.push_back(compare("density vs fourier inversion x=" + label(x), s,
                          fi.value.real(), 1e-5));
    const auto si = stieltjes_inversion(
        [&phi](cplx z) { return stieltjes_from_fourier(phi, z).value; }, x);
    out.push_back(compare("density vs stieltjes inversion x=" + label(x), s,
                          si.density, 1e-5));
  }
  if (out.empty())
    fail(ErrorKind::OutsideValidityRegion,
         "no sample point beyond the validity radius " + fmt(p.x_min()));
  return out;
}

std::vector<Check> verify_mixture(const JobSpec& job) {
  const double a = job.alpha;
  const StableMixture mix = stable_mixture(uniform_nu(a, job.cutoff), a,
                                           job.cutoff);
  const StieltjesEvaluator G(mix.moments);
  const double y = 2.5 * G.guard_radius() / 1.25;
  const LaplaceLink L = laplace_link_check(mix.moments, y, [a](double z) {
    return closed_form::mixture_uniform_fourier(a, z);
  });
  return {compare("laplace link y=" + label(y), L.lhs, L.rhs, 1e-6)};
}

std::vector<Check> verify_pareto(const JobSpec& job) {
  std::vector<Check> out;
  const ParetoExpansion e = pareto_fourier(job.beta, job.R, job.cutoff);
  if (e.singular.log_branch) {
    Check c;
    c.name = "log-term detection";
    c.discrepancy = std::abs(e.singular.c_log);
    c.pass = c.discrepancy > 0.0;
    c.flag = "integer beta: log coefficient present";
    out.push_back(c);
    return out;
  }
  const DensityModel d = closed_form::pareto_model(job.beta, job.R);
  for (double z : {0.05, 0.1, 0.3}) {
    const cplx s = job.beta * e.evaluate(z).value;
    const auto q = quadrature_fourier(d, z);
    Check c = compare("series vs quadrature z=" + label(z), s, q.value, 0.0);
    c.discrepancy /= std::abs(q.value);
    c.tolerance = 1e-8;
    c.pass = c.discrepancy <= c.tolerance;
    out.push_back(c);
  }
  for (const auto& w : e.warnings) {
    Check c;
    c.name = "warning";
    c.pass = true;
    c.flag = w;
    out.push_back(c);
  }
  return out;
}

std::vector<Check> verify_stable(const JobSpec& job) {
  const StableParams p = stable_params(job);
  const StableLaw law = stable_law(p, job.cutoff);
  const bool expect_stable = p.kind != StableKind::Classical || p.alpha <= 1.0;
  Check c;
  c.name = "membership diagnosis";
  c.discrepancy = law.diagnosis.relative_change;
  c.tolerance = 0.01;
  if (expect_stable) {
    c.pass = law.diagnosis.stable;
  } else {
    c.pass = law.diagnosis.relative_change > 0.1;
    c.flag = "growth unstable under cutoff doubling (expected)";
  }
  return {c};
}

double env_cutoff() {
  const char* s = std::getenv("GPS_CUTOFF");
  if (!s || !*s) return kDefaultCutoff;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (*end != '\0' || !(v > 0.0) || !std::isfinite(v))
    fail(ErrorKind::InvalidArgument,
         std::string("GPS_CUTOFF must be a positive number, got '") + s + "'");
  return v;
}

void emit(const JobSpec& job, const std::string& text) {
  if (job.output.empty())
    std::cout << text;
  else
    write_text_file(job.output, text);
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutsideValidityRegion:
    case ErrorKind::ResonanceError:
    case ErrorKind::InconclusivePrecision:
      return kGuardViolation;
    case ErrorKind::InternalError:
      return kInternal;
    default:
      return kValidation;
  }
}

double default_cutoff() { return env_cutoff(); }

cplx parse_complex(const std::string& s) {
  if (s == "i") return {0.0, 1.0};
  if (s == "-i") return {0.0, -1.0};
  const auto comma = s.find(',');
  auto num = [&s](const std::string& t) {
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || *end != '\0')
      fail(ErrorKind::InvalidArgument, "bad complex number '" + s + "'");
    return v;
  };
  if (comma == std::string::npos) return num(s);
  return {num(s.substr(0, comma)), num(s.substr(comma + 1))};
}

MomentSeries law_moments(const JobSpec& job) {
  const double c = job.cutoff;
  const std::string& law = job.law;
  if (law == "delta0") return MomentSeries::delta0({}, c);
  if (law == "cauchy" || law == "bernoulli") {
    std::vector<std::pair<double, cplx>> v;
    cplx p = 1.0;
    for (int n = 1; n <= static_cast<int>(std::floor(c)); ++n) {
      p *= cplx(0.0, 1.0);
      if (law == "cauchy")
        v.push_back({double(n), p});
      else if (n % 2 == 0)
        v.push_back({double(n), 1.0});
    }
    return MomentSeries::from_values({}, c, v);
  }
  if (law == "semicircle") {
    StableParams p;
    p.alpha = 2.0;
    p.b = 1.0;
    p.kind = StableKind::Free;
    return stable_moments(p, c);
  }
  if (law == "arcsine") return monotone_stable(2.0, 2.0, c);
  if (is_stable_law(law)) return stable_moments(stable_params(job), c);
  if (law == "positive-stable")
    return PositiveStableDensity(job.alpha, c).moments();
  if (law == "mixture-uniform")
    return stable_mixture(uniform_nu(job.alpha, c), job.alpha, c).moments;
  if (law == "mu-br") {
    const cplx b = job.b.empty() ? cplx(1.0) : parse_complex(job.b);
    return moments_from_stieltjes(mu_br(job.alpha, b, job.r, c));
  }
  fail(ErrorKind::InvalidArgument, "unknown law '" + law + "'");
}

json job_to_json(const JobSpec& job) {
  json j;
  j["command"] = job.command;
  j["cutoff"] = job.cutoff;
  if (!job.law.empty()) j["law"] = job.law;
  if (job.command == "expand") j["repr"] = job.repr;
  const bool stable_like = is_stable_law(job.law) || job.law == "mu-br";
  if (stable_like || job.law == "positive-stable" ||
      job.law == "mixture-uniform" || job.law == "supremum" ||
      job.law == "last-passage")
    j["alpha"] = job.alpha;
  if (is_stable_law(job.law)) {
    const cplx b = stable_params(job).b;
    j["b"] = json::array({b.real(), b.imag()});
    j["gamma"] = job.gamma;
  }
  if (job.law == "mu-br") {
    const cplx b = job.b.empty() ? cplx(1.0) : parse_complex(job.b);
    j["b"] = json::array({b.real(), b.imag()});
    j["r"] = job.r;
  }
  if (job.law == "pareto") {
    j["beta"] = job.beta;
    j["R"] = job.R;
  }
  if (job.law == "supremum") {
    j["rho"] = job.rho;
    j["M"] = job.M;
    j["N"] = job.N;
  }
  if (job.law == "last-passage") {
    j["d"] = job.d;
    j["M"] = job.M;
  }
  if (job.command == "density") {
    j["from"] = job.from;
    j["to"] = job.to;
    j["points"] = job.points;
  }
  if (job.command == "convolve") {
    j["kind"] = job.kind;
    j["inputs"] = job.inputs;
  }
  if (job.command == "classify") {
    j["inputs"] = job.inputs;
    j["tested_range"] = job.tested_range;
    j["profile_N"] = job.profile_N;
  }
  return j;
}

json cmd_expand(const JobSpec& job) {
  json j;
  if (job.law == "pareto") {
    if (job.repr != "fourier")
      fail(ErrorKind::InvalidArgument,
           "pareto is expanded only in the fourier representation");
    const ParetoExpansion e = pareto_fourier(job.beta, job.R, job.cutoff);
    j = series_to_json(e.regular, job.law, "fourier");
    j["singular"] = singular_to_json(e.singular);
    j["constant"] = json::array({e.constant.real(), e.constant.imag()});
    j["warnings"] = e.warnings;
  } else if (job.law == "mu-br" && job.repr == "stieltjes") {
    const cplx b = job.b.empty() ? cplx(1.0) : parse_complex(job.b);
    j = series_to_json(mu_br(job.alpha, b, job.r, job.cutoff), job.law,
                       job.repr);
  } else {
    j = series_to_json(representation(law_moments(job), job.repr), job.law,
                       job.repr);
  }
  j["job"] = job_to_json(job);
  return j;
}

DensityTable cmd_density(const JobSpec& job) {
  if (job.points < 1)
    fail(ErrorKind::InvalidArgument, "points must be positive");
  if (!(job.to >= job.from))
    fail(ErrorKind::InvalidArgument, "empty x range");
  std::function<Evaluation(double)> f;
  bool remainder = false;
  if (job.law == "positive-stable") {
    auto p = std::make_shared<PositiveStableDensity>(job.alpha, job.cutoff);
    f = [p](double x) { return (*p)(x); };
  } else if (job.law == "supremum") {
    auto p = std::make_shared<SupremumDensity>(
        SupremumSeriesParams{job.alpha, job.rho, job.M, job.N});
    f = [p](double x) { return (*p)(x); };
    remainder = true;
  } else if (job.law == "last-passage") {
    auto p = std::make_shared<LastPassageDensity>(
        LastPassageParams{job.alpha, job.d, job.M});
    f = [p](double x) { return (*p)(x); };
    remainder = true;
  } else {
    auto t = std::make_shared<TailDensity>(law_moments(job));
    f = [t](double x) { return (*t)(x); };
  }
  DensityTable out;
  out.csv = remainder ? "x,density,tail_bound,remainder,flag\n"
                      : "x,density,tail_bound,flag\n";
  for (int i = 0; i < job.points; ++i) {
    const double x = job.points == 1
                         ? job.from
                         : job.from + (job.to - job.from) * i / (job.points - 1);
    std::string row = fmt(x) + ",";
    try {
      const Evaluation e = f(x);
      row += fmt(e.value.real()) + "," + fmt(e.tail_bound) + ",";
      if (remainder) row += fmt(e.tail_bound) + ",";
      if (e.guard_violated) {
        row += "guard";
        ++out.warnings;
      } else {
        row += "ok";
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutsideValidityRegion) throw;
      row += remainder ? "nan,nan,nan,outside" : "nan,nan,outside";
      ++out.warnings;
    }
    out.csv += row + "\n";
  }
  return out;
}

json cmd_convolve(const JobSpec& job) {
  if (job.inputs.size() != 2)
    fail(ErrorKind::InvalidArgument, "convolve needs two series files");
  const SeriesFile a = series_from_json(read_json_file(job.inputs[0]));
  const SeriesFile b = series_from_json(read_json_file(job.inputs[1]));
  const MomentSeries ma = to_moments(a), mb = to_moments(b);
  MomentSeries r = [&] {
    if (job.kind == "classical") return classical_convolve(ma, mb);
    if (job.kind == "free") return free_convolve(ma, mb);
    if (job.kind == "boolean") return boolean_convolve(ma, mb);
    if (job.kind == "monotone") return monotone_convolve(ma, mb);
    fail(ErrorKind::InvalidArgument, "unknown convolution '" + job.kind + "'");
  }();
  json j = series_to_json(r.series(), a.law + " " + job.kind + " " + b.law,
                          "moments");
  JobSpec echo = job;
  echo.cutoff = r.cutoff();
  j["job"] = job_to_json(echo);
  return j;
}

json cmd_classify(const JobSpec& job) {
  if (job.inputs.size() != 1)
    fail(ErrorKind::InvalidArgument, "classify needs one certificate file");
  const RealCertificate cert =
      certificate_from_json(read_json_file(job.inputs[0]));
  ClassifyParams p;
  p.tested_range = job.tested_range;
  p.profile_N = job.profile_N;
  json j = evidence_to_json(classify(cert, p));
  j["format"] = "gps-evidence";
  j["version"] = kFormatVersion;
  j["certificate"] = cert.name;
  JobSpec echo = job;
  echo.law.clear();
  j["job"] = job_to_json(echo);
  j["job"].erase("cutoff");
  return j;
}

VerifyReport cmd_verify(const JobSpec& job) {
  std::vector<Check> checks;
  if (job.law == "cauchy")
    checks = verify_cauchy(job);
  else if (job.law == "arcsine")
    checks = verify_arcsine(job);
  else if (job.law == "positive-stable")
    checks = verify_positive_stable(job);
  else if (job.law == "mixture-uniform")
    checks = verify_mixture(job);
  else if (job.law == "pareto")
    checks = verify_pareto(job);
  else if (is_stable_law(job.law))
    checks = verify_stable(job);
  else
    fail(ErrorKind::InvalidArgument, "no oracle suite for law '" + job.law + "'");
  VerifyReport r;
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back(check_json(c));
    r.pass = r.pass && c.pass;
  }
  r.report["format"] = "gps-verify";
  r.report["version"] = kFormatVersion;
  r.report["checks"] = list;
  r.report["pass"] = r.pass;
  r.report["job"] = job_to_json(job);
  return r;
}

int run(int argc, char** argv) {
  CLI::App app{"Generalized power series for power-law distributions"};
  app.require_subcommand(1);
  JobSpec job;
  std::optional<double> cutoff;

  auto law_options = [&](CLI::App* c) {
    c->add_option("--law", job.law, "law name")->required();
    c->add_option("--cutoff", cutoff, "exponent cutoff (default GPS_CUTOFF or 20)");
    c->add_option("--alpha", job.alpha, "stability index");
    c->add_option("--b", job.b, "complex scale: re, re,im, i or -i");
    c->add_option("--gamma", job.gamma, "shift");
    c->add_option("--beta", job.beta, "Pareto index");
    c->add_option("--R", job.R, "Pareto scale");
    c->add_option("--r", job.r, "r of mu_br");
    c->add_option("--rho", job.rho, "positivity parameter");
    c->add_option("--d", job.d, "dimension");
    c->add_option("--M", job.M, "truncation order");
    c->add_option("--N", job.N, "truncation order");
    c->add_option("-o,--output", job.output, "output file (default stdout)");
  };

  auto* expand = app.add_subcommand("expand", "write one representation of a law");
  law_options(expand);
  expand->add_option("--repr", job.repr,
                     "moments|fourier|stieltjes|F|voiculescu|tail-density");

  auto* density = app.add_subcommand("density", "tabulate a density as CSV");
  law_options(density);
  density->add_option("--from", job.from);
  density->add_option("--to", job.to);
  density->add_option("--points", job.points);

  auto* convolve = app.add_subcommand("convolve", "convolve two series files");
  convolve->add_option("--kind", job.kind, "classical|free|boolean|monotone");
  convolve->add_option("inputs", job.inputs, "two series files")
      ->required()
      ->expected(2);
  convolve->add_option("-o,--output", job.output);

  auto* cls = app.add_subcommand("classify", "Diophantine evidence for a real");
  cls->add_option("certificate", job.inputs, "certificate file")
      ->required()
      ->expected(1);
  cls->add_option("--tested-range", job.tested_range);
  cls->add_option("--profile-n", job.profile_N);
  cls->add_option("-o,--output", job.output);

  auto* verify = app.add_subcommand("verify", "run the oracle suite for a law");
  law_options(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kValidation;
  }

  try {
    job.cutoff = cutoff ? *cutoff : default_cutoff();
    if (!(job.cutoff > 0.0))
      fail(ErrorKind::InvalidArgument, "cutoff must be positive");
    if (!job.b.empty()) parse_complex(job.b);
    if (expand->parsed()) {
      job.command = "expand";
      emit(job, canonical_dump(cmd_expand(job)));
    } else if (density->parsed()) {
      job.command = "density";
      const DensityTable t = cmd_density(job);
      emit(job, t.csv);
      if (t.warnings > 0)
        std::cerr << "warning: " << t.warnings
                  << " rows outside the validity region\n";
    } else if (convolve->parsed()) {
      job.command = "convolve";
      emit(job, canonical_dump(cmd_convolve(job)));
    } else if (cls->parsed()) {
      job.command = "classify";
      emit(job, canonical_dump(cmd_classify(job)));
    } else if (verify->parsed()) {
      job.command = "verify";
      const VerifyReport r = cmd_verify(job);
      emit(job, canonical_dump(r.report));
      if (!r.pass) return kVerificationFailure;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kSuccess;
}

}  // namespace gps::cli
