#include "gps/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gps/error.hpp"

namespace gps {

namespace {

constexpr const char* kSeriesFormat = "gps-series";
constexpr const char* kCertificateFormat = "gps-certificate";

void emit(const json& j, int depth, std::string& out) {
  const std::string pad(2 * depth + 2, ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) {
        return !e.is_structured();
      });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(e, depth + 1, out);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      // -0 prints as 0
      const double v = j.get<double>() + 0.0;
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s = buf;
      // keep it a float on reading
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump();
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorKind::InvalidArgument, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument,
         std::string("field '") + key + "': " + e.what());
  }
}

mpz_class to_mpz(const json& j, const char* what) {
  if (!j.is_string())
    fail(ErrorKind::InvalidArgument,
         std::string(what) + " must be a decimal string");
  mpz_class z;
  if (z.set_str(j.get<std::string>(), 10) != 0)
    fail(ErrorKind::InvalidArgument,
         std::string(what) + " is not an integer: " + j.get<std::string>());
  return z;
}

json mpz_list(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(z.get_str());
  return a;
}

std::vector<mpz_class> mpz_list(const json& j, const char* what) {
  if (!j.is_array())
    fail(ErrorKind::InvalidArgument, std::string(what) + " must be an array");
  std::vector<mpz_class> out;
  for (const auto& e : j) out.push_back(to_mpz(e, what));
  return out;
}

void check_header(const json& j, const char* format) {
  if (get<std::string>(j, "format") != format)
    fail(ErrorKind::InvalidArgument,
         std::string("expected format '") + format + "'");
  if (get<int>(j, "version") != kFormatVersion)
    fail(ErrorKind::InvalidArgument, "unsupported format version");
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::string out;
  emit(j, 0, out);
  out += "\n";
  return out;
}

json series_to_json(const GenSeries& f, const std::string& law,
                    const std::string& representation) {
  json j;
  j["format"] = kSeriesFormat;
  j["version"] = kFormatVersion;
  j["law"] = law;
  j["representation"] = representation;
  json gens = json::array();
  for (double g : f.spec().generators()) gens.push_back(g);
  j["generators"] = gens;
  j["cutoff"] = f.cutoff();
  j["variable"] = f.variable() == Variable::Ascending ? "ascending" : "descending";
  j["normalization"] = f.normalization() == Normalization::Raw ? "raw" : "gamma";
  j["shift"] = f.shift();
  j["truncated"] = f.truncated();
  json terms = json::array();
  for (const auto& t : f.terms()) {
    json r;
    r["index"] = t.representative->counts;
    r["exponent"] = t.exponent;
    r["re"] = t.coefficient.real();
    r["im"] = t.coefficient.imag();
    terms.push_back(r);
  }
  j["terms"] = terms;
  return j;
}

SeriesFile series_from_json(const json& j) {
  check_header(j, kSeriesFormat);
  const auto gens = get<std::vector<double>>(j, "generators");
  if (gens.empty() || gens[0] != 1.0)
    fail(ErrorKind::InvalidArgument, "generators must start with 1");
  const SemigroupSpec spec(std::vector<double>(gens.begin() + 1, gens.end()));
  const double cutoff = get<double>(j, "cutoff");
  const auto var = get<std::string>(j, "variable");
  const auto norm = get<std::string>(j, "normalization");
  if (var != "ascending" && var != "descending")
    fail(ErrorKind::InvalidArgument, "unknown variable '" + var + "'");
  if (norm != "raw" && norm != "gamma")
    fail(ErrorKind::InvalidArgument, "unknown normalization '" + norm + "'");
  const TablePtr table = exponent_table(spec, cutoff);
  std::vector<cplx> dense(table->size());
  for (const auto& t : field(j, "terms")) {
    const double e = get<double>(t, "exponent");
    const auto at = table->find(e);
    if (!at)
      fail(ErrorKind::InvalidArgument,
           "exponent " + std::to_string(e) + " is not in the semigroup");
    dense[*at] = {get<double>(t, "re"), get<double>(t, "im")};
  }
  GenSeries s(table,
              var == "ascending" ? Variable::Ascending : Variable::Descending,
              norm == "raw" ? Normalization::Raw : Normalization::Gamma,
              get<int>(j, "shift"), std::move(dense),
              j.value("truncated", false));
  return {get<std::string>(j, "law"), get<std::string>(j, "representation"),
          std::move(s)};
}

json certificate_to_json(const RealCertificate& c) {
  json j;
  j["format"] = kCertificateFormat;
  j["version"] = kFormatVersion;
  j["name"] = c.name;
  switch (c.kind) {
    case RealCertificate::Kind::Rational:
      j["kind"] = "rational";
      j["p"] = c.p.get_str();
      j["q"] = c.q.get_str();
      break;
    case RealCertificate::Kind::Quadratic:
      j["kind"] = "quadratic";
      j["a"] = c.qa.get_str();
      j["b"] = c.qb.get_str();
      j["c"] = c.qc.get_str();
      j["D"] = c.qD.get_str();
      break;
    case RealCertificate::Kind::ContinuedFraction: {
      j["kind"] = "continued_fraction";
      j["prefix"] = mpz_list(c.prefix);
      json t;
      switch (c.tail.type) {
        case TailRule::Type::None:
          t["type"] = "none";
          break;
        case TailRule::Type::Periodic:
          t["type"] = "periodic";
          t["period"] = mpz_list(c.tail.period);
          break;
        case TailRule::Type::Liouville:
          t["type"] = "liouville";
          t["power"] = c.tail.power;
          t["base"] = c.tail.base;
          t["growth"] = c.tail.growth;
          break;
      }
      j["tail"] = t;
      j["mobius"] = mpz_list({c.mobius.a, c.mobius.b, c.mobius.c, c.mobius.d});
      break;
    }
    case RealCertificate::Kind::Float:
      j["kind"] = "float";
      j["value"] = c.value;
      j["digits"] = c.digits;
      break;
  }
  return j;
}

RealCertificate certificate_from_json(const json& j) {
  check_header(j, kCertificateFormat);
  const auto kind = get<std::string>(j, "kind");
  RealCertificate c;
  if (kind == "rational") {
    c = RealCertificate::rational(to_mpz(field(j, "p"), "p"),
                                  to_mpz(field(j, "q"), "q"));
  } else if (kind == "quadratic") {
    c = RealCertificate::quadratic(
        to_mpz(field(j, "a"), "a"), to_mpz(field(j, "b"), "b"),
        to_mpz(field(j, "D"), "D"), to_mpz(field(j, "c"), "c"));
  } else if (kind == "continued_fraction") {
    TailRule tail;
    if (j.contains("tail")) {
      const json& t = j.at("tail");
      const auto type = get<std::string>(t, "type");
      if (type == "none") {
        tail.type = TailRule::Type::None;
      } else if (type == "periodic") {
        tail.type = TailRule::Type::Periodic;
        tail.period = mpz_list(field(t, "period"), "period");
      } else if (type == "liouville") {
        tail.type = TailRule::Type::Liouville;
        tail.power = get<unsigned>(t, "power");
        tail.base = get<unsigned>(t, "base");
        tail.growth = get<unsigned>(t, "growth");
      } else {
        fail(ErrorKind::InvalidArgument, "unknown tail type '" + type + "'");
      }
    }
    Mobius m;
    if (j.contains("mobius")) {
      const auto v = mpz_list(j.at("mobius"), "mobius");
      if (v.size() != 4)
        fail(ErrorKind::InvalidArgument, "mobius needs four entries");
      m = {v[0], v[1], v[2], v[3]};
    }
    c = RealCertificate::continued_fraction(
        mpz_list(field(j, "prefix"), "prefix"), std::move(tail), m);
  } else if (kind == "float") {
    c = RealCertificate::floating(get<double>(j, "value"),
                                  get<int>(j, "digits"));
  } else {
    fail(ErrorKind::InvalidArgument, "unknown certificate kind '" + kind + "'");
  }
  c.name = j.value("name", std::string{});
  c.validate();
  return c;
}

json evidence_to_json(const DiophantineEvidence& e) {
  json j;
  j["verdict"] = std::string(to_string(e.verdict));
  j["symbolic"] = e.symbolic;
  j["reason"] = e.reason;
  j["tested_range"] = e.tested_range;
  j["profile_N"] = e.profile_N;
  j["profile_max_per_n"] = e.profile_max_per_n;
  j["profile_max_per_log_n"] = e.profile_max_per_log_n;
  json w = json::array();
  for (const auto& x : e.witnesses) {
    json r;
    r["q"] = x.q.get_str();
    r["log_dist"] = x.log_dist;
    r["implied_b"] = x.implied_b;
    r["implied_A"] = x.implied_A;
    w.push_back(r);
  }
  j["witnesses"] = w;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorKind::InvalidArgument, "write failed for " + path);
}

}  // namespace gps
