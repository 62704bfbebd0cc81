#pragma once

#include <string>

#include <json.hpp>

#include "gps/diophantine.hpp"
#include "gps/gpseries.hpp"

namespace gps {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// One object per file, keys sorted, doubles printed with %.17g.
std::string canonical_dump(const json& j);

/// Series record: header (format, version, law, representation), semigroup
/// generators, cutoff, layout fields and one term per nonzero coefficient.
json series_to_json(const GenSeries& f, const std::string& law,
                    const std::string& representation);

struct SeriesFile {
  std::string law;
  std::string representation;
  GenSeries series;
};

/// Throws invalid-argument on a missing field, unknown format or version.
SeriesFile series_from_json(const json& j);

/// Big integers are stored as decimal strings.
json certificate_to_json(const RealCertificate& cert);
RealCertificate certificate_from_json(const json& j);

json evidence_to_json(const DiophantineEvidence& e);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gps
