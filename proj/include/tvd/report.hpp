#pragma once

#include <json.hpp>
#include <string>

#include "tvd/certify.hpp"
#include "tvd/spectral.hpp"
#include "tvd/subspace.hpp"

namespace tvd {

nlohmann::json to_json(const SpectrumReport& rep);
std::string to_csv(const SpectrumReport& rep);
nlohmann::json to_json(const ConvergenceCertificate& cert);
nlohmann::json to_json(const SchemeSample& sample);
nlohmann::json to_json(const SupportGrowth& growth);
nlohmann::json to_json(const SectorReport& rep);
nlohmann::json to_json(const VerificationReport& rep);

/// Writes via a temp file in the target directory followed by a rename, so
/// readers never observe a partial file. An empty path writes to stdout.
void write_output(const std::string& path, const std::string& contents);

}  // namespace tvd
