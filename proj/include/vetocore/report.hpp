#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vetocore/core.hpp"
#include "vetocore/distortion.hpp"
#include "vetocore/flow_verify.hpp"
#include "vetocore/generators.hpp"
#include "vetocore/minority.hpp"
#include "vetocore/veto.hpp"

namespace vetocore {

// nlohmann::json keeps object keys in a std::map, so every report is emitted
// with sorted keys. Candidate and voter ids in reports are 0-based.
using Json = nlohmann::json;

Json to_json(const CoreCertificate& cert);
Json to_json(const Protection& p);
Json to_json(const DistanceAssignment& x);
Json to_json(const DistortionResult& r);
Json to_json(const FlowCostReport& report, int k);
Json to_json(const VetoTrace& trace);
/// Sidecar for generated instances: family, witness and expectations.
Json witness_sidecar(const NamedInstance& inst);

/// Reads back a witness matrix of "p/q" strings.
DistanceAssignment assignment_from_json(const Json& j);
/// Reads back a certificate emitted by to_json(CoreCertificate).
CoreCertificate certificate_from_json(const Json& j);

/// Two-space indented JSON plus a trailing newline.
std::string serialize_report(const Json& report);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string input_digest(std::string_view bytes);

}  // namespace vetocore
