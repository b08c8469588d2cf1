#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sympath/cijt.hpp"
#include "sympath/config.hpp"
#include "sympath/index.hpp"
#include "sympath/verify.hpp"

namespace sympath {

// FNV-1a 64-bit hash, used to stamp reports with their inputs.
std::uint64_t fnv1a64(const std::string& data);

// Current UTC time, e.g. "2024-05-01T12:00:00Z".  Reports carry it in a
// dedicated field so determinism comparisons can drop it.
std::string iso8601_utc_now();

// CSV with header k,m,i,nu,mu_minus,mu_plus,mean (k = 1-based path number).
std::string index_records_to_csv(const std::vector<std::pair<int, IndexRecord>>& rows);

std::string cert_to_json_text(const JumpCertificate& cert, int indent = 2);
// Throws ValidationError on malformed input.
JumpCertificate cert_from_json_text(const std::string& text);

// Full report serialization.  The provenance block embeds the tool version,
// the given input hash and seed, the resolved configuration, and the
// timestamp field "generated_at".
std::string report_to_json_text(const VerificationReport& rep, const Config& cfg,
                                std::uint64_t input_hash, int indent = 2);
std::string report_to_table(const VerificationReport& rep);

} // namespace sympath
