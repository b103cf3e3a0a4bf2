#pragma once

#include <string>

#include "json.hpp"

namespace torussym {

/// Serializes with a fixed field order and doubles printed as %.17g, so
/// identical inputs always produce byte-identical text and every double
/// survives a parse round trip bit-exactly.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

/// Write-temp-then-rename so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

/// FNV-1a over the raw bytes, hex-encoded; used to fingerprint configs.
std::string content_hash(const std::string& text);

}  // namespace torussym
