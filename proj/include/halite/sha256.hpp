#pragma once

#include <cstdint>
#include <string>

namespace halite {

// FIPS 180-4 SHA-256, returned as a lowercase hex string. Used to fingerprint
// input datasets in run metadata so scenario diffs can refuse mismatched runs.
std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(const std::string& data);
std::string sha256_file_hex(const std::string& path);

}  // namespace halite
