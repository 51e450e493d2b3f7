#pragma once

#include <cstdint>
#include <string>

namespace gforge {

// FIPS 180-4 SHA-256, hex digest. Used to fingerprint presentations and
// reports; not a security boundary.
std::string sha256_hex(const std::string& data);

}  // namespace gforge
