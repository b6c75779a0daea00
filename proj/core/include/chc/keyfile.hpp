#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "chc/cipher.hpp"
#include "chc/ecc.hpp"

namespace chc {

// Key files are plain text, one "name = value" per line; blank lines and
// lines starting with '#' are ignored.  Duplicate or unknown names are
// rejected (KeyFileError), as are missing required names and unparsable
// values.
std::map<std::string, std::string> parse_key_value_text(const std::string& text);

// Required: a b c e1 e2 k m x0 y0 z0 w0   (k is the feedback gain).
// Optional: dt (default 0.002), transient (default 1000).
ChaosKey parse_chaos_key(const std::string& text);

// Required: a b p G.x G.y y k P_B.x P_B.y.  Curve and points are validated;
// P_B must equal y * G.
EccKeyMaterial parse_ecc_key(const std::string& text);

ChaosKey load_chaos_key_file(const std::filesystem::path& path);
EccKeyMaterial load_ecc_key_file(const std::filesystem::path& path);

// Inverses of the parsers, emitting every field.
std::string format_chaos_key(const ChaosKey& key);
std::string format_ecc_key(const EccKeyMaterial& ecc);

}  // namespace chc
