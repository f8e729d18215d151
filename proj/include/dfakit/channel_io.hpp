#pragma once

#include "dfakit/channel.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace dfakit {

/// Malformed channel file: bad JSON, wrong schema, or non-finite entries.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Channel file layout:
///   {"dim": n, "kraus": [{"re": [[...]], "im": [[...]]}, ...]}
/// with row-major matrices and floats printed to 17 significant digits, so a
/// read-write cycle reproduces the file byte for byte.
std::string format_channel(const KrausChannel& ch);
KrausChannel parse_channel(const std::string& text);

KrausChannel read_channel(const std::filesystem::path& path);
void write_channel(const std::filesystem::path& path, const KrausChannel& ch);

}  // namespace dfakit
