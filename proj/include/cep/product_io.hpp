#pragma once

#include <filesystem>
#include <string>

#include "cep/termsheet.hpp"

namespace cep {

/// Parse a product document (JSON, UTF-8). Amount fields must be decimal
/// strings; dates are ISO-8601. Unknown top-level fields are preserved in
/// LinkedProduct::extra_fields. Throws ParseError with position information
/// on malformed input.
LinkedProduct parse_product(const std::string& text);

LinkedProduct load_product(const std::filesystem::path& file);

/// Canonical serialization: fixed key order, dates ISO-8601, amounts as
/// decimal strings without exponent, sorted labels and extras, 2-space
/// indent, trailing newline. parse(serialize(p)) == p and the output is
/// byte-stable across runs.
std::string serialize_product(const LinkedProduct& p);

}  // namespace cep
