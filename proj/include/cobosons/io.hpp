// io.hpp
// File formats: Schmidt-coefficient input (JSON or single-column CSV),
// observation sets for inference, CSV number formatting and atomic writes.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cobosons/interference.hpp"
#include "cobosons/schmidt.hpp"

namespace cobosons::io {

/// {"lambda": [...]} or a CSV column with header "lambda".
SchmidtDistribution read_lambda_file(const std::filesystem::path& path);
SchmidtDistribution parse_lambda_text(std::string_view text);

/// Comma-separated coefficients, e.g. "0.6,0.3,0.1".
SchmidtDistribution parse_inline_lambdas(std::string_view text);

/// JSON array of {"n1": int, "n2": int, "p": [...]}. n1 is the upper lattice.
std::vector<CountingDistribution> read_observations(const std::filesystem::path& path, const BeamSplitter& bs);
std::vector<CountingDistribution> parse_observations(std::string_view text, const BeamSplitter& bs);

/// Shortest round-trip representation ("%.17g"); "inf" for infinities.
std::string format_number(double value);

/// Writes to a sibling temporary file, then renames over the target.
void write_atomically(const std::filesystem::path& path, std::string_view content);

} // namespace cobosons::io
