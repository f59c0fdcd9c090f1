#pragma once

#include <iosfwd>
#include <string>

#include "covarr/array.hpp"

#include <nlohmann/json_fwd.hpp>

namespace covarr {

/// Text format:
///   CA <N> <k> <v>
/// followed by N lines of k space-separated symbols in [0, v). Lines starting
/// with '#' are comments and ignored; a trailing newline is required.
/// write_array followed by read_array reproduces the array bit-exactly.
ArrayMatrix read_array(std::istream& in);
ArrayMatrix read_array_file(const std::string& path);

void write_array(const ArrayMatrix& a, std::ostream& out);
void write_array_file(const ArrayMatrix& a, const std::string& path);

std::string to_ca_text(const ArrayMatrix& a);

/// Coverage report as JSON with keys n, k, v, t, covered, total, ratio,
/// exact, stderr, uncovered.
nlohmann::json report_to_json(const ArrayMatrix& a, const CoverageReport& report);

}  // namespace covarr
