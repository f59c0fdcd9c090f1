#include "covarr/array_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace covarr {

namespace {

[[noreturn]] void parse_fail(uint64_t line, const std::string& reason) {
  fail(Errc::parse_error, "line " + std::to_string(line) + ": " + reason);
}

}  // namespace

ArrayMatrix read_array(std::istream& in) {
  std::string line;
  uint64_t line_no = 0;
  uint64_t n = 0, k = 0, v = 0;
  bool have_header = false;
  std::vector<uint32_t> data;
  uint64_t rows_read = 0;
  bool last_had_newline = true;

  while (std::getline(in, line)) {
    ++line_no;
    last_had_newline = !in.eof();
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string magic;
      fields >> magic;
      if (magic != "CA") parse_fail(line_no, "expected 'CA <N> <k> <v>' header");
      if (!(fields >> n >> k >> v)) parse_fail(line_no, "malformed header");
      std::string extra;
      if (fields >> extra) parse_fail(line_no, "trailing tokens after header");
      if (n < 1 || k < 1) parse_fail(line_no, "dimensions must be positive");
      if (v < 2) parse_fail(line_no, "alphabet size must be >= 2");
      have_header = true;
      data.reserve(n * k);
      continue;
    }
    if (rows_read == n) parse_fail(line_no, "more rows than the header declares");
    uint64_t count = 0;
    int64_t s = 0;
    while (fields >> s) {
      if (s < 0 || static_cast<uint64_t>(s) >= v)
        parse_fail(line_no, "symbol " + std::to_string(s) + " out of range [0, " +
                                std::to_string(v) + ")");
      data.push_back(static_cast<uint32_t>(s));
      ++count;
    }
    if (!fields.eof()) parse_fail(line_no, "non-numeric symbol");
    if (count != k)
      parse_fail(line_no, "row has " + std::to_string(count) + " symbols, expected " +
                              std::to_string(k));
    ++rows_read;
  }
  if (!have_header) parse_fail(line_no, "missing 'CA' header");
  if (rows_read != n)
    parse_fail(line_no, "got " + std::to_string(rows_read) + " rows, header declares " +
                            std::to_string(n));
  if (!last_had_newline) parse_fail(line_no, "missing trailing newline");
  return {static_cast<uint32_t>(n), static_cast<uint32_t>(k), static_cast<uint32_t>(v),
          std::move(data)};
}

ArrayMatrix read_array_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  return read_array(in);
}

void write_array(const ArrayMatrix& a, std::ostream& out) {
  out << "CA " << a.rows() << ' ' << a.cols() << ' ' << a.alphabet() << '\n';
  for (uint32_t r = 0; r < a.rows(); ++r) {
    for (uint32_t c = 0; c < a.cols(); ++c) {
      if (c) out << ' ';
      out << a.at(r, c);
    }
    out << '\n';
  }
}

void write_array_file(const ArrayMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
  write_array(a, out);
  if (!out) fail(Errc::io_error, "write to " + path + " failed");
}

std::string to_ca_text(const ArrayMatrix& a) {
  std::ostringstream os;
  write_array(a, os);
  return os.str();
}

nlohmann::json report_to_json(const ArrayMatrix& a, const CoverageReport& report) {
  nlohmann::json j;
  j["n"] = a.rows();
  j["k"] = a.cols();
  j["v"] = a.alphabet();
  j["t"] = report.t;
  j["covered"] = report.covered;
  if (report.total <= BigInt(~uint64_t{0}))
    j["total"] = report.total.convert_to<uint64_t>();
  else
    j["total"] = report.total.str();
  j["ratio"] = report.ratio;
  j["exact"] = report.exact;
  j["stderr"] = report.stderr_;
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : report.uncovered) witnesses.push_back(w.indices);
  j["uncovered"] = witnesses;
  return j;
}

}  // namespace covarr
