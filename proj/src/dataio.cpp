#include "dataio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nmkdv {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_row(const std::vector<double>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(',');
    out += format_double(values[i]);
  }
  return out;
}

void write_text_file(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream os(path, std::ios::binary);
  require(bool(os), Errc::io_failure, "cannot open for writing: " + path);
  for (const auto& line : lines) {
    os << line << '\n';
  }
  os.flush();
  require(bool(os), Errc::io_failure, "write failed: " + path);
}

std::vector<std::string> read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(bool(is), Errc::io_failure, "cannot open for reading: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> out;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    const char* field_end = p;
    while (field_end < end && *field_end != ',') ++field_end;
    double v = 0.0;
    auto res = std::from_chars(p, field_end, v);
    require(res.ec == std::errc() && res.ptr == field_end, Errc::io_failure,
            "bad CSV number: " + std::string(p, field_end));
    out.push_back(v);
    p = field_end + 1;
    if (field_end == end) break;
  }
  return out;
}

std::vector<std::string> metadata_block(const std::vector<std::string>& entries) {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back("# " + e);
  return out;
}

}  // namespace nmkdv
