#ifndef NMKDV_DATAIO_HPP
#define NMKDV_DATAIO_HPP

// Deterministic text formatting and the CSV / JSON-lines file formats.

#include <string>
#include <vector>

#include "nmkdv_types.hpp"

namespace nmkdv {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// One CSV record: formatted fields joined by commas.
std::string csv_row(const std::vector<double>& values);

// Writes lines verbatim ('\n' appended) to path. Throws IoFailure.
void write_text_file(const std::string& path, const std::vector<std::string>& lines);

std::vector<std::string> read_text_file(const std::string& path);

// Splits a CSV data row; throws IoFailure on parse errors.
std::vector<double> parse_csv_row(const std::string& line);

// '# key = value' metadata header block from caller-prepared lines.
std::vector<std::string> metadata_block(const std::vector<std::string>& entries);

}  // namespace nmkdv

#endif
