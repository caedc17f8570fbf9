#ifndef CHADKG_CSV_HPP
#define CHADKG_CSV_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chadkg::csv {

class CsvError : public std::runtime_error {
public:
    explicit CsvError(const std::string& msg) : std::runtime_error(msg) {}
};

/// RFC 4180 record reader: quoted fields may contain commas, quotes
/// (doubled) and newlines; CRLF and LF both accepted. Returns raw fields,
/// no trimming. A trailing newline does not produce an empty record.
std::vector<std::vector<std::string>> read_records(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace chadkg::csv

#endif
