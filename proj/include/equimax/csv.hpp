#pragma once

// Data ingestion: one numeric value per line, optional single header line
// "value". Anything non-numeric or non-positive aborts with the offending
// line number; silently dropping bad rows would bias the test.

#include <charconv>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace equimax {

class IngestError : public std::runtime_error {
  public:
    IngestError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

inline std::vector<double> read_value_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // trim whitespace and a trailing CR from DOS files
        std::size_t b = line.find_first_not_of(" \t\r");
        std::size_t e = line.find_last_not_of(" \t\r");
        if (b == std::string::npos) {
            continue;  // blank line
        }
        const std::string_view field(line.data() + b, e - b + 1);
        if (line_no == 1 && field == "value") {
            continue;
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size()) {
            throw IngestError(line_no, "not a number: '" + std::string(field) + "'");
        }
        if (!(v > 0.0)) {
            throw IngestError(line_no, "values must be strictly positive, got " + std::string(field));
        }
        values.push_back(v);
    }
    return values;
}

}  // namespace equimax
