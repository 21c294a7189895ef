#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "wseries/bigreal.hpp"

namespace wseries {

// Stable machine-readable schema shared by scan / error-curve / probe output:
// one row per grid point, LF line endings, '.' decimal point.
inline constexpr const char* kCsvHeader =
    "x,alpha,series,terms,value,reference,abs_err,rel_err,verdict";

struct CsvRow {
    BigReal x;
    BigReal alpha;
    std::string series;
    int terms = 0;
    std::optional<BigReal> value;
    std::optional<BigReal> reference;
    std::optional<BigReal> abs_err;
    std::optional<BigReal> rel_err;
    std::string verdict;
};

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const CsvRow& row, int digits);

} // namespace wseries
