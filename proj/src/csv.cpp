#include "wseries/csv.hpp"

namespace wseries {

namespace {

void put(std::ostream& os, const std::optional<BigReal>& v, int digits) {
    if (v) os << v->to_string(digits);
}

} // namespace

void write_csv_header(std::ostream& os) { os << kCsvHeader << "\n"; }

void write_csv_row(std::ostream& os, const CsvRow& row, int digits) {
    os << row.x.to_string(digits) << ',' << row.alpha.to_string(digits) << ','
       << row.series << ',' << row.terms << ',';
    put(os, row.value, digits);
    os << ',';
    put(os, row.reference, digits);
    os << ',';
    put(os, row.abs_err, digits);
    os << ',';
    put(os, row.rel_err, digits);
    os << ',' << row.verdict << "\n";
}

} // namespace wseries
