#ifndef PANELKIT_DETAIL_STRINGS_HPP
#define PANELKIT_DETAIL_STRINGS_HPP

#include <string>
#include <vector>

namespace panelkit::detail {

std::string trim(const std::string& s);

/// Splits on the separator and trims each piece; empty pieces are dropped.
std::vector<std::string> split_list(const std::string& s, char sep = ',');

/// One CSV record: double-quoted fields may contain commas and doubled
/// quotes; a trailing CR is dropped.
std::vector<std::string> split_csv_line(const std::string& line);

/// Shortest round-trip decimal representation (locale-free).
std::string format_full(double value);

/// Fixed 2-decimal formatting with thousands separators: -1746.96123 ->
/// "-1,746.96". Infinities render as "inf"/"-inf".
std::string format_table_number(double value);

}  // namespace panelkit::detail

#endif
