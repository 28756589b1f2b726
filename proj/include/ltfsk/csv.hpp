#ifndef LTFSK_CSV_HPP
#define LTFSK_CSV_HPP

#include <string>

namespace ltfsk {

// Fixed numeric formatting for all CSV output: 6 significant digits.
std::string fmt_g6(double v);

// Writes content to path atomically (temp file in the same directory, then
// rename), so readers never observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace ltfsk

#endif
