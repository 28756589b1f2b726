#include "ltfsk/csv.hpp"

#include <cstdio>
#include <fstream>

#include "ltfsk/errors.hpp"

namespace ltfsk {

std::string fmt_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(errc::unreadable_file, "cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.flush()) fail(errc::unreadable_file, "write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        fail(errc::unreadable_file, "cannot rename '" + tmp + "' to '" + path + "'");
}

} // namespace ltfsk
