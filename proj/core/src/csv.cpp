#include "qtpm/csv.hpp"

#include "qtpm/errors.hpp"

#include <cstdio>
#include <fstream>

namespace qtpm::io {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x00000100000001B3ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return std::string(buf);
}

std::string format_value(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return std::string(buf);
}

std::string render(const CsvTable& table) {
    std::string out;
    for (const auto& line : table.meta) {
        out += "# ";
        out += line;
        out += '\n';
    }
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j > 0) out += ',';
        out += table.header[j];
    }
    if (!table.header.empty()) out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw CheckFailed("csv row width does not match header");
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out += ',';
            out += format_value(row[j]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const CsvTable& table, const std::string& path) {
    const std::string text = render(table);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp + " for writing");
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f) throw IoError("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot move " + tmp + " into place");
    }
}

} // namespace qtpm::io
