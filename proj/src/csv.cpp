#include "gfdm/csv.hpp"

#include <cmath>
#include <cstdio>

namespace gfdm::csv {

void Writer::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void Writer::meta(const std::string& key, const std::string& value) {
    out_ << "# " << key << "=" << value << "\n";
}

void Writer::header(const std::vector<std::string>& columns) { row(columns); }

void Writer::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ",";
        out_ << cells[i];
    }
    out_ << "\n";
}

std::string Writer::num(double v, int precision) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

std::string Writer::fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

void write_complex_vector(std::ostream& out, const CVec& v, const std::vector<std::string>& meta_lines) {
    Writer w(out);
    for (const auto& line : meta_lines) w.comment(line);
    w.header({"index", "re", "im"});
    for (int i = 0; i < v.size(); ++i) {
        w.row({std::to_string(i), Writer::num(v[i].real()), Writer::num(v[i].imag())});
    }
}

}  // namespace gfdm::csv
