#ifndef GFDM_CSV_HPP
#define GFDM_CSV_HPP

#include <ostream>
#include <string>
#include <vector>

#include "gfdm/types.hpp"

namespace gfdm::csv {

/// CSV with '#'-prefixed metadata header lines, shared by all file outputs.
class Writer {
  public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void comment(const std::string& line);
    void meta(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

    static std::string num(double v, int precision = 12);
    static std::string fixed(double v, int decimals);

  private:
    std::ostream& out_;
};

/// One complex value per row: index, re, im.
void write_complex_vector(std::ostream& out, const CVec& v, const std::vector<std::string>& meta_lines);

}  // namespace gfdm::csv

#endif
