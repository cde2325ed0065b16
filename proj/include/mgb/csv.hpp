#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mgb::csv {

/// 17 significant digits (round-trip exact); "inf", "-inf" and "nan" for
/// non-finite values.
std::string format_double(double value);

/// RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string escape(const std::string& field);

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

}  // namespace mgb::csv
