#include "zne/csv.h"

#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace zne {

std::string format_double(double v) {
    char buf[32];
    for (int precision = 15; precision <= 17; precision++) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

namespace {

template <class Rows>
bool any_error(const Rows &rows) {
    for (const auto &r : rows) {
        if (!r.error.empty()) {
            return true;
        }
    }
    return false;
}

std::string quote(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_grid_csv(std::ostream &out, const GridResult &grid) {
    const bool errors = any_error(grid.rows);
    out << "family,n,lambda,cn,ratio" << (errors ? ",error" : "") << "\n";
    for (const auto &r : grid.rows) {
        out << to_string(r.family) << ',' << r.n << ',' << format_double(r.lambda) << ',';
        if (r.error.empty()) {
            out << format_double(r.cn) << ',' << format_double(r.ratio);
        } else {
            out << ',';
        }
        if (errors) {
            out << ',' << (r.error.empty() ? "" : quote(r.error));
        }
        out << "\n";
    }
}

void write_bias_csv(std::ostream &out, const std::vector<BiasRow> &rows, bool fake_square) {
    const bool errors = any_error(rows);
    out << "family,n,lambda,axis_name,axis_value,abs_bias,abs_bias_unmitigated";
    if (fake_square) {
        out << ",abs_bias_fake_square";
    }
    out << (errors ? ",error" : "") << "\n";
    for (const auto &r : rows) {
        out << to_string(r.family) << ',' << r.n << ',' << format_double(r.lambda) << ',' << to_string(r.axis) << ','
            << format_double(r.axis_value) << ',';
        if (r.error.empty()) {
            out << format_double(r.abs_bias) << ',' << format_double(r.abs_bias_unmitigated);
        } else {
            out << ',';
        }
        if (fake_square) {
            out << ',' << (r.abs_bias_fake_square ? format_double(*r.abs_bias_fake_square) : "");
        }
        if (errors) {
            out << ',' << (r.error.empty() ? "" : quote(r.error));
        }
        out << "\n";
    }
}

void write_verify_csv(std::ostream &out, const std::vector<VerifyRow> &rows) {
    out << "check,n,lambda,pass,max_residual\n";
    for (const auto &r : rows) {
        out << r.check << ',' << r.n << ',' << (r.lambda ? format_double(*r.lambda) : "") << ','
            << (r.pass ? "true" : "false") << ',' << format_double(r.max_residual) << "\n";
    }
}

}  // namespace zne
