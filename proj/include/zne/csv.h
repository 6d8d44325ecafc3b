#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zne/analysis.h"

namespace zne {

/// Shortest text that parses back to the same double.
std::string format_double(double v);

/// family,n,lambda,cn,ratio[,error]
void write_grid_csv(std::ostream &out, const GridResult &grid);

/// family,n,lambda,axis_name,axis_value,abs_bias,abs_bias_unmitigated[,abs_bias_fake_square][,error]
void write_bias_csv(std::ostream &out, const std::vector<BiasRow> &rows, bool fake_square);

struct VerifyRow {
    std::string check;  // omega | stationarity | optimality
    size_t n = 0;
    std::optional<double> lambda;
    bool pass = false;
    double max_residual = 0.0;
};

/// check,n,lambda,pass,max_residual
void write_verify_csv(std::ostream &out, const std::vector<VerifyRow> &rows);

}  // namespace zne
