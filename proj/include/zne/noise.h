#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace zne {

/// E(x) = e^{-lambda0 x}, zero-noise value 1.
struct Markovian {
    double lambda0;
};

/// Single qubit depolarized at rate (1-eta) lambda0 x while coupled to an
/// environment qubit with strength eta lambda0 x. Zero-noise value cos(2).
struct NonMarkovian {
    double eta;
    double lambda0;
};

/// Measured curve; linear interpolation inside the sampled range only.
struct Tabulated {
    std::vector<std::pair<double, double>> samples;  // (x, E), strictly increasing in x
};

class NoiseModel {
public:
    using Kind = std::variant<Markovian, NonMarkovian, Tabulated>;

    static NoiseModel markovian(double lambda0);
    static NoiseModel non_markovian(double eta, double lambda0);
    static NoiseModel tabulated(std::vector<std::pair<double, double>> samples,
                                std::optional<double> e_star = std::nullopt);

    const Kind &kind() const { return kind_; }
    std::optional<double> e_star() const { return e_star_; }
    std::string describe() const;

private:
    NoiseModel(Kind kind, std::optional<double> e_star) : kind_(std::move(kind)), e_star_(e_star) {}

    Kind kind_;
    std::optional<double> e_star_;
};

/// Noisy expectation value at amplification x >= 0.
double evaluate(const NoiseModel &model, double x);

/// Closed form of the two-qubit toy model observed at time tau, as a function of the
/// total noise strength lambda = lambda0 x. Accepts any real lambda, which is what
/// makes the eta = 1 even symmetry testable.
double non_markovian_closed_form(double eta, double lambda, double tau = 1.0);

/// Reads a two-column CSV (x,E) with a header row.
NoiseModel load_tabulated_csv(std::istream &in, std::optional<double> e_star = std::nullopt);
NoiseModel load_tabulated_csv(const std::string &path, std::optional<double> e_star = std::nullopt);

struct OracleTrace {
    double value = 0.0;
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    size_t accepted_steps = 0;
    size_t rejected_steps = 0;
};

/// Integrates the 4x4 master equation of the toy model behind NonMarkovian and
/// returns tr(rho(tau) X(x)I). Independent of non_markovian_closed_form.
OracleTrace integrate_two_qubit_model(double eta, double lambda0, double x, double tau = 1.0);

double ode_oracle_nonmarkovian(double eta, double lambda0, double x, double tau = 1.0);

}  // namespace zne
