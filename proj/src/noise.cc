#include "zne/noise.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>

#include "zne/dopri5.h"
#include "zne/error.h"

namespace zne {

NoiseModel NoiseModel::markovian(double lambda0) {
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
        throw Error(ErrorKind::kInvalidParameter, "lambda0 must be finite and > 0");
    }
    return NoiseModel(Markovian{lambda0}, 1.0);
}

NoiseModel NoiseModel::non_markovian(double eta, double lambda0) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorKind::kInvalidParameter, "eta must lie in [0, 1]");
    }
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
        throw Error(ErrorKind::kInvalidParameter, "lambda0 must be finite and > 0");
    }
    return NoiseModel(NonMarkovian{eta, lambda0}, std::cos(2.0));
}

NoiseModel NoiseModel::tabulated(std::vector<std::pair<double, double>> samples, std::optional<double> e_star) {
    if (samples.size() < 2) {
        throw Error(ErrorKind::kInvalidParameter, "a tabulated curve needs at least two samples");
    }
    for (size_t i = 0; i < samples.size(); i++) {
        if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second)) {
            throw Error(ErrorKind::kInvalidParameter, "tabulated sample " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(samples[i].first > samples[i - 1].first)) {
            throw Error(ErrorKind::kInvalidParameter, "tabulated x values must be strictly increasing");
        }
    }
    return NoiseModel(Tabulated{std::move(samples)}, e_star);
}

std::string NoiseModel::describe() const {
    std::ostringstream out;
    out.precision(17);
    if (auto *m = std::get_if<Markovian>(&kind_)) {
        out << "markovian(lambda0=" << m->lambda0 << ")";
    } else if (auto *nm = std::get_if<NonMarkovian>(&kind_)) {
        out << "nonmarkovian(eta=" << nm->eta << ",lambda0=" << nm->lambda0 << ")";
    } else {
        out << "table(" << std::get<Tabulated>(kind_).samples.size() << " samples)";
    }
    return out.str();
}

double non_markovian_closed_form(double eta, double lambda, double tau) {
    const double coupling = eta * lambda;
    const double omega = std::sqrt(4.0 + coupling * coupling);
    return std::exp(-(1.0 - eta) * lambda * tau) *
           (std::cos(tau * coupling) * std::cos(tau * omega) +
            coupling / omega * std::sin(tau * coupling) * std::sin(tau * omega));
}

double evaluate(const NoiseModel &model, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw Error(ErrorKind::kInvalidParameter, "amplification factor must be finite and >= 0");
    }
    const auto &kind = model.kind();
    if (auto *m = std::get_if<Markovian>(&kind)) {
        return std::exp(-m->lambda0 * x);
    }
    if (auto *nm = std::get_if<NonMarkovian>(&kind)) {
        return non_markovian_closed_form(nm->eta, nm->lambda0 * x);
    }
    const auto &samples = std::get<Tabulated>(kind).samples;
    if (x < samples.front().first || x > samples.back().first) {
        throw Error(ErrorKind::kExtrapolationRefused, "x = " + std::to_string(x) + " outside the tabulated range");
    }
    auto hi = std::lower_bound(samples.begin(), samples.end(), x,
                               [](const std::pair<double, double> &s, double v) { return s.first < v; });
    if (hi->first == x) {
        return hi->second;
    }
    auto lo = hi - 1;
    double t = (x - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
}

NoiseModel load_tabulated_csv(std::istream &in, std::optional<double> e_star) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::kInvalidParameter, "table is empty");
    }
    std::vector<std::pair<double, double>> samples;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorKind::kInvalidParameter, "table line " + std::to_string(line_no) + " needs two columns");
        }
        try {
            size_t used = 0;
            std::string xs = line.substr(0, comma);
            std::string es = line.substr(comma + 1);
            double x = std::stod(xs, &used);
            double e = std::stod(es, &used);
            samples.emplace_back(x, e);
        } catch (const std::logic_error &) {
            throw Error(ErrorKind::kInvalidParameter, "table line " + std::to_string(line_no) + " is not numeric");
        }
    }
    return NoiseModel::tabulated(std::move(samples), e_star);
}

NoiseModel load_tabulated_csv(const std::string &path, std::optional<double> e_star) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::kInvalidParameter, "cannot open table '" + path + "'");
    }
    return load_tabulated_csv(in, e_star);
}

namespace {

using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 out;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

// Partial trace over the first qubit.
Mat2 trace_first(const Mat4 &rho) {
    return rho.block<2, 2>(0, 0) + rho.block<2, 2>(2, 2);
}

}  // namespace

OracleTrace integrate_two_qubit_model(double eta, double lambda0, double x, double tau) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorKind::kInvalidParameter, "eta must lie in [0, 1]");
    }
    if (!(lambda0 * x >= 0.0) || !(tau > 0.0)) {
        throw Error(ErrorKind::kInvalidParameter, "need lambda0 * x >= 0 and tau > 0");
    }
    const double lambda = lambda0 * x;
    const double rate = (1.0 - eta) * lambda;
    const double coupling = eta * lambda;

    const Mat2 id = Mat2::Identity();
    Mat2 px;
    px << 0, 1, 1, 0;
    Mat2 pz;
    pz << 1, 0, 0, -1;

    const Mat4 hamiltonian = kron(pz, id) + coupling * kron(px, px) + kron(id, pz);
    const Mat4 observable = kron(px, id);
    const std::complex<double> minus_i(0.0, -1.0);

    // Depolarization of the system qubit only: rho -> I/2 (x) tr_1(rho).
    auto rhs = [&](double, const Mat4 &rho) -> Mat4 {
        Mat4 commutator = hamiltonian * rho - rho * hamiltonian;
        return minus_i * commutator + rate * (kron(0.5 * id, trace_first(rho)) - rho);
    };
    auto error_norm = [](const Mat4 &err, const Mat4 &y0, const Mat4 &y1, const Dopri5Options &opt) {
        double worst = 0.0;
        for (int i = 0; i < 16; i++) {
            double scale = opt.atol + opt.rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
            worst = std::max(worst, std::abs(err(i)) / scale);
        }
        return worst;
    };

    OracleTrace trace;
    auto observe = [&](double, const Mat4 &rho) {
        trace.max_trace_error = std::max(trace.max_trace_error, std::abs(rho.trace() - 1.0));
        trace.max_hermiticity_error = std::max(trace.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
    };

    const Mat4 rho0 = kron(0.5 * (id + px), 0.5 * id);
    Dopri5Stats stats;
    Mat4 rho = integrate_dopri5(rhs, rho0, 0.0, tau, Dopri5Options{}, error_norm, observe, &stats);

    trace.value = (rho * observable).trace().real();
    trace.accepted_steps = stats.accepted;
    trace.rejected_steps = stats.rejected;
    return trace;
}

double ode_oracle_nonmarkovian(double eta, double lambda0, double x, double tau) {
    OracleTrace trace = integrate_two_qubit_model(eta, lambda0, x, tau);
    if (trace.max_trace_error > 1e-9 || trace.max_hermiticity_error > 1e-9) {
        throw Error(ErrorKind::kNumericalIntegration, "density matrix lost trace or hermiticity");
    }
    return trace.value;
}

}  // namespace zne
