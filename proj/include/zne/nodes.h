#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zne {

/// Node spacing rules. Each family is parameterized by the first amplified node x1.
enum class SpacingFamily {
    kLinear,             // x_j = 1 + j (x1 - 1)
    kExponential,        // x_j = x1^j
    kChebyshevExtremal,  // extrema of T_n mapped onto [1, x_n]
    kTiltedChebyshev,    // extremal nodes of order n+1 with the last node dropped
};

inline constexpr SpacingFamily kAllFamilies[] = {
    SpacingFamily::kTiltedChebyshev,
    SpacingFamily::kChebyshevExtremal,
    SpacingFamily::kExponential,
    SpacingFamily::kLinear,
};

/// CLI spelling: linear, exponential, chebyshev, tilted.
std::string_view to_string(SpacingFamily family);
SpacingFamily parse_family(std::string_view name);

/// Ordered noise-amplification factors 1 = x_0 < x_1 < ... < x_n.
class NodeSet {
public:
    /// Validates the ordering invariants. Throws kInvalidParameter for values that
    /// are not finite, do not start at exactly 1 or decrease, and kDegenerateNodes for
    /// neighbours closer than 1e-12 relative.
    static NodeSet from_values(std::vector<double> xs, std::optional<SpacingFamily> family = std::nullopt);

    std::span<const double> xs() const { return xs_; }
    double operator[](size_t j) const { return xs_[j]; }
    /// Index of the last node; the set holds n() + 1 nodes.
    size_t n() const { return xs_.size() - 1; }
    size_t size() const { return xs_.size(); }
    std::optional<SpacingFamily> family() const { return family_; }

    bool operator==(const NodeSet &) const = default;

private:
    NodeSet(std::vector<double> xs, std::optional<SpacingFamily> family)
        : xs_(std::move(xs)), family_(family) {}

    std::vector<double> xs_;
    std::optional<SpacingFamily> family_;
};

/// Lagrange basis polynomials evaluated at x = 0, plus the quantities derived from them.
struct WeightVector {
    std::vector<double> gammas;
    double lambda_overhead = 1.0;  // sum |gamma_j|
    double cn = 1.0;               // product of nodes; may be +inf for very large n
    double log_cn = 0.0;

    size_t n() const { return gammas.size() - 1; }

    bool operator==(const WeightVector &) const = default;
};

/// Relative gap below which two nodes are treated as coincident.
inline constexpr double kDegenerateGap = 1e-12;

WeightVector lagrange_weights(const NodeSet &nodes);

/// Builds the n+1 nodes of `family` with first amplified node x1. For n = 0 the
/// result is {1} and x1 is ignored.
NodeSet make_nodes(SpacingFamily family, size_t n, double x1);

/// Total overhead root sum |gamma_j| of make_nodes(family, n, x1).
double overhead_of(SpacingFamily family, size_t n, double x1);

/// Inverts overhead_of in x1. Requires n >= 1 and lambda_target > 1.
double solve_x1_for_overhead(SpacingFamily family, size_t n, double lambda_target);

/// Convenience: solve for x1 and build the nodes.
NodeSet nodes_for_overhead(SpacingFamily family, size_t n, double lambda_target);

/// Finds the gap d > 0 with overhead(d) == lambda_target for any overhead curve that
/// blows up as d -> 0 and tends to 1 as d -> infinity. Brackets geometrically, then
/// bisects log d.
template <class OverheadOfGap>
double solve_gap_for_overhead(OverheadOfGap &&overhead, double lambda_target);

/// (n+1)! / C_n, computed in log space once the factorial stops being exact.
double cn_ratio(const WeightVector &weights);

}  // namespace zne

#include "zne/nodes_inl.h"
