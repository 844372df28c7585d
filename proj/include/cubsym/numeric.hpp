#pragma once

// Floating-point spot checks for the factor catalog: random cuboid edge
// triples with their induced diagonals, plugged into every catalog equation.
// Residuals are relative to term magnitude so ill-conditioned samples do not
// mask genuine mismatches. All randomness flows through a fixed splitmix64
// stream, so identical seeds reproduce identical reports bit for bit.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cubsym/cuboid.hpp"

namespace cubsym {

// Counter-based splitmix64. Chosen over std::mt19937 for cross-platform
// stream stability: the output sequence is pinned by the algorithm itself.
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

   private:
    std::uint64_t state_;
};

// Evaluates p at the assignment; values is indexed by variable.
inline double evaluate(const Polynomial& p, const std::vector<double>& values) {
    double sum = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double t = c.to_double();
        for (unsigned i = 0; i < m.size(); ++i)
            for (unsigned k = 0; k < m.e[i]; ++k) t *= values[i];
        sum += t;
    }
    return sum;
}

// |p(values)| / (1 + sum of |term|): small iff p vanishes relative to the
// size of its constituent terms. Terms are visited in the polynomial's own
// deterministic order, so the result is reproducible.
inline double relative_residual(const Polynomial& p,
                                const std::vector<double>& values) {
    double sum = 0.0;
    double magnitude = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double t = c.to_double();
        for (unsigned i = 0; i < m.size(); ++i)
            for (unsigned k = 0; k < m.e[i]; ++k) t *= values[i];
        sum += t;
        magnitude += std::abs(t);
    }
    return std::abs(sum) / (1.0 + magnitude);
}

// One random cuboid point: edges uniform in [0.1, 10], face and space
// diagonals derived from them, elementary values from their expansions.
// Returns the full 16-slot assignment for the shared table.
inline std::vector<double> cuboid_sample(const CuboidSystem& sys,
                                         SplitMix64& rng) {
    namespace cv = cuboid_var;
    std::vector<double> v(sys.table()->size(), 0.0);
    v[cv::x1] = rng.uniform(0.1, 10.0);
    v[cv::x2] = rng.uniform(0.1, 10.0);
    v[cv::x3] = rng.uniform(0.1, 10.0);
    v[cv::d1] = std::sqrt(v[cv::x2] * v[cv::x2] + v[cv::x3] * v[cv::x3]);
    v[cv::d2] = std::sqrt(v[cv::x3] * v[cv::x3] + v[cv::x1] * v[cv::x1]);
    v[cv::d3] = std::sqrt(v[cv::x1] * v[cv::x1] + v[cv::x2] * v[cv::x2]);
    v[cv::L] = std::sqrt(v[cv::x1] * v[cv::x1] + v[cv::x2] * v[cv::x2] +
                         v[cv::x3] * v[cv::x3]);
    for (const auto& [var, expansion] : sys.elementary_substitution())
        v[var] = evaluate(expansion, v);
    return v;
}

struct NumericCheck {
    std::string id;
    double max_residual = 0.0;
};

struct NumericReport {
    std::uint64_t seed = 0;
    unsigned samples = 0;
    std::vector<NumericCheck> checks;  // one per equation, catalog order
    double max_residual = 0.0;

    bool within(double tolerance) const { return max_residual < tolerance; }
};

inline NumericReport numeric_spot_check(
    const CuboidSystem& sys, const std::vector<FactorEquation>& equations,
    unsigned samples, std::uint64_t seed) {
    if (samples == 0) throw UsageError("sample count must be positive");
    NumericReport report;
    report.seed = seed;
    report.samples = samples;
    for (const FactorEquation& f : equations)
        report.checks.push_back({f.id, 0.0});
    SplitMix64 rng(seed);
    for (unsigned s = 0; s < samples; ++s) {
        std::vector<double> point = cuboid_sample(sys, rng);
        for (std::size_t i = 0; i < equations.size(); ++i) {
            double r = relative_residual(equations[i].lhs, point);
            if (r > report.checks[i].max_residual)
                report.checks[i].max_residual = r;
            if (r > report.max_residual) report.max_residual = r;
        }
    }
    return report;
}

}  // namespace cubsym
