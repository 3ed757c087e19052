#include "qmi/dynamics.hpp"

#include <cmath>
#include <cstdio>

#include "qmi/inclusions.hpp"

namespace qmi::dynamics {

Trajectory simulate(const Sampler& sampler, const ComplexMatrix& x0, int steps,
                    const disks::EtaParam& eta, const SimulateOptions& opts,
                    const Tolerances& tol) {
    if (x0.cols() != 1)
        throw DimensionMismatchError("simulate: initial state must be a column vector");
    if (steps < 0)
        throw Error("simulate: steps must be non-negative");
    const std::size_t n = x0.rows();

    Trajectory t;
    t.states.reserve(static_cast<std::size_t>(steps) + 1);
    t.states.push_back(x0);
    t.norms.push_back(x0.frobenius_norm());
    t.matrices_used.reserve(static_cast<std::size_t>(steps));

    const double ratio = eta.origin_radius_sq();
    for (int k = 0; k < steps; ++k) {
        const ComplexMatrix a = sampler(k, t.states.back());
        if (a.rows() != n || a.cols() != n)
            throw DimensionMismatchError("simulate: sampler returned a wrongly sized matrix");
        if (opts.enforce_membership) {
            // closed hyper-Stein membership with base I reduces to the norm test
            const ComplexMatrix slack =
                (ComplexMatrix::identity(n) * Complex(ratio, 0.0) - a.adjoint() * a)
                    .hermitian_part();
            if (!is_positive_definite(slack, DefMode::Closed, tol).positive)
                throw SamplerViolationError("simulate: drawn matrix leaves the closed hyper-Stein set");
        }
        t.matrices_used.push_back(a);
        t.states.push_back(a * t.states.back());
        t.norms.push_back(t.states.back().frobenius_norm());
    }
    return t;
}

bool decay_bound_check(const Trajectory& t, double eta) {
    if (t.norms.empty())
        return true;
    const double x0 = t.norms.front();
    // eta = inf degenerates to the unit-disk case: no decay, just no growth
    const double r = std::isfinite(eta) ? std::sqrt((eta - 1.0) / (eta + 1.0)) : 1.0;
    double bound = x0;
    for (std::size_t k = 0; k < t.norms.size(); ++k) {
        if (t.norms[k] > bound + 1e-12 * x0)
            return false;
        bound *= r;
    }
    return true;
}

std::string Trajectory::to_csv(double eta) const {
    std::string out = "k,norm,bound\n";
    const double x0 = norms.empty() ? 0.0 : norms.front();
    const double r = std::isfinite(eta) ? std::sqrt((eta - 1.0) / (eta + 1.0)) : 1.0;
    double bound = x0;
    char line[128];
    for (std::size_t k = 0; k < norms.size(); ++k) {
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", k, norms[k], bound);
        out += line;
        bound *= r;
    }
    return out;
}

} // namespace qmi::dynamics
