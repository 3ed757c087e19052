#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qmi/disks.hpp"
#include "qmi/linalg.hpp"
#include "qmi/matrix.hpp"

namespace qmi::dynamics {

/// Step matrix source for the difference inclusion; receives the step index
/// and the current state (an n x 1 matrix) and returns the n x n matrix to
/// apply. Built-in samplers ignore the state.
using Sampler = std::function<ComplexMatrix(int k, const ComplexMatrix& x)>;

struct Trajectory {
    std::vector<ComplexMatrix> states;        // x(0..K), each n x 1
    std::vector<double> norms;                // ||x(k)||_2
    std::vector<ComplexMatrix> matrices_used; // A(0..K-1)

    /// CSV with header `k,norm,bound`, where bound is
    /// ||x(0)|| ((eta-1)/(eta+1))^(k/2).
    std::string to_csv(double eta) const;
};

struct SimulateOptions {
    /// When set, every drawn matrix must pass the closed hyper-Stein
    /// membership test for (I, eta); a violation raises
    /// SamplerViolationError. Disable to study inadmissible samplers.
    bool enforce_membership = true;
};

/// Runs x(k+1) = A(k, x(k)) x(k) for the given number of steps.
Trajectory simulate(const Sampler& sampler, const ComplexMatrix& x0, int steps,
                    const disks::EtaParam& eta, const SimulateOptions& opts = {},
                    const Tolerances& tol = default_tolerances());

/// ||x(k)|| <= ||x(0)|| ((eta-1)/(eta+1))^(k/2) at every k, with slack
/// 1e-12 ||x(0)||.
bool decay_bound_check(const Trajectory& t, double eta);

} // namespace qmi::dynamics
