#pragma once

#include <cstdint>
#include <random>

#include "qmi/matrix.hpp"

namespace qmi::rng {

/// Seeded generator used for every random draw in the library and CLI.
/// mt19937_64 with 53-bit uniforms and a hand-rolled Box-Muller transform,
/// so identical seeds give identical streams on any conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 significant bits.
    double uniform() {
        return double(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + uniform() * (b - a); }

    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        if (u1 < 1e-300)
            u1 = 1e-300;
        const double u2 = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * 3.14159265358979323846 * u2;
        cached_ = rad * std::sin(ang);
        have_cached_ = true;
        return rad * std::cos(ang);
    }

    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return Complex(re, im);
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

/// iid standard complex Gaussian entries.
ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// (B + B*)/2 for Gaussian B.
ComplexMatrix random_hermitian(Rng& rng, std::size_t n);

/// V diag(s_i u_i) V* with random signs s_i and u_i in [0.3, 2].
ComplexMatrix random_hermitian_nonsingular(Rng& rng, std::size_t n);

/// V diag(u_i) V* with u_i in [0.5, 2].
ComplexMatrix random_pd(Rng& rng, std::size_t n);

/// Gram-Schmidt orthonormalization of a Gaussian matrix.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

/// U diag(d_i) V* with d_i in [0, norm_bound] and max_i d_i = norm_bound,
/// so the spectral norm equals norm_bound exactly up to rounding.
ComplexMatrix random_contraction(Rng& rng, std::size_t n, double norm_bound);

/// B + (||B||_2 + delta) I, positively stable by construction.
ComplexMatrix random_stable(Rng& rng, std::size_t n);

} // namespace qmi::rng
