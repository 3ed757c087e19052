#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmi/disks.hpp"
#include "qmi/msf.hpp"
#include "qmi/random.hpp"
#include "test_support.hpp"

using namespace qmi;
using namespace qmi::msf;
using disks::EtaParam;

TEST_CASE("cayley: fixed values and the scalar case") {
    CHECK(approx_equal(cayley(ComplexMatrix(2, 2)), ComplexMatrix::identity(2), 1e-15));
    CHECK(cayley(ComplexMatrix::identity(3)).frobenius_norm() == doctest::Approx(0.0));
    const ComplexMatrix scalar(1, 1, {Complex(3.0, 0.0)});
    CHECK(cayley(scalar)(0, 0).real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK_THROWS_AS(cayley(ComplexMatrix::diagonal({Complex(-1.0), Complex(2.0)})),
                    MinusOneInSpectrumError);
}

TEST_CASE("cayley: both algebraic forms agree") {
    rng::Rng r(2);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = rng::random_matrix(r, 4, 4);
        ComplexMatrix c(4, 4);
        try {
            c = cayley(a);
        } catch (const MinusOneInSpectrumError&) {
            continue;
        }
        const ComplexMatrix alt =
            inverse(ComplexMatrix::identity(4) + a) * Complex(2.0, 0.0) -
            ComplexMatrix::identity(4);
        CHECK((c - alt).frobenius_norm() <= 1e-12 * std::max(1.0, c.frobenius_norm()));
    }
}

TEST_CASE("cayley involution") {
    CHECK(cayley_involution_check(ComplexMatrix::diagonal({Complex(2.0), Complex(3.0)})) <= 1e-14);
    CHECK(cayley_involution_check(ComplexMatrix(3, 3)) == 0.0);
    rng::Rng r(3);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix a = rng::random_matrix(r, 5, 5);
        a = a * Complex(0.5 / spectral_norm(a), 0.0);
        CHECK(cayley_involution_check(a) <= 1e-12);
    }
}

TEST_CASE("newton_sign_step: fixed point and reference scalars") {
    CHECK(approx_equal(newton_sign_step(ComplexMatrix::identity(3)),
                       ComplexMatrix::identity(3), 1e-15));
    const double eta0 = 2.0 + std::sqrt(3.0);
    const ComplexMatrix x = ComplexMatrix::diagonal({Complex(eta0), Complex(-eta0)});
    const ComplexMatrix stepped = newton_sign_step(x);
    CHECK(stepped(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(stepped(1, 1).real() == doctest::Approx(-2.0).epsilon(1e-14));
    const ComplexMatrix two(1, 1, {Complex(2.0, 0.0)});
    CHECK(newton_sign_step(two)(0, 0).real() == doctest::Approx(1.25));
}

TEST_CASE("sign: scalar signs, identity, known-answer oracle") {
    const SignResult d = sign(ComplexMatrix::diagonal({Complex(2.0), Complex(-3.0)}));
    CHECK(d.converged);
    CHECK(approx_equal(d.sign, ComplexMatrix::diagonal({Complex(1.0), Complex(-1.0)}), 1e-10));

    const SignResult id = sign(ComplexMatrix::identity(4));
    CHECK(id.converged);
    CHECK(id.iterations <= 1);
    CHECK(approx_equal(id.sign, ComplexMatrix::identity(4), 1e-13));

    rng::Rng r(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5;
        ComplexMatrix g = rng::random_matrix(r, n, n);
        g = g * Complex(0.3 / spectral_norm(g), 0.0);
        const ComplexMatrix s = ComplexMatrix::identity(n) + g;
        std::vector<Complex> d_entries(n), e_entries(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = r.uniform(0.2, 5.0);
            const double sgn = r.uniform() < 0.5 ? -1.0 : 1.0;
            d_entries[i] = Complex(sgn * mag, 0.0);
            e_entries[i] = Complex(sgn, 0.0);
        }
        const ComplexMatrix s_inv = inverse(s);
        const ComplexMatrix a = s * ComplexMatrix::diagonal(d_entries) * s_inv;
        const ComplexMatrix expected = s * ComplexMatrix::diagonal(e_entries) * s_inv;
        const SignResult res = sign(a);
        CHECK(res.converged);
        CHECK((res.sign - expected).frobenius_norm() <= 1e-8);
        // commutation contract
        CHECK((res.sign * a - a * res.sign).frobenius_norm() <= 1e-8 * a.frobenius_norm());
    }
}

TEST_CASE("sign: fixed points E^2 = I") {
    rng::Rng r(7);
    std::vector<ComplexMatrix> roots;
    roots.push_back(ComplexMatrix::identity(3));
    roots.push_back(-ComplexMatrix::identity(3));
    roots.push_back(ComplexMatrix::diagonal({Complex(1.0), Complex(-1.0), Complex(1.0)}));
    {
        ComplexMatrix g = rng::random_matrix(r, 3, 3);
        g = g * Complex(0.4 / spectral_norm(g), 0.0);
        const ComplexMatrix s = ComplexMatrix::identity(3) + g;
        roots.push_back(s * ComplexMatrix::diagonal({Complex(1.0), Complex(-1.0), Complex(-1.0)}) *
                        inverse(s));
    }
    for (const auto& e : roots) {
        const SignResult res = sign(e);
        CHECK(res.converged);
        CHECK((res.sign - e).frobenius_norm() <= 1e-9);
    }
}

TEST_CASE("sign: imaginary-axis spectra are rejected") {
    const ComplexMatrix rot{{Complex(0.0), Complex(1.0)}, {Complex(-1.0), Complex(0.0)}};
    CHECK_THROWS_AS(sign(rot), SingularIterateError);
    CHECK_THROWS_AS(sign(ComplexMatrix::diagonal({Complex(0.0, 1.0), Complex(0.0, -1.0)})),
                    Error); // singular iterate or no convergence, both are errors
}

TEST_CASE("sign: Cayley conjugation of the Newton step") {
    rng::Rng r(11);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a =
            testsupport::diagonalizable_in_dinv(r, 4, EtaParam(3.0));
        const ComplexMatrix lhs = cayley(newton_sign_step(a));
        const ComplexMatrix c = cayley(a);
        const ComplexMatrix rhs = -(c * c);
        CHECK((lhs - rhs).frobenius_norm() <= 1e-10);
    }
}

TEST_CASE("sign: disk envelope on diagonal matrices") {
    rng::Rng r(13);
    const EtaParam eta0(3.0);
    const std::size_t n = 6;
    std::vector<Complex> d(n);
    const double center = 3.0, radius = std::sqrt(8.0) * 0.9;
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = radius * std::sqrt(r.uniform());
        const double ang = r.uniform(0.0, 2.0 * 3.14159265358979323846);
        const double flip = r.uniform() < 0.5 ? -1.0 : 1.0;
        d[i] = Complex(flip * (center + rho * std::cos(ang)), flip * rho * std::sin(ang));
    }
    ComplexMatrix x = ComplexMatrix::diagonal(d);
    const disks::DiskTrace trace = disks::iterate_trace(eta0, 6);
    for (int j = 1; j <= 6; ++j) {
        x = newton_sign_step(x);
        const double eta_j = trace.records[j].eta;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex v = x(i, i);
            const Complex folded = v.real() >= 0.0 ? v : -v;
            CHECK(disks::eta_of_point(folded) <= eta_j * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("predicted_iterations: trace rows and targets") {
    const EtaParam eta0(2.0 + std::sqrt(3.0));
    CHECK(predicted_iterations(eta0, 9.0 / 40.0) == 3);
    const double current = std::sqrt(eta0.origin_radius_sq());
    CHECK(predicted_iterations(eta0, current) == 0);
    CHECK(predicted_iterations(EtaParam(2.0), 1e-10) == 6);
}

TEST_CASE("sign_identities_check: scalars, diagonals, sweep over d_inv(3)") {
    const IdentityResiduals r2 =
        sign_identities_check(ComplexMatrix::identity(2) * Complex(2.0, 0.0));
    CHECK(r2.inversion <= 1e-14);
    CHECK(r2.square <= 1e-14);

    const IdentityResiduals rd =
        sign_identities_check(ComplexMatrix::diagonal({Complex(2.0), Complex(3.0), Complex(0.5)}));
    CHECK(rd.inversion <= 1e-13);
    CHECK(rd.square <= 1e-13);

    rng::Rng r(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const ComplexMatrix a = testsupport::diagonalizable_in_dinv(r, n, EtaParam(3.0));
        const IdentityResiduals res = sign_identities_check(a);
        CHECK(res.inversion <= 1e-10);
        CHECK(res.square <= 1e-10);
    }
}

TEST_CASE("sign with scaling converges to the same limit") {
    rng::Rng r(19);
    const ComplexMatrix a = testsupport::diagonalizable_in_dinv(r, 4, EtaParam(5.0));
    const SignResult plain = sign(a);
    SignOptions opts;
    opts.scaling = true;
    const SignResult scaled = sign(a, opts);
    CHECK(scaled.converged);
    CHECK((plain.sign - scaled.sign).frobenius_norm() <= 1e-9);
}
