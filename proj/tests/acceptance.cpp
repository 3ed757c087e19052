// Acceptance suite: every contract the library ships with, one line each.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qmi/disks.hpp"
#include "qmi/dynamics.hpp"
#include "qmi/inclusions.hpp"
#include "qmi/msf.hpp"
#include "qmi/random.hpp"
#include "test_support.hpp"

using namespace qmi;
using namespace qmi::inclusions;
using disks::EtaParam;
using testsupport::lyapunov_member;
using testsupport::stein_member;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Criterion {
    int id;
    std::string label;
    std::function<bool(std::string&)> body;
};

bool within(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::vector<ComplexMatrix> isometry_family(rng::Rng& r, const std::vector<std::size_t>& heights,
                                           std::size_t n) {
    std::size_t total = 0;
    for (auto h : heights)
        total += h;
    const ComplexMatrix u = rng::random_unitary(r, total);
    std::vector<ComplexMatrix> out;
    std::size_t offset = 0;
    for (auto h : heights) {
        out.push_back(u.block(offset, 0, h, n));
        offset += h;
    }
    return out;
}

// --- 1: the half-iteration trace reproduces the reference sequence --------
bool criterion_trace_regression(std::string& detail) {
    const double eta0 = 2.0 + std::sqrt(3.0);
    const auto t0 = std::chrono::steady_clock::now();
    const disks::DiskTrace trace = disks::iterate_trace(EtaParam(eta0), 3);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    const double etas[] = {eta0, 2.0, 1.25, 41.0 / 40.0};
    const double radii[] = {std::sqrt(6.0 + 4.0 * std::sqrt(3.0)), std::sqrt(3.0), 0.75,
                            9.0 / 40.0};
    bool ok = trace.records.size() == 4 && ms < 1.0;
    for (int j = 0; ok && j < 4; ++j)
        ok = within(trace.records[j].eta, etas[j], 1e-12) &&
             within(trace.records[j].inv_radius, radii[j], 1e-12);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f ms", ms);
    detail = buf;
    return ok;
}

// --- 2: product of sub-unit disks, with the parameter sandwich ------------
bool criterion_disk_product(std::string& detail) {
    rng::Rng r(202);
    const auto t0 = std::chrono::steady_clock::now();
    for (int pair = 0; pair < 50; ++pair) {
        const double ea = r.uniform(1.0 + 1e-9, 50.0);
        const double eb = r.uniform(1.0 + 1e-9, 50.0);
        const double ra = disks::d_origin(EtaParam(ea)).radius;
        const double rb = disks::d_origin(EtaParam(eb)).radius;
        const double rc =
            disks::d_origin(disks::eta_product(EtaParam(ea), EtaParam(eb))).radius;
        for (int k = 0; k < 200; ++k) {
            const Complex a = ra * std::polar(1.0, 2.0 * kPi * k / 200.0);
            const Complex b = rb * std::polar(1.0, r.uniform(0.0, 2.0 * kPi));
            if (!within(std::abs(a * b), rc, 1e-12)) {
                detail = "product radius mismatch";
                return false;
            }
        }
        const double lo = std::min(ea, eb), hi = std::max(ea, eb);
        const disks::EtaBounds bounds = disks::eta_bounds_check(EtaParam(lo), EtaParam(hi));
        if (!(bounds.lower <= bounds.value + 1e-12 && bounds.value <= bounds.upper + 1e-12)) {
            detail = "sandwich violated";
            return false;
        }
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f ms", ms);
    detail = buf;
    return ms < 1000.0;
}

// --- 3: inversion closure of the invertible disks --------------------------
bool criterion_inversion_closure(std::string& detail) {
    for (double eta : {1.1, 2.0, 10.0}) {
        const double rho = std::sqrt(eta * eta - 1.0);
        for (int k = 0; k < 200; ++k) {
            const double ang = 2.0 * kPi * k / 200.0;
            const Complex c(eta + rho * std::cos(ang), rho * std::sin(ang));
            if (!within(disks::eta_of_point(1.0 / c), eta, 1e-12)) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "eta=%g angle index %d", eta, k);
                detail = buf;
                return false;
            }
        }
    }
    detail = "600 boundary points";
    return true;
}

// --- 4: Cayley algebra on matrices with spectra in d_inv(3) ----------------
bool criterion_cayley_identities(std::string& detail) {
    rng::Rng r(404);
    double worst_res = 0.0, worst_inv = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const ComplexMatrix a = testsupport::diagonalizable_in_dinv(r, n, EtaParam(3.0));
        const msf::IdentityResiduals res = msf::sign_identities_check(a);
        worst_res = std::max({worst_res, res.inversion, res.square});
        worst_inv = std::max(worst_inv, msf::cayley_involution_check(a));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max identity %.2e, max involution %.2e", worst_res, worst_inv);
    detail = buf;
    return worst_res <= 1e-10 && worst_inv <= 1e-11;
}

// --- 5: sign correctness + iteration envelope ------------------------------
bool criterion_sign(std::string& detail) {
    rng::Rng r(505);
    int worst_excess = -100;
    double worst_err = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 5;
        ComplexMatrix g = rng::random_matrix(r, n, n);
        g = g * Complex(0.3 / spectral_norm(g), 0.0);
        const ComplexMatrix s = ComplexMatrix::identity(n) + g;
        const ComplexMatrix s_inv = inverse(s);
        std::vector<Complex> d(n), e(n);
        double worst_eta = 1.0 + 1e-12;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = r.uniform(0.2, 5.0);
            const double sgn = r.uniform() < 0.5 ? -1.0 : 1.0;
            d[i] = Complex(sgn * mag, 0.0);
            e[i] = Complex(sgn, 0.0);
            worst_eta = std::max(worst_eta, disks::eta_of_point(Complex(mag, 0.0)));
        }
        const ComplexMatrix a = s * ComplexMatrix::diagonal(d) * s_inv;
        const ComplexMatrix expected = s * ComplexMatrix::diagonal(e) * s_inv;
        const msf::SignResult res = msf::sign(a);
        worst_err = std::max(worst_err, (res.sign - expected).frobenius_norm());
        // radius at which the worst-case scalar step 2r drops below the
        // 1e-13 stopping tolerance
        const int predicted = msf::predicted_iterations(EtaParam(worst_eta), 0.5e-13);
        worst_excess = std::max(worst_excess, res.iterations - predicted);
        if (res.iterations > predicted + 3) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "iterations %d > predicted %d + 3", res.iterations,
                          predicted);
            detail = buf;
            return false;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max error %.2e, max (iters - predicted) %d", worst_err,
                  worst_excess);
    detail = buf;
    return worst_err <= 1e-8;
}

// --- 6: the eta threshold matches membership bisection ---------------------
bool criterion_eta_star(std::string& detail) {
    rng::Rng r(606);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    // boundary-locating oracle: shrink the definiteness band well below the
    // 1e-8 target so the flip point is not biased by it
    Tolerances tight;
    tight.pd = 1e-13;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix eye = ComplexMatrix::identity(n);
        const ComplexMatrix a =
            msf::cayley(rng::random_contraction(r, n, r.uniform(0.05, 0.95)));
        const auto star = eta_star_lyapunov(eye, a);
        if (!star) {
            detail = "sample unexpectedly left the Lyapunov set";
            return false;
        }
        const auto member_at = [&](double eta) {
            return is_member(build_qmi(InclusionKind::hyper_lyapunov(EtaParam(eta)), eye, false,
                                       tight),
                             a, DefMode::Closed, tight)
                .member;
        };
        double hi = 2.0;
        while (!member_at(hi))
            hi *= 2.0;
        double lo = 1.0;
        for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
            const double mid = 0.5 * (lo + hi);
            (member_at(mid) ? hi : lo) = mid;
        }
        worst = std::max(worst, std::abs(hi - *star));
        if (worst > 1e-8)
            break;
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |bisection - threshold| %.2e, %.0f ms", worst, ms);
    detail = buf;
    return worst <= 1e-8 && ms < 10000.0;
}

// --- 7: Cayley correspondence of the inclusion pairs -----------------------
bool criterion_cayley_correspondence(std::string& detail) {
    rng::Rng r(707);
    int disagreements = 0, compared = 0;
    const auto excused = [](const MembershipResult& m) {
        return std::abs(m.certificate.min_eig_slack) <=
               1e-10 * std::max(1.0, m.certificate.slack.frobenius_norm());
    };
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix h = rng::random_hermitian_nonsingular(r, n);
        const ComplexMatrix p = rng::random_pd(r, n);
        const EtaParam eta(r.uniform(1.1, 6.0));
        const ComplexMatrix a = rng::random_matrix(r, n, n) * Complex(r.uniform(0.2, 1.2), 0.0);
        ComplexMatrix c(n, n);
        try {
            c = msf::cayley(a);
        } catch (const MinusOneInSpectrumError&) {
            continue;
        }
        ++compared;
        const auto s_h = is_member(build_qmi(InclusionKind::stein(), h), a, DefMode::Open);
        const auto l_h = is_member(build_qmi(InclusionKind::lyapunov(), h), c, DefMode::Open);
        if (s_h.member != l_h.member && !excused(s_h) && !excused(l_h))
            ++disagreements;
        const auto s_p =
            is_member(build_qmi(InclusionKind::hyper_stein(eta), p), a, DefMode::Open);
        const auto l_p =
            is_member(build_qmi(InclusionKind::hyper_lyapunov(eta), p), c, DefMode::Open);
        if (s_p.member != l_p.member && !excused(s_p) && !excused(l_p))
            ++disagreements;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d comparisons, %d disagreements", 2 * compared, disagreements);
    detail = buf;
    return disagreements == 0 && compared >= 150;
}

// --- 8: half-iteration compatibility of synthesized certificates -----------
bool criterion_half_step(std::string& detail) {
    rng::Rng r(808);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix a = rng::random_stable(r, n);
        const auto cert = synthesize_certificate(a);
        if (!cert) {
            detail = "synthesis failed on a stable matrix";
            return false;
        }
        if (!half_step_eta_check(a, cert->p, cert->eta)) {
            detail = "half-step membership failed";
            return false;
        }
    }
    detail = "200 certified triples";
    return true;
}

// --- 9: convexity identity + matrix-convex combinations --------------------
bool criterion_convexity(std::string& detail) {
    rng::Rng r(909);
    double worst_residual = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix p = rng::random_pd(r, n);
        const EtaParam eta(r.uniform(1.05, 10.0));
        const ComplexMatrix a0 = lyapunov_member(r, p, eta, r.uniform(0.1, 0.97));
        const ComplexMatrix a1 = lyapunov_member(r, p, eta, r.uniform(0.1, 0.97));
        const double theta = r.uniform(0.0, 1.0);
        if (!convex_combination_check(p, eta, a0, a1, theta)) {
            detail = "convex combination failed";
            return false;
        }
        // the identity residual itself, absolute
        const double inv_eta = 1.0 / eta.value();
        const ComplexMatrix a_theta =
            a1 * Complex(theta, 0.0) + a0 * Complex(1.0 - theta, 0.0);
        const ComplexMatrix diff = a0 - a1;
        const ComplexMatrix recon =
            hyper_lyapunov_slack(p, a1, inv_eta) * Complex(theta, 0.0) +
            hyper_lyapunov_slack(p, a0, inv_eta) * Complex(1.0 - theta, 0.0) +
            (diff.adjoint() * p * diff) * Complex(theta * (1.0 - theta) * inv_eta, 0.0);
        worst_residual = std::max(
            worst_residual,
            (recon - hyper_lyapunov_slack(p, a_theta, inv_eta)).frobenius_norm());
        if (worst_residual > 1e-11) {
            detail = "identity residual above 1e-11";
            return false;
        }
    }
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const std::size_t k = 1 + trial % 3;
        std::vector<std::size_t> heights;
        std::size_t total = 0;
        for (std::size_t j = 0; j < k; ++j) {
            heights.push_back(1 + std::size_t(r.uniform() * double(n)));
            total += heights.back();
        }
        if (total < n)
            heights[0] += n - total;
        const auto family = isometry_family(r, heights, n);
        const EtaParam eta(r.uniform(1.1, 6.0));
        const double radius = std::sqrt(eta.origin_radius_sq());
        std::vector<ComplexMatrix> blocks;
        const bool stein_side = trial % 2 == 0;
        for (auto h : heights) {
            const ComplexMatrix g = rng::random_contraction(r, h, radius * r.uniform(0.1, 0.98));
            blocks.push_back(stein_side ? g : msf::cayley(g));
        }
        const InclusionKind kind = stein_side ? InclusionKind::hyper_stein(eta)
                                              : InclusionKind::hyper_lyapunov(eta);
        if (!matrix_convex_combination_check(kind, blocks, family)) {
            detail = "matrix-convex combination failed";
            return false;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "500 combinations (max residual %.2e) + 200 isometry families", worst_residual);
    detail = buf;
    return true;
}

// --- 10: signature of the block matrix -------------------------------------
bool criterion_signature(std::string& detail) {
    rng::Rng r(1010);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const ComplexMatrix h = rng::random_hermitian_nonsingular(r, n);
        const ComplexMatrix p = rng::random_pd(r, n);
        const EtaParam eta(r.uniform(1.01, 25.0));
        const QmiSpec specs[] = {build_qmi(InclusionKind::lyapunov(), h),
                                 build_qmi(InclusionKind::stein(), h),
                                 build_qmi(InclusionKind::hyper_stein(eta), p),
                                 build_qmi(InclusionKind::hyper_lyapunov(eta), p)};
        for (const auto& spec : specs) {
            const auto eig = hermitian_eig(spec.m);
            std::size_t pos = 0, neg = 0;
            for (double ev : eig.eigenvalues)
                (ev > 0.0 ? pos : neg)++;
            if (pos != n || neg != n) {
                detail = "signature mismatch";
                return false;
            }
        }
    }
    detail = "4 kinds x 100 bases";
    return true;
}

// --- 11: difference-inclusion decay bound + sensitivity --------------------
bool criterion_difference_inclusion(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = 4;
    const double eta = 2.0;
    const double radius = std::sqrt((eta - 1.0) / (eta + 1.0));
    rng::Rng gen(0);
    for (int trial = 0; trial < 1000; ++trial) {
        const dynamics::Sampler sampler = [&](int, const ComplexMatrix&) {
            return rng::random_contraction(gen, n, radius * gen.uniform());
        };
        const dynamics::Trajectory t =
            dynamics::simulate(sampler, testsupport::random_vector(gen, n), 50, EtaParam(eta));
        if (!dynamics::decay_bound_check(t, eta)) {
            detail = "bound violated by an admissible trajectory";
            return false;
        }
    }
    // sensitivity: a sampler 1% above the radius must break the bound
    dynamics::SimulateOptions opts;
    opts.enforce_membership = false;
    const dynamics::Sampler inflated = [&](int, const ComplexMatrix&) {
        return rng::random_unitary(gen, n) * Complex(radius * 1.01, 0.0);
    };
    const dynamics::Trajectory bad =
        dynamics::simulate(inflated, testsupport::random_vector(gen, n), 50, EtaParam(eta), opts);
    const bool sensitive = !dynamics::decay_bound_check(bad, eta);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    char buf[96];
    std::snprintf(buf, sizeof buf, "1000 trajectories, %.0f ms%s", ms,
                  sensitive ? "" : ", sensitivity check failed");
    detail = buf;
    return sensitive && ms < 5000.0;
}

// --- 12: similarity transport between base matrices ------------------------
bool criterion_similarity(std::string& detail) {
    rng::Rng r(1212);
    int disagreements = 0;
    const auto excused = [](const MembershipResult& m) {
        return std::abs(m.certificate.min_eig_slack) <=
               1e-10 * std::max(1.0, m.certificate.slack.frobenius_norm());
    };
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const ComplexMatrix pa = rng::random_pd(r, n);
        const ComplexMatrix pb = rng::random_pd(r, n);
        const EtaParam eta(r.uniform(1.1, 6.0));
        const ComplexMatrix a = trial % 2 == 0
                                    ? lyapunov_member(r, pa, eta, r.uniform(0.2, 1.15))
                                    : rng::random_matrix(r, n, n);
        const ComplexMatrix t = similarity_transport(pa, pb);
        const auto lhs =
            is_member(build_qmi(InclusionKind::hyper_lyapunov(eta), pa), a, DefMode::Open);
        const auto rhs = is_member(build_qmi(InclusionKind::hyper_lyapunov(eta), pb),
                                   inverse(t) * a * t, DefMode::Open);
        if (lhs.member != rhs.member && !excused(lhs) && !excused(rhs))
            ++disagreements;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "200 transports, %d disagreements", disagreements);
    detail = buf;
    return disagreements == 0;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "half-iteration trace regression", criterion_trace_regression},
        {2, "sub-unit disk product law", criterion_disk_product},
        {3, "inversion closure of invertible disks", criterion_inversion_closure},
        {4, "Cayley identities", criterion_cayley_identities},
        {5, "sign correctness and iteration envelope", criterion_sign},
        {6, "eta threshold exactness", criterion_eta_star},
        {7, "Cayley correspondence of inclusions", criterion_cayley_correspondence},
        {8, "half-iteration compatibility", criterion_half_step},
        {9, "convexity identities", criterion_convexity},
        {10, "block-matrix signature", criterion_signature},
        {11, "difference-inclusion decay bound", criterion_difference_inclusion},
        {12, "similarity transport", criterion_similarity},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %2d  %-42s %s\n", ok ? "PASS" : "FAIL", c.id, c.label.c_str(),
                    detail.c_str());
        if (!ok)
            ++failures;
    }
    return failures;
}
