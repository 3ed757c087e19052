// qmi — disk algebra, matrix sign iterations, and the four quadratic matrix
// inclusions from one command line.
//
// Subcommands: sign, trace, certify, eta, simulate. stdout carries machine
// output (JSON or CSV); stderr carries diagnostics. Exit codes follow each
// subcommand's contract (see README).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmi/disks.hpp"
#include "qmi/dynamics.hpp"
#include "qmi/inclusions.hpp"
#include "qmi/matrix_io.hpp"
#include "qmi/msf.hpp"
#include "qmi/random.hpp"

namespace {

using qmi::Complex;
using qmi::ComplexMatrix;
using qmi::Tolerances;
namespace disks = qmi::disks;
namespace inc = qmi::inclusions;

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string out;
    double tol_pd = 1e-10;
    std::string format; // "json" or "csv"; empty means the subcommand default
};

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f)
        throw qmi::Error("cannot open output file: " + g.out);
    f << text;
}

Tolerances make_tol(const GlobalOpts& g) {
    Tolerances t;
    t.pd = g.tol_pd;
    return t;
}

ComplexMatrix load_matrix(const std::string& path, bool matrix_market) {
    return matrix_market ? qmi::io::read_matrix_market(path) : qmi::io::read_matrix_json(path);
}

disks::EtaParam parse_eta(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF")
        return disks::EtaParam::infinity();
    return disks::EtaParam(std::stod(text));
}

int run_sign(const GlobalOpts& g, const std::string& input, bool mm, int max_iter) {
    ComplexMatrix a(1, 1);
    try {
        a = load_matrix(input, mm);
        if (!a.is_square())
            throw qmi::Error("sign: input matrix must be square");
    } catch (const qmi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    try {
        qmi::msf::SignOptions opts;
        opts.max_iter = max_iter;
        const qmi::msf::SignResult r = qmi::msf::sign(a, opts, make_tol(g));
        emit(g, qmi::io::sign_result_to_json(r).dump(2) + "\n");
        return 0;
    } catch (const qmi::SingularIterateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qmi::NoConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_trace(const GlobalOpts& g, double eta0, int steps) {
    if (!(eta0 > 1.0)) {
        std::cerr << "error: --eta must be greater than 1\n";
        return 1;
    }
    const disks::DiskTrace t = disks::iterate_trace(disks::EtaParam(eta0), steps);
    emit(g, t.to_csv());
    return 0;
}

inc::InclusionKind make_kind(const std::string& kind_name, const std::string& eta_text) {
    if (kind_name == "lyapunov")
        return inc::InclusionKind::lyapunov();
    if (kind_name == "stein")
        return inc::InclusionKind::stein();
    const disks::EtaParam eta = parse_eta(eta_text);
    if (kind_name == "hyper-stein")
        return inc::InclusionKind::hyper_stein(eta);
    if (kind_name == "hyper-lyapunov")
        return inc::InclusionKind::hyper_lyapunov(eta);
    throw qmi::Error("unknown inclusion kind: " + kind_name);
}

int run_certify(const GlobalOpts& g, const std::string& input, const std::string& p_path,
                bool mm, const std::string& kind_name, const std::string& eta_text,
                const std::string& mode_name) {
    const Tolerances tol = make_tol(g);
    ComplexMatrix a(1, 1);
    std::optional<ComplexMatrix> p;
    try {
        a = load_matrix(input, mm);
        if (!p_path.empty())
            p = load_matrix(p_path, mm);
    } catch (const qmi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const qmi::DefMode mode = (mode_name == "open") ? qmi::DefMode::Open : qmi::DefMode::Closed;

    if (!p && kind_name == "hyper-lyapunov") {
        const auto cert = inc::synthesize_certificate(a, tol);
        if (!cert) {
            std::cerr << "error: matrix is not positively stable\n";
            return 2;
        }
        nlohmann::json j;
        j["kind"] = kind_name;
        j["synthesized"] = true;
        j["p"] = qmi::io::matrix_to_json(cert->p);
        j["eta"] = cert->eta;
        j["member"] = true;
        emit(g, j.dump(2) + "\n");
        return 0;
    }
    if (!p) {
        std::cerr << "note: no P supplied, using the identity\n";
        p = ComplexMatrix::identity(a.rows());
    }
    try {
        const inc::InclusionKind kind = make_kind(kind_name, eta_text);
        const inc::QmiSpec spec = inc::build_qmi(kind, *p, false, tol);
        const inc::MembershipResult r = inc::is_member(spec, a, mode, tol);
        emit(g, qmi::io::certificate_to_json(r.certificate, r.member).dump(2) + "\n");
        return r.member ? 0 : 3;
    } catch (const qmi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_eta(const GlobalOpts& g, const std::string& a_path, const std::string& p_path, bool mm,
            const std::string& family) {
    const Tolerances tol = make_tol(g);
    ComplexMatrix a(1, 1), p(1, 1);
    try {
        a = load_matrix(a_path, mm);
        p = load_matrix(p_path, mm);
    } catch (const qmi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::optional<double> eta_star;
    try {
        eta_star = (family == "stein") ? inc::eta_star_stein(p, a, tol)
                                       : inc::eta_star_lyapunov(p, a, tol);
    } catch (const qmi::NotPositiveDefiniteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!eta_star) {
        emit(g, "NOT_IN_SET\n");
        return 3;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", *eta_star);
    if (g.format == "json")
        emit(g, nlohmann::json{{"eta_star", *eta_star}}.dump() + "\n");
    else
        emit(g, std::string(buf) + "\n");
    return 0;
}

int run_simulate(const GlobalOpts& g, std::size_t n, double eta_value, int steps, int trials) {
    if (!(eta_value > 1.0) || n < 1 || steps < 0 || trials < 0) {
        std::cerr << "error: need --eta > 1, --n >= 1, --steps >= 0, --trials >= 0\n";
        return 1;
    }
    const disks::EtaParam eta(eta_value);
    const double r = std::sqrt(eta.origin_radius_sq());
    qmi::rng::Rng rng(g.seed);

    std::string csv = "trial,max_ratio\n";
    bool all_within = true;
    char line[64];
    for (int trial = 0; trial < trials; ++trial) {
        ComplexMatrix x0 = qmi::rng::random_matrix(rng, n, 1);
        while (x0.frobenius_norm() < 1e-8)
            x0 = qmi::rng::random_matrix(rng, n, 1);
        const auto sampler = [&](int, const ComplexMatrix&) {
            return qmi::rng::random_contraction(rng, n, r * rng.uniform());
        };
        const qmi::dynamics::Trajectory t =
            qmi::dynamics::simulate(sampler, x0, steps, eta, {}, make_tol(g));
        // envelope proximity past the trivial k = 0 entry
        double max_ratio = steps == 0 ? 1.0 : 0.0;
        double bound = t.norms.front() * r;
        for (std::size_t k = 1; k < t.norms.size(); ++k) {
            max_ratio = std::max(max_ratio, t.norms[k] / bound);
            bound *= r;
        }
        all_within = all_within && max_ratio <= 1.0 + 1e-12;
        std::snprintf(line, sizeof line, "%d,%.17g\n", trial, max_ratio);
        csv += line;
    }
    emit(g, csv);
    return all_within ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invertible-disk algebra, matrix sign iterations, and "
                 "Lyapunov/Stein inclusion certificates"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed (default 0)");
    app.add_option("--out", g.out, "write machine output to a file instead of stdout");
    app.add_option("--tol-pd", g.tol_pd, "definiteness tolerance band (default 1e-10)");
    app.add_option("--format", g.format, "output format override (json|csv)")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* sign_cmd = app.add_subcommand("sign", "matrix sign function by Newton iteration");
    sign_cmd->fallthrough();
    std::string sign_input;
    bool sign_mm = false;
    int sign_max_iter = 100;
    sign_cmd->add_option("input", sign_input, "matrix file (JSON)")->required();
    sign_cmd->add_flag("--mm", sign_mm, "read input as real Matrix Market");
    sign_cmd->add_option("--max-iter", sign_max_iter, "iteration cap (default 100)");

    auto* trace_cmd = app.add_subcommand("trace", "half-iteration trace of an invertible disk");
    trace_cmd->fallthrough();
    double trace_eta = 0.0;
    int trace_steps = 0;
    trace_cmd->add_option("--eta", trace_eta, "starting eta (> 1)")->required();
    trace_cmd->add_option("--steps", trace_steps, "number of half-iterations");

    auto* certify_cmd = app.add_subcommand("certify", "inclusion membership certificate");
    certify_cmd->fallthrough();
    std::string cert_input, cert_p, cert_kind = "lyapunov", cert_eta = "inf", cert_mode = "closed";
    bool cert_mm = false;
    certify_cmd->add_option("input", cert_input, "matrix A file (JSON)")->required();
    certify_cmd->add_option("--p", cert_p, "base matrix file; synthesized for hyper-lyapunov when omitted");
    certify_cmd->add_flag("--mm", cert_mm, "read matrices as real Matrix Market");
    certify_cmd->add_option("--kind", cert_kind, "lyapunov|stein|hyper-stein|hyper-lyapunov")
        ->check(CLI::IsMember({"lyapunov", "stein", "hyper-stein", "hyper-lyapunov"}));
    certify_cmd->add_option("--eta", cert_eta, "eta for the hyper kinds (number or 'inf')");
    certify_cmd->add_option("--mode", cert_mode, "open|closed (default closed)")
        ->check(CLI::IsMember({"open", "closed"}));

    auto* eta_cmd = app.add_subcommand("eta", "minimal eta admitting A into the family's set");
    eta_cmd->fallthrough();
    std::string eta_a, eta_p, eta_family = "lyap";
    bool eta_mm = false;
    eta_cmd->add_option("input", eta_a, "matrix A file (JSON)")->required();
    eta_cmd->add_option("--p", eta_p, "positive definite base matrix file")->required();
    eta_cmd->add_flag("--mm", eta_mm, "read matrices as real Matrix Market");
    eta_cmd->add_option("--family", eta_family, "lyap|stein")
        ->check(CLI::IsMember({"lyap", "stein"}));

    auto* sim_cmd = app.add_subcommand("simulate", "difference-inclusion decay bound trials");
    sim_cmd->fallthrough();
    std::size_t sim_n = 4;
    double sim_eta = 2.0;
    int sim_steps = 50, sim_trials = 100;
    sim_cmd->add_option("--n", sim_n, "state dimension");
    sim_cmd->add_option("--eta", sim_eta, "eta of the hyper-Stein sampler set (> 1)");
    sim_cmd->add_option("--steps", sim_steps, "steps per trajectory");
    sim_cmd->add_option("--trials", sim_trials, "number of trajectories");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sign_cmd->parsed())
            return run_sign(g, sign_input, sign_mm, sign_max_iter);
        if (trace_cmd->parsed())
            return run_trace(g, trace_eta, trace_steps);
        if (certify_cmd->parsed())
            return run_certify(g, cert_input, cert_p, cert_mm, cert_kind, cert_eta, cert_mode);
        if (eta_cmd->parsed())
            return run_eta(g, eta_a, eta_p, eta_mm, eta_family);
        if (sim_cmd->parsed())
            return run_simulate(g, sim_n, sim_eta, sim_steps, sim_trials);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
