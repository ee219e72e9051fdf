// Command-line front end: assembles the verification suite, parameter sweeps
// and trajectory exports into reproducible JSON/CSV artifacts.
//
// Exit codes: 0 all checks pass / data written, 1 check failure,
//             2 regime or argument error, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pfc/coherent.hpp"
#include "pfc/evolution.hpp"
#include "pfc/verify.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace pfc;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double kOdeTol = 1e-6;
constexpr double kOrderReferenceStep = 0.05;
constexpr double kOrderWindow = 0.3;

struct CommonOpts {
    double gamma_a = 0.0;
    double gamma_b = 0.0;
    double omega_re = 0.0;
    double omega_im = 0.0;
    double tol = 1e-12;
    std::string out;
    std::string fixed_timestamp;
    bool json = false;
};

void add_param_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--gamma-a", o.gamma_a, "upper-level decay rate")->required();
    cmd->add_option("--gamma-b", o.gamma_b, "lower-level decay rate")->required();
    cmd->add_option("--omega-re", o.omega_re, "Re(omega)")->required();
    cmd->add_option("--omega-im", o.omega_im, "Im(omega)");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out, "write the artifact to this path");
    cmd->add_option("--fixed-timestamp", o.fixed_timestamp,
                    "embed this fixed timestamp string (outputs carry none by default)");
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

ordered_json params_json(const CommonOpts& o) {
    return ordered_json{{"gamma_a", o.gamma_a},
                        {"gamma_b", o.gamma_b},
                        {"omega_re", o.omega_re},
                        {"omega_im", o.omega_im}};
}

ordered_json report_json(const CommonOpts& o, const CheckReport& report) {
    ordered_json j;
    j["version"] = kVersion;
    if (!o.fixed_timestamp.empty()) j["timestamp"] = o.fixed_timestamp;
    j["params"] = params_json(o);
    j["tol"] = o.tol;
    ordered_json checks = ordered_json::array();
    for (const auto& e : report.entries())
        checks.push_back(ordered_json{{"id", e.id},
                                      {"description", e.description},
                                      {"residual", e.residual},
                                      {"tol", e.tol},
                                      {"pass", e.pass}});
    j["checks"] = checks;
    j["all_pass"] = report.all_pass();
    return j;
}

// 0 on success, 3 on I/O failure. Empty path means stdout.
int emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return 3;
    }
    f << text;
    if (!f.good()) {
        std::cerr << "error: write to " << path << " failed\n";
        return 3;
    }
    return 0;
}

int emit_error(const CommonOpts& o, const Error& err) {
    ordered_json j;
    j["version"] = kVersion;
    if (!o.fixed_timestamp.empty()) j["timestamp"] = o.fixed_timestamp;
    j["error"] = ordered_json{{"type", err.kind()}, {"message", err.what()}};
    std::cout << j.dump(2) << "\n";
    return 2;
}

int cmd_verify(const CommonOpts& o) {
    const SystemParams p(o.gamma_a, o.gamma_b, Complex{o.omega_re, o.omega_im});
    const CheckReport report = verify_system(p, o.tol);
    const ordered_json j = report_json(o, report);

    if (!o.out.empty()) {
        if (int rc = emit(j.dump(2) + "\n", o.out)) return rc;
    }
    if (o.json && o.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else if (!o.json && o.out.empty()) {
        for (const auto& e : report.entries())
            std::printf("%s  %-40s residual=%.3e tol=%.1e\n", e.pass ? "PASS" : "FAIL",
                        e.id.c_str(), e.residual, e.tol);
        std::printf("%zu checks, %s\n", report.entries().size(),
                    report.all_pass() ? "all passed" : "FAILURES present");
    }
    return report.all_pass() ? 0 : 1;
}

int cmd_sweep(const CommonOpts& o, const SweepSpec& spec) {
    const auto rows = run_sweep(spec, o.tol);
    std::string csv;
    if (!o.fixed_timestamp.empty()) csv += "# timestamp: " + o.fixed_timestamp + "\n";
    csv +=
        "gamma_a,gamma_b,omega_re,omega_im,delta_ratio,arg_omega,Omega,status,"
        "res_spectrum,res_metric,res_algebra,res_symmetry,res_coherent,res_evolution,pass\n";
    bool all_ok_rows_pass = true;
    for (const auto& r : rows) {
        csv += fmt(r.gamma_a) + "," + fmt(r.gamma_b) + "," + fmt(r.omega.real()) + "," +
               fmt(r.omega.imag()) + "," + fmt(r.ratio) + "," + fmt(r.arg_omega) + "," +
               fmt(r.Omega) + "," + r.status + "," + fmt(r.res_spectrum) + "," +
               fmt(r.res_metric) + "," + fmt(r.res_algebra) + "," + fmt(r.res_symmetry) + "," +
               fmt(r.res_coherent) + "," + fmt(r.res_evolution) + "," +
               (r.pass ? "1" : "0") + "\n";
        if (r.status == "ok" && !r.pass) all_ok_rows_pass = false;
    }
    if (int rc = emit(csv, o.out)) return rc;
    return all_ok_rows_pass ? 0 : 1;
}

int cmd_evolve(const CommonOpts& o, double t_max, double dt, std::size_t stride) {
    if (!(t_max > 0.0) || !(dt > 0.0) || stride == 0)
        throw ArgumentError("evolve needs positive --t-max, --dt and --stride");
    const SystemParams p(o.gamma_a, o.gamma_b, Complex{o.omega_re, o.omega_im});
    const Spectrum s = eigensystem(p);
    const auto sig = one_mode_signature();
    const auto xi = GrassmannElement::generator(sig, 0);
    const auto b = lowering_operator(sig, BasisTag::Psi);
    const auto bt = lowering_operator(sig, BasisTag::Phi);

    std::string csv;
    if (!o.fixed_timestamp.empty()) csv += "# timestamp: " + o.fixed_timestamp + "\n";
    csv +=
        "t,factor_re,factor_im,ratio_re,ratio_im,res_factorization,res_parameter_law,"
        "res_eigenstate,res_binormal,res_resolution,amp_a_re,amp_a_im,amp_b_re,amp_b_im\n";

    const double step = dt * static_cast<double>(stride);
    for (std::size_t j = 0;; ++j) {
        const double t = static_cast<double>(j) * step;
        if (t > t_max * (1.0 + 1e-12)) break;
        const auto primal = evolve_cs(p, Flavor::Primal, t);
        const auto dual = evolve_cs(p, Flavor::Dual, t);

        const auto xi_t = primal.parameter_ratio * xi;
        const double res_eig =
            std::max(max_coeff_dist(apply(b, primal.state), times_left(xi_t, primal.state)),
                     max_coeff_dist(apply(bt, dual.state), times_left(xi_t, dual.state)));
        const double res_binorm = max_coeff_dist(pair(dagger(dual.state), primal.state),
                                                 GrassmannElement::unit(sig));
        const auto op_pd = berezin_pair(outer(primal.state, dagger(dual.state)), 0);
        const auto op_dp = berezin_pair(outer(dual.state, dagger(primal.state)), 0);
        const double res_resolution =
            std::max(frob_dist(numeric_realization(op_pd, s), Mat2::Identity()),
                     frob_dist(numeric_realization(op_dp, s), Mat2::Identity()));

        const Vec2 amp = propagator(p, t) * Vec2(s.psi1);
        csv += fmt(t) + "," + fmt(primal.factor.real()) + "," + fmt(primal.factor.imag()) +
               "," + fmt(primal.parameter_ratio.real()) + "," +
               fmt(primal.parameter_ratio.imag()) + "," +
               fmt(std::max(primal.factorization_residual, dual.factorization_residual)) + "," +
               fmt(std::max(primal.parameter_law_residual, dual.parameter_law_residual)) + "," +
               fmt(res_eig) + "," + fmt(res_binorm) + "," + fmt(res_resolution) + "," +
               fmt(amp(0).real()) + "," + fmt(amp(0).imag()) + "," + fmt(amp(1).real()) + "," +
               fmt(amp(1).imag()) + "\n";
    }
    return emit(csv, o.out);
}

int cmd_ode_check(const CommonOpts& o, double t_max, double dt) {
    const SystemParams p(o.gamma_a, o.gamma_b, Complex{o.omega_re, o.omega_im});
    const auto traj = ode_integrate(p, Vec2(1.0, 0.0), t_max, dt);
    const double deviation = max_deviation_vs_propagator(traj);
    const double order = rk4_convergence_order(p, Vec2(1.0, 0.0), t_max, kOrderReferenceStep);

    bool pass = deviation <= kOdeTol && std::abs(order - 4.0) <= kOrderWindow;
    ordered_json results;
    results["max_deviation_vs_propagator"] = deviation;
    results["convergence"] = ordered_json{{"reference_h", kOrderReferenceStep},
                                          {"measured_order", order}};
    if (p.is_degenerate()) {
        const double dev_degenerate = max_deviation_vs_degenerate(traj);
        results["degenerate_closed_form_deviation"] = dev_degenerate;
        pass = pass && dev_degenerate <= kOdeTol;
    } else {
        results["degenerate_closed_form_deviation"] = nullptr;
    }
    results["pass"] = pass;

    ordered_json j;
    j["version"] = kVersion;
    if (!o.fixed_timestamp.empty()) j["timestamp"] = o.fixed_timestamp;
    j["params"] = params_json(o);
    j["time_spec"] = ordered_json{{"t_max", t_max}, {"dt", dt}};
    j["results"] = results;

    if (!o.out.empty()) {
        if (int rc = emit(j.dump(2) + "\n", o.out)) return rc;
    } else {
        std::cout << j.dump(2) << "\n";
    }
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-fermion coherent-state verification engine"};
    app.require_subcommand(1);

    CommonOpts o;
    SweepSpec sweep_spec;
    double t_max = 10.0, dt = 1e-3;
    std::size_t stride = 1;

    auto* verify = app.add_subcommand("verify", "run the full identity suite at one point");
    add_param_flags(verify, o);
    verify->add_option("--tol", o.tol, "closed-form identity tolerance");
    verify->add_flag("--json", o.json, "print the JSON report to stdout");
    add_output_flags(verify, o);

    auto* sweep = app.add_subcommand("sweep", "verify across a (delta/|omega|, arg omega) grid");
    sweep->add_option("--grid-delta-steps", sweep_spec.ratio_steps, "points on the ratio axis");
    sweep->add_option("--grid-arg-steps", sweep_spec.arg_steps, "points on the phase axis");
    sweep->add_option("--grid-delta-min", sweep_spec.ratio_lo, "smallest delta/|omega|");
    sweep->add_option("--grid-delta-max", sweep_spec.ratio_hi, "largest delta/|omega|");
    sweep->add_option("--omega-abs", sweep_spec.omega_abs, "|omega| used for every grid point");
    sweep->add_option("--tol", o.tol, "closed-form identity tolerance");
    add_output_flags(sweep, o);

    auto* evolve = app.add_subcommand("evolve", "export the coherent-state evolution as CSV");
    add_param_flags(evolve, o);
    evolve->add_option("--t-max", t_max, "final time")->required();
    evolve->add_option("--dt", dt, "time step of the row grid")->required();
    evolve->add_option("--stride", stride, "emit every stride-th step");
    add_output_flags(evolve, o);

    auto* ode = app.add_subcommand("ode-check", "cross-validate RK4 against the propagator");
    add_param_flags(ode, o);
    ode->add_option("--t-max", t_max, "integration horizon");
    ode->add_option("--dt", dt, "integrator step");
    ode->add_flag("--json", o.json, "(JSON is the only output form)");
    add_output_flags(ode, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;   // argument errors share the regime exit code
    }

    try {
        if (app.got_subcommand(verify)) return cmd_verify(o);
        if (app.got_subcommand(sweep)) return cmd_sweep(o, sweep_spec);
        if (app.got_subcommand(evolve)) return cmd_evolve(o, t_max, dt, stride);
        if (app.got_subcommand(ode)) return cmd_ode_check(o, t_max, dt);
    } catch (const Error& e) {
        return emit_error(o, e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
