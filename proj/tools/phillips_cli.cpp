// Command-line driver: builds the radial and axially symmetric cones of the
// near-linear Alt-Phillips problem and certifies the comparison-leaf
// inequalities on grids.  Exit codes: 0 pass, 1 fail, 2 config error,
// 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "altphillips/cone.hpp"
#include "altphillips/foliation.hpp"
#include "altphillips/io.hpp"
#include "altphillips/params.hpp"
#include "altphillips/radial.hpp"

namespace ap = altphillips;
using nlohmann::json;

namespace {

struct CommonOpts {
    int d = 3;
    std::optional<double> gamma, kappa;
    std::string outdir = "out";
    std::string config;

    double resolved_kappa() const
    {
        if (kappa) return *kappa;
        if (gamma) return ap::kappa_from_gamma(*gamma);
        throw ap::invalid_argument("exactly one of --gamma/--kappa is required");
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_param = true)
{
    cmd->add_option("--d", o.d, "ambient parameter d (the cone lives in R^{d+1})")
        ->check(CLI::Range(3, 16));
    auto* g = cmd->add_option("--gamma", o.gamma, "exponent gamma in (0,1)");
    auto* k = cmd->add_option("--kappa", o.kappa, "scaling parameter kappa = 4(1-gamma)/(2-gamma)");
    g->excludes(k);
    k->excludes(g);
    if (need_param) {
        // exactly one of the two must be given (validated at run time so the
        // config-file path also works)
    }
    cmd->add_option("--outdir", o.outdir, "output directory");
    cmd->add_option("--config", o.config, "flat key=value configuration file")
        ->check(CLI::ExistingFile);
}

/// Applies a flat key=value file to the options of `cmd` after parsing.
/// Command-line flags win; an option excluded by one already set is skipped.
void apply_flat_config(CLI::App* cmd, const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw ap::invalid_argument("cannot open config file: " + path);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        auto* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr || opt->count() > 0) continue;
        bool blocked = false;
        for (const auto* ex : opt->get_excludes())
            if (ex->count() > 0) blocked = true;
        if (blocked) continue;
        opt->add_result(val);
        opt->run_callback();
    }
}

std::string canon_string(const CommonOpts& o, const std::string& extra)
{
    std::ostringstream os;
    os << "d=" << o.d;
    if (o.kappa) os << ";kappa=" << ap::format_g17(*o.kappa);
    if (o.gamma) os << ";gamma=" << ap::format_g17(*o.gamma);
    if (!extra.empty()) os << ";" << extra;
    return os.str();
}

json report_json(const ap::CertificationReport& rep)
{
    return json::parse(rep.to_json());
}

int emit(const CommonOpts& o, const std::string& command, const std::string& extra,
         json body, int status)
{
    const std::string canon = canon_string(o, extra);
    body["command"] = command;
    body["config"] = canon;
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  (unsigned long long)ap::fnv1a(command + "|" + canon));
    body["config_hash"] = hash;
    const auto path = ap::write_text(o.outdir, ap::output_stem(command, canon), "json",
                                     body.dump(2) + "\n");
    std::cout << path.string() << "\n";
    return status;
}

ap::Profile sample_cone(const ap::ConeSolution& cone, int n = 2001)
{
    ap::Profile p;
    p.d = cone.d;
    p.kappa = cone.kappa;
    p.theta.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double th = ap::pi / 2 * i / (n - 1.0);
        double u, du;
        cone.eval(th, u, du);
        p.theta.push_back(th);
        p.u.push_back(u);
        p.du.push_back(du);
    }
    return p;
}

int cmd_stability(const CommonOpts& o)
{
    const double kappa = o.resolved_kappa();
    const double gamma = ap::gamma_from_kappa(kappa);
    const double delta = ap::discriminant(o.d, gamma);
    json body;
    body["gamma"] = gamma;
    body["kappa"] = kappa;
    body["discriminant"] = delta;
    body["stable"] = ap::is_stable(o.d, gamma);
    if (auto thr = ap::stability_threshold(o.d)) body["threshold"] = *thr;
    std::cout << "Delta(" << o.d << ", " << gamma << ") = " << ap::format_g17(delta)
              << (delta >= 0 ? "  (stable)" : "  (unstable)") << "\n";
    return emit(o, "stability", "", body, 0);
}

int cmd_radial_foliate(const CommonOpts& o, const std::string& leaf, double R_max,
                       double eta)
{
    const double gamma = o.gamma ? *o.gamma : ap::gamma_from_kappa(o.resolved_kappa());
    json body;
    ap::RadialCertification cert;
    if (leaf == "upper") {
        const auto up = ap::upper_leaf_radial(o.d, gamma, R_max);
        cert = ap::certify_radial_leaf(up);
        body["eps_stability"] = cert.stability;
    } else {
        const auto low = ap::lower_leaf_radial(o.d, gamma, eta);
        cert = ap::certify_radial_leaf(low);
        body["fb_limit"] = cert.fb_limit;
        body["derivative_ratio"] = cert.derivative_ratio;
    }
    body["leaf"] = leaf;
    body["gamma"] = gamma;
    body["worst_margin"] = cert.worst_margin;
    body["worst_location"] = cert.worst_location;
    body["samples"] = cert.samples;
    body["verdict"] = cert.pass ? "PASS" : "FAIL";
    std::cout << "radial " << leaf << " leaf: " << (cert.pass ? "PASS" : "FAIL")
              << " (worst margin " << cert.worst_margin << ")\n";
    return emit(o, "radial-foliate", "leaf=" + leaf, body, cert.pass ? 0 : 1);
}

int cmd_cone_build(const CommonOpts& o, double T)
{
    ap::ConeBuildOptions opt;
    opt.T = T;
    const auto cone = ap::build_cone(o.d, o.resolved_kappa(), opt);
    const std::string canon = canon_string(o, T > 0 ? "T=" + ap::format_g17(T) : "");
    const auto csv = ap::write_text(o.outdir, ap::output_stem("cone-build", canon), "csv",
                                    ap::profile_to_csv(sample_cone(cone)));
    std::cout << csv.string() << "\n";
    json body;
    body["theta0"] = cone.theta0;
    body["theta_m"] = cone.theta_m;
    body["M"] = cone.M;
    body["L"] = cone.L;
    body["newton_iters"] = cone.newton_iters;
    body["newton_residual"] = cone.newton_residual;
    body["contact_measure"] = ap::contact_measure(cone);
    // record the canonical (unversioned) name so reruns of the same config
    // produce byte-identical reports; on-disk copies may carry a -N suffix
    body["profile_csv"] = ap::output_stem("cone-build", canon) + ".csv";
    return emit(o, "cone-build", T > 0 ? "T=" + ap::format_g17(T) : "", body, 0);
}

int cmd_cone_sweep(const CommonOpts& o, const std::string& range)
{
    double a = 0, b = 0;
    int n = 0;
    {
        std::istringstream rs(range);
        std::string ta, tb, tn;
        if (!std::getline(rs, ta, ':') || !std::getline(rs, tb, ':') || !std::getline(rs, tn))
            throw ap::invalid_argument("--kappa-range expects a:b:n");
        a = std::stod(ta);
        b = std::stod(tb);
        n = std::stoi(tn);
    }
    const auto rows = ap::scaling_sweep(o.d, ap::logspace(a, b, n));
    const double slope = ap::fit_scaling_slope(rows);
    std::ostringstream csv;
    csv << "# alt-phillips-sweep v1 d=" << o.d << "\n";
    csv << "kappa,gamma,theta0,contact_measure\n";
    for (const auto& r : rows)
        csv << ap::format_g17(r.kappa) << "," << ap::format_g17(r.gamma) << ","
            << ap::format_g17(r.theta0) << "," << ap::format_g17(r.measure) << "\n";
    const std::string extra = "range=" + range;
    const auto path = ap::write_text(o.outdir, ap::output_stem("cone-sweep",
                                     canon_string(o, extra)), "csv", csv.str());
    std::cout << path.string() << "\nfitted exponent = " << slope
              << " (target " << (double)o.d / (o.d - 2) << ")\n";
    json body;
    body["slope"] = slope;
    body["target"] = (double)o.d / (o.d - 2);
    body["points"] = n;
    return emit(o, "cone-sweep", extra, body, 0);
}

int cmd_energy(const CommonOpts& o)
{
    const auto cone = ap::build_cone(o.d, o.resolved_kappa());
    const double E = ap::energy_in_ball(cone);
    std::cout << "E(u; B_1) = " << ap::format_g17(E) << "\n";
    json body;
    body["energy"] = E;
    body["theta0"] = cone.theta0;
    return emit(o, "energy", "", body, 0);
}

int verdict_status(const ap::CertificationReport& rep)
{
    return rep.verdict == ap::Verdict::Fail ? 1 : 0;
}

int cmd_certify_lower(const CommonOpts& o, double alpha, const ap::GridSpec& grid,
                      double tol)
{
    const auto cone = ap::build_cone(o.d, o.resolved_kappa());
    const auto w = ap::build_angular_weight(cone, ap::WeightKind::LowerAlpha, alpha);
    const auto lin = ap::check_linearized_supersolution(cone, w, 2000, tol);
    const auto leaf = ap::build_lower_leaf(cone, w);
    auto rep = ap::certify_leaf(leaf, grid, tol);
    json body;
    body["linearized"] = report_json(lin);
    body["certification"] = report_json(rep);
    const bool pass = lin.verdict != ap::Verdict::Fail && rep.verdict != ap::Verdict::Fail;
    std::cout << "lower leaf: " << ap::verdict_name(rep.verdict) << " (worst margin "
              << rep.worst_margin() << ")\n";
    return emit(o, "certify-lower", "alpha=" + ap::format_g17(alpha), body, pass ? 0 : 1);
}

int cmd_certify_upper(const CommonOpts& o, double delta, double M_d,
                      const ap::GridSpec& grid, double tol)
{
    const auto cone = ap::build_cone(o.d, o.resolved_kappa());
    const auto w = ap::build_angular_weight(cone, ap::WeightKind::UpperDelta, delta);
    const auto lin = ap::check_linearized_supersolution(cone, w, 2000, tol);
    const auto leaf = ap::build_upper_leaf(cone, w, delta, M_d);
    auto rep = ap::certify_leaf(leaf, grid, tol);
    json body;
    body["linearized"] = report_json(lin);
    body["certification"] = report_json(rep);
    body["R_out"] = leaf.R_out;
    body["R_in"] = leaf.R_in;
    body["M_d"] = leaf.M_d;
    const bool pass = lin.verdict != ap::Verdict::Fail && rep.verdict != ap::Verdict::Fail;
    std::cout << "upper leaf: " << ap::verdict_name(rep.verdict) << " (worst margin "
              << rep.worst_margin() << ")\n";
    return emit(o, "certify-upper", "delta=" + ap::format_g17(delta), body, pass ? 0 : 1);
}

int cmd_appendix(const CommonOpts& o, std::size_t samples, std::uint64_t seed,
                 double alpha, double delta)
{
    const auto cone = ap::build_cone(o.d, o.resolved_kappa());
    const auto exp_rep = ap::check_expansion_bound(samples, seed, o.d + 1);
    const auto wl = ap::build_angular_weight(cone, ap::WeightKind::LowerAlpha, alpha);
    const auto lower = ap::build_interface(cone, wl, ap::LeafKind::LowerPhi1);
    const auto low_rep = ap::check_interface_derivative_bounds(lower);
    const auto wu = ap::build_angular_weight(cone, ap::WeightKind::UpperDelta, delta);
    const auto upper_leaf = ap::build_upper_leaf(cone, wu, delta);
    const auto up_rep = ap::check_interface_derivative_bounds(upper_leaf.interface);
    json body;
    body["expansion_bound"] = report_json(exp_rep);
    body["lower_interface"] = report_json(low_rep);
    body["upper_interface"] = report_json(up_rep);
    const bool pass = exp_rep.pass() && low_rep.verdict != ap::Verdict::Fail &&
                      up_rep.verdict != ap::Verdict::Fail;
    std::cout << "appendix checks: " << (pass ? "PASS" : "FAIL") << "\n";
    std::ostringstream extra;
    extra << "samples=" << samples << ";seed=" << seed;
    return emit(o, "appendix-checks", extra.str(), body, pass ? 0 : 1);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Alt-Phillips cone construction and comparison-leaf certification"};
    app.require_subcommand(1);
    CommonOpts o;
    std::string leaf_kind = "upper", kappa_range = "1e-4:1e-2:8";
    double R_max = 50.0, eta = -1.0, T = 0.0;
    double alpha = 0.05, delta = 0.05, M_d = 0.0, tol = 1e-9;
    std::size_t samples = 100000;
    std::uint64_t seed = 42;
    ap::GridSpec grid;

    auto* stab = app.add_subcommand("stability", "discriminant and stability verdict");
    add_common(stab, o);

    auto* rad = app.add_subcommand("radial-foliate", "radial leaf construction + certification");
    add_common(rad, o);
    rad->add_option("--leaf", leaf_kind, "upper or lower")
        ->check(CLI::IsMember({"upper", "lower"}));
    rad->add_option("--R-max", R_max, "outer radius for the upper leaf IVP");
    rad->add_option("--eta", eta, "lower-leaf gluing parameter (default (2d)^{-3/2})");

    auto* build = app.add_subcommand("cone-build", "axially symmetric cone profile");
    add_common(build, o);
    build->add_option("--T", T, "matching-angle coefficient override");

    auto* sweep = app.add_subcommand("cone-sweep", "contact-measure scaling sweep");
    add_common(sweep, o, false);
    sweep->add_option("--kappa-range", kappa_range, "log range a:b:n");

    auto* energy = app.add_subcommand("energy", "cone energy in the unit ball");
    add_common(energy, o);

    auto* clower = app.add_subcommand("certify-lower", "lower comparison leaf");
    add_common(clower, o);
    clower->add_option("--alpha", alpha, "angular ramp exponent");
    clower->add_option("--tol", tol, "inconclusive-band tolerance")->check(CLI::PositiveNumber);
    clower->add_option("--grid", grid.n_theta, "angular grid density");

    auto* cupper = app.add_subcommand("certify-upper", "upper comparison leaf");
    add_common(cupper, o);
    cupper->add_option("--delta", delta, "angular ramp exponent");
    cupper->add_option("--M-d", M_d, "truncation-radius coefficient (0 = auto-search)");
    cupper->add_option("--tol", tol, "inconclusive-band tolerance")->check(CLI::PositiveNumber);
    cupper->add_option("--grid", grid.n_theta, "angular grid density");

    auto* appx = app.add_subcommand("appendix-checks", "expansion bound and interface derivatives");
    add_common(appx, o);
    appx->add_option("--samples", samples, "random samples for the expansion bound");
    appx->add_option("--seed", seed, "random seed");
    appx->add_option("--alpha", alpha, "lower-leaf exponent");
    appx->add_option("--delta", delta, "upper-leaf exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!o.config.empty())
            for (auto* sub : app.get_subcommands()) apply_flat_config(sub, o.config);
        grid.n_r = grid.n_theta;
        if (*stab) return cmd_stability(o);
        if (*rad) {
            if (eta <= 0.0) eta = std::pow(2.0 * o.d, -1.5);
            return cmd_radial_foliate(o, leaf_kind, R_max, eta);
        }
        if (*build) return cmd_cone_build(o, T);
        if (*sweep) return cmd_cone_sweep(o, kappa_range);
        if (*energy) return cmd_energy(o);
        if (*clower) return cmd_certify_lower(o, alpha, grid, tol);
        if (*cupper) return cmd_certify_upper(o, delta, M_d, grid, tol);
        if (*appx) return cmd_appendix(o, samples, seed, alpha, delta);
    } catch (const ap::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ap::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
