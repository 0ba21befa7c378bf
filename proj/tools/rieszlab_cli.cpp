/*
   Copyright 2026 The rieszlab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rieszlab/circle_riesz.hpp"
#include "rieszlab/estimators.hpp"
#include "rieszlab/harmonics.hpp"
#include "rieszlab/json_io.hpp"
#include "rieszlab/rw_search.hpp"
#include "rieszlab/sphere_riesz.hpp"

namespace fs = std::filesystem;
using namespace rieszlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitInvariantFailure = 3;

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 2026;
    std::string out_dir = "out";
    int threads = 1;
};

json load_config(const CommonOpts& opts) {
    std::ifstream in(opts.config_path);
    if (!in) throw std::invalid_argument("cannot open config file " + opts.config_path);
    json config;
    in >> config;
    return config;
}

std::string config_dir(const CommonOpts& opts) {
    const fs::path parent = fs::path(opts.config_path).parent_path();
    return parent.empty() ? std::string(".") : parent.string();
}

/// Every report embeds the fully resolved configuration and the seed, so a
/// report file is a complete recipe for reproducing itself.
json report_shell(const std::string& command, const CommonOpts& opts, json resolved_config) {
    return {{"command", command},
            {"seed", opts.seed},
            {"threads", opts.threads},
            {"config", std::move(resolved_config)}};
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << "\n";
}

/// CSV numbers carry 17 significant digits so repeated runs are
/// byte-identical and round-trip exactly.
std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run_circle_dim(const CommonOpts& opts) {
    json config = load_config(opts);
    const CircleRieszSpec spec = circle_spec_from_json(config.at("spec"));
    const std::size_t k_max = config.value("K", spec.size());
    if (k_max > spec.size() || k_max < 2)
        throw std::invalid_argument("circle-dim: K out of range (need 2 <= K <= spec length)");
    const std::size_t window = config.value("window", std::max<std::size_t>(1, k_max / 2));
    std::vector<double> t_grid = config.value("t_grid", std::vector<double>{});
    if (t_grid.empty())
        for (double t = 0.2; t < 0.85; t += 0.1) t_grid.push_back(t);
    const std::size_t direct_grid = config.value("direct_grid", std::size_t(4096));

    const LaurentPoly density = circle_partial_product(spec, k_max);
    const std::int64_t cutoff = config.value("cutoff", density.max_abs_frequency());

    std::vector<double> moduli;
    for (const cplx& c : spec.coefficients) moduli.push_back(std::abs(c));
    const CircleDimensionReport report = circle_dimension_report(spec.frequencies, moduli,
                                                                 k_max, window);

    json resolved = {{"spec", to_json(spec)},   {"K", k_max},
                     {"window", window},        {"t_grid", t_grid},
                     {"cutoff", cutoff},        {"direct_grid", direct_grid}};
    json out = report_shell("circle-dim", opts, resolved);
    out["report"] = to_json(report);

    json energies = json::array();
    std::string csv = "t,energy_fourier,energy_direct,ratio\n";
    for (double t : t_grid) {
        const double ef = energy_fourier(density, t, cutoff);
        const double ed = energy_direct(density, t, direct_grid);
        const double ratio = ed / ef;
        energies.push_back({{"t", t}, {"fourier", ef}, {"direct", ed}, {"ratio", ratio}});
        csv += csv_number(t) + "," + csv_number(ef) + "," + csv_number(ed) + "," +
               csv_number(ratio) + "\n";
    }
    out["energies"] = energies;

    fs::create_directories(opts.out_dir);
    write_json(fs::path(opts.out_dir) / "circle_dim_report.json", out);
    std::ofstream(fs::path(opts.out_dir) / "circle_energies.csv", std::ios::binary) << csv;
    std::cout << "circle-dim: alpha0 = " << report.alpha0
              << ", hausdorff lower bound = " << report.hausdorff_lb << "\n";
    return kExitOk;
}

int run_sphere_dim(const CommonOpts& opts) {
    json config = load_config(opts);
    const RieszTriple triple = triple_from_json(config.at("triple"), config_dir(opts));
    const std::size_t k_max = config.value("K", triple.size());
    if (k_max > triple.size() || k_max < 2)
        throw std::invalid_argument("sphere-dim: K out of range (need 2 <= K <= factor count)");
    const std::size_t window = config.value("window", std::max<std::size_t>(1, k_max / 2));
    std::vector<double> t_grid = config.value("t_grid", std::vector<double>{});
    if (t_grid.empty()) t_grid = {0.5, 1.0, 1.5, 2.0, 2.5};
    const std::size_t mc_pairs = config.value("mc_pairs", std::size_t(200000));

    const TripleValidationReport validation = validate(triple);
    if (!validation.valid()) {
        std::cerr << "sphere-dim: triple validation failed:\n";
        for (const auto& v : validation.violations)
            std::cerr << "  factor " << v.factor_index << ": " << v.what << "\n";
        return kExitInvariantFailure;
    }

    BasisCache cache;
    const std::string cache_path = config.value("basis_cache", std::string());
    if (!cache_path.empty() && fs::exists(cache_path)) {
        std::ifstream in(cache_path);
        json cj;
        in >> cj;
        load_basis_cache(cache, cj);
    }

    const SpherePartialProduct product = sphere_partial_product(triple, k_max);
    const SpectralDecomposition decomposition = decompose(product.poly, cache);
    const SphereDimensionReport bounds = sphere_bounds(triple, k_max, window);

    const double norm_sq = sphere_norm_sq(product.poly);
    const double parseval_err = std::abs(decomposition.total_norm_sq() - norm_sq);

    double off_structure = 0.0;
    const std::set<std::int64_t> structure = spectrum_structure(triple.frequencies(), k_max);
    for (const auto& [pq, comp] : decomposition.entries)
        if (structure.count(pq.first - pq.second) == 0) off_structure += comp.norm_sq;

    json resolved = {{"triple", to_json(triple)}, {"K", k_max},       {"window", window},
                     {"t_grid", t_grid},          {"mc_pairs", mc_pairs},
                     {"basis_cache", cache_path}};
    json out = report_shell("sphere-dim", opts, resolved);
    out["validation"] = to_json(validation);
    out["report"] = to_json(bounds);
    out["parseval"] = {{"norm_sq", norm_sq},
                       {"decomposition_total", decomposition.total_norm_sq()},
                       {"abs_error", parseval_err}};
    out["gamma_structure"] = {{"off_structure_mass", off_structure}};
    out["banded_spectrum"] = to_json(banded_spectrum(decomposition));
    out["basis_cache_version"] = kBasisCacheVersion;

    json energies = json::array();
    std::string csv = "t,energy_fourier,mc_estimate,mc_stderr,ratio\n";
    for (double t : t_grid) {
        const double ef = sphere_energy_sum(decomposition, t, 2);
        const McEstimate mc = mc_energy(triple, k_max, t, mc_pairs, opts.seed);
        energies.push_back({{"t", t},
                            {"fourier", ef},
                            {"mc_estimate", mc.estimate},
                            {"mc_stderr", mc.stderr_}});
        csv += csv_number(t) + "," + csv_number(ef) + "," + csv_number(mc.estimate) + "," +
               csv_number(mc.stderr_) + "," + csv_number(mc.estimate / ef) + "\n";
    }
    out["energies"] = energies;

    if (parseval_err > 1e-9) {
        std::cerr << "sphere-dim: Parseval identity violated by " << parseval_err << "\n";
        return kExitInvariantFailure;
    }
    if (off_structure > 1e-10) {
        std::cerr << "sphere-dim: spectral mass outside the Gamma structure: " << off_structure
                  << "\n";
        return kExitInvariantFailure;
    }

    if (!cache_path.empty()) write_json(cache_path, to_json(cache));
    fs::create_directories(opts.out_dir);
    write_json(fs::path(opts.out_dir) / "sphere_dim_report.json", out);
    std::ofstream(fs::path(opts.out_dir) / "sphere_energies.csv", std::ios::binary) << csv;
    std::cout << "sphere-dim: alpha0 = " << bounds.alpha0
              << ", final lower bound = " << bounds.final_lb << "\n";
    return kExitOk;
}

int run_rw_search(const CommonOpts& opts) {
    json config = load_config(opts);
    const int degree = config.at("j").get<int>();
    if (degree < 1 || degree > 24)
        throw std::invalid_argument("rw-search: j must lie in 1..24");
    const std::uint64_t budget = config.value("budget", std::uint64_t(20000));

    const RWCertificate cert = rw_search(degree, budget, opts.seed);

    json resolved = {{"j", degree}, {"budget", budget}};
    json out = report_shell("rw-search", opts, resolved);
    out["certificate"] = to_json(cert);
    out["evaluations"] = cert.evaluations;

    fs::create_directories(opts.out_dir);
    write_json(fs::path(opts.out_dir) / ("rw_certificate_j" + std::to_string(degree) + ".json"),
               to_json(cert));
    write_json(fs::path(opts.out_dir) / "rw_search_report.json", out);
    std::cout << "rw-search: j = " << degree << ", delta = " << cert.delta
              << ", sup bound = " << cert.sup_bound << "\n";
    return kExitOk;
}

int run_slice_check(const CommonOpts& opts) {
    json config = load_config(opts);
    const RieszTriple triple = triple_from_json(config.at("triple"), config_dir(opts));
    const std::size_t k_max = config.value("K", triple.size());
    if (k_max > triple.size())
        throw std::invalid_argument("slice-check: K out of range");
    const std::size_t slices = config.value("slices", std::size_t(10000));

    std::vector<MonomialPoly> functions;
    if (config.contains("functions"))
        for (const auto& fj : config.at("functions")) functions.push_back(monomial_from_json(fj));
    else {
        functions.push_back(MonomialPoly::constant(1.0));
        functions.push_back(MonomialPoly::monomial({1, 0, 1, 0}, 1.0));
        functions.push_back(MonomialPoly::monomial({1, 0, 0, 1}, 1.0));
    }

    json resolved = {{"triple", to_json(triple)}, {"K", k_max}, {"slices", slices}};
    json out = report_shell("slice-check", opts, resolved);
    json results = json::array();
    std::string csv = "function_index,lhs_re,lhs_im,rhs_re,rhs_im,stderr\n";
    bool all_consistent = true;
    for (std::size_t i = 0; i < functions.size(); ++i) {
        const DisintegrationResult r =
            disintegration_check(triple, k_max, functions[i], slices, opts.seed);
        json rj = to_json(r);
        rj["function"] = to_json(functions[i]);
        const double gap = std::abs(r.lhs - r.rhs);
        rj["abs_gap"] = gap;
        rj["consistent"] = gap <= 4.0 * r.stderr_ + 1e-12;
        all_consistent = all_consistent && rj["consistent"].get<bool>();
        results.push_back(std::move(rj));
        csv += std::to_string(i) + "," + csv_number(r.lhs.real()) + "," +
               csv_number(r.lhs.imag()) + "," + csv_number(r.rhs.real()) + "," +
               csv_number(r.rhs.imag()) + "," + csv_number(r.stderr_) + "\n";
    }
    out["results"] = results;

    fs::create_directories(opts.out_dir);
    write_json(fs::path(opts.out_dir) / "slice_check_report.json", out);
    std::ofstream(fs::path(opts.out_dir) / "slice_check.csv", std::ios::binary) << csv;
    std::cout << "slice-check: " << functions.size() << " functions, "
              << (all_consistent ? "all within 4 sigma" : "INCONSISTENT") << "\n";
    return all_consistent ? kExitOk : kExitInvariantFailure;
}

/// (scale, count) rows plus the fitted slope, per the estimator CSV contract.
std::string estimate_csv(const DimensionEstimate& est, const std::string& scale_name,
                         const std::string& count_name) {
    std::string csv = scale_name + "," + count_name + "\n";
    for (std::size_t i = 0; i < est.log_scale.size(); ++i)
        csv += csv_number(std::exp(est.log_scale[i])) + "," +
               csv_number(std::exp(est.log_count[i])) + "\n";
    csv += "# fitted_slope," + csv_number(est.value) + ",stderr," + csv_number(est.stderr_) + "\n";
    return csv;
}

int run_plh_demo(const CommonOpts& opts) {
    json config = load_config(opts);
    const std::size_t n = config.value("n", std::size_t(2));
    if (n < 2 || n > 3) throw std::invalid_argument("plh-demo: n must be 2 or 3");
    const std::size_t samples = config.value("samples", std::size_t(10000));

    const PlhExampleReport report = plh_example(n, samples, opts.seed);

    json resolved = {{"n", n}, {"samples", samples}};
    json out = report_shell("plh-demo", opts, resolved);
    out["report"] = to_json(report);
    out["spec"] = to_json(plh_sharp_example(n));

    fs::create_directories(opts.out_dir);
    write_json(fs::path(opts.out_dir) / "plh_report.json", out);
    std::ofstream(fs::path(opts.out_dir) / "plh_box_counts.csv", std::ios::binary)
        << estimate_csv(report.box, "boxes_per_side", "occupied");
    std::cout << "plh-demo: n = " << n
              << ", pluriharmonic = " << (report.pluriharmonic.pluriharmonic ? "true" : "false")
              << ", box dimension = " << report.box.value << "\n";
    return kExitOk;
}

int run_calibrate(const CommonOpts& opts) {
    json config = load_config(opts);
    const std::size_t samples = config.value("samples", std::size_t(10000));

    const auto circle = uniform_circle_samples(samples, opts.seed);
    const auto sphere = uniform_sphere_samples(samples, opts.seed + 1);

    std::vector<double> circle_radii, sphere_radii;
    for (double r = 0.05; r <= 0.5 + 1e-9; r *= std::pow(10.0, 1.0 / 7.0))
        circle_radii.push_back(r);
    for (double r = 0.15; r <= 0.7 + 1e-9; r *= std::pow(0.7 / 0.15, 1.0 / 7.0))
        sphere_radii.push_back(r);

    const DimensionEstimate dim_circle = correlation_dimension_circle(circle, circle_radii);
    const DimensionEstimate dim_sphere = correlation_dimension_sphere(sphere, sphere_radii);

    json resolved = {{"samples", samples}};
    json out = report_shell("calibrate", opts, resolved);
    out["circle"] = to_json(dim_circle);
    out["sphere"] = to_json(dim_sphere);
    const bool circle_ok = dim_circle.value >= 0.9 && dim_circle.value <= 1.1;
    const bool sphere_ok = dim_sphere.value >= 2.7 && dim_sphere.value <= 3.3;
    out["gates"] = {{"circle_in_0.9_1.1", circle_ok}, {"sphere_in_2.7_3.3", sphere_ok}};

    fs::create_directories(opts.out_dir);
    write_json(fs::path(opts.out_dir) / "calibrate_report.json", out);
    std::ofstream(fs::path(opts.out_dir) / "calibrate_circle.csv", std::ios::binary)
        << estimate_csv(dim_circle, "radius", "correlation");
    std::ofstream(fs::path(opts.out_dir) / "calibrate_sphere.csv", std::ios::binary)
        << estimate_csv(dim_sphere, "radius", "correlation");
    std::cout << "calibrate: dim(T) = " << dim_circle.value << ", dim(S^3) = " << dim_sphere.value
              << "\n";
    return (circle_ok && sphere_ok) ? kExitOk : kExitInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rieszlab: Riesz products, spherical harmonics and dimension bounds"};
    app.require_subcommand(1);

    CommonOpts opts;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "JSON experiment configuration")
            ->required();
        cmd->add_option("--seed", opts.seed, "master seed for all randomness");
        cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--threads", opts.threads, "worker thread cap (informational)");
    };

    auto* circle_dim = app.add_subcommand("circle-dim", "circle Riesz product dimension bounds");
    auto* sphere_dim = app.add_subcommand("sphere-dim", "sphere Riesz product dimension bounds");
    auto* rw = app.add_subcommand("rw-search", "search Ryll-Wojtaszczyk polynomial candidates");
    auto* slice = app.add_subcommand("slice-check", "disintegration consistency check");
    auto* plh = app.add_subcommand("plh-demo", "pluriharmonic torus example");
    auto* calibrate = app.add_subcommand("calibrate", "dimension estimator calibration gates");
    for (CLI::App* cmd : {circle_dim, sphere_dim, rw, slice, plh, calibrate}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (circle_dim->parsed()) return run_circle_dim(opts);
        if (sphere_dim->parsed()) return run_sphere_dim(opts);
        if (rw->parsed()) return run_rw_search(opts);
        if (slice->parsed()) return run_slice_check(opts);
        if (plh->parsed()) return run_plh_demo(opts);
        if (calibrate->parsed()) return run_calibrate(opts);
    } catch (const invariant_error& e) {
        std::cerr << "numerical invariant failure: " << e.what() << "\n";
        return kExitInvariantFailure;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
