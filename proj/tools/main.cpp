// Command-line front end: enclosure regions, eigenvalue computation,
// containment verification, kernel invariant sweeps, g-function tables, and
// exponent sweeps.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "halfline/harness.hpp"

namespace {

using namespace hls;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::uint64_t seed = 0;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts* o, bool config_required = true) {
    auto* c = cmd->add_option("--config", o->config_path, "configuration file");
    if (config_required) c->required();
    cmd->add_option("--out", o->out_dir, "output directory");
    cmd->add_option("--format", o->format, "csv|json|svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_option("--seed", o->seed, "random seed for sampled sweeps");
    cmd->add_option("--jobs", o->jobs, "worker thread count");
}

std::string fmt_complex(cplx z) {
    return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") +
           format_double(std::abs(z.imag())) + "i";
}

Campaign load_campaign(const CommonOpts& o) {
    Campaign c = campaign_from_config(Config::parse_file(o.config_path));
    if (o.seed != 0) c.seed = o.seed;
    if (o.jobs != 1) c.jobs = o.jobs;
    return c;
}

int cmd_bounds(const CommonOpts& o, const std::string& eig_file) {
    const Campaign c = load_campaign(o);
    std::filesystem::create_directories(o.out_dir);
    const std::filesystem::path dir(o.out_dir);

    std::vector<cplx> overlay;
    if (!eig_file.empty()) {
        const auto j = nlohmann::json::parse(read_text_file(eig_file));
        for (const auto& e : j)
            overlay.push_back({e.at("lambda_re").get<double>(),
                               e.at("lambda_im").get<double>()});
    }

    CsvTable table;
    table.header = {"theta", "radius", "provenance"};
    int index = 0;
    for (const auto& [label, q] : c.potentials) {
        std::vector<EnclosureRegion> regions;
        for (const auto& b : c.bounds) {
            EnclosureRegion region = build_region(q, b, c.bc, c.grid);
            for (std::size_t i = 0; i < region.thetas.size(); ++i)
                table.rows.push_back({format_double(region.thetas[i]),
                                      format_double(region.radii[i]),
                                      provenance_name(region.provenance)});
            regions.push_back(std::move(region));
        }
        if (o.format == "svg")
            write_text_file((dir / ("bounds_" + std::to_string(index) + ".svg")).string(),
                            render_svg(regions, overlay));
        ++index;
    }
    if (o.format != "svg")
        write_text_file((dir / "bounds.csv").string(), to_csv(table));
    return 0;
}

int cmd_eigs(const CommonOpts& o) {
    const Campaign c = load_campaign(o);
    const CampaignResult result = run_campaign(c);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& pr : result.per_potential)
        for (const auto& ev : pr.eigenvalues) {
            nlohmann::json e;
            e["potential"] = pr.label;
            e["lambda_re"] = ev.lambda.real();
            e["lambda_im"] = ev.lambda.imag();
            e["residual"] = ev.residual;
            e["method"] = ev.method == EigMethod::Shooting ? "shooting" : "dense_fd";
            e["truncation_L"] = ev.truncation_L;
            out.push_back(e);
        }
    std::filesystem::create_directories(o.out_dir);
    write_text_file((std::filesystem::path(o.out_dir) / "eigs.json").string(),
                    out.dump(2) + "\n");
    return 0;
}

int cmd_verify(const CommonOpts& o) {
    const Campaign c = load_campaign(o);
    const CampaignResult result = run_campaign(c);
    render_report(result, o.out_dir, /*csv*/ true, /*json*/ true,
                  /*svg*/ o.format == "svg");
    int failed = 0, passed = 0, skipped = 0;
    for (const auto& r : result.records) {
        if (r.skipped)
            ++skipped;
        else
            (r.pass ? passed : failed)++;
    }
    std::printf("verify: %d passed, %d failed, %d skipped\n", passed, failed, skipped);
    return failed > 0 ? 1 : 0;
}

int cmd_kernel_check(const CommonOpts& o) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> mod(0.1, 30.0);
    std::uniform_real_distribution<double> ang(0.05, 2.0 * M_PI - 0.05);
    std::uniform_real_distribution<double> au(1.2, 6.0);
    std::uniform_real_distribution<double> xu(0.0, 8.0);

    CsvTable table;
    table.header = {"lambda", "alpha", "x", "quadrature", "closed_form",
                    "global_bound", "slack"};
    bool ok = true;
    const BoundaryCondition bc = BoundaryCondition::dirichlet();
    for (int i = 0; i < 200; ++i) {
        const cplx lambda = std::polar(mod(rng), ang(rng));
        const double alpha = au(rng);
        const double x = xu(rng);
        const SpectralPoint sp = spectral_point(lambda);
        const RowNorm rn = kernel_row_norm(x, sp, alpha, bc);
        const double global = row_norm_global_bound(sp, alpha);
        const double slack = global - rn.quadrature;
        if (!(rn.quadrature <= rn.closed_form_bound + 1e-9 * (1.0 + rn.closed_form_bound)) ||
            !(rn.closed_form_bound <= global + 1e-9 * (1.0 + global)))
            ok = false;
        table.rows.push_back({fmt_complex(lambda), format_double(alpha), format_double(x),
                              format_double(rn.quadrature), format_double(rn.closed_form_bound),
                              format_double(global), format_double(slack)});
    }
    std::filesystem::create_directories(o.out_dir);
    write_text_file((std::filesystem::path(o.out_dir) / "kernel_check.csv").string(),
                    to_csv(table));
    std::printf("kernel-check: %s\n", ok ? "pass" : "FAIL");
    return ok ? 0 : 1;
}

int cmd_gfun(const CommonOpts& o, double amin, double amax, int count, double sigma,
             double mu_re, double mu_im) {
    CsvTable table;
    table.header = {"a", "g", "maximizer_y"};
    const bool robin = std::isfinite(sigma);
    for (int i = 0; i < count; ++i) {
        const double a = amin + (amax - amin) * i / std::max(1, count - 1);
        const GEval v = robin ? g_sigma(a, sigma, {mu_re, mu_im}) : g(a);
        table.rows.push_back({format_double(a), format_double(v.value),
                              format_double(v.maximizer_y)});
    }
    std::filesystem::create_directories(o.out_dir);
    write_text_file((std::filesystem::path(o.out_dir) / "gfun.csv").string(),
                    to_csv(table));
    return 0;
}

int cmd_sweep(const CommonOpts& o, double theta_ref) {
    const Campaign c = load_campaign(o);
    const Config cfg = Config::parse_file(o.config_path);
    const std::vector<double> grid = cfg.numbers("sweep", "grid");
    if (c.bounds.empty() || c.potentials.empty())
        throw ConfigError("sweep needs at least one potential and one bound selector");

    CsvTable table;
    table.header = {"potential", "parameter", "value", "radius", "admissible", "best"};
    for (const auto& [label, q] : c.potentials) {
        const auto rows = exponent_sweep(q, c.bounds.front(), grid, theta_ref, c.bc);
        for (const auto& row : rows)
            table.rows.push_back({label, row.label, format_double(row.value),
                                  row.admissible ? format_double(row.radius) : "inadmissible",
                                  row.admissible ? "1" : "0", row.best ? "1" : "0"});
    }
    std::filesystem::create_directories(o.out_dir);
    write_text_file((std::filesystem::path(o.out_dir) / "sweep.csv").string(),
                    to_csv(table));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex-plane eigenvalue enclosures for half-line Schrodinger operators"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string eig_file;
    double amin = -10.0, amax = 10.0, theta_ref = M_PI;
    int gcount = 401;
    double sigma = hls::infinity, mu_re = 0.0, mu_im = 1.0;

    auto* bounds = app.add_subcommand("bounds", "tabulate enclosure region boundaries");
    add_common(bounds, &o);
    bounds->add_option("--eigs", eig_file, "eigenvalue JSON to overlay in SVG output");

    auto* eigs = app.add_subcommand("eigs", "compute eigenvalues of the truncated problem");
    add_common(eigs, &o);

    auto* verify = app.add_subcommand("verify", "check eigenvalue containment in the regions");
    add_common(verify, &o);

    auto* kernel = app.add_subcommand("kernel-check", "resolvent row-norm invariant sweep");
    add_common(kernel, &o, /*config_required=*/false);

    auto* gfun = app.add_subcommand("gfun", "tabulate the oscillation envelope g");
    add_common(gfun, &o, /*config_required=*/false);
    gfun->add_option("--amin", amin);
    gfun->add_option("--amax", amax);
    gfun->add_option("--count", gcount);
    gfun->add_option("--sigma", sigma, "finite sigma switches to the Robin envelope");
    gfun->add_option("--mu-re", mu_re);
    gfun->add_option("--mu-im", mu_im);

    auto* sweep = app.add_subcommand("sweep", "exponent sweep of the first bound selector");
    add_common(sweep, &o);
    sweep->add_option("--theta", theta_ref, "reference argument for the swept radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(o, eig_file);
        if (eigs->parsed()) return cmd_eigs(o);
        if (verify->parsed()) return cmd_verify(o);
        if (kernel->parsed()) return cmd_kernel_check(o);
        if (gfun->parsed()) return cmd_gfun(o, amin, amax, gcount, sigma, mu_re, mu_im);
        if (sweep->parsed()) return cmd_sweep(o, theta_ref);
    } catch (const hls::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    }
    return 2;
}
