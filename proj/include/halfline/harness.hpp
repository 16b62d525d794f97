#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "halfline/config.hpp"
#include "halfline/eigensolver.hpp"
#include "halfline/enclosure.hpp"
#include "halfline/report.hpp"
#include "halfline/svg.hpp"

namespace hls {

/// One bound to evaluate: which estimate, with which exponents/parameters.
struct BoundSpec {
    Provenance prov = Provenance::Thm2;
    double p = 2.0;
    double r = 4.0;
    double s = 4.0;
    double gamma = 1.0;
    double tau = 1.0;
    double constant = 1.0; // the interpolation constant of the weak-norm bound
    Thm4Variant thm4_variant = Thm4Variant::HolderConsistent;

    std::string params_label() const {
        std::ostringstream ss;
        ss << provenance_name(prov);
        switch (prov) {
            case Provenance::Thm1:
            case Provenance::Thm3Neg:
                ss << " r=" << r << " s=" << s << " p=" << p;
                break;
            case Provenance::Thm5Weak:
                ss << " r=" << r << " s=" << s << " p=" << p << " C=" << constant;
                break;
            case Provenance::Cor1:
                ss << " r=" << r << " p=" << p;
                break;
            case Provenance::Cor2:
            case Provenance::Rem1:
                ss << " gamma=" << gamma;
                break;
            case Provenance::Cor5:
                ss << " gamma=" << gamma << " C=" << constant;
                break;
            case Provenance::Cor3:
            case Provenance::Cor4:
                ss << " r=" << r << " tau=" << tau;
                break;
            case Provenance::Rem3:
                ss << " p=" << p << " tau=" << tau;
                break;
            case Provenance::Thm2:
                ss << " p=" << p;
                break;
            case Provenance::Thm4:
                ss << " p=" << p << " variant="
                   << (thm4_variant == Thm4Variant::Printed ? "printed" : "holder");
                break;
        }
        return ss.str();
    }
};

struct Campaign {
    std::vector<std::pair<std::string, Potential>> potentials;
    std::vector<BoundSpec> bounds;
    BoundaryCondition bc = BoundaryCondition::dirichlet();
    SolverSettings solver;
    ThetaGrid grid;
    Box search_box{0.0, 0.0, 0.0, 0.0};
    bool auto_box = true;   // size the box from the largest enclosure radius
    double box_factor = 1.5;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool sabotage_radii = false; // test-only: divide radii by 10 to force failures
};

struct VerificationRecord {
    std::string potential;
    cplx lambda{0.0, 0.0};
    double residual = 0.0;
    Provenance prov = Provenance::Thm2;
    std::string bound_params;
    double theta = 0.0;
    double radius = 0.0;
    double margin = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string skip_reason;
};

struct PotentialResult {
    std::string label;
    std::vector<EnclosureRegion> regions;
    std::vector<Eigenvalue> eigenvalues;
};

struct CampaignResult {
    std::vector<VerificationRecord> records;
    std::vector<PotentialResult> per_potential;
    std::uint64_t seed = 0;

    bool all_pass() const {
        for (const auto& r : records)
            if (!r.skipped && !r.pass) return false;
        return true;
    }
};

// -- region construction ----------------------------------------------------

/// Builds the enclosure region for one bound applied to one potential.
/// Throws InadmissibleExponents / NormDiverges for parameters the bound
/// rejects; those are reported as skips by the campaign driver.
inline EnclosureRegion build_region(const Potential& q, const BoundSpec& b,
                                    const BoundaryCondition& bc, const ThetaGrid& grid = {}) {
    EnclosureRegion region;
    switch (b.prov) {
        case Provenance::Thm1: {
            const auto f = factorize(q, FactorScheme::SqrtSplit);
            const double na = lebesgue_norm(f.a, b.r).value;
            const double nb = lebesgue_norm(f.b, b.s).value;
            const ExponentConfig cfg{b.p, b.r, b.s};
            cfg.require_thm1();
            region = enclosure_region(
                [&](double t) { return bound_thm1(na, nb, cfg, t); }, b.prov, grid);
            region.parameters = {{"norm_a", na}, {"norm_b", nb}, {"r", b.r}, {"s", b.s},
                                 {"p", b.p}};
            break;
        }
        case Provenance::Thm2: {
            const auto f = factorize(q, FactorScheme::SqrtSplit);
            const double na = lebesgue_norm(f.a, b.p).value;
            const double nb = lebesgue_norm(f.b, conjugate_exponent(b.p)).value;
            region = enclosure_region(
                [&](double t) { return bound_thm2(na, nb, t); }, b.prov, grid);
            region.parameters = {{"norm_a", na}, {"norm_b", nb}, {"p", b.p}};
            break;
        }
        case Provenance::Thm3Neg: {
            const auto f = factorize(q, FactorScheme::SqrtSplit);
            const double na = lebesgue_norm(f.a, b.r).value;
            const double nb = lebesgue_norm(f.b, b.s).value;
            const ExponentConfig cfg{b.p, b.r, b.s};
            const double R = bound_thm3_negative(na, nb, cfg);
            // the negative-eigenvalue bound constrains only the ray theta = pi;
            // sampled as a constant radius with the angular restriction noted
            region = enclosure_region([&](double) { return R; }, b.prov, grid);
            region.parameters = {{"norm_a", na}, {"norm_b", nb}, {"r", b.r}, {"s", b.s},
                                 {"theta_restricted", M_PI}};
            break;
        }
        case Provenance::Thm4: {
            const auto f = factorize(q, FactorScheme::SqrtSplit);
            const double na = lebesgue_norm(f.a, b.p).value;
            const double nb = lebesgue_norm(
                f.b, b.thm4_variant == Thm4Variant::Printed ? b.p
                                                            : conjugate_exponent(b.p)).value;
            const double sigma = bc.sigma;
            region = enclosure_region(
                [&](double t) { return bound_thm4(na * nb, sigma, t); }, b.prov, grid);
            region.parameters = {{"norm_a", na}, {"norm_b", nb}, {"p", b.p},
                                 {"sigma", sigma}};
            break;
        }
        case Provenance::Thm5Weak: {
            const auto f = factorize(q, FactorScheme::SqrtSplit);
            const double wa = weak_norm(f.a, b.r).value;
            const double wb = weak_norm(f.b, b.s).value;
            const ExponentConfig cfg{b.p, b.r, b.s};
            cfg.require_thm1();
            region = enclosure_region(
                [&](double t) { return bound_thm5_weak(wa, wb, cfg, t, b.constant); },
                b.prov, grid);
            region.parameters = {{"weak_a", wa}, {"weak_b", wb}, {"r", b.r}, {"s", b.s},
                                 {"C", b.constant}};
            break;
        }
        case Provenance::Cor1: {
            const auto f = factorize(q, FactorScheme::SqrtSplit);
            const double na = lebesgue_norm(f.a, b.r).value;
            const double nb = lebesgue_norm(f.b, b.r).value;
            require_cor1(b.r, b.p);
            region = enclosure_region(
                [&](double t) { return bound_cor1(na, nb, b.r, t, b.p); }, b.prov, grid);
            region.parameters = {{"norm_a", na}, {"norm_b", nb}, {"r", b.r}, {"p", b.p}};
            break;
        }
        case Provenance::Cor2: {
            require_cor2(b.gamma, b.p);
            const double I = std::pow(lebesgue_norm(q, b.gamma + 0.5).value, b.gamma + 0.5);
            region = enclosure_region(
                [&](double t) { return bound_cor2(I, b.gamma, t, b.p); }, b.prov, grid);
            region.parameters = {{"q_power_integral", I}, {"gamma", b.gamma}, {"p", b.p}};
            break;
        }
        case Provenance::Rem1: {
            const double I = std::pow(lebesgue_norm(q, b.gamma + 0.5).value, b.gamma + 0.5);
            const double R = bound_rem1(I, b.gamma);
            region = enclosure_region([&](double) { return R; }, b.prov, grid);
            region.parameters = {{"q_power_integral", I}, {"gamma", b.gamma},
                                 {"theta_restricted", M_PI}};
            break;
        }
        case Provenance::Cor3: {
            require_cor1(b.r, b.p);
            const auto f = factorize(q, FactorScheme::PowerWeight, b.tau);
            const double W = std::pow(lebesgue_norm(f.b, b.r).value, b.r);
            region = enclosure_region(
                [&](double t) { return bound_cor3(W, b.r, b.tau, t, b.p); }, b.prov, grid);
            region.parameters = {{"weighted_integral", W}, {"r", b.r}, {"tau", b.tau}};
            break;
        }
        case Provenance::Cor4: {
            require_cor1(b.r, b.p);
            const auto f = factorize(q, FactorScheme::ExpWeight, b.tau);
            const double W = std::pow(lebesgue_norm(f.b, b.r).value, b.r);
            region = enclosure_region(
                [&](double t) { return bound_cor4(W, b.r, b.tau, t, b.p); }, b.prov, grid);
            region.parameters = {{"exp_weighted_integral", W}, {"r", b.r}, {"tau", b.tau}};
            break;
        }
        case Provenance::Cor5: {
            require_cor2(b.gamma, b.p);
            const double w = std::pow(weak_norm(q, b.gamma + 0.5).value, b.gamma + 0.5);
            region = enclosure_region(
                [&](double) { return bound_cor5(w, b.gamma, b.constant, b.p); }, b.prov,
                grid);
            region.parameters = {{"weak_sup", w}, {"gamma", b.gamma}, {"C", b.constant}};
            break;
        }
        case Provenance::Rem3: {
            const auto f = factorize(q, FactorScheme::PowerWeight, b.tau);
            const double W = lebesgue_norm(f.b, b.p).value;
            region = enclosure_region(
                [&](double t) { return bound_rem3(W, b.p, b.tau, t); }, b.prov, grid);
            region.parameters = {{"weighted_p_norm", W}, {"p", b.p}, {"tau", b.tau}};
            break;
        }
    }
    return region;
}

/// true when the bound constrains only the negative real axis, so containment
/// is checked just for eigenvalues with theta = pi.
inline bool bound_is_negative_axis_only(Provenance p) {
    return p == Provenance::Thm3Neg || p == Provenance::Rem1;
}

// -- campaign driver --------------------------------------------------------

namespace harness_detail {

inline PotentialResult solve_one(const Campaign& c, std::size_t idx,
                                 std::vector<std::string>* errors) {
    PotentialResult out;
    out.label = c.potentials[idx].first;
    const Potential& q = c.potentials[idx].second;
    for (const auto& b : c.bounds) {
        try {
            EnclosureRegion region = build_region(q, b, c.bc, c.grid);
            if (c.sabotage_radii)
                for (double& r : region.radii) r /= 10.0;
            out.regions.push_back(std::move(region));
        } catch (const std::exception& e) {
            errors->push_back(b.params_label() + ": " + e.what());
            out.regions.push_back({}); // placeholder keeps bound indices aligned
        }
    }
    // Search box: configured directly, or sized to cover the tightest
    // full-plane enclosure with slack. Using the tightest (rather than the
    // largest) region keeps the box within reach of the root finder: radii
    // flare near the excluded angles and chasing them is pointless.
    Box box = c.search_box;
    if (c.auto_box) {
        double rbox = infinity;
        double rfallback = 0.0;
        for (std::size_t bi = 0; bi < c.bounds.size(); ++bi) {
            const auto& region = out.regions[bi];
            double rmax = 0.0;
            for (double r : region.radii)
                if (std::isfinite(r)) rmax = std::max(rmax, r);
            if (rmax <= 0.0) continue;
            rfallback = std::max(rfallback, rmax);
            if (!bound_is_negative_axis_only(c.bounds[bi].prov))
                rbox = std::min(rbox, rmax);
        }
        if (!std::isfinite(rbox)) rbox = rfallback > 0.0 ? rfallback : 1.0;
        const double e = c.box_factor * rbox;
        box = {-e, e, -e, e};
    }
    try {
        out.eigenvalues = find_eigenvalues(q, box, c.bc, c.solver);
    } catch (const std::exception& e) {
        errors->push_back(std::string("eigensolver: ") + e.what());
    }
    return out;
}

} // namespace harness_detail

inline CampaignResult run_campaign(const Campaign& c) {
    CampaignResult result;
    result.seed = c.seed;
    const std::size_t n = c.potentials.size();
    result.per_potential.resize(n);
    std::vector<std::vector<std::string>> errors(n);

    const int jobs = std::max(1, c.jobs);
    if (jobs == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            result.per_potential[i] = harness_detail::solve_one(c, i, &errors[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                    result.per_potential[i] = harness_detail::solve_one(c, i, &errors[i]);
            });
        for (auto& th : pool) th.join();
    }

    // deterministic record order: (potential, |lambda|, provenance)
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pr = result.per_potential[i];
        for (const auto& err : errors[i]) {
            VerificationRecord rec;
            rec.potential = pr.label;
            rec.skipped = true;
            rec.skip_reason = err;
            result.records.push_back(rec);
        }
        for (const auto& ev : pr.eigenvalues) {
            const SpectralPoint sp = spectral_point(ev.lambda);
            for (std::size_t bi = 0; bi < c.bounds.size(); ++bi) {
                const auto& region = pr.regions[bi];
                if (region.thetas.empty()) continue; // bound was skipped above
                const auto& b = c.bounds[bi];
                if (bound_is_negative_axis_only(b.prov) &&
                    std::abs(sp.theta - M_PI) > 1e-9)
                    continue;
                VerificationRecord rec;
                rec.potential = pr.label;
                rec.lambda = ev.lambda;
                rec.residual = ev.residual;
                rec.prov = b.prov;
                rec.bound_params = b.params_label();
                rec.theta = sp.theta;
                rec.radius = region_radius_at(region, sp.theta);
                rec.margin = rec.radius - std::abs(ev.lambda);
                rec.pass = rec.margin >= -1e-9 * (1.0 + rec.radius);
                result.records.push_back(rec);
            }
        }
    }
    return result;
}

// -- exponent sweep ---------------------------------------------------------

struct SweepRow {
    std::string label;
    double value = 0.0;   // the swept parameter
    double radius = 0.0;
    bool admissible = false;
    bool best = false;
};

/// Evaluates the bound's radius at theta_ref across a one-parameter grid.
/// Which parameter varies depends on the bound: (r) for the symmetric-norm
/// bounds, gamma for the power-integral forms, tau for the weighted forms.
inline std::vector<SweepRow> exponent_sweep(const Potential& q, BoundSpec base,
                                            const std::vector<double>& grid_values,
                                            double theta_ref,
                                            const BoundaryCondition& bc =
                                                BoundaryCondition::dirichlet()) {
    std::vector<SweepRow> rows;
    for (double v : grid_values) {
        BoundSpec b = base;
        std::string label;
        switch (base.prov) {
            case Provenance::Thm1:
            case Provenance::Thm5Weak:
                b.r = v;
                b.s = v;
                label = "r=s";
                break;
            case Provenance::Cor1:
                b.r = v;
                label = "r";
                break;
            case Provenance::Cor2:
            case Provenance::Cor5:
            case Provenance::Rem1:
                b.gamma = v;
                label = "gamma";
                break;
            case Provenance::Cor3:
            case Provenance::Cor4:
            case Provenance::Rem3:
                b.tau = v;
                label = "tau";
                break;
            default:
                b.p = v;
                label = "p";
                break;
        }
        SweepRow row;
        row.label = label;
        row.value = v;
        try {
            ThetaGrid single;
            single.count = 2;
            single.exclusion = theta_ref; // degenerate grid straddling theta_ref
            const EnclosureRegion region = build_region(q, b, bc, single);
            row.radius = region.radii.front();
            row.admissible = true;
        } catch (const std::exception&) {
            row.radius = infinity;
            row.admissible = false;
        }
        rows.push_back(row);
    }
    double best = infinity;
    for (const auto& row : rows)
        if (row.admissible) best = std::min(best, row.radius);
    for (auto& row : rows) row.best = row.admissible && row.radius == best;
    return rows;
}

// -- reporting --------------------------------------------------------------

inline CsvTable records_to_csv(const std::vector<VerificationRecord>& records) {
    CsvTable t;
    t.header = {"potential", "lambda_re", "lambda_im", "residual", "provenance",
                "bound_params", "theta", "radius", "margin", "pass", "skipped",
                "skip_reason"};
    for (const auto& r : records) {
        t.rows.push_back({r.potential, format_double(r.lambda.real()),
                          format_double(r.lambda.imag()), format_double(r.residual),
                          provenance_name(r.prov), r.bound_params, format_double(r.theta),
                          format_double(r.radius), format_double(r.margin),
                          r.pass ? "1" : "0", r.skipped ? "1" : "0", r.skip_reason});
    }
    return t;
}

inline std::vector<VerificationRecord> records_from_csv(const CsvTable& t) {
    std::vector<VerificationRecord> out;
    auto num = [](const std::string& s) { return std::strtod(s.c_str(), nullptr); };
    for (const auto& row : t.rows) {
        if (row.size() != 12) throw std::runtime_error("bad record row width");
        VerificationRecord r;
        r.potential = row[0];
        r.lambda = {num(row[1]), num(row[2])};
        r.residual = num(row[3]);
        for (int p = 0; p < 12; ++p)
            if (row[4] == provenance_name(static_cast<Provenance>(p)))
                r.prov = static_cast<Provenance>(p);
        r.bound_params = row[5];
        r.theta = num(row[6]);
        r.radius = num(row[7]);
        r.margin = num(row[8]);
        r.pass = row[9] == "1";
        r.skipped = row[10] == "1";
        r.skip_reason = row[11];
        out.push_back(r);
    }
    return out;
}

inline nlohmann::json summary_json(const CampaignResult& result) {
    nlohmann::json j;
    int passed = 0, failed = 0, skipped = 0;
    std::map<std::string, double> worst_margin;
    for (const auto& r : result.records) {
        if (r.skipped) {
            ++skipped;
            continue;
        }
        (r.pass ? passed : failed)++;
        const std::string key = provenance_name(r.prov);
        auto it = worst_margin.find(key);
        if (it == worst_margin.end() || r.margin < it->second) worst_margin[key] = r.margin;
    }
    j["passed"] = passed;
    j["failed"] = failed;
    j["skipped"] = skipped;
    j["vacuous"] = (passed + failed == 0);
    j["seed"] = result.seed;
    j["worst_margin"] = nlohmann::json::object();
    for (const auto& [key, value] : worst_margin) j["worst_margin"][key] = value;
    return j;
}

/// Writes records.csv, summary.json, and one SVG per potential into out_dir.
inline void render_report(const CampaignResult& result, const std::string& out_dir,
                          bool want_csv = true, bool want_json = true,
                          bool want_svg = true) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    if (want_csv)
        write_text_file((dir / "records.csv").string(), to_csv(records_to_csv(result.records)));
    if (want_json)
        write_text_file((dir / "summary.json").string(), summary_json(result).dump(2) + "\n");
    if (want_svg) {
        int index = 0;
        for (const auto& pr : result.per_potential) {
            std::vector<EnclosureRegion> regions;
            for (const auto& region : pr.regions)
                if (!region.thetas.empty()) regions.push_back(region);
            std::vector<cplx> eigs;
            for (const auto& ev : pr.eigenvalues) eigs.push_back(ev.lambda);
            const std::string name = "region_" + std::to_string(index++) + ".svg";
            write_text_file((dir / name).string(), render_svg(regions, eigs));
        }
    }
}

// -- empirical constants ----------------------------------------------------

/// Smallest C that would make the weak-norm power bound contain the given
/// eigenvalues: max over eigenvalues of |lambda|^gamma / sup_t t^{gamma+1/2}
/// lambda_q(t). Reported, never asserted.
inline double empirical_cor5_constant(const Potential& q,
                                      const std::vector<Eigenvalue>& eigs, double gamma) {
    const double w = std::pow(weak_norm(q, gamma + 0.5).value, gamma + 0.5);
    if (w == 0.0) return 0.0;
    double c = 0.0;
    for (const auto& ev : eigs)
        c = std::max(c, std::pow(std::abs(ev.lambda), gamma) / w);
    return c;
}

// -- config binding ---------------------------------------------------------

namespace harness_detail {

inline std::string fmt_param(double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

inline Potential load_sampled(const std::string& path, double tail_rate) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sample file: " + path);
    std::vector<double> xs;
    std::vector<cplx> vs;
    std::string line;
    while (std::getline(in, line)) {
        line = config_detail::trim(config_detail::strip_comment(line));
        if (line.empty()) continue;
        std::istringstream row(line);
        double x, re, im = 0.0;
        if (!(row >> x >> re)) throw ConfigError("bad sample row: " + line);
        row >> im; // third column optional
        xs.push_back(x);
        vs.push_back({re, im});
    }
    return Potential::sampled(xs, vs, tail_rate);
}

} // namespace harness_detail

inline Provenance provenance_from_name(const std::string& name) {
    for (int p = 0; p < 12; ++p)
        if (name == provenance_name(static_cast<Provenance>(p)))
            return static_cast<Provenance>(p);
    throw ConfigError("unknown bound selector: " + name);
}

/// Expands the [potential] section into the campaign family. Array-valued
/// amplitude/phase entries form a cartesian grid.
inline std::vector<std::pair<std::string, Potential>> potentials_from_config(
    const Config& cfg) {
    std::vector<std::pair<std::string, Potential>> out;
    const std::string kind = cfg.text("potential", "kind");
    if (kind == "zero") {
        out.emplace_back("zero", Potential::zero());
        return out;
    }
    if (kind == "sampled") {
        const std::string file = cfg.text("potential", "sample_file");
        const double tail = cfg.number_or("potential", "tail_rate", 1.0);
        out.emplace_back("sampled:" + file, harness_detail::load_sampled(file, tail));
        return out;
    }
    const std::vector<double> phases = cfg.numbers_or("potential", "phase", {0.0});
    if (kind == "exponential") {
        const std::vector<double> amps = cfg.numbers("potential", "amplitude");
        const double rate = cfg.number_or("potential", "rate", 1.0);
        for (double c : amps)
            for (double phi : phases)
                out.emplace_back("exp c=" + harness_detail::fmt_param(c) +
                                     " phi=" + harness_detail::fmt_param(phi),
                                 Potential::exponential(c, phi, rate));
    } else if (kind == "square_well") {
        const std::vector<double> depths = cfg.numbers("potential", "depth");
        const double width = cfg.number("potential", "width");
        for (double d : depths)
            for (double phi : phases)
                out.emplace_back("well V0=" + harness_detail::fmt_param(d) +
                                     " phi=" + harness_detail::fmt_param(phi),
                                 Potential::square_well(d, phi, width));
    } else if (kind == "power_decay") {
        const std::vector<double> amps = cfg.numbers("potential", "amplitude");
        const double rho = cfg.number("potential", "rho");
        for (double c : amps)
            for (double phi : phases)
                out.emplace_back("pow c=" + harness_detail::fmt_param(c) +
                                     " phi=" + harness_detail::fmt_param(phi),
                                 Potential::power_decay(c, phi, rho));
    } else {
        throw ConfigError("unknown potential kind: " + kind);
    }
    return out;
}

inline Campaign campaign_from_config(const Config& cfg) {
    Campaign c;
    c.potentials = potentials_from_config(cfg);

    const std::vector<std::string> selectors =
        cfg.has("bounds", "selectors") ? cfg.texts("bounds", "selectors")
                                       : std::vector<std::string>{"thm2"};
    const double p = cfg.number_or("bounds", "p", 2.0);
    const std::vector<double> rs = cfg.numbers_or("bounds", "r", {4.0});
    const std::vector<double> ss = cfg.numbers_or("bounds", "s", {4.0});
    const std::vector<double> gammas = cfg.numbers_or("bounds", "gamma", {1.0});
    const std::vector<double> taus = cfg.numbers_or("bounds", "tau", {1.0});
    const double C = cfg.number_or("bounds", "constant", 1.0);
    const std::string variant = cfg.text_or("bounds", "thm4_variant", "holder");

    for (const std::string& sel : selectors) {
        BoundSpec base;
        base.prov = provenance_from_name(sel);
        base.p = p;
        base.constant = C;
        base.thm4_variant =
            variant == "printed" ? Thm4Variant::Printed : Thm4Variant::HolderConsistent;
        switch (base.prov) {
            case Provenance::Cor2:
            case Provenance::Cor5:
            case Provenance::Rem1:
                for (double g : gammas) {
                    base.gamma = g;
                    c.bounds.push_back(base);
                }
                break;
            case Provenance::Cor3:
            case Provenance::Cor4:
            case Provenance::Rem3:
                for (double r : rs)
                    for (double tau : taus) {
                        base.r = r;
                        base.tau = tau;
                        c.bounds.push_back(base);
                    }
                break;
            case Provenance::Thm1:
            case Provenance::Thm3Neg:
            case Provenance::Thm5Weak:
                for (double r : rs)
                    for (double s : ss) {
                        base.r = r;
                        base.s = s;
                        c.bounds.push_back(base);
                    }
                break;
            case Provenance::Cor1:
                for (double r : rs) {
                    base.r = r;
                    c.bounds.push_back(base);
                }
                break;
            default:
                c.bounds.push_back(base);
                break;
        }
    }

    if (cfg.has("solver", "sigma")) {
        const ConfigValue& sv = cfg.at("solver", "sigma");
        if (sv.kind == ConfigValue::Kind::String) {
            if (sv.text != "inf" && sv.text != "dirichlet")
                throw ConfigError("solver.sigma must be a number, \"inf\", or \"dirichlet\"");
            c.bc = BoundaryCondition::dirichlet();
        } else {
            c.bc = BoundaryCondition::robin(cfg.number("solver", "sigma"));
        }
    }
    c.solver.L = cfg.number_or("solver", "truncation", 0.0);
    c.solver.margin = cfg.number_or("solver", "margin", 1e-3);
    c.solver.max_count = static_cast<int>(cfg.number_or("solver", "max_count", 64));
    c.solver.residual_tol = cfg.number_or("solver", "residual_tol", 1e-10);
    if (cfg.has("solver", "box")) {
        const auto box = cfg.numbers("solver", "box");
        if (box.size() != 4) throw ConfigError("solver.box needs [x0, x1, y0, y1]");
        c.search_box = {box[0], box[1], box[2], box[3]};
        c.auto_box = false;
    }
    c.box_factor = cfg.number_or("solver", "box_factor", 1.5);

    c.grid.count = static_cast<int>(cfg.number_or("bounds", "theta_count", 720));
    c.grid.exclusion = cfg.number_or("bounds", "theta_exclusion", 1e-3);

    c.seed = static_cast<std::uint64_t>(cfg.number_or("output", "seed", 0.0));
    c.jobs = static_cast<int>(cfg.number_or("output", "jobs", 1));
    c.sabotage_radii = cfg.boolean_or("bounds", "sabotage_radii", false);
    return c;
}

} // namespace hls
