#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "halfline/harness.hpp"

using namespace hls;
using Catch::Approx;

namespace {

const char* kBasicConfig = R"(
# exponential well family
[potential]
kind = "exponential"
amplitude = [4.0, 5.0]
phase = [3.141592653589793, 3.3]
rate = 1.0

[bounds]
selectors = ["thm2", "cor2"]
p = 2.0
gamma = [1.0, 1.5]
theta_count = 180

[solver]
truncation = 40.0
box = [-6.0, -0.05, -0.2, 0.2]

[output]
seed = 11
jobs = 1
)";

} // namespace

TEST_CASE("config parsing: scalars, arrays, comments, inf") {
    const Config cfg = Config::parse(R"(
[alpha]
x = 2.5          # trailing comment
name = "hello # not a comment"
flag = true
limit = inf
neg = -inf
grid = [1.0, 2.5, -3]
words = ["a", "b,c"]

[empty]
)");
    CHECK(cfg.number("alpha", "x") == 2.5);
    CHECK(cfg.text("alpha", "name") == "hello # not a comment");
    CHECK(cfg.boolean_or("alpha", "flag", false));
    CHECK(std::isinf(cfg.number("alpha", "limit")));
    CHECK(cfg.number("alpha", "neg") < 0.0);
    CHECK(cfg.numbers("alpha", "grid") == std::vector<double>{1.0, 2.5, -3.0});
    CHECK(cfg.texts("alpha", "words") == std::vector<std::string>{"a", "b,c"});
    CHECK(cfg.has_section("empty"));
    CHECK_FALSE(cfg.has("alpha", "missing"));
    CHECK(cfg.number_or("alpha", "missing", 7.0) == 7.0);
    // scalar promoted to a one-element vector
    CHECK(cfg.numbers("alpha", "x") == std::vector<double>{2.5});
}

TEST_CASE("config parsing: malformed input throws ConfigError") {
    CHECK_THROWS_AS(Config::parse("[a]\nx 3\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("x = 3\n"), ConfigError); // key outside section
    CHECK_THROWS_AS(Config::parse("[a]\nx = \"open\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("[a]\nx = [1, 2\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("[a]\nx = zebra\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("[a\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("[a]\n= 1\n"), ConfigError);

    const Config cfg = Config::parse("[a]\nx = 1\ns = \"t\"\n");
    CHECK_THROWS_AS(cfg.number("a", "s"), ConfigError);
    CHECK_THROWS_AS(cfg.text("a", "x"), ConfigError);
    CHECK_THROWS_AS(cfg.number("a", "nope"), ConfigError);
    CHECK_THROWS_AS(cfg.number("nope", "x"), ConfigError);

    // error messages carry the offending line number
    try {
        Config::parse("[a]\nx = 1\ny = ?\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("format_double round-trips exactly") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(u(rng) * 300));
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(1.0) == "1");
    CHECK(std::strtod(format_double(0.1).c_str(), nullptr) == 0.1);
}

TEST_CASE("csv round-trip with quoting") {
    CsvTable t;
    t.header = {"name", "value", "note"};
    t.rows = {{"plain", "1.5", ""},
              {"comma, inside", "2", "a\"quoted\"b"},
              {"both, \"kinds\"", "-3", "x"}};
    const std::string text = to_csv(t);
    const CsvTable back = parse_csv(text);
    CHECK(back.header == t.header);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(back.rows[i] == t.rows[i]);
}

TEST_CASE("svg output contains the expected tagged elements") {
    ThetaGrid grid;
    grid.count = 64;
    const EnclosureRegion r1 =
        enclosure_region([](double) { return 2.0; }, Provenance::Thm2, grid);
    const EnclosureRegion r2 =
        enclosure_region([](double t) { return t < 3.0 ? 1.0 : infinity; },
                         Provenance::Cor1, grid);
    const std::string svg = render_svg({r1, r2}, {cplx(-1.0, 0.5)});

    auto count = [&](const std::string& needle) {
        std::size_t n = 0, pos = 0;
        while ((pos = svg.find(needle, pos)) != std::string::npos) {
            ++n;
            pos += needle.size();
        }
        return n;
    };
    CHECK(count("class=\"region\"") == 2);
    CHECK(count("class=\"eigenvalue\"") == 1);
    CHECK(count("class=\"essential\"") == 1);
    CHECK(count("class=\"axis\"") == 2);
    CHECK(count("data-provenance=\"thm2\"") == 1);
    CHECK(count("data-provenance=\"cor1\"") == 1);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("campaign construction from config") {
    const Campaign c = campaign_from_config(Config::parse(kBasicConfig));
    // 2 amplitudes x 2 phases
    REQUIRE(c.potentials.size() == 4);
    CHECK(c.potentials.front().first == "exp c=4 phi=3.14159");
    // thm2 (one) + cor2 over two gammas
    REQUIRE(c.bounds.size() == 3);
    CHECK(c.bounds[0].prov == Provenance::Thm2);
    CHECK(c.bounds[1].prov == Provenance::Cor2);
    CHECK(c.bounds[1].gamma == 1.0);
    CHECK(c.bounds[2].gamma == 1.5);
    CHECK(c.bc.is_dirichlet());
    CHECK_FALSE(c.auto_box);
    CHECK(c.search_box.x0 == -6.0);
    CHECK(c.solver.L == 40.0);
    CHECK(c.seed == 11);

    CHECK_THROWS_AS(
        campaign_from_config(Config::parse("[potential]\nkind = \"marshmallow\"\n")),
        ConfigError);
    CHECK_THROWS_AS(campaign_from_config(Config::parse(
                        "[potential]\nkind = \"zero\"\n[bounds]\nselectors = [\"thm9\"]\n")),
                    ConfigError);
}

TEST_CASE("robin sigma binding") {
    const Campaign c = campaign_from_config(Config::parse(
        "[potential]\nkind = \"zero\"\n[solver]\nsigma = 2.5\n"));
    CHECK(c.bc.sigma == 2.5);
    const Campaign d = campaign_from_config(Config::parse(
        "[potential]\nkind = \"zero\"\n[solver]\nsigma = \"inf\"\n"));
    CHECK(d.bc.is_dirichlet());
    CHECK_THROWS_AS(campaign_from_config(Config::parse(
                        "[potential]\nkind = \"zero\"\n[solver]\nsigma = \"soft\"\n")),
                    ConfigError);
}

TEST_CASE("build_region matches the underlying radius formulas") {
    const Potential q = Potential::exponential(5.0, M_PI, 1.0);
    BoundSpec b;
    b.prov = Provenance::Thm2;
    b.p = 2.0;
    ThetaGrid grid;
    grid.count = 90;
    const EnclosureRegion region = build_region(q, b, BoundaryCondition::dirichlet(), grid);
    const auto f = factorize(q, FactorScheme::SqrtSplit);
    const double na = lebesgue_norm(f.a, 2.0).value;
    const double nb = lebesgue_norm(f.b, 2.0).value;
    for (std::size_t i = 0; i < region.thetas.size(); i += 7)
        CHECK(region.radii[i] == Approx(bound_thm2(na, nb, region.thetas[i])).epsilon(1e-12));

    // inadmissible exponents surface as the documented exception
    BoundSpec bad;
    bad.prov = Provenance::Thm1;
    bad.r = 1.5;
    bad.s = 2.0; // 1/r + 1/s > 1
    CHECK_THROWS_AS(build_region(q, bad, BoundaryCondition::dirichlet(), grid),
                    InadmissibleExponents);
}

TEST_CASE("campaign run: containment records, determinism, parallel equivalence") {
    Campaign c;
    c.potentials.emplace_back("well", Potential::exponential(5.0, M_PI, 1.0));
    BoundSpec thm2;
    thm2.prov = Provenance::Thm2;
    BoundSpec rem1;
    rem1.prov = Provenance::Rem1;
    rem1.gamma = 1.0;
    c.bounds = {thm2, rem1};
    c.grid.count = 120;
    c.solver.L = 40.0;
    c.search_box = {-6.0, -0.05, -0.2, 0.2};
    c.auto_box = false;

    const CampaignResult r1 = run_campaign(c);
    REQUIRE(r1.records.size() == 2); // one eigenvalue, two bounds
    for (const auto& rec : r1.records) {
        CHECK_FALSE(rec.skipped);
        CHECK(rec.pass);
        CHECK(rec.margin > 0.0);
        CHECK(rec.lambda.real() == Approx(-0.5503161).margin(1e-5));
    }
    CHECK(r1.all_pass());

    // identical reruns and thread-count independence
    const CampaignResult r2 = run_campaign(c);
    Campaign cp = c;
    cp.potentials.emplace_back("well2", Potential::exponential(4.0, M_PI, 1.0));
    const CampaignResult seq = run_campaign(cp);
    cp.jobs = 2;
    const CampaignResult par = run_campaign(cp);
    REQUIRE(r2.records.size() == r1.records.size());
    REQUIRE(par.records.size() == seq.records.size());
    for (std::size_t i = 0; i < r1.records.size(); ++i) {
        CHECK(r2.records[i].lambda == r1.records[i].lambda);
        CHECK(r2.records[i].margin == r1.records[i].margin);
    }
    for (std::size_t i = 0; i < seq.records.size(); ++i) {
        CHECK(par.records[i].potential == seq.records[i].potential);
        CHECK(par.records[i].lambda == seq.records[i].lambda);
        CHECK(par.records[i].margin == seq.records[i].margin);
    }
}

TEST_CASE("campaign run: zero potential is a vacuous pass") {
    Campaign c;
    c.potentials.emplace_back("zero", Potential::zero());
    BoundSpec thm2;
    thm2.prov = Provenance::Thm2;
    c.bounds = {thm2};
    c.grid.count = 60;
    c.solver.L = 10.0;
    c.search_box = {-3.0, -0.05, -0.2, 0.2};
    c.auto_box = false;

    const CampaignResult r = run_campaign(c);
    CHECK(r.records.empty());
    CHECK(r.all_pass());
    const auto j = summary_json(r);
    CHECK(j.at("vacuous").get<bool>());
    CHECK(j.at("passed").get<int>() == 0);
}

TEST_CASE("campaign run: deliberately shrunk radii produce recorded failures") {
    Campaign c;
    c.potentials.emplace_back("well", Potential::exponential(5.0, M_PI, 1.0));
    // rem1's radius for this well is ~4.3; a tenth of that is inside |lambda|
    BoundSpec rem1;
    rem1.prov = Provenance::Rem1;
    rem1.gamma = 1.0;
    c.bounds = {rem1};
    c.grid.count = 120;
    c.solver.L = 40.0;
    c.search_box = {-6.0, -0.05, -0.2, 0.2};
    c.auto_box = false;
    c.sabotage_radii = true;

    const CampaignResult r = run_campaign(c);
    REQUIRE(r.records.size() == 1);
    CHECK_FALSE(r.records.front().pass);
    CHECK(r.records.front().margin < 0.0);
    CHECK_FALSE(r.all_pass());
    const auto j = summary_json(r);
    CHECK(j.at("failed").get<int>() == 1);
    CHECK(j.at("worst_margin").at("rem1").get<double>() < 0.0);
}

TEST_CASE("campaign run: inadmissible bound becomes a skip, not an abort") {
    Campaign c;
    c.potentials.emplace_back("well", Potential::exponential(5.0, M_PI, 1.0));
    BoundSpec bad;
    bad.prov = Provenance::Thm1;
    bad.r = 1.5;
    bad.s = 2.0;
    BoundSpec good;
    good.prov = Provenance::Thm2;
    c.bounds = {bad, good};
    c.grid.count = 120;
    c.solver.L = 40.0;
    c.search_box = {-6.0, -0.05, -0.2, 0.2};
    c.auto_box = false;

    const CampaignResult r = run_campaign(c);
    REQUIRE(r.records.size() == 2);
    CHECK(r.records[0].skipped);
    CHECK_FALSE(r.records[0].skip_reason.empty());
    CHECK_FALSE(r.records[1].skipped);
    CHECK(r.records[1].pass);
    CHECK(r.all_pass()); // skips do not fail the campaign
}

TEST_CASE("verification record csv round-trip") {
    Campaign c;
    c.potentials.emplace_back("well, with a comma", Potential::exponential(5.0, M_PI, 1.0));
    BoundSpec thm2;
    thm2.prov = Provenance::Thm2;
    c.bounds = {thm2};
    c.grid.count = 120;
    c.solver.L = 40.0;
    c.search_box = {-6.0, -0.05, -0.2, 0.2};
    c.auto_box = false;
    const CampaignResult r = run_campaign(c);
    REQUIRE_FALSE(r.records.empty());

    const auto back = records_from_csv(parse_csv(to_csv(records_to_csv(r.records))));
    REQUIRE(back.size() == r.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].potential == r.records[i].potential);
        CHECK(back[i].lambda == r.records[i].lambda); // bit-exact via format_double
        CHECK(back[i].radius == r.records[i].radius);
        CHECK(back[i].margin == r.records[i].margin);
        CHECK(back[i].prov == r.records[i].prov);
        CHECK(back[i].pass == r.records[i].pass);
    }
}

TEST_CASE("exponent sweep: power-integral bound over gamma") {
    const Potential q = Potential::exponential(1.0, M_PI, 1.0);
    BoundSpec b;
    b.prov = Provenance::Cor2;
    std::vector<double> grid;
    for (double g = 0.6; g <= 3.01; g += 0.2) grid.push_back(g);
    const auto rows = exponent_sweep(q, b, grid, M_PI);
    REQUIRE(rows.size() == grid.size());
    int best_count = 0;
    for (const auto& row : rows) {
        CHECK(row.admissible);
        CHECK(row.label == "gamma");
        CHECK(std::isfinite(row.radius));
        CHECK(row.radius > 0.0);
        if (row.best) ++best_count;
    }
    CHECK(best_count >= 1);
    // the flagged entry really is the minimum
    double best_radius = infinity;
    for (const auto& row : rows) best_radius = std::min(best_radius, row.radius);
    for (const auto& row : rows)
        if (row.best) CHECK(row.radius == best_radius);
}

TEST_CASE("exponent sweep: inadmissible entries are marked, not fatal") {
    const Potential q = Potential::exponential(1.0, M_PI, 1.0);
    BoundSpec thm1;
    thm1.prov = Provenance::Thm1;
    // r = s grid: entries with 2/r >= 1 (r <= 2) are outside the regime
    const auto rows = exponent_sweep(q, thm1, {1.5, 2.0, 3.0, 4.0}, M_PI);
    REQUIRE(rows.size() == 4);
    CHECK_FALSE(rows[0].admissible);
    CHECK_FALSE(rows[1].admissible);
    CHECK(rows[2].admissible);
    CHECK(rows[3].admissible);
    CHECK_FALSE(rows[0].best);

    BoundSpec cor3;
    cor3.prov = Provenance::Cor3;
    cor3.r = 3.0;
    // tau r <= 1 entries inadmissible
    const auto tau_rows = exponent_sweep(q, cor3, {0.1, 0.2, 1.0}, M_PI);
    CHECK_FALSE(tau_rows[0].admissible);
    CHECK_FALSE(tau_rows[1].admissible);
    CHECK(tau_rows[2].admissible);
}

TEST_CASE("report rendering writes csv, json and svg artifacts") {
    Campaign c;
    c.potentials.emplace_back("well", Potential::exponential(5.0, M_PI, 1.0));
    BoundSpec thm2;
    thm2.prov = Provenance::Thm2;
    c.bounds = {thm2};
    c.grid.count = 120;
    c.solver.L = 40.0;
    c.search_box = {-6.0, -0.05, -0.2, 0.2};
    c.auto_box = false;
    const CampaignResult r = run_campaign(c);

    const std::string dir = "harness_report_test_out";
    render_report(r, dir);
    const CsvTable t = parse_csv(read_text_file(dir + "/records.csv"));
    CHECK(t.header.front() == "potential");
    CHECK(t.rows.size() == r.records.size());
    const auto j = nlohmann::json::parse(read_text_file(dir + "/summary.json"));
    CHECK(j.at("passed").get<int>() == 1);
    const std::string svg = read_text_file(dir + "/region_0.svg");
    CHECK(svg.find("class=\"region\"") != std::string::npos);
    CHECK(svg.find("class=\"eigenvalue\"") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("empirical weak-norm constant is positive and below the assumed one") {
    const Potential q = Potential::exponential(5.0, M_PI, 1.0);
    std::vector<Eigenvalue> eigs;
    eigs.push_back({cplx(-0.5503161, 0.0), 0.0, EigMethod::Shooting, 40.0,
                    BoundaryCondition::dirichlet()});
    const double c_emp = empirical_cor5_constant(q, eigs, 1.0);
    CHECK(c_emp > 0.0);
    // the published inequality with C = 1 holds for this well, so the smallest
    // constant that still contains the eigenvalue must be at most 1
    CHECK(c_emp <= 1.0);
    CHECK(empirical_cor5_constant(Potential::zero(), eigs, 1.0) == 0.0);
}

TEST_CASE("sampled potential file loading") {
    const std::string path = "harness_sampled_test.dat";
    write_text_file(path, "# x re im\n0.0 -3.0 0.0\n1.0 -1.5 0.1\n2.0 -0.5\n");
    const Config cfg = Config::parse("[potential]\nkind = \"sampled\"\nsample_file = \"" +
                                     path + "\"\ntail_rate = 2.0\n");
    const auto pots = potentials_from_config(cfg);
    REQUIRE(pots.size() == 1);
    const Potential& q = pots.front().second;
    CHECK(q(0.5).real() == Approx(-2.25));
    CHECK(q(1.0).imag() == Approx(0.1));
    CHECK(std::abs(q(10.0)) < std::abs(q(2.0))); // exponential tail
    std::filesystem::remove(path);

    CHECK_THROWS_AS(potentials_from_config(Config::parse(
                        "[potential]\nkind = \"sampled\"\nsample_file = \"/nope/none\"\n")),
                    ConfigError);
}
