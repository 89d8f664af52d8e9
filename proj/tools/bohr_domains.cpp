// bohr-domains: seeded verification suites and Bohr-sum experiments on
// bounded symmetric domains, with JSON/CSV reports.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage error.

#include "bsdom/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace bsdom;

DomainSpec parse_domain(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw std::invalid_argument("--domain needs a kind");
    const std::string& kind = tokens[0];
    auto dims = [&](std::size_t n) {
        if (tokens.size() != n + 1)
            throw std::invalid_argument("--domain " + kind + " takes " +
                                        std::to_string(n) + " dimension argument(s)");
        std::vector<int> d;
        for (std::size_t i = 1; i < tokens.size(); ++i) d.push_back(std::stoi(tokens[i]));
        return d;
    };
    if (kind == "disc") return make_disc();
    if (kind == "typeI") {
        auto d = dims(2);
        return make_type_i(d[0], d[1]);
    }
    if (kind == "typeII") return make_type_ii(dims(1)[0]);
    if (kind == "typeIII") return make_type_iii(dims(1)[0]);
    if (kind == "typeIV") return make_type_iv(dims(1)[0]);
    if (kind == "polydisc") return make_polydisc(dims(1)[0]);
    if (kind == "ball") return make_hermitian_ball(dims(1)[0]);
    throw std::invalid_argument("unknown domain kind: " + kind);
}

disc::Grid parse_grid(const std::string& text) {
    disc::Grid g;
    std::istringstream is(text);
    std::string lo, hi, n;
    if (!std::getline(is, lo, ':') || !std::getline(is, hi, ':') || !std::getline(is, n))
        throw std::invalid_argument("grid must be lo:hi:count, got " + text);
    g.lo = std::stod(lo);
    g.hi = std::stod(hi);
    g.count = std::stoi(n);
    if (g.count < 1) throw std::invalid_argument("grid count must be >= 1");
    return g;
}

struct CliState {
    std::vector<std::string> domain_tokens;
    std::string u_text, z_text;
    std::string a_grid, r_grid, param_grid;
    std::string klass{"F0"};
    std::string format{"json"};
    RunConfig cfg;
};

void add_common(CLI::App* cmd, CliState& st, bool needs_domain) {
    if (needs_domain)
        cmd->add_option("--domain", st.domain_tokens,
                        "domain kind and dimensions, e.g. --domain typeI 2 2")
            ->expected(1, 3)
            ->required();
    cmd->add_option("--seed", st.cfg.seed, "random seed");
    cmd->add_option("--samples", st.cfg.samples, "sample count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--output", st.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", st.cfg.output_path, "write the report to this path");
    cmd->add_option("--tol-identity", st.cfg.tolerances.identity, "identity tolerance");
    cmd->add_option("--tol-norm", st.cfg.tolerances.norm, "norm tolerance");
    cmd->add_option("--tol-sampling", st.cfg.tolerances.sampling_rel,
                    "relative tolerance for sampled norms");
    cmd->add_option("--tol-derivative", st.cfg.tolerances.derivative_rel,
                    "relative tolerance for finite differences");
}

int finish(CliState& st) {
    if (!st.domain_tokens.empty()) st.cfg.domain = parse_domain(st.domain_tokens);
    st.cfg.output = (st.format == "csv") ? OutputFormat::csv : OutputFormat::json;
    if (!st.u_text.empty()) st.cfg.u_coords = parse_complex_list(st.u_text);
    if (!st.z_text.empty()) st.cfg.z_coords = parse_complex_list(st.z_text);
    if (!st.a_grid.empty()) st.cfg.a_grid = parse_grid(st.a_grid);
    if (!st.r_grid.empty()) st.cfg.r_grid = parse_grid(st.r_grid);
    if (!st.param_grid.empty()) st.cfg.param_grid = parse_grid(st.param_grid);

    if (st.klass == "F0")
        st.cfg.family.cls = disc::DiscClass::f0;
    else if (st.klass == "F0a")
        st.cfg.family.cls = disc::DiscClass::f0_alpha;
    else if (st.klass == "Fm" || st.klass == "F1")
        st.cfg.family.cls = disc::DiscClass::fm;
    else if (st.klass == "Fma")
        st.cfg.family.cls = disc::DiscClass::fm_alpha;
    else
        throw std::invalid_argument("unknown class: " + st.klass);
    if (st.klass == "F1") st.cfg.family.m = 1;

    Report rep = run(st.cfg);

    std::ostream& human = st.cfg.output_path.empty() ? std::cerr : std::cout;
    for (const auto& r : rep.records)
        human << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.anchor
              << "): " << r.value << " vs bound " << r.bound << "\n";
    for (const auto& kv : rep.results)
        human << "  " << kv.first << " = " << kv.second << "\n";
    human << rep.passed() << "/" << rep.records.size() << " checks passed in "
          << rep.wall_ms << " ms\n";

    if (st.cfg.output_path.empty())
        std::cout << serialize_report(rep, st.cfg.output);
    else
        emit_report(rep, st.cfg.output, st.cfg.output_path);
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for bounded symmetric domains"};
    app.require_subcommand(1);
    CliState st;

    auto* vi = app.add_subcommand("verify-identities",
                                  "Jordan triple identities on seeded samples");
    add_common(vi, st, true);
    vi->callback([&] { st.cfg.command = bsdom::Command::verify_identities; });

    auto* vn = app.add_subcommand("verify-norms",
                                  "spectral decomposition, Peirce and norm checks");
    add_common(vn, st, true);
    vn->callback([&] { st.cfg.command = bsdom::Command::verify_norms; });

    auto* vm = app.add_subcommand("verify-moebius", "automorphism and derivative checks");
    add_common(vm, st, true);
    vm->callback([&] { st.cfg.command = bsdom::Command::verify_moebius; });

    auto* bs = app.add_subcommand("bohr-sum", "normalized Bohr sum of one map at one point");
    add_common(bs, st, true);
    bs->add_option("--u", st.u_text, "base point coordinates, e.g. 0.9,0.5");
    bs->add_option("--z", st.z_text, "evaluation point coordinates")->required();
    bs->add_flag_callback("--extremal", [&] { st.cfg.map_kind = "extremal"; },
                          "use the extremal diagonal map at u");
    bs->add_option("--map", st.cfg.map_kind, "map kind: extremal, constant or identity");
    bs->add_option("--k-max", st.cfg.k_max, "highest extracted degree");
    bs->add_option("--quad-points", st.cfg.quad_points, "quadrature ring size");
    bs->callback([&] { st.cfg.command = bsdom::Command::bohr_sum; });

    auto* sw = app.add_subcommand("extremal-sweep",
                                  "Bohr sums of the extremal map along a e_1");
    add_common(sw, st, true);
    sw->add_option("--u", st.u_text, "base point coordinates")->required();
    sw->add_option("--a-grid", st.a_grid, "radius grid lo:hi:count");
    sw->add_option("--k-max", st.cfg.k_max, "highest extracted degree");
    sw->callback([&] { st.cfg.command = bsdom::Command::extremal_sweep; });

    auto* ds = app.add_subcommand("disc-search",
                                  "bracket one-dimensional Bohr numbers by grid search");
    add_common(ds, st, false);
    ds->add_option("--class", st.klass, "family class: F0, F0a, F1, Fm, Fma");
    ds->add_option("--m", st.cfg.family.m, "vanishing order for Fm/Fma");
    ds->add_option("--alpha", st.cfg.family.alpha, "fixed value at 0 for F0a/Fma");
    ds->add_option("--alpha-grid", st.param_grid, "family parameter grid lo:hi:count");
    ds->add_option("--param-grid", st.param_grid, "family parameter grid lo:hi:count");
    ds->add_option("--r-grid", st.r_grid, "radius grid lo:hi:count");
    ds->callback([&] { st.cfg.command = bsdom::Command::disc_search; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        return finish(st);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
