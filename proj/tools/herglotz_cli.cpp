// Command-line front end: evaluation, classification, measure transforms,
// Stieltjes inversion, rational certification, positivity checks, semigroup
// verification and Cayley transfer over a JSON interchange format.
//
// Exit codes: 0 success (a false certificate is still success), 1 domain
// errors (NotEndomatrix and friends), 2 malformed input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "herglotz/cayley.hpp"
#include "herglotz/errors.hpp"
#include "herglotz/evaluation.hpp"
#include "herglotz/inversion.hpp"
#include "herglotz/json_io.hpp"
#include "herglotz/positivity.hpp"
#include "herglotz/rational.hpp"
#include "herglotz/transform.hpp"

using namespace herglotz;
namespace io = herglotz::io;
using io::json;

namespace {

json read_input(const std::string& path) {
    std::stringstream buffer;
    if (path == "-" || path.empty()) {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open input file: " + path);
        buffer << in.rdbuf();
    }
    return json::parse(buffer.str());
}

/// Builtin evaluators for invert / check-positivity:
///   {"builtin":"affine","a":[re,im],"b":[re,im]}
///   {"builtin":"linear-fractional","a":..,"b":..,"c":..}
///   {"builtin":"atomic","s": number|"inf"}
///   {"builtin":"rational","num":[[re,im]..],"den":[..]}
/// or {"phi": {...}} for a represented function.
Evaluator make_evaluator(const json& j, double tol) {
    if (j.contains("phi")) {
        const HerglotzFunction phi = io::herglotz_from_json(j.at("phi"));
        return [phi, tol](Complex z) { return eval(phi, z, tol); };
    }
    const std::string kind = j.at("builtin").get<std::string>();
    if (kind == "affine") {
        const Complex a = io::complex_from_json(j.at("a"));
        const Complex b = io::complex_from_json(j.at("b"));
        return [a, b](Complex z) { return a * z + b; };
    }
    if (kind == "linear-fractional") {
        const Complex a = io::complex_from_json(j.at("a"));
        const Complex b = io::complex_from_json(j.at("b"));
        const Complex c = io::complex_from_json(j.at("c"));
        return [a, b, c](Complex z) { return a / (z + c) + b; };
    }
    if (kind == "atomic") {
        const ExtendedReal s = io::extended_real_from_json(j.at("s"));
        return [s](Complex z) { return eval_atomic(s, z); };
    }
    if (kind == "rational") {
        const RationalFunction f = io::rational_from_json(j);
        return [f](Complex z) { return f(z); };
    }
    throw std::invalid_argument("unknown builtin kind: " + kind);
}

BoundaryFunction builtin_boundary_function(const std::string& name) {
    if (name == "one")
        return [](const ExtendedReal&) { return Complex{1.0, 0.0}; };
    if (name == "inv1s2")
        return with_limit([](double x) { return Complex{1.0 / (1.0 + x * x), 0.0}; }, {0.0, 0.0});
    if (name == "s1s2")
        return with_limit([](double x) { return Complex{x / (1.0 + x * x), 0.0}; }, {0.0, 0.0});
    if (name == "atan")
        return with_limit([](double x) { return Complex{std::atan(x), 0.0}; },
                          {1.5707963267948966, 0.0});
    throw std::invalid_argument("unknown boundary function: " + name +
                                " (expected one|inv1s2|s1s2|atan)");
}

int run_selftest();

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for holomorphic self-maps of the upper half-plane"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string input_path = "-";
    double tol = 1e-10;
    unsigned seed = 0;
    double grid_min = -10.0, grid_max = 10.0;
    int grid_nodes = 512;
    double margin = 0.1;
    double threshold = 1e-3;
    double stoltz_b = 1.0;
    bool emit_grid = false;
    app.add_option("--input", input_path, "input JSON file, or - for stdin")->capture_default_str();
    app.add_option("--tol", tol, "quadrature tolerance")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized sampling (current subcommands sample deterministically)")->capture_default_str();
    app.add_option("--grid-min", grid_min)->capture_default_str();
    app.add_option("--grid-max", grid_max)->capture_default_str();
    app.add_option("--grid-nodes,--nodes", grid_nodes)->capture_default_str();
    app.add_option("--margin", margin, "strip height for positivity checks")->capture_default_str();
    app.add_option("--threshold", threshold, "support/decay threshold")->capture_default_str();
    app.add_option("--stoltz-b", stoltz_b, "split height b of the bounded-set checks")
        ->capture_default_str();
    app.add_flag("--emit-grid", emit_grid, "attach sampled (x, value) arrays to the output");

    auto* cmd_eval = app.add_subcommand("eval", "evaluate a represented function at a point");
    auto* cmd_classify = app.add_subcommand("classify", "classify an endomatrix");
    auto* cmd_transform = app.add_subcommand("transform", "representation of phi(M.z)");
    auto* cmd_invert = app.add_subcommand("invert", "recover a measure from an evaluator");
    auto* cmd_check_rational = app.add_subcommand("check-rational", "rational endofunction certificate");
    auto* cmd_check_pos = app.add_subcommand("check-positivity", "localized positivity sampling");
    auto* cmd_semigroup = app.add_subcommand("semigroup-check", "deviation of Lambda_MN from Lambda_M Lambda_N");
    auto* cmd_cayley = app.add_subcommand("cayley", "disk/half-plane transfer");
    auto* cmd_selftest = app.add_subcommand("selftest", "run the closed-form example suite");

    std::string semigroup_f = "inv1s2";
    cmd_semigroup->add_option("--function", semigroup_f, "one|inv1s2|s1s2|atan")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_selftest->parsed()) return run_selftest();

        const json in = read_input(input_path);
        json out;

        if (cmd_eval->parsed()) {
            const HerglotzFunction phi = io::herglotz_from_json(in.contains("phi") ? in.at("phi") : in);
            const Complex z = io::complex_from_json(in.at("z"));
            out = io::to_json(eval(phi, z, tol));
        } else if (cmd_classify->parsed()) {
            const Matrix2C m = io::matrix_from_json(in.contains("matrix") ? in.at("matrix") : in);
            out = io::to_json(classify(m));
        } else if (cmd_transform->parsed()) {
            const HerglotzFunction phi = io::herglotz_from_json(in.at("phi"));
            const Endomatrix m(io::matrix_from_json(in.at("matrix")));
            const auto res = transform_measure(phi.measure, phi.alpha, m, tol);
            out = json{{"alpha", res.alpha}, {"measure", io::to_json(res.measure)}};
            if (emit_grid && res.measure.density()) {
                json gx = json::array(), gy = json::array();
                for (int i = 0; i < grid_nodes; ++i) {
                    const double x = grid_min + (grid_max - grid_min) * i / (grid_nodes - 1);
                    gx.push_back(x);
                    gy.push_back(density_value(*res.measure.density(), x));
                }
                out["grid"] = json{{"x", gx}, {"density", gy}};
            }
        } else if (cmd_invert->parsed()) {
            const Evaluator f = make_evaluator(in, tol);
            std::vector<double> grid(static_cast<size_t>(grid_nodes));
            for (int i = 0; i < grid_nodes; ++i)
                grid[static_cast<size_t>(i)] =
                    grid_min + (grid_max - grid_min) * i / (grid_nodes - 1);
            const auto sup = support_estimate(f, grid, 1e-3, threshold);
            json atoms = json::array();
            // Atom probes at interval midpoints and endpoints of tight intervals.
            for (const auto& [lo, hi] : sup.intervals) {
                for (double c : {lo, 0.5 * (lo + hi), hi}) {
                    try {
                        const auto m = atom_mass_at(f, c);
                        if (m.value > threshold)
                            atoms.push_back(json{{"loc", c}, {"mass", m.value}, {"err", m.error}});
                    } catch (const NoConvergence&) {
                    }
                }
            }
            json densities = json::array();
            if (emit_grid) {
                for (double x : grid) {
                    try {
                        const auto d = density_at(f, x);
                        densities.push_back(json{{"x", x}, {"density", d.value}, {"err", d.error}});
                    } catch (const NoConvergence&) {
                        densities.push_back(json{{"x", x}, {"density", nullptr}});
                    }
                }
            }
            json support = json::array();
            for (const auto& [lo, hi] : sup.intervals) support.push_back(json::array({lo, hi}));
            out = json{{"support", support},
                       {"contains_infinity", sup.contains_infinity},
                       {"atom_candidates", atoms},
                       {"note", "support estimate is threshold-based and heuristic"}};
            try {
                const auto minf = mass_at_infinity(f);
                out["mass_at_infinity"] = json{{"value", minf.value}, {"err", minf.error}};
            } catch (const NoConvergence&) {
                out["mass_at_infinity"] = nullptr;
            }
            // Nontangential-limit probes at the detected apexes, reconstructing
            // the estimated atomic part first.
            {
                std::vector<BoundaryMeasure::Atom> est_atoms;
                for (const auto& a : atoms)
                    est_atoms.push_back({ExtendedReal(a.at("loc").get<double>()),
                                         a.at("mass").get<double>()});
                if (!out["mass_at_infinity"].is_null()) {
                    const double v = out["mass_at_infinity"]["value"].get<double>();
                    if (v > threshold) est_atoms.push_back({ExtendedReal::infinity(), v});
                }
                json probes = json::array();
                if (!est_atoms.empty()) {
                    const BoundaryMeasure est(est_atoms, std::nullopt);
                    for (const auto& a : est_atoms) {
                        json entry{{"apex", io::to_json(a.location)}};
                        try {
                            const auto rep = stoltz_verify(f, est, StoltzSector(a.location, 0.7853981633974483),
                                                           200, 1e-2, stoltz_b);
                            entry["residual"] = rep.outermost;
                            entry["pass"] = true;
                        } catch (const ViolationDetected& e) {
                            entry["pass"] = false;
                            entry["witness"] = io::to_json(e.witness);
                        } catch (const std::exception&) {
                            entry["pass"] = nullptr;
                        }
                        probes.push_back(entry);
                    }
                }
                out["stoltz_probes"] = probes;
            }
            if (emit_grid) out["density_grid"] = densities;
        } else if (cmd_check_rational->parsed()) {
            const RationalFunction f = io::rational_from_json(in);
            out = io::to_json(check_rational(f));
        } else if (cmd_check_pos->parsed()) {
            const Evaluator f = make_evaluator(in, tol);
            BoundarySupportEstimate sup;
            if (in.contains("support")) {
                for (const auto& iv : in.at("support"))
                    sup.intervals.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
                sup.contains_infinity = in.value("contains_infinity", false);
            } else {
                std::vector<double> grid(static_cast<size_t>(grid_nodes));
                for (int i = 0; i < grid_nodes; ++i)
                    grid[static_cast<size_t>(i)] =
                        grid_min + (grid_max - grid_min) * i / (grid_nodes - 1);
                sup = support_estimate(f, grid, 1e-3, threshold);
            }
            const auto rep = localized_positivity_check(f, sup, margin, grid_nodes > 64 ? 64 : grid_nodes);
            out = json{{"pass", rep.pass},
                       {"min_imag", rep.min_imag},
                       {"witness", io::to_json(rep.witness)},
                       {"samples", rep.samples},
                       {"note", "sampling-based evidence, not a proof"}};
        } else if (cmd_semigroup->parsed()) {
            const Endomatrix m(io::matrix_from_json(in.at("m")));
            const Endomatrix n(io::matrix_from_json(in.at("n")));
            std::vector<ExtendedReal> grid;
            for (int i = 0; i < 49; ++i)
                grid.emplace_back(grid_min + (grid_max - grid_min) * i / 48.0);
            grid.push_back(ExtendedReal::infinity());
            const auto f = builtin_boundary_function(semigroup_f);
            const double dev = semigroup_check(m, n, f, grid, std::max(tol, 1e-10));
            out = json{{"max_deviation", dev}};
            if (emit_grid) {
                const Endomatrix mn(m.matrix() * n.matrix());
                const auto values = markov_apply_grid(mn, f, grid, std::max(tol, 1e-10));
                json gs = json::array(), gv = json::array();
                for (size_t i = 0; i < grid.size(); ++i) {
                    gs.push_back(io::to_json(grid[i]));
                    gv.push_back(values[i].real());
                }
                out["grid"] = json{{"s", gs}, {"markov", gv}};
            }
        } else if (cmd_cayley->parsed()) {
            if (in.contains("point_disk")) {
                out = json{{"point_halfplane",
                            io::to_json(disk_to_halfplane(io::complex_from_json(in.at("point_disk"))))}};
            } else if (in.contains("point_halfplane")) {
                out = json{{"point_disk",
                            io::to_json(halfplane_to_disk(io::complex_from_json(in.at("point_halfplane"))))}};
            } else {
                const DiskMeasure mu = io::disk_measure_from_json(in.at("disk_measure"));
                const double imag0 = in.value("imag_at_zero", 0.0);
                out = json{{"phi", io::to_json(transfer_disk_measure(mu, imag0))}};
            }
        }

        std::cout << out.dump() << "\n";
        return 0;
    } catch (const json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

namespace {

int run_selftest() {
    int failures = 0;
    auto check = [&](bool ok, const std::string& name) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };
    const Complex i{0.0, 1.0};

    check(std::abs(eval_atomic(ExtendedReal(3.0), i) - i) < 1e-14, "phi_s fixes i");
    check(std::abs(eval_atomic(ExtendedReal(0.0), Complex(0, 2)) - Complex(0, 0.5)) < 1e-15,
          "phi_0(2i) = i/2");

    const HerglotzFunction ident{0.0, BoundaryMeasure::point_mass(ExtendedReal::infinity(), 1.0)};
    check(std::abs(eval(ident, Complex(2, 3)) - Complex(2, 3)) < 1e-13, "identity representation");

    check(std::holds_alternative<ContactLine>(classify(Matrix2C(1.0, i, 0.0, 1.0))),
          "shift classifies as contact line");
    check(std::holds_alternative<RealOrbit>(classify(Matrix2C(2.0, 1.0, 0.0, 1.0))),
          "real matrix classifies as real orbit");

    const auto dec = contact_decompose(Endomatrix(Matrix2C(1.0, i, 0.0, 1.0)),
                                       ExtendedReal::infinity());
    check(std::abs(dec.p - 1.0) < 1e-12 && std::abs(dec.q - i) < 1e-12 && dec.t.is_infinite(),
          "contact decomposition of the shift");

    const auto mu = mu_family(Endomatrix(Matrix2C(1.0, i, 0.0, 1.0)), ExtendedReal::infinity());
    check(std::abs(mu.total_mass() - 2.0) < 1e-10, "kernel mass of the shift");

    check(linear_fractional_check(Complex(-1, 0), Complex(0, 0), Complex(0, 0)),
          "a/(z) with a=-1 passes");
    check(!linear_fractional_check(Complex(2, 0), Complex(0, 1), Complex(0, 1)),
          "inequality violation rejected");
    check(affine_check(Complex(1, 0), i) && !affine_check(Complex(-1, 0), i), "affine criterion");

    const auto cert = check_rational(RationalFunction({Complex(-1.0, 0.0)}, {Complex(0.0, 0.0), Complex(1.0, 0.0)}));
    check(cert.verdict && std::abs(cert.representation->alpha) < 1e-12, "-1/z certified");

    const Evaluator affine_ev = [](Complex z) { return 2.0 * z + Complex(0, 1); };
    check(std::abs(mass_at_infinity(affine_ev).value - 2.0) < 1e-8, "mass at infinity of 2z+i");
    check(std::abs(density_at(affine_ev, 0.0).value - 1.0 / std::numbers::pi) < 1e-8,
          "Stieltjes density of z+i at 0");

    check(std::abs(disk_to_halfplane(Complex(0, 0)) - i) < 1e-15, "Cayley center to i");

    std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace
