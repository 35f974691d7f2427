// Command-line front end: batch enumeration, quantum-obstruction pipeline,
// Hurwitz-move jobs, local-model verification and the complete-intersection
// classifier, with JSON/CSV/text reports.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twistlab/twistlab.hpp"

namespace {

using namespace twistlab;
using reports::json;

struct Options {
    RunConfig cfg;
    std::string config_path;
    bool seed_from_cli = false;
    std::uint64_t cli_seed = 0;
};

void emit(const Options& opt, const std::string& payload) {
    if (opt.cfg.output_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opt.cfg.output_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + opt.cfg.output_path);
    out << payload;
    if (!payload.empty() && payload.back() != '\n') out << '\n';
}

void emit_json(const Options& opt, const json& j) { emit(opt, j.dump(2)); }

void require_json(const Options& opt) {
    if (opt.cfg.format == "csv")
        throw ConfigError("csv output is only available for flat tables "
                          "(exceptional, roots, ci sweep)");
}

std::vector<int> parse_degree_list(const std::string& s) {
    std::vector<int> out;
    for (auto v : monodromy::parse_int_csv(s)) {
        if (v < INT32_MIN || v > INT32_MAX) throw InvalidDegrees("degree out of range");
        out.push_back(int(v));
    }
    return out;
}

HomologyClass parse_class(const std::string& s) {
    return HomologyClass(monodromy::parse_int_csv(s));
}

int run_class_set(const Options& opt, const ClassSet& set) {
    if (opt.cfg.format == "csv") {
        emit(opt, reports::to_csv(set));
    } else if (opt.cfg.format == "text") {
        std::ostringstream os;
        os << set.predicate << " classes, k=" << set.k << ", count=" << set.size()
           << "\n";
        for (const auto& m : set.members) os << "  " << m.str() << "\n";
        emit(opt, os.str());
    } else {
        emit_json(opt, reports::to_json(set));
    }
    return 0;
}

std::vector<monodromy::VanishingTuple> load_tuples(const std::string& path,
                                                   monodromy::Mode mode) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open tuple file: " + path);
    auto tuples = monodromy::read_tuples(in, mode);
    if (tuples.empty()) throw UsageError("tuple file has no tuples: " + path);
    return tuples;
}

monodromy::Mode parse_mode(const std::string& s) {
    if (s == "reflect") return monodromy::Mode::Reflection;
    if (s == "transvect") return monodromy::Mode::Transvection;
    throw UsageError("mode must be reflect or transvect");
}

int run_local_verify(const Options& opt, const std::string& check, double s,
                     std::size_t samples) {
    using namespace local_model;
    require_json(opt);
    const RunConfig& cfg = opt.cfg;
    PointSampler sampler(cfg.seed);
    json rep;
    bool pass = false;

    if (check == "twist") {
        TwistProfile prof = TwistProfile::smoothstep(1.0);
        std::vector<CotangentPoint> pts;
        pts.reserve(samples);
        for (std::size_t i = 0; i < samples; ++i) pts.push_back(sampler.point());
        auto res = symplectic_residual(
            [&](const CotangentPoint& p) { return model_twist(prof, p, cfg.tol_constraint); },
            DeformedStructure{0.0}, pts, cfg.h_fd);
        pass = res.max_residual < 1e-6;
        rep = reports::verification_json("twist", res.samples, res.max_residual, 1e-6,
                                         pass);
    } else if (check == "flow") {
        double worst = 0;
        double tolerance = s == 0 ? 1e-8 : cfg.tol_period;
        for (std::size_t i = 0; i < samples; ++i) {
            CotangentPoint p = sampler.point();
            if (s == 0) {
                auto num = deformed_flow(DeformedStructure{0.0}, 1.0, p, cfg.rk4_steps,
                                         cfg.tol_constraint);
                worst = std::max(worst, distance(num, geodesic_flow(1.0, p)));
            } else {
                auto back = deformed_flow(DeformedStructure{s}, 2 * kPi, p,
                                          cfg.rk4_steps, cfg.tol_constraint);
                worst = std::max(worst, distance(back, p));
            }
        }
        pass = worst < tolerance;
        rep = reports::verification_json("flow", samples, worst, tolerance, pass);
    } else if (check == "fragility") {
        if (s == 0) throw UsageError("fragility check needs s != 0");
        TwistProfile prof = TwistProfile::plateau(1.0, 0.25);
        double worst = 0;
        for (std::size_t i = 0; i < samples; ++i) {
            CotangentPoint p = sampler.point_with_radius(
                prof.mu() * (0.2 + 0.75 * sampler.uniform01()));
            auto img = fragility_family(DeformedStructure{s}, prof, p, cfg.rk4_steps,
                                        cfg.tol_constraint);
            worst = std::max(worst, distance(img, p));
        }
        pass = worst < cfg.tol_period;
        rep = reports::verification_json("fragility", samples, worst, cfg.tol_period,
                                         pass);
    } else {
        throw UsageError("check must be twist, flow or fragility");
    }

    rep["seed"] = cfg.seed;
    rep["s"] = s;
    if (opt.cfg.format == "text") {
        std::ostringstream os;
        os << "check " << check << ": max residual " << rep["max_residual"]
           << " (tolerance " << rep["tolerance"] << ") -> "
           << (pass ? "pass" : "FAIL") << "\n";
        emit(opt, os.str());
    } else {
        emit_json(opt, rep);
    }
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"twistlab: lattice, quantum-homology, monodromy and local-model "
                 "computations for squared Dehn twists"};
    app.require_subcommand(1);
    app.add_option("--config", opt.config_path, "key=value config file");
    app.add_option("--format", opt.cfg.format, "output format: json|csv|text");
    app.add_option("--out", opt.cfg.output_path, "output path (default stdout)");
    auto* seed_opt = app.add_option("--seed", opt.cli_seed, "RNG seed");
    app.add_option("--tol-constraint", opt.cfg.tol_constraint, "constraint tolerance");
    app.add_option("--tol-period", opt.cfg.tol_period, "orbit-closure tolerance");
    app.add_option("--h-fd", opt.cfg.h_fd, "finite-difference step");
    app.add_option("--rk4-steps", opt.cfg.rk4_steps, "RK4 steps per full turn");

    // exceptional / roots / weyl / pentagon
    int k = 5, n_cfg = 5, b2 = 3;
    std::uint64_t cap = 0;
    auto* c_exc = app.add_subcommand("exceptional", "enumerate exceptional classes");
    c_exc->add_option("--k", k, "blowup count (1..8)")->required();
    auto* c_roots = app.add_subcommand("roots", "enumerate (-2)-classes orthogonal to K");
    c_roots->add_option("--k", k, "blowup count (1..8)")->required();
    auto* c_weyl = app.add_subcommand("weyl", "Weyl group order by BFS closure");
    c_weyl->add_option("--k", k, "blowup count (1..8)")->required();
    auto* weyl_cap_opt = c_weyl->add_option("--cap", cap, "element cap (default from config)");
    auto* c_pent = app.add_subcommand("pentagon", "search a cyclic root configuration");
    c_pent->add_option("--k", k, "blowup count (1..8)")->required();
    c_pent->add_option("--n", n_cfg, "cycle length (default 5)");

    // qh
    std::string x_str, y_str, l_str;
    bool raw = false;
    auto* c_qh = app.add_subcommand("qh", "quantum-homology computations");
    c_qh->require_subcommand(1);
    auto* c_star = c_qh->add_subcommand("star1", "first-order product of two classes");
    c_star->add_option("--k", k)->required();
    c_star->add_option("--x", x_str, "class, comma-separated coords")->required();
    c_star->add_option("--y", y_str, "class, comma-separated coords")->required();
    auto* c_prop = c_qh->add_subcommand("proportionality",
                                        "K-perp proportionality constant c_k");
    c_prop->add_option("--k", k)->required();
    c_prop->add_flag("--raw", raw, "run on the raw sum outside 5 <= k <= 8");
    auto* c_obs = c_qh->add_subcommand("obstruct", "squared-twist obstruction pipeline");
    c_obs->add_option("--k", k)->required();
    c_obs->add_option("--l", l_str, "root class, comma-separated coords")->required();
    auto* c_gt = c_qh->add_subcommand("general-type", "minimal-manifold obstruction");
    c_gt->add_option("--b2", b2)->required();

    // hurwitz
    std::string mode_str = "reflect", file_path, dir_str = "right",
                target_str = "identity";
    std::size_t move_index = 1;
    auto* c_hur = app.add_subcommand("hurwitz", "Hurwitz moves on vanishing-cycle tuples");
    c_hur->require_subcommand(1);
    auto* c_move = c_hur->add_subcommand("move", "apply one elementary move");
    c_move->add_option("--mode", mode_str, "reflect|transvect");
    c_move->add_option("--file", file_path, "tuple batch file")->required();
    c_move->add_option("--index", move_index, "position (1-based, < tuple length)")
        ->required();
    c_move->add_option("--dir", dir_str, "left|right");
    auto* c_orbit = c_hur->add_subcommand("orbit", "BFS orbit under all moves");
    c_orbit->add_option("--mode", mode_str, "reflect|transvect");
    c_orbit->add_option("--file", file_path, "tuple batch file")->required();
    auto* orbit_cap_opt = c_orbit->add_option("--cap", cap, "orbit cap (default from config)");
    auto* c_verify = c_hur->add_subcommand("verify", "compare total monodromies");
    c_verify->add_option("--mode", mode_str, "reflect|transvect");
    c_verify->add_option("--file", file_path, "tuple batch file")->required();
    c_verify->add_option("--target", target_str,
                         "identity: match identity; first: match first tuple");

    // local
    std::string check_str = "twist";
    double s_param = 0.0;
    std::size_t samples = 100;
    auto* c_local = app.add_subcommand("local", "numerical local-model checks");
    c_local->require_subcommand(1);
    auto* c_lv = c_local->add_subcommand("verify", "run one verification sweep");
    c_lv->add_option("--check", check_str, "twist|flow|fragility")->required();
    c_lv->add_option("--s", s_param, "deformation parameter");
    c_lv->add_option("--samples", samples, "number of sample points");

    // ci
    std::string degrees_str;
    std::int64_t max_product = 200;
    auto* c_ci = app.add_subcommand("ci", "complete-intersection catalog");
    c_ci->require_subcommand(1);
    auto* c_cls = c_ci->add_subcommand("classify", "classify one multidegree");
    c_cls->add_option("--degrees", degrees_str, "comma-separated degrees")->required();
    auto* c_sweep = c_ci->add_subcommand("sweep", "classify all degrees up to a product bound");
    c_sweep->add_option("--max-product", max_product, "product bound (default 200)");

    // allow global options (--seed, --format, ...) after the subcommand name
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (auto* s : a->get_subcommands([](CLI::App*) { return true; })) {
            s->fallthrough();
            enable_fallthrough(s);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        opt.cfg.apply_env();
        if (!opt.config_path.empty()) opt.cfg.apply_file(opt.config_path);
        // explicit CLI values override config file and environment
        if (seed_opt->count() > 0) opt.cfg.seed = opt.cli_seed;
        opt.cfg.validate();
        if (weyl_cap_opt->count() == 0 && orbit_cap_opt->count() == 0) cap = 0;

        if (*c_exc) return run_class_set(opt, enumerate_exceptional(BlowupLattice(k)));
        if (*c_roots) return run_class_set(opt, enumerate_roots(BlowupLattice(k)));

        if (*c_weyl) {
            require_json(opt);
            if (cap == 0) cap = opt.cfg.weyl_cap;
            BlowupLattice lat(k);
            auto gens = lat.simple_roots();
            auto res = weyl_closure(lat, gens, cap);
            json j{{"command", "weyl"}, {"k", k}, {"generators", gens.size()}};
            j.update(reports::to_json(res, cap));
            if (res.cap_exceeded) {
                auto orbit = reflection_orbit(lat, gens, gens.empty() ? lat.K() : gens[0],
                                              opt.cfg.orbit_cap);
                j["root_orbit_size"] = orbit.count;
                j["note"] = "closure refused under cap; root orbit reported instead";
            }
            emit_json(opt, j);
            return 0;
        }

        if (*c_pent) {
            require_json(opt);
            BlowupLattice lat(k);
            auto found = monodromy::find_cycle_configuration(lat, n_cfg);
            json j{{"command", "pentagon"}, {"k", k}, {"n", n_cfg},
                   {"found", bool(found)}};
            if (found) {
                json cycles = json::array(), gram = json::array();
                for (const auto& c : *found) cycles.push_back(reports::class_json(c));
                for (const auto& a : *found) {
                    json row = json::array();
                    for (const auto& b : *found) row.push_back(lat.pairing(a, b));
                    gram.push_back(row);
                }
                j["cycles"] = cycles;
                j["pairing_matrix"] = gram;
            }
            emit_json(opt, j);
            return found ? 0 : 1;
        }

        if (*c_star) {
            require_json(opt);
            BlowupLattice lat(k);
            auto res = quantum::star1_raw(lat, parse_class(x_str), parse_class(y_str));
            json j{{"command", "qh star1"}, {"k", k}};
            j.update(reports::to_json(res));
            emit_json(opt, j);
            return 0;
        }

        if (*c_prop) {
            require_json(opt);
            BlowupLattice lat(k);
            try {
                std::int64_t c = raw ? quantum::kperp_proportionality_raw(lat)
                                     : quantum::kperp_proportionality(lat);
                emit_json(opt, json{{"command", "qh proportionality"},
                                    {"k", k},
                                    {"proportional", true},
                                    {"c_k", c}});
                return 0;
            } catch (const quantum::NotProportional& e) {
                emit_json(opt, json{{"command", "qh proportionality"},
                                    {"k", k},
                                    {"proportional", false},
                                    {"witness_x", reports::class_json(e.x)},
                                    {"witness_y", reports::class_json(e.y)},
                                    {"sum", reports::class_json(e.sum)}});
                return 1;
            }
        }

        if (*c_obs) {
            require_json(opt);
            BlowupLattice lat(k);
            auto rep = quantum::frobenius_obstruction(lat, parse_class(l_str));
            json j{{"command", "qh obstruct"}};
            j.update(reports::to_json(rep));
            emit_json(opt, j);
            return 0;
        }

        if (*c_gt) {
            require_json(opt);
            auto rep = quantum::general_type_obstruction(b2);
            json j{{"command", "qh general-type"}};
            j.update(reports::to_json(rep));
            emit_json(opt, j);
            return 0;
        }

        if (*c_move || *c_orbit || *c_verify) {
            auto mode = parse_mode(mode_str);
            auto tuples = load_tuples(file_path, mode);
            if (*c_move) {
                auto dir = dir_str == "left" ? monodromy::Direction::Left
                          : dir_str == "right"
                              ? monodromy::Direction::Right
                              : throw UsageError("dir must be left or right");
                std::vector<monodromy::VanishingTuple> moved;
                for (const auto& t : tuples)
                    moved.push_back(monodromy::hurwitz_move(t, move_index, dir));
                if (opt.cfg.format == "json") {
                    json arr = json::array();
                    for (const auto& t : moved) arr.push_back(reports::to_json(t));
                    emit_json(opt, json{{"command", "hurwitz move"},
                                        {"index", move_index},
                                        {"direction", dir_str},
                                        {"tuples", arr}});
                } else {
                    std::ostringstream os;
                    for (const auto& t : moved) monodromy::write_tuple(os, t);
                    emit(opt, os.str());
                }
                return 0;
            }
            if (*c_orbit) {
                require_json(opt);
                if (cap == 0) cap = opt.cfg.orbit_cap;
                json arr = json::array();
                for (const auto& t : tuples) {
                    auto res = monodromy::hurwitz_orbit(t, cap);
                    json item{{"tuple", reports::to_json(t)}};
                    item.update(reports::to_json(res, cap));
                    arr.push_back(item);
                }
                emit_json(opt, json{{"command", "hurwitz orbit"}, {"orbits", arr}});
                return 0;
            }
            // verify
            require_json(opt);
            IntMat target;
            if (target_str == "identity")
                target = IntMat::identity(tuples[0].lattice.rank());
            else if (target_str == "first")
                target = monodromy::total_monodromy(tuples[0]);
            else
                throw UsageError("target must be identity or first");
            bool all_ok = true;
            json arr = json::array();
            for (const auto& t : tuples) {
                bool ok = monodromy::verify_relation(t, target);
                all_ok = all_ok && ok;
                arr.push_back(json{{"tuple", reports::to_json(t)},
                                   {"homologically_consistent", ok}});
            }
            emit_json(opt, json{{"command", "hurwitz verify"},
                                {"target", target_str},
                                {"all_consistent", all_ok},
                                {"tuples", arr}});
            return all_ok ? 0 : 1;
        }

        if (*c_lv) return run_local_verify(opt, check_str, s_param, samples);

        if (*c_cls) {
            require_json(opt);
            auto verdict = ci::classify(parse_degree_list(degrees_str));
            json j{{"command", "ci classify"}};
            j.update(reports::to_json(verdict));
            emit_json(opt, j);
            return 0;
        }

        if (*c_sweep) {
            std::vector<ci::SurfaceVerdict> rows;
            for (const auto& d : ci::degree_range(max_product))
                rows.push_back(ci::classify(d.degrees));
            if (opt.cfg.format == "csv") {
                emit(opt, reports::sweep_csv(rows));
            } else {
                json arr = json::array();
                for (const auto& v : rows) arr.push_back(reports::to_json(v));
                emit_json(opt, json{{"command", "ci sweep"},
                                    {"max_product", max_product},
                                    {"count", rows.size()},
                                    {"rows", arr}});
            }
            return 0;
        }

        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CheckError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
