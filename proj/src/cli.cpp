#include "troph/cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "troph/errors.hpp"
#include "troph/io.hpp"

namespace troph {

namespace {

struct CommandContext {
    std::string input;
    std::string output;  // empty or "-" means stdout
    long budget = kDefaultOrbitBudget;
    long series_depth = 64;
};

void write_text(const CommandContext& ctx, const std::string& text) {
    if (ctx.output.empty() || ctx.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(ctx.output, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot open output file '" + ctx.output + "'");
    out << text;
    if (!out) throw Error(ErrorCode::ParseError, "failed writing output file '" + ctx.output + "'");
}

void emit(const CommandContext& ctx, const io::Json& doc) { write_text(ctx, doc.dump(2) + "\n"); }

const Lattice& need_torus(const io::ProblemFile& pf) {
    if (!pf.torus) throw Error(ErrorCode::ParseError, "this command requires 'torus'");
    return *pf.torus;
}

CanonicalDatum need_datum(const io::ProblemFile& pf) {
    if (!pf.canonical) throw Error(ErrorCode::ParseError, "this command requires 'canonical'");
    return CanonicalDatum::create(need_torus(pf), *pf.canonical);
}

const SimplicialMeasure& need_measure(const io::ProblemFile& pf) {
    if (!pf.skeleton_measure)
        throw Error(ErrorCode::ParseError, "this command requires 'skeleton_measure'");
    return *pf.skeleton_measure;
}

DoublingComplex need_complex(const io::ProblemFile& pf, long budget) {
    if (pf.complex_cells)
        return DoublingComplex{need_torus(pf), *pf.complex_cells,
                               DoublingComplex::Provenance::UserSupplied};
    if (pf.breakpoints) return build_orbit_complex(*pf.breakpoints, need_torus(pf), budget);
    throw Error(ErrorCode::ParseError, "this command requires 'breakpoints' or 'complex'");
}

io::Json transfer_report(const TransferSystem& sys, const RatVec& g_vec, const RatVec& f_vec) {
    io::Json cells = io::Json::array();
    for (const RationalSimplex& cell : sys.complex.cells)
        cells.push_back(io::simplex_json(cell));
    return io::Json{{"cells", std::move(cells)},
                    {"masses", io::vec_json(sys.masses)},
                    {"transfer", io::mat_json(sys.T)},
                    {"cell_integrals", io::vec_json(g_vec)},
                    {"canonical_integrals", io::vec_json(f_vec)}};
}

int cmd_solve_transfer(const CommandContext& ctx, const io::ProblemFile& pf) {
    CanonicalDatum datum = need_datum(pf);
    TransferSystem sys = transfer_matrix(need_complex(pf, ctx.budget));
    RatVec g_vec = cell_integrals(datum.g, sys.complex);
    RatVec f_vec = solve_canonical_integrals(sys, datum.g);
    io::Json doc{{"command", "solve-transfer"}};
    doc.update(transfer_report(sys, g_vec, f_vec));
    emit(ctx, doc);
    return 0;
}

int cmd_integrate_canonical(const CommandContext& ctx, const io::ProblemFile& pf) {
    CanonicalDatum datum = need_datum(pf);
    TransferSystem sys = transfer_matrix(need_complex(pf, ctx.budget));
    Rat value = local_integral(datum, sys, need_measure(pf), {});
    io::Json doc{{"command", "integrate-canonical"},
                 {"value", io::rat_json(value)},
                 {"canonical_integrals",
                  io::vec_json(solve_canonical_integrals(sys, datum.g))}};
    emit(ctx, doc);
    return 0;
}

int cmd_local_integral(const CommandContext& ctx, const io::ProblemFile& pf) {
    CanonicalDatum datum = need_datum(pf);
    TransferSystem sys = transfer_matrix(need_complex(pf, ctx.budget));
    Rat value = local_integral(datum, sys, need_measure(pf), pf.corrections);
    io::Json doc{{"command", "local-integral"},
                 {"value", io::rat_json(value)},
                 {"correction_count", pf.corrections.size()}};
    emit(ctx, doc);
    return 0;
}

int cmd_assemble_measure(const CommandContext& ctx, const io::ProblemFile& pf) {
    if (!pf.strata) throw Error(ErrorCode::ParseError, "this command requires 'strata'");
    SimplicialMeasure assembled = assemble_measure(*pf.strata);
    SimplicialMeasure pushed = pushforward_measure(*pf.strata, assembled);
    MassReport mass = mass_check(*pf.strata, pushed);
    io::Json doc{{"command", "assemble-measure"},
                 {"assembled", io::measure_json(assembled)},
                 {"pushforward", io::measure_json(pushed)},
                 {"mass", io::Json{{"ok", mass.ok},
                                   {"actual", io::rat_json(mass.actual)},
                                   {"expected", io::rat_json(mass.expected)}}}};
    emit(ctx, doc);
    return 0;
}

Rat place_local_integral(const io::Json& compute, long budget) {
    io::ProblemFile sub = io::parse_problem(compute);
    CanonicalDatum datum = need_datum(sub);
    TransferSystem sys = transfer_matrix(need_complex(sub, budget));
    return local_integral(datum, sys, need_measure(sub), sub.corrections);
}

int cmd_height(const CommandContext& ctx, const io::ProblemFile& pf) {
    if (!pf.ledger) throw Error(ErrorCode::ParseError, "this command requires 'ledger'");
    HeightProblem problem{pf.ledger->d, pf.ledger->degL, pf.ledger->lower_term, {}};
    for (const io::PlaceSpec& place : pf.ledger->places) {
        Rat value = place.value ? *place.value : place_local_integral(*place.compute, ctx.budget);
        problem.places.push_back({place.place, value});
    }
    HeightResult result = induction_step(problem);
    Certificate cert = assert_rational(result);

    io::Json places = io::Json::array();
    for (const PlaceRecord& rec : result.places)
        places.push_back(io::Json{{"place", rec.place},
                                  {"local_integral", io::rat_json(rec.local_integral)}});
    io::Json terms = io::Json::array();
    for (const auto& [label, value] : cert.terms)
        terms.push_back(io::Json{{"term", label}, {"value", value}});
    io::Json doc{{"command", "height"},
                 {"d", result.d},
                 {"degL", result.degL},
                 {"lower_term", io::rat_json(result.lower_term)},
                 {"places", std::move(places)},
                 {"intersection", io::rat_json(result.intersection)},
                 {"height", io::rat_json(result.height)},
                 {"certificate", io::Json{{"fraction", cert.fraction},
                                          {"intersection", cert.intersection},
                                          {"terms", std::move(terms)}}}};
    emit(ctx, doc);
    return 0;
}

// Deterministic sample stream for tate-check; decoupled from any library
// RNG so identical inputs give identical documents on any platform.
struct SampleStream {
    std::uint64_t state;
    std::uint64_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 33;
    }
    Rat rational(long max_den) {
        long den = 1 + static_cast<long>(next() % static_cast<std::uint64_t>(max_den));
        long num = static_cast<long>(next() % static_cast<std::uint64_t>(4 * max_den)) -
                   2 * max_den;
        return Rat(num, den);
    }
};

int cmd_tate_check(const CommandContext& ctx, const io::ProblemFile& pf) {
    std::vector<Rat> ells = pf.options.ell;
    if (ells.empty()) ells.emplace_back(1);
    SampleStream stream{pf.options.seed * 2 + 1};

    io::Json ell_reports = io::Json::array();
    long mismatches = 0;
    for (const Rat& ell : ells) {
        if (!(Rat(0) < ell)) throw Error(ErrorCode::ValidationFailed, "ell must be positive");
        CanonicalDatum datum = tate_datum(ell);
        std::vector<Rat> xs;
        for (long i = 0; i < pf.options.samples; ++i) xs.push_back(stream.rational(10000));
        for (const RatVec& p : pf.options.points) {
            if (p.size() != 1)
                throw Error(ErrorCode::DimensionMismatch, "tate-check points must be 1-dimensional");
            xs.push_back(p[0]);
        }
        long agreed = 0;
        io::Json bad = io::Json::array();
        Rat max_series_gap(0);
        bool series_ok = true;
        for (const Rat& x : xs) {
            TorusPoint point = reduce_point({x}, datum.lattice);
            Rat exact = lambda_exact_periodic(datum, point, ctx.budget);
            Rat oracle = tate_oracle(ell, x);
            if (exact == oracle) {
                ++agreed;
            } else {
                ++mismatches;
                bad.push_back(io::Json{{"x", io::rat_json(x)},
                                       {"orbit", io::rat_json(exact)},
                                       {"closed_form", io::rat_json(oracle)}});
            }
            SeriesValue series = lambda_series(datum, point, ctx.series_depth);
            Rat gap = (exact - series.value).abs();
            if (gap > max_series_gap) max_series_gap = gap;
            if (gap > series.bound) series_ok = false;
        }
        if (!series_ok) ++mismatches;
        ell_reports.push_back(io::Json{{"ell", io::rat_json(ell)},
                                       {"samples", static_cast<long>(xs.size())},
                                       {"agreed", agreed},
                                       {"mismatches", std::move(bad)},
                                       {"series_depth", ctx.series_depth},
                                       {"series_within_bound", series_ok},
                                       {"max_series_gap", io::rat_json(max_series_gap)}});
    }
    io::Json doc{{"command", "tate-check"},
                 {"ok", mismatches == 0},
                 {"ells", std::move(ell_reports)}};
    emit(ctx, doc);
    return mismatches == 0 ? 0 : 2;
}

int cmd_validate(const CommandContext& ctx, const io::ProblemFile& pf) {
    io::Json violations = io::Json::array();
    auto add = [&violations](const std::string& source, const std::string& message) {
        violations.push_back(io::Json{{"source", source}, {"message", message}});
    };

    if (pf.canonical)
        for (const Violation& v : pl_validate(*pf.canonical)) add("canonical", v.message);

    if (pf.complex_cells || pf.breakpoints) {
        DoublingComplex omega = need_complex(pf, ctx.budget);
        for (const Violation& v : verify_doubling_stable(omega)) add("complex", v.message);
    }

    if (pf.cocycle) {
        if (!pf.canonical)
            throw Error(ErrorCode::ParseError, "'cocycle' validation requires 'canonical'");
        for (const Violation& v : cocycle_check(*pf.canonical, *pf.cocycle))
            add("cocycle", v.message);
    }

    if (pf.strata) {
        SimplicialMeasure assembled = assemble_measure(*pf.strata);
        SimplicialMeasure pushed = pushforward_measure(*pf.strata, assembled);
        MassReport mass = mass_check(*pf.strata, pushed);
        if (!mass.ok)
            add("strata", "total mass " + mass.actual.str() + " differs from expected " +
                              mass.expected.str());
    }

    bool ok = violations.empty();
    io::Json doc{{"command", "validate"}, {"ok", ok}, {"violations", std::move(violations)}};
    emit(ctx, doc);
    return ok ? 0 : 2;
}

int cmd_plot(const CommandContext& ctx, const io::ProblemFile& pf) {
    CanonicalDatum datum = need_datum(pf);
    if (datum.lattice.dim() != 1)
        throw Error(ErrorCode::DimensionMismatch, "plot data requires a 1-dimensional torus");
    Rat period = datum.lattice.covolume();
    std::string out = "# x\tlambda\tx_exact\tlambda_exact\n";
    for (long k = 0; k < pf.options.resolution; ++k) {
        Rat x = Rat(k) * period / Rat(pf.options.resolution);
        Rat lambda = lambda_exact_periodic(datum, reduce_point({x}, datum.lattice), ctx.budget);
        out += x.decimal(12) + "\t" + lambda.decimal(12) + "\t" + x.str() + "\t" + lambda.str() +
               "\n";
    }
    write_text(ctx, out);
    return 0;
}

int dispatch(const std::string& command, const CommandContext& ctx) {
    io::ProblemFile pf = io::parse_problem(io::read_json_file(ctx.input));
    if (command == "solve-transfer") return cmd_solve_transfer(ctx, pf);
    if (command == "integrate-canonical") return cmd_integrate_canonical(ctx, pf);
    if (command == "assemble-measure") return cmd_assemble_measure(ctx, pf);
    if (command == "local-integral") return cmd_local_integral(ctx, pf);
    if (command == "height") return cmd_height(ctx, pf);
    if (command == "tate-check") return cmd_tate_check(ctx, pf);
    if (command == "validate") return cmd_validate(ctx, pf);
    if (command == "plot") return cmd_plot(ctx, pf);
    throw Error(ErrorCode::ParseError, "unknown command '" + command + "'");
}

}  // namespace

int run_command(int argc, char** argv) {
    CLI::App app{"exact canonical heights and measures on tropical tori"};
    app.require_subcommand(1);

    CommandContext ctx;
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"solve-transfer", "build the doubling transfer system and solve (4I - T)F = G"},
        {"integrate-canonical", "integrate the canonical metric against a skeleton measure"},
        {"assemble-measure", "assemble and push forward the canonical measure from strata"},
        {"local-integral", "skeleton term plus signed correction integrals"},
        {"height", "run the induction ledger and emit the rationality certificate"},
        {"tate-check", "compare the orbit evaluator against the closed form on a circle"},
        {"validate", "run all consistency audits present in the problem file"},
        {"plot", "tabulate the canonical metric on a circle for external plotting"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--input", ctx.input, "problem file (JSON)")->required();
        sub->add_option("--output", ctx.output, "output path (default: stdout)");
        sub->add_option("--budget", ctx.budget, "orbit state budget");
        sub->add_option("--series-depth", ctx.series_depth, "series truncation depth");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 5;
    }

    try {
        if (ctx.budget < 1) throw Error(ErrorCode::ParseError, "--budget must be positive");
        if (ctx.series_depth < 1)
            throw Error(ErrorCode::ParseError, "--series-depth must be positive");
        return dispatch(app.get_subcommands().front()->get_name(), ctx);
    } catch (const Error& e) {
        io::Json doc{{"status", "error"}, {"code", e.code_name()}, {"message", e.what()}};
        std::cerr << doc.dump(2) << "\n";
        return error_exit_code(e.code());
    } catch (const std::exception& e) {
        io::Json doc{{"status", "error"}, {"code", "Internal"}, {"message", e.what()}};
        std::cerr << doc.dump(2) << "\n";
        return 2;
    }
}

}  // namespace troph
