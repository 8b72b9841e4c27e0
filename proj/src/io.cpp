#include "troph/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "troph/errors.hpp"

namespace troph::io {

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw Error(ErrorCode::ParseError, message);
}

void check_keys(const Json& j, const char* where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(std::string(where) + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) fail("unknown field '" + item.key() + "' in " + where);
    }
}

const Json& field(const Json& j, const char* where, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(std::string(where) + " is missing required field '" + key + "'");
    return *it;
}

const Json* opt_field(const Json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

long parse_long(const Json& j, const char* where) {
    if (!j.is_number_integer()) fail(std::string(where) + " must be a JSON integer");
    return j.get<long>();
}

std::string parse_string(const Json& j, const char* where) {
    if (!j.is_string()) fail(std::string(where) + " must be a string");
    return j.get<std::string>();
}

const Json& expect_array(const Json& j, const char* where) {
    if (!j.is_array()) fail(std::string(where) + " must be an array");
    return j;
}

int parse_sign(const Json& j) {
    long s = parse_long(j, "sign");
    if (s != 1 && s != -1) fail("sign must be 1 or -1");
    return static_cast<int>(s);
}

}  // namespace

Rat parse_rat(const Json& j) {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_number_float()) fail("floating-point literals are not exact; write \"p/q\"");
    fail("expected a rational as \"p/q\" string or integer");
}

RatVec parse_vec(const Json& j) {
    RatVec v;
    for (const Json& entry : expect_array(j, "vector")) v.push_back(parse_rat(entry));
    return v;
}

Mat parse_mat(const Json& j) {
    std::vector<RatVec> rows;
    for (const Json& row : expect_array(j, "matrix")) rows.push_back(parse_vec(row));
    if (rows.empty()) fail("matrix needs at least one row");
    for (const RatVec& r : rows)
        if (r.size() != rows[0].size()) fail("matrix rows have unequal lengths");
    return Mat::from_rows(rows);
}

Lattice parse_lattice(const Json& j) {
    check_keys(j, "lattice", {"basis"});
    return Lattice::create(parse_mat(field(j, "lattice", "basis")));
}

RationalSimplex parse_simplex(const Json& j) {
    std::vector<RatVec> vertices;
    for (const Json& v : expect_array(j, "simplex")) vertices.push_back(parse_vec(v));
    return RationalSimplex::create(std::move(vertices));
}

AffineMap parse_affine_map(const Json& j) {
    check_keys(j, "map", {"linear", "translation"});
    return AffineMap{parse_mat(field(j, "map", "linear")),
                     parse_vec(field(j, "map", "translation"))};
}

PLFunction parse_pl(const Json& j, const Lattice& lattice) {
    check_keys(j, "piecewise linear function", {"pieces"});
    std::vector<AffinePiece> pieces;
    for (const Json& p : expect_array(field(j, "piecewise linear function", "pieces"), "pieces")) {
        check_keys(p, "piece", {"cell", "gradient", "constant"});
        pieces.push_back({parse_simplex(field(p, "piece", "cell")),
                          parse_vec(field(p, "piece", "gradient")),
                          parse_rat(field(p, "piece", "constant"))});
    }
    return PLFunction::create(lattice, std::move(pieces));
}

SimplicialMeasure parse_measure(const Json& j, const Lattice& lattice) {
    check_keys(j, "measure", {"terms"});
    SimplicialMeasure mu{lattice, {}};
    for (const Json& t : expect_array(field(j, "measure", "terms"), "measure terms")) {
        check_keys(t, "measure term", {"coeff", "simplex"});
        mu.terms.push_back({parse_rat(field(t, "measure term", "coeff")),
                            parse_simplex(field(t, "measure term", "simplex"))});
    }
    return mu;
}

Json rat_json(const Rat& r) { return Json(r.str()); }

Json vec_json(const RatVec& v) {
    Json out = Json::array();
    for (const Rat& x : v) out.push_back(rat_json(x));
    return out;
}

Json mat_json(const Mat& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(rat_json(m.at(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

Json simplex_json(const RationalSimplex& s) {
    Json out = Json::array();
    for (const RatVec& v : s.vertices()) out.push_back(vec_json(v));
    return out;
}

Json measure_json(const SimplicialMeasure& mu) {
    Json terms = Json::array();
    for (const MeasureTerm& t : mu.terms)
        terms.push_back(Json{{"coeff", rat_json(t.coeff)}, {"simplex", simplex_json(t.simplex)}});
    return Json{{"terms", std::move(terms)}};
}

namespace {

StrataBundle parse_strata(const Json& j, const std::optional<Lattice>& default_torus) {
    check_keys(j, "strata bundle",
               {"d", "map_degree", "expected_mass", "torus", "strata"});
    const Json* own_torus = opt_field(j, "torus");
    if (!own_torus && !default_torus)
        fail("strata bundle needs a torus (own field or top-level)");
    StrataBundle bundle{parse_long(field(j, "strata bundle", "d"), "d"),
                        opt_field(j, "map_degree")
                            ? parse_long(*opt_field(j, "map_degree"), "map_degree")
                            : 1,
                        parse_long(field(j, "strata bundle", "expected_mass"), "expected_mass"),
                        own_torus ? parse_lattice(*own_torus) : *default_torus,
                        {}};
    for (const Json& s : expect_array(field(j, "strata bundle", "strata"), "strata")) {
        check_keys(s, "stratum",
                   {"name", "e", "simplex", "degree", "lambda_L", "lambda", "map",
                    "nondegenerate"});
        StratumDatum datum{parse_string(field(s, "stratum", "name"), "name"),
                           parse_long(field(s, "stratum", "e"), "e"),
                           parse_simplex(field(s, "stratum", "simplex")),
                           parse_long(field(s, "stratum", "degree"), "degree"),
                           parse_lattice(field(s, "stratum", "lambda_L")),
                           parse_lattice(field(s, "stratum", "lambda")),
                           parse_affine_map(field(s, "stratum", "map")),
                           true};
        if (const Json* nd = opt_field(s, "nondegenerate")) {
            if (!nd->is_boolean()) fail("nondegenerate must be a boolean");
            datum.nondegenerate = nd->get<bool>();
        }
        bundle.strata.push_back(std::move(datum));
    }
    return bundle;
}

CocycleDatum parse_cocycle(const Json& j) {
    check_keys(j, "cocycle", {"generators"});
    CocycleDatum out;
    for (const Json& g : expect_array(field(j, "cocycle", "generators"), "generators")) {
        check_keys(g, "cocycle generator", {"z_gradient", "z_constant", "c"});
        out.generators.push_back({parse_vec(field(g, "cocycle generator", "z_gradient")),
                                  parse_rat(field(g, "cocycle generator", "z_constant")),
                                  parse_rat(field(g, "cocycle generator", "c"))});
    }
    return out;
}

LedgerSpec parse_ledger(const Json& j) {
    check_keys(j, "ledger", {"d", "degL", "lower_term", "places"});
    LedgerSpec spec;
    spec.d = parse_long(field(j, "ledger", "d"), "d");
    spec.degL = parse_long(field(j, "ledger", "degL"), "degL");
    spec.lower_term = parse_rat(field(j, "ledger", "lower_term"));
    for (const Json& p : expect_array(field(j, "ledger", "places"), "places")) {
        check_keys(p, "place", {"place", "value", "compute"});
        PlaceSpec place;
        place.place = parse_string(field(p, "place", "place"), "place id");
        const Json* value = opt_field(p, "value");
        const Json* compute = opt_field(p, "compute");
        if ((value == nullptr) == (compute == nullptr))
            fail("place '" + place.place + "' needs exactly one of 'value' or 'compute'");
        if (value) place.value = parse_rat(*value);
        if (compute) place.compute = *compute;
        spec.places.push_back(std::move(place));
    }
    return spec;
}

Options parse_options(const Json& j) {
    check_keys(j, "options", {"ell", "resolution", "samples", "seed", "points"});
    Options opt;
    if (const Json* e = opt_field(j, "ell"))
        for (const Json& x : expect_array(*e, "ell")) opt.ell.push_back(parse_rat(x));
    if (const Json* r = opt_field(j, "resolution")) opt.resolution = parse_long(*r, "resolution");
    if (const Json* s = opt_field(j, "samples")) opt.samples = parse_long(*s, "samples");
    if (const Json* s = opt_field(j, "seed")) {
        if (!s->is_number_unsigned() && !s->is_number_integer()) fail("seed must be an integer");
        opt.seed = s->get<unsigned long long>();
    }
    if (const Json* p = opt_field(j, "points"))
        for (const Json& x : expect_array(*p, "points")) opt.points.push_back(parse_vec(x));
    if (opt.resolution < 1) fail("resolution must be positive");
    if (opt.samples < 1) fail("samples must be positive");
    return opt;
}

}  // namespace

ProblemFile parse_problem(const Json& doc) {
    check_keys(doc, "problem file",
               {"version", "torus", "canonical", "breakpoints", "complex", "skeleton_measure",
                "corrections", "strata", "cocycle", "ledger", "options"});
    if (const Json* v = opt_field(doc, "version")) {
        if (parse_long(*v, "version") != 1) fail("unsupported problem file version");
    }

    ProblemFile pf;
    if (const Json* t = opt_field(doc, "torus")) pf.torus = parse_lattice(*t);

    if (const Json* c = opt_field(doc, "canonical")) {
        if (!pf.torus) fail("'canonical' requires a top-level 'torus'");
        pf.canonical = parse_pl(*c, *pf.torus);
    }

    if (const Json* b = opt_field(doc, "breakpoints")) {
        std::vector<Rat> breaks;
        for (const Json& x : expect_array(*b, "breakpoints")) breaks.push_back(parse_rat(x));
        pf.breakpoints = std::move(breaks);
    }

    if (const Json* c = opt_field(doc, "complex")) {
        check_keys(*c, "complex", {"cells"});
        std::vector<RationalSimplex> cells;
        for (const Json& s : expect_array(field(*c, "complex", "cells"), "cells"))
            cells.push_back(parse_simplex(s));
        pf.complex_cells = std::move(cells);
    }
    if (pf.breakpoints && pf.complex_cells)
        fail("'breakpoints' and 'complex' are mutually exclusive");

    if (const Json* m = opt_field(doc, "skeleton_measure")) {
        if (!pf.torus) fail("'skeleton_measure' requires a top-level 'torus'");
        pf.skeleton_measure = parse_measure(*m, *pf.torus);
    }

    if (const Json* cs = opt_field(doc, "corrections")) {
        if (!pf.torus) fail("'corrections' requires a top-level 'torus'");
        for (const Json& c : expect_array(*cs, "corrections")) {
            check_keys(c, "correction", {"simplex", "pl", "sign", "measure"});
            CorrectionTerm term{parse_simplex(field(c, "correction", "simplex")),
                                parse_pl(field(c, "correction", "pl"), *pf.torus),
                                parse_sign(field(c, "correction", "sign"))};
            SimplicialMeasure mu = parse_measure(field(c, "correction", "measure"), *pf.torus);
            pf.corrections.emplace_back(std::move(term), std::move(mu));
        }
    }

    if (const Json* s = opt_field(doc, "strata")) pf.strata = parse_strata(*s, pf.torus);
    if (const Json* c = opt_field(doc, "cocycle")) pf.cocycle = parse_cocycle(*c);
    if (const Json* l = opt_field(doc, "ledger")) pf.ledger = parse_ledger(*l);
    if (const Json* o = opt_field(doc, "options")) pf.options = parse_options(*o);
    return pf;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
        fail("invalid JSON in '" + path + "': " + e.what());
    }
}

}  // namespace troph::io
