#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "troph/doubling.hpp"
#include "troph/ledger.hpp"
#include "troph/measure.hpp"
#include "troph/metric.hpp"

namespace troph::io {

/// Insertion-ordered documents so serialized output is deterministic.
using Json = nlohmann::ordered_json;

/// Rationals travel as "p/q" strings (or JSON integers); floating-point
/// literals are rejected so exactness survives serialization.
Rat parse_rat(const Json& j);
RatVec parse_vec(const Json& j);
Mat parse_mat(const Json& j);
Lattice parse_lattice(const Json& j);
RationalSimplex parse_simplex(const Json& j);
AffineMap parse_affine_map(const Json& j);
PLFunction parse_pl(const Json& j, const Lattice& lattice);
SimplicialMeasure parse_measure(const Json& j, const Lattice& lattice);

Json rat_json(const Rat& r);
Json vec_json(const RatVec& v);
Json mat_json(const Mat& m);
Json simplex_json(const RationalSimplex& s);
Json measure_json(const SimplicialMeasure& mu);

/// One ledger place: either a literal local integral or a nested compute
/// request (kept as raw JSON; the command layer expands it recursively).
struct PlaceSpec {
    std::string place;
    std::optional<Rat> value;
    std::optional<Json> compute;
};

struct LedgerSpec {
    long d = 0;
    long degL = 1;
    Rat lower_term;
    std::vector<PlaceSpec> places;
};

struct Options {
    std::vector<Rat> ell;             // periods for the closed-form comparison
    long resolution = 64;             // plot sample count
    long samples = 64;                // random samples per period
    unsigned long long seed = 1;      // deterministic sample generator seed
    std::vector<RatVec> points;       // extra explicit sample points
};

/// Parsed problem document. Sections are optional; each command states the
/// sections it needs. Unknown fields anywhere are a parse error.
struct ProblemFile {
    std::optional<Lattice> torus;
    std::optional<PLFunction> canonical;
    std::optional<std::vector<Rat>> breakpoints;
    std::optional<std::vector<RationalSimplex>> complex_cells;
    std::optional<SimplicialMeasure> skeleton_measure;
    std::vector<std::pair<CorrectionTerm, SimplicialMeasure>> corrections;
    std::optional<StrataBundle> strata;
    std::optional<CocycleDatum> cocycle;
    std::optional<LedgerSpec> ledger;
    Options options;
};

ProblemFile parse_problem(const Json& doc);

/// Reads and parses a JSON document; all failures surface as ParseError.
Json read_json_file(const std::string& path);

}  // namespace troph::io
