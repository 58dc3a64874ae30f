#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bergdecomp/identities.hpp"
#include "bergdecomp/serialize.hpp"

namespace bergdecomp::scenario {

using monomial::CVec;

// Declarative verification job. Parsed from a flat key-value text format
// (sections in brackets, one assignment per line) so every diagnostic can
// point at a line; rationals stay exact as "p/q" strings.
struct Scenario {
    enum class Check { decomposition, ball_estimate };
    enum class Mode { full_domains, axes_deleted };

    std::string name;
    Check check = Check::decomposition;
    Mode mode = Mode::full_domains;

    // decomposition fields
    std::optional<intlin::IntMatrix> matrix;
    std::optional<domains::ReinhardtDomain> domain1, domain2;
    domains::WeightSpec weight2;
    std::map<std::size_t, IntVec> b_overrides;

    // sample plan: explicit pairs win over the seeded spec
    std::vector<std::pair<CVec, CVec>> explicit_points;
    int sample_count = 20;
    unsigned sample_seed = 1;
    double sample_scale = 0.7; // fraction of the validity band kept

    double kernel_tol = 1e-10;
    double quad_tol = 1e-9;
    double residual_tol = 1e-6;

    // ball-estimate fields
    Rat delta1, delta2, delta3;
    double ratio_lo = 1.0 / 50.0;
    double ratio_hi = 50.0;

    std::string source_hash; // content hash of the parsed text
};

Scenario parse_scenario_text(const std::string& text, const std::string& filename = "<memory>");
Scenario parse_scenario_file(const std::string& path);

// Point literals, also used for CLI arguments: coordinates are comma
// separated complex numbers ("0.3", "0.5i", "0.3-0.2i"); a pair is "z;w"
// with w defaulting to z.
CVec parse_point(const std::string& s);
std::pair<CVec, CVec> parse_point_pair(const std::string& s);

struct VerifyOptions {
    long max_degree = 400;
    std::optional<unsigned> seed;      // overrides the scenario's sample seed
    std::optional<double> residual_tol;
    std::string cache_dir;             // empty: no kernel cache
};

struct VerifyOutcome {
    serialize::json report;  // schema 1; deterministic except generated_at
    std::string csv;         // one row per sample point, with a header row
    bool pass = false;
    double max_relative = 0.0;
};

VerifyOutcome run_verify(const Scenario& sc, const VerifyOptions& opt = {});

// Builds the decomposition scenario backing `sc` (kernels through the cache
// when a directory is given). Rejects ball-estimate scenarios.
identities::DecompositionScenario build_from_scenario(const Scenario& sc,
                                                      const VerifyOptions& opt = {});

void write_report_files(const VerifyOutcome& out, const std::string& json_path);

} // namespace bergdecomp::scenario
