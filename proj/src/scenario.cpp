#include "bergdecomp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "bergdecomp/errors.hpp"

namespace bergdecomp::scenario {

using serialize::json;

namespace {

// ---- file grammar -----------------------------------------------------
// Sections in brackets, one `key = value` per line, # comments. Values are
// JSON literals (strings, numbers, booleans, nested arrays), so rationals
// are quoted "p/q" and matrices are nested arrays. Every diagnostic carries
// the offending line.

struct Tok {
    json value;
    long line = 0;
};

struct ParsedFile {
    std::string filename;
    std::map<std::string, Tok> kv;
    mutable std::set<std::string> consumed;

    [[noreturn]] void fail(long line, const std::string& msg) const {
        throw ArgumentError(filename + ":" + std::to_string(line) + ": " + msg);
    }
    bool has(const std::string& key) const { return kv.count(key) != 0; }
    const Tok& need(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ArgumentError(filename + ": missing required key '" + key + "'");
        consumed.insert(key);
        return it->second;
    }
    const Tok* get(const std::string& key) const {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        consumed.insert(key);
        return &it->second;
    }
};

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Cut a trailing comment, respecting string literals.
std::string cut_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

ParsedFile lex_file(const std::string& text, const std::string& filename) {
    ParsedFile pf;
    pf.filename = filename;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    long line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = strip(cut_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') pf.fail(line, "unterminated section header");
            section = strip(s.substr(1, s.size() - 2));
            if (section.empty()) pf.fail(line, "empty section name");
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) pf.fail(line, "expected 'key = value'");
        const std::string key = strip(s.substr(0, eq));
        const std::string val = strip(s.substr(eq + 1));
        if (key.empty()) pf.fail(line, "empty key");
        if (val.empty()) pf.fail(line, "missing value");
        const std::string full = section.empty() ? key : section + "." + key;
        if (pf.kv.count(full)) pf.fail(line, "duplicate key '" + full + "'");
        json v;
        try {
            v = json::parse(val);
        } catch (const std::exception&) {
            pf.fail(line, "malformed value for '" + full + "'");
        }
        pf.kv.emplace(full, Tok{std::move(v), line});
    }
    return pf;
}

// ---- typed getters ----------------------------------------------------

std::string want_string(const ParsedFile& pf, const Tok& t, const std::string& key) {
    if (!t.value.is_string()) pf.fail(t.line, "'" + key + "' must be a quoted string");
    return t.value.get<std::string>();
}

double want_double(const ParsedFile& pf, const Tok& t, const std::string& key) {
    if (!t.value.is_number()) pf.fail(t.line, "'" + key + "' must be a number");
    return t.value.get<double>();
}

long want_long(const ParsedFile& pf, const Tok& t, const std::string& key) {
    if (!t.value.is_number_integer()) pf.fail(t.line, "'" + key + "' must be an integer");
    return t.value.get<long>();
}

Rat want_rat(const ParsedFile& pf, const Tok& t, const std::string& key) {
    try {
        return serialize::rat_from_json(t.value);
    } catch (const std::exception&) {
        pf.fail(t.line, "'" + key + "' must be a rational \"p/q\" string");
    }
}

RatVec want_rat_vec(const ParsedFile& pf, const Tok& t, const std::string& key) {
    if (!t.value.is_array()) pf.fail(t.line, "'" + key + "' must be an array");
    RatVec v;
    for (const auto& e : t.value) {
        try {
            v.push_back(serialize::rat_from_json(e));
        } catch (const std::exception&) {
            pf.fail(t.line, "'" + key + "' entries must be rational \"p/q\" strings");
        }
    }
    return v;
}

IntVec want_int_vec(const ParsedFile& pf, const Tok& t, const std::string& key) {
    if (!t.value.is_array()) pf.fail(t.line, "'" + key + "' must be an integer array");
    IntVec v;
    for (const auto& e : t.value) {
        if (!e.is_number_integer()) pf.fail(t.line, "'" + key + "' entries must be integers");
        v.emplace_back(e.get<long>());
    }
    return v;
}

// ---- values -----------------------------------------------------------

double parse_real_core(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ArgumentError("bad number '" + s + "'");
    }
}

// "a", "bi", "a+bi", "a-bi" (signs and exponents allowed inside the parts).
std::complex<double> parse_complex_core(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw ArgumentError("empty complex literal");
    if (s.back() != 'i') return {parse_real_core(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t p = 1; p < s.size(); ++p)
        if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') split = p;
    auto imag_part = [&](const std::string& im) -> double {
        if (im.empty() || im == "+") return 1.0;
        if (im == "-") return -1.0;
        return parse_real_core(im);
    };
    if (split == std::string::npos) return {0.0, imag_part(s)};
    return {parse_real_core(s.substr(0, split)), imag_part(s.substr(split))};
}

CVec parse_point(const ParsedFile& pf, long line, const std::string& s) {
    try {
        return scenario::parse_point(s);
    } catch (const std::exception& e) {
        pf.fail(line, e.what());
    }
}

domains::ReinhardtDomain parse_domain(const ParsedFile& pf, const std::string& prefix) {
    const Tok& kt = pf.need(prefix + ".kind");
    const std::string kind = want_string(pf, kt, prefix + ".kind");
    if (kind == "disk")
        return domains::ReinhardtDomain::disk(
            want_rat(pf, pf.need(prefix + ".radius"), prefix + ".radius"));
    if (kind == "polydisk")
        return domains::ReinhardtDomain::polydisk(
            want_rat_vec(pf, pf.need(prefix + ".radii"), prefix + ".radii"));
    if (kind == "product") {
        const Tok& ft = pf.need(prefix + ".factors");
        if (!ft.value.is_array()) pf.fail(ft.line, "factors must be an array of [lo, hi] pairs");
        std::vector<domains::RadialFactor> factors;
        for (const auto& f : ft.value) {
            if (!f.is_array() || f.size() < 2)
                pf.fail(ft.line, "each factor needs [\"lo\", \"hi\"] and an optional punctured flag");
            domains::RadialFactor fac;
            try {
                fac.lo = serialize::rat_from_json(f[0]);
                fac.hi = serialize::rat_from_json(f[1]);
            } catch (const std::exception&) {
                pf.fail(ft.line, "factor bounds must be rational \"p/q\" strings");
            }
            if (f.size() > 2) {
                if (!f[2].is_boolean()) pf.fail(ft.line, "punctured flag must be a boolean");
                fac.punctured = f[2].get<bool>();
            }
            factors.push_back(std::move(fac));
        }
        return domains::ReinhardtDomain::product(std::move(factors));
    }
    if (kind == "ellipsoid") {
        const Tok& et = pf.need(prefix + ".exponents");
        if (!et.value.is_array()) pf.fail(et.line, "exponents must be an integer array");
        return domains::ReinhardtDomain::ellipsoid(et.value.get<std::vector<long>>());
    }
    if (kind == "monomial") {
        const Tok& rt = pf.need(prefix + ".rows");
        if (!rt.value.is_array()) pf.fail(rt.line, "rows must be a nested integer array");
        std::vector<IntVec> rows;
        for (const auto& r : rt.value) rows.push_back(want_int_vec(pf, Tok{r, rt.line}, prefix + ".rows"));
        return domains::ReinhardtDomain::monomial_region(
            std::move(rows), want_rat_vec(pf, pf.need(prefix + ".lower"), prefix + ".lower"),
            want_rat_vec(pf, pf.need(prefix + ".upper"), prefix + ".upper"));
    }
    pf.fail(kt.line, "unknown domain kind '" + kind + "'");
}

std::string iso_utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json complex_to_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

json point_to_json(const CVec& z) {
    json a = json::array();
    for (const auto& c : z) a.push_back(complex_to_json(c));
    return a;
}

std::string fmt_complex(const std::complex<double>& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

std::string fmt_point(const CVec& z) {
    std::string s;
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (j) s += '|';
        s += fmt_complex(z[j]);
    }
    return s;
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json kernel_meta(const bergman::KernelSeries& K) {
    json j;
    j["terms"] = K.terms().size();
    j["truncation_degree"] = K.truncation_degree();
    j["tail_bound"] = K.tail_bound();
    j["validity"] = serialize::validity_to_json(K.validity());
    return j;
}

json intvec_json(const IntVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_si());
    return a;
}

} // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& filename) {
    const ParsedFile pf = lex_file(text, filename);
    Scenario sc;
    sc.source_hash = serialize::content_hash(text);
    sc.name = want_string(pf, pf.need("name"), "name");

    if (const Tok* t = pf.get("check")) {
        const std::string c = want_string(pf, *t, "check");
        if (c == "decomposition")
            sc.check = Scenario::Check::decomposition;
        else if (c == "ball-estimate")
            sc.check = Scenario::Check::ball_estimate;
        else
            pf.fail(t->line, "check must be \"decomposition\" or \"ball-estimate\"");
    }
    if (const Tok* t = pf.get("mode")) {
        const std::string m = want_string(pf, *t, "mode");
        if (m == "full-domains")
            sc.mode = Scenario::Mode::full_domains;
        else if (m == "axes-deleted")
            sc.mode = Scenario::Mode::axes_deleted;
        else
            pf.fail(t->line, "mode must be \"full-domains\" or \"axes-deleted\"");
    }

    if (const Tok* t = pf.get("tolerances.kernel_tol")) sc.kernel_tol = want_double(pf, *t, "kernel_tol");
    if (const Tok* t = pf.get("tolerances.quad_tol")) sc.quad_tol = want_double(pf, *t, "quad_tol");
    if (const Tok* t = pf.get("tolerances.residual_tol"))
        sc.residual_tol = want_double(pf, *t, "residual_tol");
    for (double tol : {sc.kernel_tol, sc.quad_tol, sc.residual_tol})
        if (!(tol > 0.0)) throw ArgumentError(filename + ": tolerances must be positive");

    if (sc.check == Scenario::Check::ball_estimate) {
        sc.delta1 = want_rat(pf, pf.need("ball.delta1"), "ball.delta1");
        sc.delta2 = want_rat(pf, pf.need("ball.delta2"), "ball.delta2");
        sc.delta3 = want_rat(pf, pf.need("ball.delta3"), "ball.delta3");
        if (const Tok* t = pf.get("ball.ratio_lo")) sc.ratio_lo = want_double(pf, *t, "ratio_lo");
        if (const Tok* t = pf.get("ball.ratio_hi")) sc.ratio_hi = want_double(pf, *t, "ratio_hi");
    } else {
        const Tok& mt = pf.need("matrix");
        try {
            sc.matrix = serialize::matrix_from_json(mt.value);
        } catch (const std::exception& e) {
            pf.fail(mt.line, std::string("bad matrix: ") + e.what());
        }
        sc.domain1 = parse_domain(pf, "domain1");
        sc.domain2 = parse_domain(pf, "domain2");
        sc.weight2.mu = want_rat_vec(pf, pf.need("weight2.mu"), "weight2.mu");
        if (const Tok* t = pf.get("weight2.scale")) sc.weight2.scale = want_rat(pf, *t, "weight2.scale");
        if (!(sc.weight2.scale > 0)) throw ArgumentError(filename + ": weight scale must be positive");

        if (const Tok* t = pf.get("points.count")) sc.sample_count = (int)want_long(pf, *t, "count");
        if (const Tok* t = pf.get("points.seed"))
            sc.sample_seed = (unsigned)want_long(pf, *t, "seed");
        if (const Tok* t = pf.get("points.scale")) sc.sample_scale = want_double(pf, *t, "scale");
        if (sc.sample_count < 1) throw ArgumentError(filename + ": points.count must be >= 1");
        if (!(sc.sample_scale > 0.0 && sc.sample_scale < 1.0))
            throw ArgumentError(filename + ": points.scale must lie in (0,1)");
        if (const Tok* t = pf.get("points.explicit")) {
            if (!t->value.is_array()) pf.fail(t->line, "points.explicit must be an array of strings");
            for (const auto& e : t->value) {
                if (!e.is_string()) pf.fail(t->line, "points.explicit entries must be strings");
                const std::string s = e.get<std::string>();
                const std::size_t semi = s.find(';');
                CVec z = parse_point(pf, t->line, semi == std::string::npos ? s : s.substr(0, semi));
                CVec w = semi == std::string::npos ? z : parse_point(pf, t->line, s.substr(semi + 1));
                if (z.size() != w.size()) pf.fail(t->line, "z and w must have equal dimension");
                sc.explicit_points.emplace_back(std::move(z), std::move(w));
            }
        }

        // [overrides] keys are b<character-index>.
        for (const auto& [key, tok] : pf.kv) {
            if (key.rfind("overrides.", 0) != 0) continue;
            const std::string tail = key.substr(10);
            if (tail.size() < 2 || tail[0] != 'b' ||
                tail.find_first_not_of("0123456789", 1) != std::string::npos)
                pf.fail(tok.line, "override keys look like b0, b1, ...");
            sc.b_overrides[std::stoul(tail.substr(1))] = want_int_vec(pf, tok, key);
            pf.consumed.insert(key);
        }
    }

    for (const auto& [key, tok] : pf.kv)
        if (!pf.consumed.count(key))
            pf.fail(tok.line, "unrecognized or inapplicable key '" + key + "'");
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), std::filesystem::path(path).filename().string());
}

CVec parse_point(const std::string& s) {
    CVec z;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) z.push_back(parse_complex_core(strip(part)));
    if (z.empty()) throw ArgumentError("empty point");
    return z;
}

std::pair<CVec, CVec> parse_point_pair(const std::string& s) {
    const std::size_t semi = s.find(';');
    CVec z = parse_point(semi == std::string::npos ? s : s.substr(0, semi));
    CVec w = semi == std::string::npos ? z : parse_point(s.substr(semi + 1));
    if (z.size() != w.size()) throw ArgumentError("z and w must have equal dimension");
    return {std::move(z), std::move(w)};
}

identities::DecompositionScenario build_from_scenario(const Scenario& sc,
                                                      const VerifyOptions& opt) {
    if (sc.check != Scenario::Check::decomposition)
        throw ArgumentError("scenario '" + sc.name + "' is not a decomposition check");
    bergman::KernelBuildSpec spec;
    spec.max_degree = opt.max_degree;
    spec.tail_tol = sc.kernel_tol;
    identities::KernelBuilder builder;
    if (!opt.cache_dir.empty())
        builder = [dir = opt.cache_dir](const domains::ReinhardtDomain& D,
                                        const domains::WeightSpec& w,
                                        const bergman::KernelBuildSpec& s) {
            return serialize::cached_build(D, w, s, dir);
        };
    return identities::build_scenario(*sc.matrix, *sc.domain1, *sc.domain2, sc.weight2, spec, spec,
                                      sc.mode == Scenario::Mode::full_domains, sc.b_overrides,
                                      builder);
}

namespace {

VerifyOutcome verify_decomposition(const Scenario& sc, const VerifyOptions& opt) {
    const double residual_tol = opt.residual_tol.value_or(sc.residual_tol);
    const auto S = build_from_scenario(sc, opt);

    std::vector<std::pair<CVec, CVec>> pts = sc.explicit_points;
    if (pts.empty()) {
        std::mt19937 rng(opt.seed.value_or(sc.sample_seed));
        const double inner = std::clamp(1.0 - sc.sample_scale, 0.05, 0.45);
        for (int i = 0; i < sc.sample_count; ++i) {
            CVec z = identities::sample_validity_point(S.K1.domain(), S.K1.validity(), rng, inner);
            CVec w = identities::sample_validity_point(S.K1.domain(), S.K1.validity(), rng, inner);
            pts.emplace_back(std::move(z), std::move(w));
        }
    }

    VerifyOutcome out;
    json& doc = out.report;
    doc["schema"] = 1;
    doc["generated_at"] = iso_utc_now();
    doc["tool"] = "bergdecomp";
    doc["scenario"] =
        json{{"name", sc.name}, {"hash", sc.source_hash}, {"check", "decomposition"},
             {"mode", sc.mode == Scenario::Mode::full_domains ? "full-domains" : "axes-deleted"}};
    doc["matrix"] = serialize::matrix_to_json(*sc.matrix);
    doc["group"] = json{{"order", S.G.order().get_si()},
                        {"characters", S.G.char_reps().size()}};
    doc["tolerances"] = json{{"kernel_tol", sc.kernel_tol},
                             {"quad_tol", sc.quad_tol},
                             {"residual_tol", residual_tol},
                             {"max_degree", opt.max_degree}};
    json blocks = json::array();
    for (const auto& blk : S.blocks) {
        json b;
        b["b_star"] = intvec_json(blk.b_star);
        b["b"] = intvec_json(blk.b);
        b["eta"] = serialize::weight_to_json(blk.eta);
        b.update(kernel_meta(blk.kernel));
        blocks.push_back(std::move(b));
    }
    doc["build"] = json{{"k1", kernel_meta(S.K1)}, {"blocks", std::move(blocks)}};

    std::ostringstream csv;
    csv << "index,z,w,lhs_re,lhs_im,rhs_re,rhs_im";
    for (std::size_t c = 0; c < S.blocks.size(); ++c)
        csv << ",term" << c << "_re,term" << c << "_im";
    csv << ",residual,relative\n";

    json samples = json::array();
    double max_res = 0.0, max_rel = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& [z, w] = pts[i];
        const auto ev = identities::decomposition_eval(S, z, w);
        max_res = std::max(max_res, ev.residual());
        max_rel = std::max(max_rel, ev.relative());
        json row;
        row["z"] = point_to_json(z);
        row["w"] = point_to_json(w);
        row["lhs"] = complex_to_json(ev.lhs);
        row["rhs"] = complex_to_json(ev.rhs);
        json terms = json::array();
        for (const auto& t : ev.terms) terms.push_back(complex_to_json(t));
        row["terms"] = std::move(terms);
        row["residual"] = ev.residual();
        row["relative"] = ev.relative();
        samples.push_back(std::move(row));

        csv << i << ',' << fmt_point(z) << ',' << fmt_point(w) << ',' << fmt_double(ev.lhs.real())
            << ',' << fmt_double(ev.lhs.imag()) << ',' << fmt_double(ev.rhs.real()) << ','
            << fmt_double(ev.rhs.imag());
        for (const auto& t : ev.terms)
            csv << ',' << fmt_double(t.real()) << ',' << fmt_double(t.imag());
        csv << ',' << fmt_double(ev.residual()) << ',' << fmt_double(ev.relative()) << '\n';
    }
    doc["samples"] = std::move(samples);

    out.max_relative = max_rel;
    out.pass = max_rel <= residual_tol;
    doc["summary"] = json{{"count", pts.size()},
                          {"max_residual", max_res},
                          {"max_relative", max_rel},
                          {"residual_tol", residual_tol},
                          {"pass", out.pass}};
    out.csv = csv.str();
    return out;
}

VerifyOutcome verify_ball(const Scenario& sc, const VerifyOptions& opt) {
    bergman::KernelBuildSpec spec;
    spec.max_degree = std::max(opt.max_degree, 600L);
    spec.tail_tol = sc.kernel_tol;
    const auto est = identities::monomial_ball_estimate(sc.delta1, sc.delta2, sc.delta3, spec);

    VerifyOutcome out;
    const bool in_band = est.ratio > sc.ratio_lo && est.ratio < sc.ratio_hi;
    const bool model_ok = std::abs(est.computed - est.model) <= 1e-8 * std::abs(est.model);
    out.pass = in_band && model_ok;
    out.max_relative = std::abs(est.computed - est.model) / std::abs(est.model);

    json& doc = out.report;
    doc["schema"] = 1;
    doc["generated_at"] = iso_utc_now();
    doc["tool"] = "bergdecomp";
    doc["scenario"] = json{{"name", sc.name}, {"hash", sc.source_hash}, {"check", "ball-estimate"}};
    doc["delta"] = json::array({format_rat(sc.delta1), format_rat(sc.delta2), format_rat(sc.delta3)});
    doc["computed"] = est.computed;
    doc["model"] = est.model;
    doc["reference"] = est.reference;
    doc["ratio"] = est.ratio;
    doc["band"] = json::array({sc.ratio_lo, sc.ratio_hi});
    doc["summary"] = json{{"ratio_in_band", in_band}, {"model_match", model_ok}, {"pass", out.pass}};

    std::ostringstream csv;
    csv << "delta1,delta2,delta3,computed,model,reference,ratio\n"
        << format_rat(sc.delta1) << ',' << format_rat(sc.delta2) << ',' << format_rat(sc.delta3)
        << ',' << fmt_double(est.computed) << ',' << fmt_double(est.model) << ','
        << fmt_double(est.reference) << ',' << fmt_double(est.ratio) << '\n';
    out.csv = csv.str();
    return out;
}

} // namespace

VerifyOutcome run_verify(const Scenario& sc, const VerifyOptions& opt) {
    return sc.check == Scenario::Check::decomposition ? verify_decomposition(sc, opt)
                                                      : verify_ball(sc, opt);
}

void write_report_files(const VerifyOutcome& out, const std::string& json_path) {
    std::filesystem::path jp(json_path);
    {
        std::ofstream f(jp);
        if (!f) throw ArgumentError("cannot write report: " + json_path);
        f << out.report.dump(2) << '\n';
    }
    std::filesystem::path cp = jp;
    cp.replace_extension(".csv");
    std::ofstream f(cp);
    if (!f) throw ArgumentError("cannot write report: " + cp.string());
    f << out.csv;
}

} // namespace bergdecomp::scenario
