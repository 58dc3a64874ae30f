#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bergdecomp/bergman.hpp"
#include "bergdecomp/domains.hpp"
#include "bergdecomp/errors.hpp"
#include "bergdecomp/group.hpp"
#include "bergdecomp/identities.hpp"
#include "bergdecomp/intlin.hpp"
#include "bergdecomp/monomial.hpp"
#include "bergdecomp/projection.hpp"
#include "bergdecomp/scenario.hpp"
#include "bergdecomp/serialize.hpp"
#include "embedded_scenarios.hpp"

namespace {

using namespace bergdecomp;
using monomial::CVec;

intlin::IntMatrix parse_matrix_arg(const std::string& s) {
    try {
        return serialize::matrix_from_json(nlohmann::json::parse(s));
    } catch (const ArgumentError&) {
        throw;
    } catch (const std::exception&) {
        throw ArgumentError("cannot parse matrix '" + s + "': expected e.g. [[2,0],[0,3]]");
    }
}

IntVec parse_int_list(const std::string& s) {
    IntVec v;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            v.emplace_back(std::stol(part));
        } catch (const std::exception&) {
            throw ArgumentError("bad integer list '" + s + "'");
        }
    }
    if (v.empty()) throw ArgumentError("empty integer list");
    return v;
}

std::string fmt_c(const std::complex<double>& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

std::string fmt_vec(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v[i]);
        s += buf;
    }
    return s + "]";
}

std::string intvec_str(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

struct GlobalOpts {
    std::optional<double> tol;
    std::optional<unsigned> seed;
    long max_degree = 400;
    std::string output;
    std::string cache_dir;
};

scenario::VerifyOptions verify_options(const GlobalOpts& g) {
    scenario::VerifyOptions opt;
    opt.max_degree = g.max_degree;
    opt.seed = g.seed;
    opt.residual_tol = g.tol;
    opt.cache_dir = g.cache_dir;
    return opt;
}

void cmd_snf(const std::string& matrix_arg) {
    const auto A = parse_matrix_arg(matrix_arg);
    const auto snf = intlin::smith_normal_form(A);
    std::cout << "A = " << A.str() << "\n";
    std::cout << "S = " << snf.S.str() << "\n";
    std::cout << "T = " << snf.T.str() << "\n";
    std::cout << "invariant factors: ";
    for (std::size_t i = 0; i < snf.lambda.size(); ++i)
        std::cout << (i ? ", " : "") << snf.lambda[i].get_str();
    std::cout << "\nS*A*T = diag(invariant factors)\n";
}

void cmd_group(const std::string& matrix_arg, long max_order) {
    const auto A = parse_matrix_arg(matrix_arg);
    const auto G = group::GroupData::build(A, Int(max_order));
    std::cout << "order: " << G.order().get_str() << "\n";
    std::cout << "acting coset representatives:\n";
    for (const auto& m : G.reps()) std::cout << "  " << intvec_str(m) << "\n";
    std::cout << "character representatives:\n";
    for (const auto& b : G.char_reps()) std::cout << "  " << intvec_str(b) << "\n";
    std::cout << "character table (phases t with chi = exp(2*pi*i*t)):\n";
    for (const auto& b : G.char_reps()) {
        std::cout << "  chi" << intvec_str(b) << ":";
        for (const auto& m : G.reps())
            std::cout << " " << format_rat(group::character_phase(G, b, m).theta);
        std::cout << "\n";
    }
    const auto orth = group::check_orthogonality(G);
    std::cout << "orthogonality: " << (orth.exact_pass ? "exact pass" : "FAIL")
              << " (max float deviation " << orth.max_abs_dev << ")\n";
    if (!orth.exact_pass) throw NumericError("character orthogonality failed");
}

void cmd_fiber(const std::string& matrix_arg, const std::string& at) {
    const auto A = parse_matrix_arg(matrix_arg);
    const auto G = group::GroupData::build(A);
    const CVec v = scenario::parse_point(at);
    if (static_cast<int>(v.size()) != A.dim())
        throw ArgumentError("point dimension does not match the matrix");
    const auto pts = monomial::fiber(G, v);
    std::cout << "fiber size: " << pts.size() << "\n";
    for (const auto& p : pts) {
        std::cout << "  (";
        for (std::size_t j = 0; j < p.size(); ++j) std::cout << (j ? ", " : "") << fmt_c(p[j]);
        std::cout << ")  maps to (";
        const CVec img = monomial::eval_Phi(A, p);
        for (std::size_t j = 0; j < img.size(); ++j) std::cout << (j ? ", " : "") << fmt_c(img[j]);
        std::cout << ")\n";
    }
}

void cmd_project(const std::string& matrix_arg, const std::string& b_arg,
                 const std::string& exp_arg, const std::string& at) {
    const auto A = parse_matrix_arg(matrix_arg);
    const auto G = group::GroupData::build(A);
    const IntVec b = parse_int_list(b_arg);
    const IntVec a = parse_int_list(exp_arg);
    if (static_cast<int>(b.size()) != A.dim() || static_cast<int>(a.size()) != A.dim())
        throw ArgumentError("vector dimension does not match the matrix");
    IntVec shifted(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) shifted[j] = a[j] + b[j];
    const bool kept = intlin::in_row_span(A.transpose(), shifted);
    std::cout << "monomial z^" << intvec_str(a) << " under the character projection for b = "
              << intvec_str(b) << ": " << (kept ? "kept" : "annihilated") << "\n";
    if (!at.empty()) {
        const CVec z = scenario::parse_point(at);
        if (static_cast<int>(z.size()) != A.dim())
            throw ArgumentError("point dimension does not match the matrix");
        const auto f = [&a](const CVec& zz) { return monomial::eval_F(a, zz); };
        std::cout << "value at the point: " << fmt_c(projection::project_chi(G, b, f, z)) << "\n";
    }
}

void cmd_kernel(const std::string& file, const std::string& at, const GlobalOpts& g) {
    const auto sc = scenario::parse_scenario_file(file);
    const auto S = scenario::build_from_scenario(sc, verify_options(g));
    const auto [z, w] = scenario::parse_point_pair(at);
    if (static_cast<int>(z.size()) != S.D1.dim())
        throw ArgumentError("point dimension does not match the scenario");
    const auto& V = S.K1.validity();
    if (!domains::validity_contains(S.K1.domain(), V, z) ||
        !domains::validity_contains(S.K1.domain(), V, w)) {
        std::cerr << "point outside the kernel validity region\n"
                  << "  lo = " << fmt_vec(V.lo) << "\n  hi = " << fmt_vec(V.hi) << "\n"
                  << (V.constraint_space ? "  (bands on the monomial constraints)\n"
                                         : "  (bands on the coordinate radii)\n");
        throw EvalDomainError("evaluation point outside validity region");
    }
    std::cout << "K(z, w) = " << fmt_c(S.K1.eval(z, w)) << "\n";
    std::cout << "terms: " << S.K1.terms().size()
              << "  truncation_degree: " << S.K1.truncation_degree()
              << "  tail_bound: " << S.K1.tail_bound() << "\n";
    if (!g.output.empty()) {
        std::ofstream out(g.output);
        if (!out) throw ArgumentError("cannot write " + g.output);
        out << serialize::kernel_to_json(S.K1).dump(2) << '\n';
        std::cout << "kernel written to " << g.output << "\n";
    }
}

int cmd_verify(const std::string& file, const std::string& report, const GlobalOpts& g) {
    const auto sc = scenario::parse_scenario_file(file);
    const auto out = scenario::run_verify(sc, verify_options(g));
    if (!report.empty()) scenario::write_report_files(out, report);
    std::cout << (out.pass ? "PASS" : "FAIL") << " " << sc.name
              << "  max_relative=" << out.max_relative << "\n";
    return out.pass ? 0 : 1;
}

void cmd_example(const std::string& name, const GlobalOpts& g) {
    const auto& all = bergdecomp_cli::embedded_scenarios();
    const auto it = all.find(name);
    if (it == all.end()) {
        std::string names;
        for (const auto& [n, txt] : all) names += (names.empty() ? "" : ", ") + n;
        throw ArgumentError("unknown example '" + name + "'; available: " + names);
    }
    if (g.output.empty()) {
        std::cout << it->second;
    } else {
        std::ofstream out(g.output);
        if (!out) throw ArgumentError("cannot write " + g.output);
        out << it->second;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted Bergman kernel decompositions under finite monomial group actions"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("BERGDECOMP_CACHE")) g.cache_dir = env;
    app.add_option("--tol", g.tol, "override the scenario residual tolerance");
    app.add_option("--seed", g.seed, "override the scenario sample seed");
    app.add_option("--max-degree", g.max_degree, "kernel truncation degree cap");
    app.add_option("--output", g.output, "output file for artifacts");
    app.add_option("--cache-dir", g.cache_dir, "kernel cache directory (env BERGDECOMP_CACHE)");

    std::string matrix_arg, at_arg, b_arg, exp_arg, file_arg, report_arg, name_arg;
    long max_order = 1000000;
    int rc = 0;

    auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf->fallthrough();
    snf->add_option("--matrix", matrix_arg, "matrix as nested array, e.g. [[2,0],[0,3]]")
        ->required();
    snf->callback([&] { cmd_snf(matrix_arg); });

    auto* grp = app.add_subcommand("group", "group order, coset reps, character table");
    grp->fallthrough();
    grp->add_option("--matrix", matrix_arg)->required();
    grp->add_option("--max-order", max_order, "refuse groups larger than this");
    grp->callback([&] { cmd_group(matrix_arg, max_order); });

    auto* fib = app.add_subcommand("fiber", "preimages of a point under the monomial map");
    fib->fallthrough();
    fib->add_option("--matrix", matrix_arg)->required();
    fib->add_option("--at", at_arg, "target point, e.g. 0.3+0.1i,0.5")->required();
    fib->callback([&] { cmd_fiber(matrix_arg, at_arg); });

    auto* prj = app.add_subcommand("project", "character projection of a monomial");
    prj->fallthrough();
    prj->add_option("--matrix", matrix_arg)->required();
    prj->add_option("--b", b_arg, "character label, comma separated integers")->required();
    prj->add_option("--exponent", exp_arg, "monomial exponent, comma separated integers")
        ->required();
    prj->add_option("--at", at_arg, "optional evaluation point");
    prj->callback([&] { cmd_project(matrix_arg, b_arg, exp_arg, at_arg); });

    auto* ker = app.add_subcommand("kernel", "evaluate the scenario's source-domain kernel");
    ker->fallthrough();
    ker->add_option("file", file_arg, "scenario file")->required();
    ker->add_option("--at", at_arg, "evaluation pair z;w (w defaults to z)")->required();
    ker->callback([&] { cmd_kernel(file_arg, at_arg, g); });

    auto* ver = app.add_subcommand("verify", "run a scenario's identity checks");
    ver->fallthrough();
    ver->add_option("file", file_arg, "scenario file")->required();
    ver->add_option("--report", report_arg, "write a JSON report (CSV written alongside)");
    ver->callback([&] { rc = cmd_verify(file_arg, report_arg, g); });

    auto* exa = app.add_subcommand("example", "print a ready-made scenario file");
    exa->fallthrough();
    exa->add_option("name", name_arg, "scenario name")->required();
    exa->callback([&] { cmd_example(name_arg, g); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int r = app.exit(e);
        return r == 0 ? 0 : 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const EvalDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
