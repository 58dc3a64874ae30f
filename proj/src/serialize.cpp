#include "bergdecomp/serialize.hpp"

#include <cstdint>
#include <cstdio>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "bergdecomp/errors.hpp"

namespace bergdecomp::serialize {

namespace fs = std::filesystem;

json rat_to_json(const Rat& q) { return format_rat(q); }

Rat rat_from_json(const json& j) {
    if (!j.is_string()) throw ArgumentError("rational fields must be \"p/q\" strings");
    return parse_rat(j.get<std::string>());
}

namespace {

json ratvec_to_json(const RatVec& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(rat_to_json(q));
    return a;
}

RatVec ratvec_from_json(const json& j) {
    if (!j.is_array()) throw ArgumentError("expected an array of rationals");
    RatVec v;
    for (const auto& e : j) v.push_back(rat_from_json(e));
    return v;
}

json intvec_to_json(const IntVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_si());
    return a;
}

IntVec intvec_from_json(const json& j) {
    if (!j.is_array()) throw ArgumentError("expected an integer array");
    IntVec v;
    for (const auto& e : j) v.emplace_back(e.get<long>());
    return v;
}

const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ArgumentError(std::string("missing field: ") + key);
    return *it;
}

} // namespace

json matrix_to_json(const intlin::IntMatrix& A) {
    json rows = json::array();
    for (int i = 0; i < A.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < A.dim(); ++j) row.push_back(A.at(i, j).get_si());
        rows.push_back(std::move(row));
    }
    return rows;
}

intlin::IntMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ArgumentError("matrix must be a nested integer array");
    std::vector<std::vector<long>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw ArgumentError("matrix must be a nested integer array");
        std::vector<long> row;
        for (const auto& e : r) row.push_back(e.get<long>());
        rows.push_back(std::move(row));
    }
    return intlin::IntMatrix::from_rows(rows);
}

json domain_to_json(const domains::ReinhardtDomain& D) {
    json j;
    switch (D.kind()) {
        case domains::ReinhardtDomain::Kind::product: {
            j["kind"] = "product";
            json f = json::array();
            for (const auto& fac : D.as_product().factors)
                f.push_back(json{{"lo", rat_to_json(fac.lo)},
                                 {"hi", rat_to_json(fac.hi)},
                                 {"punctured", fac.punctured}});
            j["factors"] = std::move(f);
            break;
        }
        case domains::ReinhardtDomain::Kind::ellipsoid:
            j["kind"] = "ellipsoid";
            j["exponents"] = D.as_ellipsoid().p;
            break;
        case domains::ReinhardtDomain::Kind::monomial: {
            j["kind"] = "monomial";
            json rows = json::array();
            for (const auto& r : D.as_monomial().rows) rows.push_back(intvec_to_json(r));
            j["rows"] = std::move(rows);
            j["lower"] = ratvec_to_json(D.as_monomial().lo);
            j["upper"] = ratvec_to_json(D.as_monomial().hi);
            break;
        }
    }
    j["axes_deleted"] = D.axes_deleted();
    return j;
}

domains::ReinhardtDomain domain_from_json(const json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    const bool deleted = j.value("axes_deleted", false);
    if (kind == "product") {
        std::vector<domains::RadialFactor> factors;
        for (const auto& f : need(j, "factors"))
            factors.push_back(domains::RadialFactor{rat_from_json(need(f, "lo")),
                                                    rat_from_json(need(f, "hi")),
                                                    f.value("punctured", false)});
        return domains::ReinhardtDomain::product(std::move(factors), deleted);
    }
    if (kind == "ellipsoid")
        return domains::ReinhardtDomain::ellipsoid(need(j, "exponents").get<std::vector<long>>(),
                                                   deleted);
    if (kind == "monomial") {
        std::vector<IntVec> rows;
        for (const auto& r : need(j, "rows")) rows.push_back(intvec_from_json(r));
        return domains::ReinhardtDomain::monomial_region(std::move(rows),
                                                         ratvec_from_json(need(j, "lower")),
                                                         ratvec_from_json(need(j, "upper")),
                                                         deleted);
    }
    throw ArgumentError("unknown domain kind: " + kind);
}

json weight_to_json(const domains::WeightSpec& w) {
    return json{{"mu", ratvec_to_json(w.mu)}, {"scale", rat_to_json(w.scale)}};
}

domains::WeightSpec weight_from_json(const json& j) {
    domains::WeightSpec w;
    w.mu = ratvec_from_json(need(j, "mu"));
    w.scale = j.contains("scale") ? rat_from_json(j["scale"]) : Rat(1);
    if (w.scale <= 0) throw ArgumentError("weight scale must be positive");
    return w;
}

json validity_to_json(const domains::ValidityRegion& V) {
    return json{{"lo", V.lo}, {"hi", V.hi}, {"constraint_space", V.constraint_space}};
}

domains::ValidityRegion validity_from_json(const json& j) {
    domains::ValidityRegion V;
    V.lo = need(j, "lo").get<std::vector<double>>();
    V.hi = need(j, "hi").get<std::vector<double>>();
    V.constraint_space = j.value("constraint_space", false);
    return V;
}

json kernel_to_json(const bergman::KernelSeries& K) {
    json j;
    j["domain"] = domain_to_json(K.domain());
    j["weight"] = weight_to_json(K.weight());
    j["validity"] = validity_to_json(K.validity());
    j["truncation_degree"] = K.truncation_degree();
    j["tail_bound"] = K.tail_bound();
    json terms = json::array();
    for (const auto& [k, c] : K.terms()) {
        json t;
        t["k"] = k;
        t["value"] = c.value;
        if (c.exact) t["exact"] = rat_to_json(*c.exact);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

bergman::KernelSeries kernel_from_json(const json& j) {
    bergman::KernelSeries K(domain_from_json(need(j, "domain")),
                            weight_from_json(need(j, "weight")),
                            validity_from_json(need(j, "validity")));
    for (const auto& t : need(j, "terms")) {
        bergman::Coeff c;
        c.value = need(t, "value").get<double>();
        if (t.contains("exact")) c.exact = rat_from_json(t["exact"]);
        K.set_term(need(t, "k").get<std::vector<long>>(), std::move(c));
    }
    K.set_truncation(need(j, "truncation_degree").get<long>(),
                     need(j, "tail_bound").get<double>());
    return K;
}

std::string content_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string cache_key(const domains::ReinhardtDomain& D, const domains::WeightSpec& w,
                      const bergman::KernelBuildSpec& spec) {
    json j;
    j["domain"] = domain_to_json(D);
    j["weight"] = weight_to_json(w);
    j["max_degree"] = spec.max_degree;
    j["tail_tol"] = spec.tail_tol;
    j["validity_scale"] = spec.validity_scale;
    if (spec.validity) j["validity"] = validity_to_json(*spec.validity);
    return content_hash(j.dump());
}

std::optional<bergman::KernelSeries> load_cached_kernel(const std::string& dir,
                                                        const std::string& key) {
    if (dir.empty()) return std::nullopt;
    std::ifstream in(fs::path(dir) / (key + ".json"));
    if (!in) return std::nullopt;
    try {
        return kernel_from_json(json::parse(in));
    } catch (const std::exception&) {
        return std::nullopt; // corrupt entries are treated as misses
    }
}

bool store_cached_kernel(const std::string& dir, const std::string& key,
                         const bergman::KernelSeries& K) {
    if (dir.empty()) return false;
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path lock = fs::path(dir) / (key + ".lock");
    const int fd = ::open(lock.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) return false; // a concurrent writer holds the lock
    ::close(fd);
    const fs::path tmp = fs::path(dir) / (key + ".tmp");
    const fs::path final_path = fs::path(dir) / (key + ".json");
    bool ok = false;
    {
        std::ofstream out(tmp);
        if (out) {
            out << kernel_to_json(K).dump(2) << '\n';
            ok = static_cast<bool>(out);
        }
    }
    if (ok) {
        fs::rename(tmp, final_path, ec);
        ok = !ec;
    }
    fs::remove(lock, ec);
    return ok;
}

bergman::KernelSeries cached_build(const domains::ReinhardtDomain& D,
                                   const domains::WeightSpec& w,
                                   const bergman::KernelBuildSpec& spec,
                                   const std::string& cache_dir) {
    const std::string key = cache_dir.empty() ? std::string() : cache_key(D, w, spec);
    if (!key.empty())
        if (auto K = load_cached_kernel(cache_dir, key)) return std::move(*K);
    bergman::KernelSeries K = bergman::build_kernel(D, w, spec);
    if (!key.empty()) store_cached_kernel(cache_dir, key, K);
    return K;
}

} // namespace bergdecomp::serialize
