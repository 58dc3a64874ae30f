#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "bergdecomp/bergman.hpp"
#include "bergdecomp/domains.hpp"
#include "bergdecomp/intlin.hpp"

namespace bergdecomp::serialize {

// Key order is part of the on-disk format: reports must be byte-identical
// across runs (modulo the timestamp), so everything uses ordered_json.
using json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings; doubles rely on the library's exact
// round-trip serialization.
json rat_to_json(const Rat& q);
Rat rat_from_json(const json& j);

json matrix_to_json(const intlin::IntMatrix& A);
intlin::IntMatrix matrix_from_json(const json& j);

json domain_to_json(const domains::ReinhardtDomain& D);
domains::ReinhardtDomain domain_from_json(const json& j);

json weight_to_json(const domains::WeightSpec& w);
domains::WeightSpec weight_from_json(const json& j);

json validity_to_json(const domains::ValidityRegion& V);
domains::ValidityRegion validity_from_json(const json& j);

json kernel_to_json(const bergman::KernelSeries& K);
bergman::KernelSeries kernel_from_json(const json& j);

// Stable content hash (FNV-1a 64, hex) of a canonical dump; used for cache
// keys and report provenance.
std::string content_hash(const std::string& text);

// Cache key for a kernel build request. The run policy is excluded: the
// coefficients are analytic and do not depend on scheduling.
std::string cache_key(const domains::ReinhardtDomain& D, const domains::WeightSpec& w,
                      const bergman::KernelBuildSpec& spec);

std::optional<bergman::KernelSeries> load_cached_kernel(const std::string& dir,
                                                        const std::string& key);
// Returns false when another writer holds the lock or the write fails; the
// caller keeps its in-memory kernel either way.
bool store_cached_kernel(const std::string& dir, const std::string& key,
                         const bergman::KernelSeries& K);

// build_kernel with a read-through cache; empty dir disables caching.
bergman::KernelSeries cached_build(const domains::ReinhardtDomain& D,
                                   const domains::WeightSpec& w,
                                   const bergman::KernelBuildSpec& spec,
                                   const std::string& cache_dir);

} // namespace bergdecomp::serialize
