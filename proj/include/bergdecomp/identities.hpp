#pragma once

#include <complex>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bergdecomp/bergman.hpp"
#include "bergdecomp/domains.hpp"
#include "bergdecomp/group.hpp"
#include "bergdecomp/monomial.hpp"

namespace bergdecomp::identities {

using bergman::KernelBuildSpec;
using bergman::KernelSeries;
using domains::ReinhardtDomain;
using domains::WeightSpec;
using group::GroupData;
using monomial::CVec;

// One character component of the kernel decomposition: the coset label, the
// representative actually used for the transform, and the kernel of
// (D2, eta_b).
struct CharacterBlock {
    IntVec b_star;
    IntVec b;
    WeightSpec eta;
    KernelSeries kernel;
};

struct DecompositionScenario {
    GroupData G;
    ReinhardtDomain D1;
    ReinhardtDomain D2;
    WeightSpec omega1; // pullback of omega2 through the monomial map
    WeightSpec omega2;
    bool use_full_domains;
    KernelSeries K1;
    std::vector<CharacterBlock> blocks;
};

// Pluggable kernel construction (caching layers wrap bergman::build_kernel).
using KernelBuilder = std::function<KernelSeries(
    const ReinhardtDomain&, const WeightSpec&, const KernelBuildSpec&)>;

// Assembles the full scenario: omega1 = pullback(omega2), one block per
// character with b from admissible_representative (or the override, which
// must land in the same character coset). With use_full_domains the kernels
// live on D1/D2 themselves and every weight must be admissible; otherwise
// the kernels are built on the axes-deleted domains (two-sided exponents).
DecompositionScenario build_scenario(const intlin::IntMatrix& A, const ReinhardtDomain& D1,
                                     const ReinhardtDomain& D2, const WeightSpec& omega2,
                                     const KernelBuildSpec& spec1, const KernelBuildSpec& spec2,
                                     bool use_full_domains = true,
                                     const std::map<std::size_t, IntVec>& b_overrides = {},
                                     const KernelBuilder& builder = {});

// Samples points of D1 and checks the scenario geometry: forward containment
// of the image in D2, orbit closure of D1 under the group action, and
// containment of the whole fiber of each image point. Throws NumericError on
// the first violated sample.
struct GeometryReport {
    int samples = 0;
};
GeometryReport validate_geometry(const DecompositionScenario& S, int samples = 500,
                                 unsigned seed = 1u);

// Kernel identity B_{D1}(z,w) = sum_chi F_{-b}(z) B_{D2}(Phi z, Phi w; eta_b)
// conj(F_{-b}(w)). With raw the series are evaluated without the validity
// region checks.
struct DecompEval {
    std::complex<double> lhs{};
    std::complex<double> rhs{};
    std::vector<std::complex<double>> terms;
    double residual() const;
    double relative() const; // residual / |lhs|
};
DecompEval decomposition_eval(const DecompositionScenario& S, const CVec& z, const CVec& w,
                              bool raw = false);

// Diagonal w = z: every character term is |F_{-b}(z)|^2 times a diagonal
// kernel value, hence nonnegative; a negative term throws NumericError.
struct DiagEval {
    double lhs = 0.0;
    std::vector<double> terms;
    double rhs() const;
    double residual() const;
    double relative() const;
};
DiagEval diagonal_eval(const DecompositionScenario& S, const CVec& z, bool raw = false);

// B_{D1}(z,z) <= decomposition RHS built from the axes-deleted kernels. The
// scenario supplies the RHS; the full-domain kernel is passed separately.
struct CorollaryEval {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack() const { return rhs - lhs; }
    bool holds(double tol) const { return lhs <= rhs + tol; }
};
CorollaryEval corollary_inequality(const DecompositionScenario& S, const KernelSeries& K1_full,
                                   const CVec& z, bool raw = false);

// Fiber transformation law: sum over the fiber points p of v of
// B_{D1}(z,p) conj(1/JPhi(p)) equals JPhi(z) B_{D2}(Phi z, v) for the plain
// (unweighted) kernels of D1 and D2 = Phi(D1).
struct FiberEval {
    std::complex<double> lhs{};
    std::complex<double> rhs{};
    double residual() const;
    double relative() const; // residual / max(|lhs|, |rhs|)
};
FiberEval bell_fiber_eval(const GroupData& G, const KernelSeries& K1, const KernelSeries& K2,
                          const CVec& z, const CVec& v, bool raw = false);

// Diagonal kernel estimate for the two-dimensional monomial ball
// {|z1| < d1, |z2| < d2, |z1 z2 - 1| < d3} at the center point (1,1),
// requiring d1, d2 > 3/2 and 0 < d3 < 1/2. The region pulls back through
// (z1, z2) -> (z1 z2, z2) to a product of a small disk about 1 and an
// annulus (1/d1, d2); `computed` carries that product through the weight
// transform (weighted annulus series times the off-center disk factor),
// `model` is the same value from independent closed-form sums, `reference`
// is the growth model d3^{-1} log(d1 d2).
struct BallEstimate {
    double computed = 0.0;
    double model = 0.0;
    double reference = 0.0;
    double ratio = 0.0; // computed / reference
};
BallEstimate monomial_ball_estimate(const Rat& d1, const Rat& d2, const Rat& d3,
                                    const KernelBuildSpec& spec = {});

// Draws a point of D1 inside the validity region V, bounded away from the
// band edges and from the coordinate hyperplanes.
CVec sample_validity_point(const ReinhardtDomain& D, const domains::ValidityRegion& V,
                           std::mt19937& rng, double inner = 0.15);

// Named worked configurations: disk_z2, ellipsoid_p2q2, hartogs_p1q1,
// hartogs_p2q1, remark2_bidisk.
DecompositionScenario make_example_scenario(const std::string& name, const KernelBuildSpec& spec1,
                                            const KernelBuildSpec& spec2);
std::vector<std::string> example_scenario_names();

} // namespace bergdecomp::identities
