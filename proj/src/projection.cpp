#include "bergdecomp/projection.hpp"

#include <algorithm>
#include <cmath>

#include "bergdecomp/errors.hpp"

namespace bergdecomp::projection {

std::complex<double> project_chi(const GroupData& G, const IntVec& b, const Fn& f,
                                 const CVec& z) {
    if (static_cast<long>(z.size()) != G.dim())
        throw ArgumentError("project_chi: point dimension does not match the group");
    std::complex<double> acc{0.0, 0.0};
    for (const auto& m : G.reps())
        acc += group::character_value(G, b, m) * f(monomial::action_apply(G, m, z));
    return acc / G.order().get_d();
}

Fn projector(const GroupData& G, const IntVec& b, Fn f) {
    return [&G, b, f = std::move(f)](const CVec& z) { return project_chi(G, b, f, z); };
}

std::complex<double> transport_Tb(const GroupData& G, const IntVec& b, const Fn& g,
                                  const CVec& w) {
    const auto pts = monomial::fiber(G, w);
    const CVec& z = pts.front();
    return g(z) * monomial::eval_F(b, z);
}

double AlgebraReport::worst() const {
    return std::max({completeness, idempotence, annihilation, equivariance, invariance});
}

double NormIdentity::relative() const {
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

NormIdentity norm_identity_residual(const GroupData& G, const IntVec& b, const Fn& f,
                                    const domains::ReinhardtDomain& D1,
                                    const domains::WeightSpec& omega1,
                                    const domains::ReinhardtDomain& D2,
                                    const domains::WeightSpec& eta,
                                    const quadrature::QuadratureSpec& quad,
                                    quadrature::RunPolicy policy) {
    const Fn pf = projector(G, b, f);
    const auto left = [&](const CVec& z) { return std::norm(pf(z)) * omega1.eval(z); };
    const auto right = [&](const CVec& w) {
        return std::norm(transport_Tb(G, b, pf, w)) * eta.eval(w);
    };
    NormIdentity ni;
    ni.lhs = quadrature::integrate_domain(D1, left, quad, policy).value;
    ni.rhs = quadrature::integrate_domain(D2, right, quad, policy).value;
    return ni;
}

AlgebraReport check_projection_algebra(const GroupData& G, const Fn& f,
                                       const std::vector<CVec>& pts) {
    AlgebraReport rep;
    const auto& chars = G.char_reps();
    const auto& reps = G.reps();
    for (const auto& z : pts) {
        const std::complex<double> fz = f(z);
        std::complex<double> total{0.0, 0.0};
        for (const auto& b : chars) {
            const std::complex<double> pb = project_chi(G, b, f, z);
            total += pb;
            const Fn pf = projector(G, b, f);
            rep.idempotence =
                std::max(rep.idempotence, std::abs(project_chi(G, b, pf, z) - pb));
            for (const auto& bp : chars) {
                if (G.same_char_coset(b, bp)) continue;
                rep.annihilation =
                    std::max(rep.annihilation, std::abs(project_chi(G, bp, pf, z)));
            }
            // Both identities below need F_b along the orbit, so the sample
            // points must avoid the coordinate hyperplanes.
            const std::complex<double> gz = pb * monomial::eval_F(b, z);
            for (const auto& m : reps) {
                const CVec mz = monomial::action_apply(G, m, z);
                const std::complex<double> chi = group::character_value(G, b, m);
                rep.equivariance = std::max(
                    rep.equivariance, std::abs(project_chi(G, b, f, mz) - std::conj(chi) * pb));
                rep.invariance = std::max(
                    rep.invariance,
                    std::abs(project_chi(G, b, f, mz) * monomial::eval_F(b, mz) - gz));
            }
        }
        rep.completeness = std::max(rep.completeness, std::abs(total - fz));
    }
    return rep;
}

} // namespace bergdecomp::projection
