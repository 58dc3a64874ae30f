#pragma once

#include <map>
#include <string>

// Ready-made scenario files, also shipped under scenarios/. The `example`
// subcommand prints these; a test diffs them against the shipped copies so
// the two cannot drift apart.
namespace bergdecomp_cli {

inline const std::map<std::string, std::string>& embedded_scenarios() {
    static const std::map<std::string, std::string> m = {
        {"disk_z2", R"(# Unit disk pulled back through the squaring map; the two
# character kernels must reassemble the disk kernel.
name = "disk_z2"
check = "decomposition"
mode = "full-domains"
matrix = [[2]]

[domain1]
kind = "disk"
radius = "1"

[domain2]
kind = "disk"
radius = "1"

[weight2]
mu = ["0"]
scale = "1"

[points]
count = 25
seed = 101
scale = 0.7

[tolerances]
kernel_tol = 1e-12
quad_tol = 1e-9
residual_tol = 1e-8
)"},
        {"ellipsoid_p2q2", R"(# Complex ellipsoid |z1|^4 + |z2|^4 < 1 over the unit ball,
# coordinatewise squaring, group of order 4.
name = "ellipsoid_p2q2"
check = "decomposition"
mode = "full-domains"
matrix = [[2, 0], [0, 2]]

[domain1]
kind = "ellipsoid"
exponents = [2, 2]

[domain2]
kind = "ellipsoid"
exponents = [1, 1]

[weight2]
mu = ["0", "0"]
scale = "1"

[points]
count = 20
seed = 7
scale = 0.7

[tolerances]
kernel_tol = 1e-10
quad_tol = 1e-9
residual_tol = 1e-4
)"},
        {"hartogs_p1q1", R"(# Hartogs triangle |z1| < |z2| < 1 mapped onto the bidisk;
# the group is trivial but the weight shift is not.
name = "hartogs_p1q1"
check = "decomposition"
mode = "full-domains"
matrix = [[1, -1], [0, 1]]

[domain1]
kind = "monomial"
rows = [[1, -1], [0, 1]]
lower = ["0", "0"]
upper = ["1", "1"]

[domain2]
kind = "polydisk"
radii = ["1", "1"]

[weight2]
mu = ["0", "0"]
scale = "1"

[points]
count = 12
seed = 5
scale = 0.7

[tolerances]
kernel_tol = 1e-10
quad_tol = 1e-9
residual_tol = 1e-4
)"},
        {"hartogs_p2q1", R"(# Generalized Hartogs triangle |z1|^2 < |z2| < 1; group of
# order two acting on the first coordinate.
name = "hartogs_p2q1"
check = "decomposition"
mode = "full-domains"
matrix = [[2, -1], [0, 1]]

[domain1]
kind = "monomial"
rows = [[2, -1], [0, 1]]
lower = ["0", "0"]
upper = ["1", "1"]

[domain2]
kind = "polydisk"
radii = ["1", "1"]

[weight2]
mu = ["0", "0"]
scale = "1"

[points]
count = 12
seed = 5
scale = 0.7

[tolerances]
kernel_tol = 1e-10
quad_tol = 1e-9
residual_tol = 1e-4
)"},
        {"remark2_bidisk", R"(# Inadmissible transported weight |w2|^4 on the bidisk: the
# identity survives only on the axes-deleted domains, so this
# scenario runs in axes-deleted mode. b is pinned at 0 to keep
# the classical weight.
name = "remark2_bidisk"
check = "decomposition"
mode = "axes-deleted"
matrix = [[1, 1], [0, 1]]

[domain1]
kind = "monomial"
rows = [[1, 1], [0, 1]]
lower = ["0", "0"]
upper = ["1", "1"]

[domain2]
kind = "polydisk"
radii = ["1", "1"]

[weight2]
mu = ["0", "3"]
scale = "1"

[overrides]
b0 = [0, 0]

[points]
count = 12
seed = 9
scale = 0.7

[tolerances]
kernel_tol = 1e-10
quad_tol = 1e-9
residual_tol = 1e-6
)"},
        {"monomial_ball", R"(# Diagonal kernel size of the monomial-ball model region:
# the computed value must stay within a fixed factor of
# log(delta1*delta2)/delta3.
name = "monomial_ball"
check = "ball-estimate"

[ball]
delta1 = "2"
delta2 = "2"
delta3 = "1/4"
ratio_lo = 0.02
ratio_hi = 50

[tolerances]
kernel_tol = 1e-13
)"},
    };
    return m;
}

} // namespace bergdecomp_cli
