// Walks the flagship symbolic examples: one polynomial whose cyclicity
// flips across the Dirichlet-type scale, and the corner family whose joint
// verdict separates the Hardy space from the strong Dirichlet regime.
#include <cstdio>

#include "cycdom/cyclicity.hpp"
#include "cycdom/parse.hpp"

using namespace cycdom;

int main() {
    MultiPolynomial torus = parse_polynomial("1 - z1*z2", 2);
    std::printf("%-34s %s\n", "space", "verdict for 1 - z1*z2");
    for (double t : {0.25, 0.5, 0.6, 0.75, 1.0}) {
        SpaceSpec space = SpaceSpec::dirichlet_type(t, 2);
        CyclicityVerdict v = is_cyclic(space, torus);
        std::printf("%-34s %s\n", space.name().c_str(), to_string(v.status).c_str());
    }

    std::vector<MultiPolynomial> corner = {parse_polynomial("z1 - 1", 2),
                                           parse_polynomial("z2 - 1", 2)};
    std::printf("\n%-34s %s\n", "space", "verdict for {z1 - 1, z2 - 1}");
    for (SpaceSpec space : {SpaceSpec::hardy(2.0, 2), SpaceSpec::dirichlet_type(2.0, 2)}) {
        CyclicityVerdict v = is_jointly_cyclic(space, corner);
        std::printf("%-34s %s\n", space.name().c_str(), to_string(v.status).c_str());
        std::printf("    %s\n", v.certificate.c_str());
    }
    return 0;
}
