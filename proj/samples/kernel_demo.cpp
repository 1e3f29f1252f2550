// Desk-quick kernel scan: one arc weight, two boundary points, and the
// growth table that separates them.  Mirrors what the scan-maxdomain job
// emits, at a resolution that finishes in a few seconds.
#include <cstdio>

#include "cycdom/kernel.hpp"

using namespace cycdom;

int main() {
    WeightSpec weight = WeightSpec::arc_set({CircleArc{0.0, 0.7853981633974483}});
    QuadratureGrid grid = build_grid(40, 18, 24, 128);
    GramMatrix G = gram_matrix(weight, 1, 32, grid, 1);
    OrthonormalSystem sys = orthonormalize(G);

    std::vector<int> schedule = {8, 16, 24, 32};
    Cx on_arc{Real(1), Real(0)};
    Cx off_arc{Real(-1), Real(0)};

    std::printf("%4s %22s %22s\n", "N", "lambda at z=1", "lambda at z=-1");
    LambdaProfile on = lambda_profile(sys, on_arc, schedule);
    LambdaProfile off = lambda_profile(sys, off_arc, schedule);
    for (std::size_t i = 0; i < schedule.size(); ++i)
        std::printf("%4d %22s %22s\n", schedule[i],
                    on.samples[i].second.str(12, std::ios_base::scientific).c_str(),
                    off.samples[i].second.str(12, std::ios_base::scientific).c_str());

    GrowthThresholds th;
    KernelDiagnostic a = classify_point(sys, std::complex<double>(1.0, 0.0), schedule, th);
    KernelDiagnostic b = classify_point(sys, std::complex<double>(-1.0, 0.0), schedule, th);
    std::printf("\nz=1  -> %s (slope %.4f)\n", to_string(a.classification).c_str(), a.slope);
    std::printf("z=-1 -> %s (slope %.4f)\n", to_string(b.classification).c_str(), b.slope);
    return 0;
}
