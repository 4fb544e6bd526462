// Benchmark comparing the serial reference implementations with the
// OpenMP kernels: attribution enumeration, slice-bound sampling and the
// masslet quadrature.

#include <chrono>
#include <cstdio>

#include "ncgn/graph.hpp"
#include "ncgn/kernel.hpp"
#include "ncgn/multiscale.hpp"
#include "ncgn/parallel.hpp"

using namespace ncgn;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return seconds(t0, t1);
}

const char* kFiveLines = R"(
graph five-lines
vertex v1 kind=o1
vertex v2 kind=o1
vertex v3 kind=o1
line la  v1.2 v2.1
line lb  v1.4 v2.3
line la0 v1.3 v3.2
line lb0 v3.1 v2.4
line lc  v3.3 v3.4
external x1 v1.1
external x2 v2.2
)";

}  // namespace

int main() {
    std::printf("jobs available: %d\n\n", hardware_jobs());

    RibbonGraph g = parse_graph(kFiveLines);
    const int rho = 6;
    double serial_total = 0, parallel_total = 0;
    double ts = timed([&] {
        serial_total = sum_attributions_serial(g, rho, 2.0).totals.back();
    });
    double tp = timed([&] {
        parallel_total = sum_attributions(g, rho, 2.0).totals.back();
    });
    std::printf("attribution sum (I=5, rho=%d)\n", rho);
    std::printf("  serial   %8.3fs  total %.12g\n", ts, serial_total);
    std::printf("  parallel %8.3fs  total %.12g  (speedup %.2fx, bitwise %s)\n\n",
                tp, parallel_total, ts / tp,
                serial_total == parallel_total ? "equal" : "DIFFERENT");

    PhysicalParams p;
    SliceBoundFit fs, fp;
    double bs = timed([&] { fs = verify_slice_bound_serial(1, 8, 400, p); });
    double bp = timed([&] { fp = verify_slice_bound(1, 8, 400, p); });
    std::printf("slice-bound sampling (8 slices x 400 samples)\n");
    std::printf("  serial   %8.3fs  k=%.6f K=%.6f\n", bs, fs.uniform_k, fs.uniform_K);
    std::printf("  parallel %8.3fs  k=%.6f K=%.6f  (speedup %.2fx, bitwise %s)\n\n",
                bp, fp.uniform_k, fp.uniform_K, bs / bp,
                fs.uniform_k == fp.uniform_k && fs.uniform_K == fp.uniform_K
                    ? "equal" : "DIFFERENT");

    MassletCheck mc;
    double ms = timed([&] { mc = masslet_check(0, {4.0, 2.0}, p); });
    std::printf("masslet quadrature (i=0, |w|~4.5): %8.3fs  rel err %.3g\n",
                ms, mc.rel_error);
    return 0;
}
