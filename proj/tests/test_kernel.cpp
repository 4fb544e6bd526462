#include <doctest.h>

#include <cmath>
#include <complex>

#include "ncgn/enumerate.hpp"
#include "ncgn/graph.hpp"
#include "ncgn/kernel.hpp"

using namespace ncgn;

namespace {

RibbonGraph load(const std::string& name, bool relaxed = false) {
    return parse_graph_file("data/" + name, relaxed);
}

double entry_dist(const KernelValue& a, const KernelValue& b) {
    double d = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) d = std::max(d, std::abs(a.m[r][c] - b.m[r][c]));
    return d;
}

}  // namespace

TEST_CASE("parameter validation") {
    PhysicalParams p;
    p.omega = 1.0;
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
    p.omega = 0.5;
    p.M = 1.0;
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
    p.M = 2.0;
    CHECK_NOTHROW(p.check());
    CHECK(p.omega_tilde() == doctest::Approx(1.0));
    CHECK_THROWS_AS(kernel(0.0, {0, 0}, {0, 0}, p), std::invalid_argument);
}

TEST_CASE("coincident points: unit gaussian, vanishing wedge phase") {
    PhysicalParams p;
    for (double t : {0.01, 0.3, 2.0}) {
        KernelValue a = kernel(t, {0.7, -0.2}, {0.7, -0.2}, p);
        KernelValue b = kernel(t, {0.7, -0.2}, {0.7, -0.2}, p, true);
        CHECK(entry_dist(a, b) == doctest::Approx(0.0));  // gaussian factor is 1
        KernelValue c = kernel(t, {0.0, 0.0}, {0.0, 0.0}, p);
        CHECK(entry_dist(a, c) < 1e-15);  // x wedge x = 0
    }
    // massless coincident kernel vanishes: the bracket is purely m
    PhysicalParams m0 = p;
    m0.mass = 0.0;
    KernelValue z = kernel(0.5, {1.0, 2.0}, {1.0, 2.0}, m0);
    CHECK(z.norm() == doctest::Approx(0.0));
}

TEST_CASE("hyperbolic matrix factor equals the exponential series") {
    PhysicalParams p;
    p.theta = 1.0;
    p.omega = 0.5;
    // A = -2 i Omega t (gamma Theta^-1 gamma) = -2 i Omega_tilde t g0g1
    for (double zt : {0.0, 0.1, 0.7, 2.0, 5.0}) {
        double t = zt / p.omega_tilde();
        KernelValue closed = matrix_exponential_factor(t, p);
        // series over the 2x2 representation
        std::array<std::array<std::complex<double>, 2>, 2> g01{
            {{std::complex<double>(0), std::complex<double>(1)},
             {std::complex<double>(-1), std::complex<double>(0)}}};
        std::array<std::array<std::complex<double>, 2>, 2> acc{
            {{std::complex<double>(1), std::complex<double>(0)},
             {std::complex<double>(0), std::complex<double>(1)}}};
        std::array<std::array<std::complex<double>, 2>, 2> term = acc;
        std::complex<double> c(0.0, -2.0 * p.omega_tilde() * t);
        for (int k = 1; k < 60; ++k) {
            std::array<std::array<std::complex<double>, 2>, 2> next{};
            for (int r = 0; r < 2; ++r)
                for (int cc = 0; cc < 2; ++cc)
                    next[r][cc] = (term[r][0] * g01[0][cc] + term[r][1] * g01[1][cc]) *
                                  (c / double(k));
            term = next;
            for (int r = 0; r < 2; ++r)
                for (int cc = 0; cc < 2; ++cc) acc[r][cc] += term[r][cc];
        }
        double err = 0;
        for (int r = 0; r < 2; ++r)
            for (int cc = 0; cc < 2; ++cc)
                err = std::max(err, std::abs(acc[r][cc] - closed.m[r][cc]));
        CHECK(err < 1e-12 * std::max(1.0, closed.norm()));
    }
}

TEST_CASE("slice integrals partition the t axis") {
    PhysicalParams p;
    std::array<double, 2> x{0, 0}, y{0.3, -0.1};
    KernelValue sum;
    for (int i = 1; i <= 8; ++i) sum += sliced_kernel(i, x, y, p, 1e-9).value;

    // independent direct integral over [M^-16, 1] by fine midpoint panels
    double a = std::pow(p.M, -16.0), b = 1.0;
    KernelValue direct;
    // geometric panel grid resolves the small-t behavior
    const int P = 20000;
    double ratio = std::pow(b / a, 1.0 / P);
    double lo = a;
    for (int k = 0; k < P; ++k) {
        double hi = lo * ratio;
        direct += kernel(0.5 * (lo + hi), x, y, p).scaled(hi - lo);
        lo = hi;
    }
    CHECK(entry_dist(sum, direct) < 1e-6 * std::max(1.0, direct.norm()));
}

TEST_CASE("massless zero slice is truncated with a warning flag") {
    PhysicalParams p;
    p.mass = 0.0;
    SliceIntegral s = sliced_kernel(0, {0, 0}, {0.5, 0}, p);
    CHECK(s.truncated_tail);
    PhysicalParams massive;
    CHECK_FALSE(sliced_kernel(0, {0, 0}, {0.5, 0}, massive).truncated_tail);
}

TEST_CASE("slice magnitudes scale like M^i at separation M^-i") {
    PhysicalParams p;
    double lo = 1e300, hi = 0;
    for (int i = 1; i <= 6; ++i) {
        double d = std::pow(p.M, -double(i));
        double mag = sliced_kernel(i, {0, 0}, {d, 0}, p).value.norm() /
                     std::pow(p.M, double(i));
        lo = std::min(lo, mag);
        hi = std::max(hi, mag);
    }
    CHECK(hi / lo < 10.0);
}

TEST_CASE("slice bound fit: positive rate, uniform pair, negative control") {
    PhysicalParams p;
    SliceBoundFit fit = verify_slice_bound(1, 4, 100, p, 1);
    CHECK(fit.pass);
    CHECK(fit.uniform_k > 0);
    CHECK(fit.uniform_K > 0);

    PhysicalParams m0 = p;
    m0.mass = 0.0;
    SliceBoundFit fit0 = verify_slice_bound(1, 4, 100, m0, 1);
    CHECK(fit0.pass);

    SliceBoundFit bad = verify_slice_bound(1, 4, 100, p, 1, true);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.counter_sample.empty());
}

TEST_CASE("slice bound sampling: serial reference agrees bitwise") {
    PhysicalParams p;
    SliceBoundFit a = verify_slice_bound(1, 3, 60, p, 9);
    SliceBoundFit b = verify_slice_bound_serial(1, 3, 60, p, 9);
    REQUIRE(a.per_slice.size() == b.per_slice.size());
    for (size_t i = 0; i < a.per_slice.size(); ++i) {
        CHECK(a.per_slice[i].k == b.per_slice[i].k);
        CHECK(a.per_slice[i].K == b.per_slice[i].K);
    }
    CHECK(a.uniform_k == b.uniform_k);
    CHECK(a.uniform_K == b.uniform_K);
}

TEST_CASE("masslet identity: numeric quadrature against the closed form") {
    PhysicalParams p;
    SUBCASE("pure gaussian at w = 0") {
        for (int i : {0, 2, 4}) {
            MassletCheck mc = masslet_check(i, {0, 0}, p);
            CHECK(mc.closed_form ==
                  doctest::Approx(M_PI * std::pow(p.M, -2.0 * i)).epsilon(1e-14));
            CHECK(mc.rel_error < 1e-8);
        }
    }
    SUBCASE("oscillatory cases stay within tolerance") {
        MassletCheck mc = masslet_check(2, {1, 0}, p);
        CHECK(mc.rel_error < 1e-6);
        mc = masslet_check(4, {2.5, -1.0}, p);
        CHECK(mc.rel_error < 1e-6);
    }
    SUBCASE("theta enters the exponent") {
        PhysicalParams q = p;
        q.theta = 2.0;
        MassletCheck mc = masslet_check(1, {1.5, 0.5}, q);
        double w2 = 1.5 * 1.5 + 0.5 * 0.5;
        double expect = M_PI / std::pow(q.M, 2.0) *
                        std::exp(-w2 / (q.theta * q.theta * std::pow(q.M, 2.0)));
        CHECK(mc.closed_form == doctest::Approx(expect).epsilon(1e-14));
        CHECK(mc.rel_error < 1e-6);
    }
    SUBCASE("decay rate in |w|^2 matches M^-2i") {
        int i = 3;
        MassletCheck a = masslet_check(i, {1, 0}, p);
        MassletCheck b = masslet_check(i, {2, 0}, p);
        double slope = std::log(a.closed_form / b.closed_form) / (4.0 - 1.0);
        CHECK(slope == doctest::Approx(std::pow(p.M, -2.0 * i)).epsilon(1e-12));
    }
}

TEST_CASE("vacuum translation invariance") {
    SUBCASE("orientable vacuum: residual vanishes") {
        VacuumInvariance inv = vacuum_invariance(load("vacuum_orientable.graph"));
        CHECK(inv.invariant);
        CHECK(inv.residual.is_zero());
    }
    SUBCASE("clashing vacuum: nonzero residual") {
        VacuumInvariance inv = vacuum_invariance(load("vacuum_clashing.graph", true));
        CHECK_FALSE(inv.invariant);
        CHECK_FALSE(inv.residual.is_zero());
    }
    SUBCASE("graphs with externals are rejected") {
        CHECK_THROWS_AS(vacuum_invariance(load("tadpole.graph")), PreconditionError);
    }
    SUBCASE("the empty graph is trivially invariant") {
        VacuumInvariance inv = vacuum_invariance(parse_graph("graph empty\n"));
        CHECK(inv.invariant);
        CHECK(inv.residual.is_zero());
    }
    SUBCASE("every enumerated orientable vacuum is invariant") {
        int count = 0;
        for (const auto& g : enumerate_orientable_graphs(2)) {
            if (!g.is_vacuum()) continue;
            VacuumInvariance inv = vacuum_invariance(g);
            REQUIRE(inv.invariant);
            ++count;
        }
        CHECK(count > 5);
    }
}
