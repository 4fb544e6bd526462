#pragma once

// Numerical propagator kernels in the slice decomposition, the slice-bound
// verification by sampling and fitting, the oscillatory Gaussian identity
// behind the masslets, and the (symbolic) vacuum translation-invariance
// decision.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ncgn/graph.hpp"
#include "ncgn/symbols.hpp"

namespace ncgn {

struct PhysicalParams {
    double theta = 1.0;   // length^2, > 0
    double omega = 0.5;   // in [0, 1)
    double mass = 1.0;    // >= 0
    double M = 2.0;       // slicing base, > 1
    double i0_truncation = 64.0;  // upper t limit of the i=0 slice when m = 0

    double omega_tilde() const { return 2.0 * omega / theta; }
    void check() const;
};

using Complex = std::complex<double>;

struct KernelValue {
    std::array<std::array<Complex, 2>, 2> m{};
    double norm() const;  // Frobenius
    KernelValue& operator+=(const KernelValue& o);
    KernelValue scaled(double s) const;
};

// The fixed-t kernel C(t; x, y).  The matrix factor exp(-2 i Omega t
// gamma Theta^-1 gamma) is folded against 1/sinh so that large arguments
// stay finite: E(t)/sinh = coth(2 Ot t) 1 - i gamma0 gamma1.
KernelValue kernel(double t, const std::array<double, 2>& x,
                   const std::array<double, 2>& y, const PhysicalParams& p,
                   bool drop_gaussian = false);

// exp(-2 i Omega t gamma Theta^-1 gamma) in closed hyperbolic form (the
// series oracle in the tests checks it).
KernelValue matrix_exponential_factor(double t, const PhysicalParams& p);

struct SliceIntegral {
    KernelValue value;
    double achieved_tol = 0.0;
    bool truncated_tail = false;  // i = 0 with m = 0: configurable cutoff
};

// Integral of the kernel over the t-slice [M^-2i, M^-2(i-1)] (i >= 1) or
// [1, T] (i = 0), by adaptive quadrature to the relative tolerance.
SliceIntegral sliced_kernel(int i, const std::array<double, 2>& x,
                            const std::array<double, 2>& y, const PhysicalParams& p,
                            double rel_tol = 1e-8, bool drop_gaussian = false);

struct SliceFit {
    int i = 0;
    double k = 0.0;  // fitted decay rate
    double K = 0.0;  // smallest prefactor at that rate
};

struct SliceBoundFit {
    std::vector<SliceFit> per_slice;
    double uniform_k = 0.0;
    double uniform_K = 0.0;
    bool pass = false;
    std::string counter_sample;  // filled on failure
};

// Sample |C^i| over separations up to ~6 M^-i and fit the smallest K and
// largest k with |C^i| <= K M^i exp(-k M^i |x-y|) at every sample; the
// verdict needs one (K, k) pair uniform over the whole slice range.
SliceBoundFit verify_slice_bound(int i_lo, int i_hi, int samples_per_slice,
                                 const PhysicalParams& p, std::uint64_t seed = 1,
                                 bool drop_gaussian = false);

// Serial reference of the sampling loop (the OpenMP path must agree bitwise).
SliceBoundFit verify_slice_bound_serial(int i_lo, int i_hi, int samples_per_slice,
                                        const PhysicalParams& p, std::uint64_t seed = 1,
                                        bool drop_gaussian = false);

struct MassletCheck {
    double numeric = 0.0;
    double closed_form = 0.0;
    double rel_error = 0.0;
};

// integral d^2u exp(-M^{2i} u^2 + i u wedge w) against the Gaussian closed
// form pi M^{-2i} exp(-|w|^2 / (theta^2 M^{2i})); the imaginary part
// vanishes by parity.  Oscillation-aware panel quadrature.
MassletCheck masslet_check(int i, const std::array<double, 2>& w,
                           const PhysicalParams& p, double rel_tol = 1e-6);

struct VacuumInvariance {
    bool invariant = false;
    LinearForm residual;  // the obstruction, reduced modulo the deltas
};

// Translation invariance of a vacuum amplitude: the shift-induced phase
// sum(eps epsilon u_l) must vanish modulo the delta system.  Exact, no
// tolerance.  Non-orientable vacuum graphs (relaxed mode) fail with a
// nonzero residual.
VacuumInvariance vacuum_invariance(const RibbonGraph& g);

}  // namespace ncgn
