#include "ncgn/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ncgn/orientation.hpp"
#include "ncgn/parallel.hpp"
#include "ncgn/rosette.hpp"

namespace ncgn {

void PhysicalParams::check() const {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (omega < 0 || omega >= 1) throw std::invalid_argument("Omega must lie in [0,1)");
    if (mass < 0) throw std::invalid_argument("mass must be non-negative");
    if (M <= 1) throw std::invalid_argument("M must exceed 1");
}

double KernelValue::norm() const {
    double s = 0;
    for (const auto& row : m)
        for (const auto& e : row) s += std::norm(e);
    return std::sqrt(s);
}

KernelValue& KernelValue::operator+=(const KernelValue& o) {
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m[r][c] += o.m[r][c];
    return *this;
}

KernelValue KernelValue::scaled(double s) const {
    KernelValue r = *this;
    for (auto& row : r.m)
        for (auto& e : row) e *= s;
    return r;
}

namespace {

constexpr Complex kI{0.0, 1.0};

// gamma0 = i sigma1, gamma1 = i sigma3, gamma0 gamma1 = i sigma2.
KernelValue slash(double a0, double a1) {
    KernelValue v;
    v.m[0][0] = kI * a1;
    v.m[0][1] = kI * a0;
    v.m[1][0] = kI * a0;
    v.m[1][1] = -kI * a1;
    return v;
}

KernelValue gamma01() {
    KernelValue v;
    v.m[0][1] = Complex(1.0);
    v.m[1][0] = Complex(-1.0);
    return v;
}

KernelValue unit(double s = 1.0) {
    KernelValue v;
    v.m[0][0] = v.m[1][1] = Complex(s);
    return v;
}

KernelValue mat_mul(const KernelValue& a, const KernelValue& b) {
    KernelValue r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return r;
}

KernelValue cscale(const KernelValue& a, Complex s) {
    KernelValue r = a;
    for (auto& row : r.m)
        for (auto& e : row) e *= s;
    return r;
}

}  // namespace

KernelValue matrix_exponential_factor(double t, const PhysicalParams& p) {
    double z = 2.0 * p.omega_tilde() * t;
    KernelValue e = unit(std::cosh(z));
    KernelValue g = gamma01();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) e.m[r][c] += -kI * std::sinh(z) * g.m[r][c];
    return e;
}

KernelValue kernel(double t, const std::array<double, 2>& x,
                   const std::array<double, 2>& y, const PhysicalParams& p,
                   bool drop_gaussian) {
    if (t <= 0) throw std::invalid_argument("kernel requires t > 0");
    double ot = p.omega_tilde();
    double z = 2.0 * ot * t;
    double coth = 1.0 / std::tanh(z);
    double d0 = x[0] - y[0], d1 = x[1] - y[1];
    double d2 = d0 * d0 + d1 * d1;

    double wedge = (2.0 / p.theta) * (x[0] * y[1] - x[1] * y[0]);
    double gauss = drop_gaussian ? 1.0 : std::exp(-0.5 * ot * coth * d2);
    // 1/sinh(z) is folded into the matrix factor: E(t)/sinh = coth 1 - i g0g1.
    Complex pref = -(p.omega / (p.theta * M_PI)) * std::exp(-t * p.mass * p.mass) *
                   gauss * std::exp(kI * (p.omega * wedge));

    // bracket: i Ot coth (xs - ys) + Omega (xts - yts) - m
    double td0 = 2.0 * d1 / p.theta, td1 = -2.0 * d0 / p.theta;  // tilde(x - y)
    KernelValue bracket = cscale(slash(d0, d1), kI * (ot * coth));
    KernelValue tilde = slash(td0, td1);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            bracket.m[r][c] += p.omega * tilde.m[r][c];
    bracket.m[0][0] -= p.mass;
    bracket.m[1][1] -= p.mass;

    KernelValue efold = unit(coth);
    KernelValue g = gamma01();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) efold.m[r][c] += -kI * g.m[r][c];

    return cscale(mat_mul(bracket, efold), pref);
}

namespace {

template <class F>
KernelValue adaptive_simpson(F&& f, double a, double b, double rel_tol, int depth,
                             const KernelValue& fa, const KernelValue& fm,
                             const KernelValue& fb, const KernelValue& whole,
                             double scale, double& achieved) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    KernelValue flm = f(lm), frm = f(rm);
    KernelValue left, right;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            left.m[r][c] = (m - a) / 6.0 * (fa.m[r][c] + 4.0 * flm.m[r][c] + fm.m[r][c]);
            right.m[r][c] = (b - m) / 6.0 * (fm.m[r][c] + 4.0 * frm.m[r][c] + fb.m[r][c]);
        }
    KernelValue sum = left;
    sum += right;
    double err = 0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            err = std::max(err, std::abs(sum.m[r][c] - whole.m[r][c]));
    // relative against the larger of the global estimate and the local
    // magnitude; the absolute floor stops pointless refinement of slices
    // whose whole contribution is far below anything the checks resolve
    double ref = std::max({scale, sum.norm(), 1e-40});
    if (depth <= 0 || err < 15.0 * rel_tol * ref) {
        achieved = std::max(achieved, err / 15.0);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                sum.m[r][c] += (sum.m[r][c] - whole.m[r][c]) / 15.0;
        return sum;
    }
    double ach_l = achieved, ach_r = achieved;
    KernelValue L = adaptive_simpson(f, a, m, rel_tol, depth - 1, fa, flm, fm, left,
                                     scale, ach_l);
    KernelValue R = adaptive_simpson(f, m, b, rel_tol, depth - 1, fm, frm, fb, right,
                                     scale, ach_r);
    achieved = std::max(ach_l, ach_r);
    L += R;
    return L;
}

template <class F>
KernelValue integrate_matrix(F&& f, double a, double b, double rel_tol,
                             double& achieved) {
    KernelValue fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    KernelValue whole;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            whole.m[r][c] =
                (b - a) / 6.0 * (fa.m[r][c] + 4.0 * fm.m[r][c] + fb.m[r][c]);
    double scale = std::max(whole.norm(), 1e-300);
    achieved = 0.0;
    return adaptive_simpson(f, a, b, rel_tol, 30, fa, fm, fb, whole, scale, achieved);
}

}  // namespace

SliceIntegral sliced_kernel(int i, const std::array<double, 2>& x,
                            const std::array<double, 2>& y, const PhysicalParams& p,
                            double rel_tol, bool drop_gaussian) {
    if (i < 0) throw std::invalid_argument("slice index must be non-negative");
    p.check();
    SliceIntegral out;
    double a, b;
    if (i >= 1) {
        a = std::pow(p.M, -2.0 * i);
        b = std::pow(p.M, -2.0 * (i - 1));
    } else {
        a = 1.0;
        if (p.mass > 0) {
            b = 1.0 + 28.0 / (p.mass * p.mass);  // exp(-t m^2) below 1e-12 past here
        } else {
            b = p.i0_truncation;
            out.truncated_tail = true;
        }
    }
    auto f = [&](double t) { return kernel(t, x, y, p, drop_gaussian); };
    out.value = integrate_matrix(f, a, b, rel_tol, out.achieved_tol);
    return out;
}

namespace {

// splitmix64: deterministic across platforms.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }
};

struct Sample {
    double d;
    double mag;
};

std::vector<Sample> sample_slice(int i, int count, const PhysicalParams& p,
                                 std::uint64_t seed, bool drop_gaussian, bool parallel) {
    // Stratified radii with jitter, random direction; magnitudes are
    // translation invariant so x = 0.
    std::vector<Sample> samples(count);
    double span = 6.0 * std::pow(p.M, -double(i));
    Rng seq(seed ^ (0x5851f42d4c957f2dULL * std::uint64_t(i + 1)));
    std::vector<double> radii(count), angles(count);
    for (int j = 0; j < count; ++j) {
        radii[j] = (j + seq.next_unit()) / count * span;
        angles[j] = seq.next_unit() * 2.0 * M_PI;
    }
    auto eval = [&](std::int64_t j) {
        std::array<double, 2> x{0.0, 0.0};
        std::array<double, 2> y{radii[j] * std::cos(angles[j]),
                                radii[j] * std::sin(angles[j])};
        samples[j] = {radii[j], sliced_kernel(i, x, y, p, 1e-8, drop_gaussian).value.norm()};
        return 0.0;
    };
    if (parallel) parallel_for(count, eval);
    else
        for (int j = 0; j < count; ++j) eval(j);
    return samples;
}

SliceBoundFit fit_impl(int i_lo, int i_hi, int samples_per_slice,
                       const PhysicalParams& p, std::uint64_t seed, bool drop_gaussian,
                       bool parallel) {
    p.check();
    if (samples_per_slice < 2)
        throw std::invalid_argument("need at least two samples per slice");
    SliceBoundFit fit;
    std::vector<std::vector<Sample>> all;
    for (int i = i_lo; i <= i_hi; ++i)
        all.push_back(sample_slice(i, samples_per_slice, p, seed, drop_gaussian, parallel));

    for (int i = i_lo; i <= i_hi; ++i) {
        const auto& s = all[i - i_lo];
        double Mi = std::pow(p.M, double(i));
        // least squares of log|C| against M^i d
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (const auto& smp : s) {
            if (smp.mag < 1e-30) continue;  // below the quadrature floor
            double zx = Mi * smp.d, zy = std::log(smp.mag);
            sx += zx; sy += zy; sxx += zx * zx; sxy += zx * zy;
            ++n;
        }
        SliceFit sf;
        sf.i = i;
        double denom = n * sxx - sx * sx;
        double slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
        sf.k = -slope;
        double K = 0;
        for (const auto& smp : s)
            K = std::max(K, smp.mag * std::exp(sf.k * Mi * smp.d) / Mi);
        sf.K = K;
        fit.per_slice.push_back(sf);
    }

    fit.uniform_k = fit.per_slice.front().k;
    for (const auto& sf : fit.per_slice) fit.uniform_k = std::min(fit.uniform_k, sf.k);
    if (fit.uniform_k <= 0.0) {
        fit.pass = false;
        for (const auto& sf : fit.per_slice)
            if (sf.k <= 0.0) {
                fit.counter_sample = "slice " + std::to_string(sf.i) +
                                     ": magnitude does not decay with |x-y| "
                                     "(fitted rate " + std::to_string(sf.k) + ")";
                break;
            }
        return fit;
    }
    double K = 0;
    for (int i = i_lo; i <= i_hi; ++i) {
        double Mi = std::pow(p.M, double(i));
        for (const auto& smp : all[i - i_lo])
            K = std::max(K, smp.mag * std::exp(fit.uniform_k * Mi * smp.d) / Mi);
    }
    fit.uniform_K = K;
    fit.pass = std::isfinite(K) && K > 0;
    return fit;
}

}  // namespace

SliceBoundFit verify_slice_bound(int i_lo, int i_hi, int samples_per_slice,
                                 const PhysicalParams& p, std::uint64_t seed,
                                 bool drop_gaussian) {
    return fit_impl(i_lo, i_hi, samples_per_slice, p, seed, drop_gaussian, true);
}

SliceBoundFit verify_slice_bound_serial(int i_lo, int i_hi, int samples_per_slice,
                                        const PhysicalParams& p, std::uint64_t seed,
                                        bool drop_gaussian) {
    return fit_impl(i_lo, i_hi, samples_per_slice, p, seed, drop_gaussian, false);
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGL = 16;
const double kGLx[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
const double kGLw[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

double masslet_quadrature(int i, const std::array<double, 2>& b, double M,
                          int panels, bool parallel) {
    double a = std::pow(M, 2.0 * i);
    double R = 7.0 / std::pow(M, double(i));
    double h = 2.0 * R / panels;
    auto eval = [&](std::int64_t idx) {
        int px = int(idx / panels), py = int(idx % panels);
        double x0 = -R + px * h, y0 = -R + py * h;
        double acc = 0.0;
        for (int m = 0; m < kGL; ++m) {
            double u0 = x0 + 0.5 * h * (kGLx[m] + 1.0);
            for (int n = 0; n < kGL; ++n) {
                double u1 = y0 + 0.5 * h * (kGLx[n] + 1.0);
                double g = std::exp(-a * (u0 * u0 + u1 * u1));
                acc += kGLw[m] * kGLw[n] * g * std::cos(b[0] * u0 + b[1] * u1);
            }
        }
        return acc * 0.25 * h * h;
    };
    std::int64_t total = std::int64_t(panels) * panels;
    return parallel ? parallel_sum(total, eval) : serial_sum(total, eval);
}

}  // namespace

MassletCheck masslet_check(int i, const std::array<double, 2>& w,
                           const PhysicalParams& p, double rel_tol) {
    if (i < 0) throw std::invalid_argument("slice index must be non-negative");
    p.check();
    MassletCheck out;
    double a = std::pow(p.M, 2.0 * i);
    // u wedge w = u . wt with wt = 2 Theta^-1 w
    std::array<double, 2> b{2.0 * w[1] / p.theta, -2.0 * w[0] / p.theta};
    double b2 = b[0] * b[0] + b[1] * b[1];
    out.closed_form = M_PI / a * std::exp(-b2 / (4.0 * a));

    // panels sized against both the Gaussian width and the oscillation
    double R = 7.0 / std::pow(p.M, double(i));
    double width = 0.5 / std::pow(p.M, double(i));
    if (b2 > 0) width = std::min(width, (2.0 * M_PI / std::sqrt(b2)) / 6.0);
    int panels = std::max(8, int(std::ceil(2.0 * R / width)));

    double prev = masslet_quadrature(i, b, p.M, panels, true);
    for (int iter = 0; iter < 4; ++iter) {
        double next = masslet_quadrature(i, b, p.M, panels * 2, true);
        double denom = std::max(std::abs(next), 1e-300);
        if (std::abs(next - prev) / denom < 0.25 * rel_tol) {
            prev = next;
            break;
        }
        prev = next;
        panels *= 2;
    }
    out.numeric = prev;
    out.rel_error = std::abs(out.numeric - out.closed_form) /
                    std::max(std::abs(out.closed_form), 1e-300);
    return out;
}

VacuumInvariance vacuum_invariance(const RibbonGraph& g) {
    if (!g.is_vacuum())
        throw PreconditionError("vacuum_invariance expects a graph without externals");
    VacuumInvariance out;
    if (g.n() == 0) {
        out.invariant = true;
        return out;
    }
    std::set<int> tree = spanning_tree(g);
    OrderedGraph og = total_order(g, tree, default_root(g, tree));
    OrientationData o = orient(og, true);

    // Shift-induced phase: every long variable moves by 2a, so each line's
    // propagator oscillation contributes eps epsilon u_l.
    LinearForm residual;
    for (int l = 0; l < g.internal_count(); ++l)
        residual.add(u_sym(l), Rational(o.eps[l] * o.epsilon[l]));

    // Reduce modulo the delta system in line variables.
    DeltaSystem deltas = brute_force_deltas(og, o, true);
    ConstraintSpan span(deltas.args);
    out.residual = span.reduce(residual);
    out.invariant = out.residual.is_zero();
    return out;
}

}  // namespace ncgn
