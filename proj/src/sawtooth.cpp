#include "psbeatty/sawtooth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "psbeatty/errors.hpp"
#include "psbeatty/parallel.hpp"

namespace psb {

namespace {

constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;

// e(h t) with the argument reduced mod 1 first, so large h t stay accurate.
std::complex<long double> e_ht(int h, double t) {
    long double u = static_cast<long double>(h) * static_cast<long double>(t);
    u -= std::floor(u);
    return {std::cos(kTwoPi * u), std::sin(kTwoPi * u)};
}

// phi(u) = pi u (1 - |u|) cot(pi u) + |u| for 0 < |u| < 1.
double vaaler_phi(double u) {
    const double pu = std::numbers::pi * u;
    return pu * (1 - std::abs(u)) / std::tan(pu) + std::abs(u);
}

}  // namespace

double psi(double t) { return t - std::floor(t) - 0.5; }

double VaalerApprox::approximation(double t) const {
    long double s = 0;
    for (int h = 1; h <= H; ++h) {
        const std::complex<long double> ah(a[h].real(), a[h].imag());
        s += 2 * (ah * e_ht(h, t)).real();
    }
    return static_cast<double>(s);
}

double VaalerApprox::majorant(double t) const {
    long double s = b[0];
    for (int h = 1; h <= H; ++h) s += 2 * b[h] * e_ht(h, t).real();
    return static_cast<double>(s);
}

std::complex<double> VaalerApprox::majorant_complex(double t) const {
    std::complex<long double> s = b[0];
    for (int h = 1; h <= H; ++h) {
        s += static_cast<long double>(b[h]) * e_ht(h, t);
        s += static_cast<long double>(b[h]) * e_ht(-h, t);
    }
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

VaalerApprox vaaler_build(int H, VaalerConstruction construction) {
    if (H < 1) throw InvalidArgument("vaaler_build needs H >= 1");
    VaalerApprox v;
    v.H = H;
    v.construction = construction;
    v.a.assign(H + 1, {0.0, 0.0});
    v.b.assign(H + 1, 0.0);
    const double n = H + 1;
    for (int h = 0; h <= H; ++h) v.b[h] = (1 - h / n) / (2 * n);
    for (int h = 1; h <= H; ++h) {
        // psi(t) = -sum_{h != 0} e(ht) / (2 pi i h); both constructions damp
        // these Fourier coefficients, a_h = i w_h / (2 pi h).
        const double w = construction == VaalerConstruction::vaaler ? vaaler_phi(h / n) : 1 - h / n;
        v.a[h] = {0.0, w / (2 * std::numbers::pi * h)};
    }
    if (construction == VaalerConstruction::fejer) v.b[0] += 1.0 / H;
    return v;
}

VaalerReport vaaler_check(const VaalerApprox& approx, std::span<const double> grid,
                          bool throw_on_violation) {
    if (grid.empty()) throw InvalidArgument("vaaler_check needs a non-empty grid");
    struct Partial {
        double max_error = 0, max_majorant = -1e300, sum_abs = 0, max_imag = 0;
        std::uint64_t violations = 0;
        double worst_t = 0, worst_excess = -1e300;
    };
    constexpr std::size_t kChunk = 1024;
    const std::size_t chunks = (grid.size() + kChunk - 1) / kChunk;
    std::vector<Partial> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        Partial& p = parts[c];
        const std::size_t end = std::min(grid.size(), (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            const double t = grid[i];
            const double err = std::abs(psi(t) - approx.approximation(t));
            const double maj = approx.majorant(t);
            p.max_error = std::max(p.max_error, err);
            p.max_majorant = std::max(p.max_majorant, maj);
            p.sum_abs += err;
            p.max_imag = std::max(p.max_imag, std::abs(approx.majorant_complex(t).imag()));
            const double excess = err - maj;
            if (excess > kVaalerSlack) ++p.violations;
            if (excess > p.worst_excess) {
                p.worst_excess = excess;
                p.worst_t = t;
            }
        }
    });
    // Chunking is fixed, so the reduction order (and result) is too.
    VaalerReport r;
    r.H = approx.H;
    r.grid_points = grid.size();
    r.max_majorant = -1e300;
    r.worst_excess = -1e300;
    double sum_abs = 0;
    for (const Partial& p : parts) {
        r.max_error = std::max(r.max_error, p.max_error);
        r.max_majorant = std::max(r.max_majorant, p.max_majorant);
        r.max_imag = std::max(r.max_imag, p.max_imag);
        r.violations += p.violations;
        sum_abs += p.sum_abs;
        if (p.worst_excess > r.worst_excess) {
            r.worst_excess = p.worst_excess;
            r.worst_t = p.worst_t;
        }
    }
    r.mean_abs_error = sum_abs / static_cast<double>(grid.size());
    if (throw_on_violation && r.violations > 0) {
        std::ostringstream msg;
        msg.precision(17);
        msg << r.violations << " violations of the majorant inequality for H=" << approx.H
            << "; worst at t=" << r.worst_t << " (excess " << r.worst_excess << ")";
        throw InequalityViolated(msg.str());
    }
    return r;
}

std::vector<double> uniform_grid(std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = static_cast<double>(k) / static_cast<double>(n);
    return g;
}

std::vector<double> near_integer_grid(std::size_t n) {
    std::vector<double> g;
    g.reserve(n);
    for (std::size_t i = 0; g.size() < n; ++i) {
        const double m = static_cast<double>(static_cast<long>(i % 5) - 2);
        const std::size_t e = (i / 5) % 16;  // e = 0 is the integer itself
        if (e == 0) {
            g.push_back(m);
            continue;
        }
        const double off = std::pow(10.0, -static_cast<double>(e));
        g.push_back(m + off);
        if (g.size() < n) g.push_back(m - off);
    }
    return g;
}

void SrinivasanBound::validate() const {
    for (const auto* list : {&A, &B})
        for (const PowerTerm& t : *list)
            if (!(t.coefficient > 0) || !(t.exponent > 0))
                throw InvalidArgument("Srinivasan coefficients and exponents must be positive");
    if (!(H1 > 0) || !(H1 <= H2)) throw InvalidArgument("Srinivasan range needs 0 < H1 <= H2");
}

double SrinivasanBound::L(double H) const {
    double s = 0;
    for (const PowerTerm& t : A) s += t.coefficient * std::pow(H, t.exponent);
    for (const PowerTerm& t : B) s += t.coefficient * std::pow(H, -t.exponent);
    return s;
}

double srinivasan_bound(const SrinivasanBound& spec) {
    spec.validate();
    double s = 0;
    for (const PowerTerm& t : spec.A) s += t.coefficient * std::pow(spec.H1, t.exponent);
    for (const PowerTerm& t : spec.B) s += t.coefficient * std::pow(spec.H2, -t.exponent);
    for (const PowerTerm& a : spec.A)
        for (const PowerTerm& b : spec.B)
            s += std::exp((b.exponent * std::log(a.coefficient) +
                           a.exponent * std::log(b.coefficient)) /
                          (a.exponent + b.exponent));
    return s;
}

std::pair<double, double> srinivasan_witness(const SrinivasanBound& spec, std::size_t grid_size) {
    spec.validate();
    if (grid_size < 2) throw InvalidArgument("srinivasan_witness needs grid_size >= 2");
    if (spec.H1 == spec.H2) return {spec.H1, spec.L(spec.H1)};
    const double l1 = std::log(spec.H1), l2 = std::log(spec.H2);
    double best_h = spec.H1, best_l = spec.L(spec.H1);
    for (std::size_t k = 1; k < grid_size; ++k) {
        const double h = k + 1 == grid_size
                             ? spec.H2
                             : std::exp(l1 + (l2 - l1) * static_cast<double>(k) /
                                                 static_cast<double>(grid_size - 1));
        const double l = spec.L(h);
        if (l < best_l) {
            best_l = l;
            best_h = h;
        }
    }
    return {best_h, best_l};
}

double srinivasan_constant(const SrinivasanBound& spec) {
    const double m = static_cast<double>(std::max<std::size_t>(spec.A.size(), 1));
    const double n = static_cast<double>(std::max<std::size_t>(spec.B.size(), 1));
    return 2 * m * n;
}

}  // namespace psb
