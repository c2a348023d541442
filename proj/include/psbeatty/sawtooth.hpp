#ifndef PSBEATTY_SAWTOOTH_HPP
#define PSBEATTY_SAWTOOTH_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace psb {

// psi(t) = t - floor(t) - 1/2, in [-1/2, 1/2).
double psi(double t);

enum class VaalerConstruction {
    vaaler,  // Vaaler's extremal coefficients (the default)
    fejer,   // Fejer-weighted truncated Fourier series; a cross-check that
             // does not satisfy the pointwise contract for large H
};

// Trigonometric approximation of psi with a nonnegative majorant:
//   |psi(t) - sum_{0<|h|<=H} a_h e(th)| <= sum_{|h|<=H} b_h e(th).
// Only h >= 0 is stored; a_{-h} = conj(a_h), b_{-h} = b_h.
struct VaalerApprox {
    int H = 0;
    VaalerConstruction construction = VaalerConstruction::vaaler;
    std::vector<std::complex<double>> a;  // a[h] for 1 <= h <= H; a[0] unused (0)
    std::vector<double> b;                // b[h] for 0 <= h <= H
    // Asserted decay constants: |a_h| <= C_a/|h|, b_h <= C_b/H.
    double C_a = 1.0;
    double C_b = 2.0;

    // sum_{0<|h|<=H} a_h e(th), real by conjugate symmetry.
    double approximation(double t) const;
    // sum_{|h|<=H} b_h e(th), real by symmetry.
    double majorant(double t) const;
    // The majorant summed over all 2H+1 complex terms, for real-valuedness checks.
    std::complex<double> majorant_complex(double t) const;
};

VaalerApprox vaaler_build(int H, VaalerConstruction construction = VaalerConstruction::vaaler);

struct VaalerReport {
    int H = 0;
    std::size_t grid_points = 0;
    double max_error = 0;       // max |psi - approximation|
    double max_majorant = 0;
    double mean_abs_error = 0;  // grid mean of |psi - approximation|
    double max_imag = 0;        // max |Im majorant_complex|
    std::uint64_t violations = 0;
    double worst_t = 0;         // argmax of error - majorant
    double worst_excess = 0;    // error - majorant at worst_t
};

// Slack absorbing double rounding at the equality points t in Z, where the
// error and the majorant are both exactly 1/2.
inline constexpr double kVaalerSlack = 1e-12;

// Evaluates the inequality at every grid point (in parallel, deterministic
// reduction). Throws InequalityViolated naming the worst t when any point
// fails and throw_on_violation is set.
VaalerReport vaaler_check(const VaalerApprox& approx, std::span<const double> grid,
                          bool throw_on_violation = true);

// k/n for 0 <= k < n.
std::vector<double> uniform_grid(std::size_t n);
// n points clustered at integers: m + s 10^-e for m in [-2, 2], s = +-1,
// e cycling through 1..15, with the integers themselves included.
std::vector<double> near_integer_grid(std::size_t n);

struct PowerTerm {
    double coefficient;
    double exponent;
};

// L(H) = sum A_i H^{a_i} + sum B_j H^{-b_j} on [H1, H2].
struct SrinivasanBound {
    std::vector<PowerTerm> A;
    std::vector<PowerTerm> B;
    double H1 = 1;
    double H2 = 1;

    void validate() const;  // InvalidArgument unless all positive, 0 < H1 <= H2
    double L(double H) const;
};

// sum A_i H1^{a_i} + sum B_j H2^{-b_j} + sum_{i,j} (A_i^{b_j} B_j^{a_i})^{1/(a_i+b_j)}
double srinivasan_bound(const SrinivasanBound& spec);

// Minimizer of L over a log-uniform grid of grid_size points on [H1, H2].
std::pair<double, double> srinivasan_witness(const SrinivasanBound& spec,
                                             std::size_t grid_size = 10000);

// The witness constant C_S = 2 m n (m, n counted as at least 1).
double srinivasan_constant(const SrinivasanBound& spec);

}  // namespace psb

#endif  // PSBEATTY_SAWTOOTH_HPP
