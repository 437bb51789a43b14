#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "partsep/bipartition.hpp"
#include "partsep/correlation.hpp"
#include "partsep/multi_index.hpp"
#include "partsep/rng.hpp"

namespace partsep {

using Complex = std::complex<double>;

/// Dense operator can be materialized up to this particle count.
inline constexpr int kMaxDenseOperatorParticles = 12;

/// Normalized pure state of n spin-1/2 particles over the computational
/// basis. Particle k occupies bit (k-1) of the amplitude index; the up state
/// maps to bit value 0.
class StateVector {
public:
    StateVector(int n, std::vector<Complex> amplitudes);

    int n() const { return n_; }
    const std::vector<Complex>& amplitudes() const { return amp_; }
    Complex amplitude(std::size_t i) const { return amp_[i]; }

private:
    int n_;
    std::vector<Complex> amp_;
};

/// (|up...up> + sign |down...down>) / sqrt(2).
StateVector ghz_state(int n, int sign);

/// Normalized standard-complex-Gaussian vector (Haar-distributed).
StateVector haar_random_state(int n, Rng& rng);

/// Measurement directions in the x-y plane: entry (k, i) is the angle of
/// particle k's setting-i observable, radians.
struct AngleSettings {
    int n = 0;
    std::vector<std::array<double, 2>> angles;

    AngleSettings() = default;
    AngleSettings(int n_particles, std::vector<std::array<double, 2>> values);
    static AngleSettings zero(int n_particles);

    /// Angle of the observable chosen for 1-based particle k, setting i in {1,2}.
    double angle(int particle, int setting) const {
        return angles[particle - 1][setting - 1];
    }
};

/// Dense complex square matrix, row-major.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
    OperatorMatrix(std::size_t dim, std::vector<Complex> entries);

    std::size_t dim() const { return dim_; }
    Complex& at(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
    const std::vector<Complex>& entries() const { return a_; }

    /// this += factor * other
    void add_scaled(const OperatorMatrix& other, Complex factor);

    /// <psi| M |psi>, real part (imaginary residue checked by callers).
    Complex expectation(const StateVector& state) const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> a_;
};

/// cos(alpha) sigma_x + sin(alpha) sigma_y: off-diagonals e^{-i alpha}, e^{i alpha}.
/// Hermitian, traceless, squares to the identity.
OperatorMatrix spin_observable(double alpha);

/// Kronecker product with the 2x2 factor acting on the new highest bit.
OperatorMatrix kron2(const OperatorMatrix& high2x2, const OperatorMatrix& low);

/// Expectation of the product of the chosen in-plane observables in the state.
double correlation(const StateVector& state, const AngleSettings& settings,
                   const MultiIndex& index);

/// All 2^n correlations of the state (no standard errors).
CorrelationTensor correlation_tensor(const StateVector& state,
                                     const AngleSettings& settings);

/// Closed form for GHZ states: ghz_sign * cos(sum_k alpha^(k)_{i_k}).
double ghz_correlation_analytic(int ghz_sign, const AngleSettings& settings,
                                const MultiIndex& index);

CorrelationTensor ghz_correlation_tensor(int n, int ghz_sign,
                                         const AngleSettings& settings);

enum class OperatorBuild {
    /// Sum of 2^n tensor-product terms weighted by the alternating signs.
    direct,
    /// S_n(+-) = S_{n-1}(+-) (x) A^(n)_1 -+ S_{n-1}(-+) (x) A^(n)_2,
    /// base case S_1(+-) = A^(1)_1 -+ A^(1)_2.
    recursive,
};

/// Dense operator whose expectation is the inequality's left-hand side.
/// Both build methods agree entrywise; n <= 12.
OperatorMatrix svetlichny_operator(int n, SignVariant variant,
                                   const AngleSettings& settings,
                                   OperatorBuild method);

/// Angle choice reaching |<S_n>| = 2^(n-1) sqrt(2) on GHZ states: setting 1
/// angles (s pi/4, 0, ..., 0), setting 2 angles (s pi/4 + pi/2, pi/2, ..., pi/2),
/// s = +1 for the plus variant and -1 for the minus variant. Every label flip
/// 1 -> 2 then raises the cosine argument by pi/2. Requires n >= 2.
AngleSettings optimal_angles(int n, SignVariant variant);

struct AscentOptions {
    int max_sweeps = 200;
    /// Stop when a full sweep improves the objective by less than this.
    double value_tol = 1e-10;
    /// Coarse scan points bracketing the golden-section search per coordinate.
    int coarse_points = 17;
    /// Golden-section interval width at termination.
    double x_tol = 1e-12;
};

struct AscentResult {
    AngleSettings angles;
    double value = 0.0;
    bool converged = false;
};

/// Derivative-free coordinate ascent on |objective(angles)|: each coordinate
/// is refined by a golden-section line search over one period, bracketed by a
/// coarse scan. The objective must be the signed expectation.
AscentResult maximize_abs_over_angles(
    const std::function<double(const AngleSettings&)>& objective,
    AngleSettings start, const AscentOptions& options = {});

struct ViolationSearch {
    AngleSettings angles;
    double value = 0.0;
    bool converged = false;
};

/// Multi-start numerical search for the maximal |<S_n>| on the GHZ state over
/// all 2n angles. Deterministic in (restarts, seed); the best restart wins,
/// lower restart index breaking ties. n <= 10.
ViolationSearch maximize_violation(int n, SignVariant variant, int restarts,
                                   std::uint64_t seed);

struct BiseparableComponent {
    double weight = 0.0;
    Bipartition partition;
    /// Factors over the partition's clusters; cluster particles are mapped to
    /// factor qubits in ascending particle order.
    StateVector factor_a;
    StateVector factor_b;
};

/// Convex mixture of pure states that factorize across some bipartition.
struct BiseparableEnsemble {
    int n = 0;
    std::vector<BiseparableComponent> components;
};

/// <S_n> of the mixture; bounded by 2^(n-1) in absolute value. n <= 10.
double biseparable_expectation(const BiseparableEnsemble& ensemble,
                               SignVariant variant, const AngleSettings& settings);

/// Signed expectation of S for a single product state psi_a (x) psi_b.
double product_state_expectation(const BiseparableComponent& component, int n,
                                 SignVariant variant, const AngleSettings& settings);

/// Probabilities of the 2^n joint outcomes when each particle k is measured
/// along its setting-(i_k) in-plane direction. Outcome J maps to the bitmask
/// with bit (k-1) set iff j_k = -1.
std::vector<double> outcome_distribution(const StateVector& state,
                                         const AngleSettings& settings,
                                         const MultiIndex& index);

} // namespace partsep
