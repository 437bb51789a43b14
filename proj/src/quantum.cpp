#include "partsep/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace partsep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kImagResidueLimit = 1e-9;

void apply_single_qubit(std::vector<Complex>& amp, int particle,
                        const OperatorMatrix& m2) {
    const std::size_t bit = std::size_t{1} << (particle - 1);
    const Complex m00 = m2.at(0, 0), m01 = m2.at(0, 1);
    const Complex m10 = m2.at(1, 0), m11 = m2.at(1, 1);
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if (i & bit) continue;
        const Complex a0 = amp[i];
        const Complex a1 = amp[i | bit];
        amp[i] = m00 * a0 + m01 * a1;
        amp[i | bit] = m10 * a0 + m11 * a1;
    }
}

double checked_real(Complex z, const char* what) {
    if (std::abs(z.imag()) > kImagResidueLimit)
        throw numerical_error(std::string(what) + ": imaginary residue " +
                              std::to_string(z.imag()) + " exceeds 1e-9");
    return z.real();
}

// <psi| (x)_k A^(k)_{i_k} |psi> with a caller-provided scratch buffer.
double correlation_into(const StateVector& state, const AngleSettings& settings,
                        std::uint32_t code, std::vector<Complex>& scratch) {
    scratch = state.amplitudes();
    for (int k = 1; k <= state.n(); ++k) {
        const int setting = (code >> (k - 1)) & 1u ? 2 : 1;
        apply_single_qubit(scratch, k, spin_observable(settings.angle(k, setting)));
    }
    Complex dot = 0.0;
    const auto& amp = state.amplitudes();
    for (std::size_t i = 0; i < amp.size(); ++i)
        dot += std::conj(amp[i]) * scratch[i];
    return checked_real(dot, "correlation");
}

} // namespace

StateVector::StateVector(int n, std::vector<Complex> amplitudes)
    : n_(n), amp_(std::move(amplitudes)) {
    const std::size_t count = index_count(n);
    if (amp_.size() != count)
        throw std::invalid_argument("state vector needs exactly 2^n amplitudes");
    double norm2 = 0.0;
    for (const Complex& a : amp_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kEqTol)
        throw validation_error("state vector is not normalized (|norm^2 - 1| > 1e-12)");
}

StateVector ghz_state(int n, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("GHZ sign must be +1 or -1");
    const std::size_t count = index_count(n);
    std::vector<Complex> amp(count, 0.0);
    const double inv_sqrt2 = std::sqrt(0.5);
    amp[0] = inv_sqrt2;
    amp[count - 1] = sign * inv_sqrt2;
    return StateVector(n, std::move(amp));
}

StateVector haar_random_state(int n, Rng& rng) {
    const std::size_t count = index_count(n);
    std::vector<Complex> amp(count);
    double norm2 = 0.0;
    for (auto& a : amp) {
        a = Complex(rng.normal(), rng.normal());
        norm2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amp) a *= scale;
    return StateVector(n, std::move(amp));
}

AngleSettings::AngleSettings(int n_particles, std::vector<std::array<double, 2>> values)
    : n(n_particles), angles(std::move(values)) {
    index_count(n_particles);
    if (angles.size() != static_cast<std::size_t>(n_particles))
        throw std::invalid_argument("angle settings need one [a1, a2] pair per particle");
    for (const auto& pair : angles)
        if (!std::isfinite(pair[0]) || !std::isfinite(pair[1]))
            throw std::invalid_argument("angles must be finite");
}

AngleSettings AngleSettings::zero(int n_particles) {
    return AngleSettings(n_particles,
                         std::vector<std::array<double, 2>>(n_particles, {0.0, 0.0}));
}

OperatorMatrix::OperatorMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != dim * dim)
        throw std::invalid_argument("operator entry count must be dim^2");
}

void OperatorMatrix::add_scaled(const OperatorMatrix& other, Complex factor) {
    if (other.dim_ != dim_) throw std::invalid_argument("operator dimension mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += factor * other.a_[i];
}

Complex OperatorMatrix::expectation(const StateVector& state) const {
    const auto& amp = state.amplitudes();
    if (amp.size() != dim_) throw std::invalid_argument("operator/state dimension mismatch");
    Complex total = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        Complex row = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) row += at(r, c) * amp[c];
        total += std::conj(amp[r]) * row;
    }
    return total;
}

OperatorMatrix spin_observable(double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("angle must be finite");
    OperatorMatrix m(2);
    m.at(0, 1) = Complex(std::cos(alpha), -std::sin(alpha));
    m.at(1, 0) = Complex(std::cos(alpha), std::sin(alpha));
    return m;
}

OperatorMatrix kron2(const OperatorMatrix& high2x2, const OperatorMatrix& low) {
    if (high2x2.dim() != 2) throw std::invalid_argument("kron2 expects a 2x2 high factor");
    const std::size_t d = low.dim();
    OperatorMatrix out(2 * d);
    for (std::size_t ra = 0; ra < 2; ++ra)
        for (std::size_t ca = 0; ca < 2; ++ca) {
            const Complex f = high2x2.at(ra, ca);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    out.at(ra * d + r, ca * d + c) = f * low.at(r, c);
        }
    return out;
}

double correlation(const StateVector& state, const AngleSettings& settings,
                   const MultiIndex& index) {
    if (state.n() != settings.n || state.n() != index.n())
        throw std::invalid_argument("state/settings/index dimension mismatch");
    std::vector<Complex> scratch;
    return correlation_into(state, settings, index.code(), scratch);
}

CorrelationTensor correlation_tensor(const StateVector& state,
                                     const AngleSettings& settings) {
    if (state.n() != settings.n)
        throw std::invalid_argument("state/settings dimension mismatch");
    const std::size_t count = index_count(state.n());
    std::vector<double> values(count);
    std::vector<Complex> scratch;
    for (std::uint32_t code = 0; code < count; ++code) {
        double v = correlation_into(state, settings, code, scratch);
        // Strip sub-tolerance float excess so downstream validation sees [-1, 1].
        v = std::clamp(v, -1.0 - kCorrelationSlack, 1.0 + kCorrelationSlack);
        values[code] = v;
    }
    return CorrelationTensor(state.n(), std::move(values));
}

double ghz_correlation_analytic(int ghz_sign, const AngleSettings& settings,
                                const MultiIndex& index) {
    if (ghz_sign != 1 && ghz_sign != -1)
        throw std::invalid_argument("GHZ sign must be +1 or -1");
    if (settings.n != index.n())
        throw std::invalid_argument("settings/index dimension mismatch");
    double sum = 0.0;
    for (int k = 1; k <= settings.n; ++k)
        sum += settings.angle(k, index.setting(k));
    return ghz_sign * std::cos(sum);
}

CorrelationTensor ghz_correlation_tensor(int n, int ghz_sign,
                                         const AngleSettings& settings) {
    if (ghz_sign != 1 && ghz_sign != -1)
        throw std::invalid_argument("GHZ sign must be +1 or -1");
    if (settings.n != n) throw std::invalid_argument("settings dimension mismatch");
    const std::size_t count = index_count(n);
    std::vector<double> values(count);
    for (std::uint32_t code = 0; code < count; ++code) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += settings.angles[k][(code >> k) & 1u];
        values[code] = ghz_sign * std::cos(sum);
    }
    return CorrelationTensor(n, std::move(values));
}

OperatorMatrix svetlichny_operator(int n, SignVariant variant,
                                   const AngleSettings& settings,
                                   OperatorBuild method) {
    if (settings.n != n) throw std::invalid_argument("settings dimension mismatch");
    if (n > kMaxDenseOperatorParticles)
        throw capacity_error("dense operator build supports n <= " +
                             std::to_string(kMaxDenseOperatorParticles) + ", got n = " +
                             std::to_string(n));
    const std::size_t dim = index_count(n);

    if (method == OperatorBuild::recursive) {
        OperatorMatrix s_plus = spin_observable(settings.angle(1, 1));
        s_plus.add_scaled(spin_observable(settings.angle(1, 2)), -1.0);
        OperatorMatrix s_minus = spin_observable(settings.angle(1, 1));
        s_minus.add_scaled(spin_observable(settings.angle(1, 2)), 1.0);
        for (int k = 2; k <= n; ++k) {
            const OperatorMatrix a1 = spin_observable(settings.angle(k, 1));
            const OperatorMatrix a2 = spin_observable(settings.angle(k, 2));
            OperatorMatrix next_plus = kron2(a1, s_plus);
            next_plus.add_scaled(kron2(a2, s_minus), -1.0);
            OperatorMatrix next_minus = kron2(a1, s_minus);
            next_minus.add_scaled(kron2(a2, s_plus), 1.0);
            s_plus = std::move(next_plus);
            s_minus = std::move(next_minus);
        }
        return variant == SignVariant::plus ? std::move(s_plus) : std::move(s_minus);
    }

    OperatorMatrix result(dim);
    for (std::uint32_t code = 0; code < dim; ++code) {
        OperatorMatrix term = spin_observable(settings.angle(1, (code & 1u) ? 2 : 1));
        for (int k = 2; k <= n; ++k)
            term = kron2(spin_observable(settings.angle(k, (code >> (k - 1)) & 1u ? 2 : 1)),
                         term);
        result.add_scaled(term, static_cast<double>(nu(variant, std::popcount(code))));
    }
    return result;
}

AngleSettings optimal_angles(int n, SignVariant variant) {
    if (n < 2) throw std::invalid_argument("optimal angles need n >= 2");
    const double s = variant == SignVariant::plus ? 1.0 : -1.0;
    std::vector<std::array<double, 2>> angles(n, {0.0, kPi / 2.0});
    angles[0] = {s * kPi / 4.0, s * kPi / 4.0 + kPi / 2.0};
    return AngleSettings(n, std::move(angles));
}

namespace {

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double x_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

AscentResult maximize_abs_over_angles(
    const std::function<double(const AngleSettings&)>& objective,
    AngleSettings start, const AscentOptions& options) {
    AscentResult out;
    out.angles = std::move(start);
    out.value = std::abs(objective(out.angles));
    out.converged = false;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        const double sweep_start = out.value;
        for (int k = 0; k < out.angles.n; ++k) {
            for (int i = 0; i < 2; ++i) {
                const double center = out.angles.angles[k][i];
                auto slice = [&](double x) {
                    AngleSettings& a = out.angles;
                    const double saved = a.angles[k][i];
                    a.angles[k][i] = x;
                    const double v = std::abs(objective(a));
                    a.angles[k][i] = saved;
                    return v;
                };
                // Coarse scan over one period brackets the golden-section search.
                double best_x = center;
                double best_v = out.value;
                const int points = std::max(4, options.coarse_points);
                const double step = 2.0 * kPi / points;
                for (int j = 0; j < points; ++j) {
                    const double x = center - kPi + step * j;
                    const double v = slice(x);
                    if (v > best_v) {
                        best_v = v;
                        best_x = x;
                    }
                }
                const double refined =
                    golden_section_max(slice, best_x - step, best_x + step, options.x_tol);
                const double refined_v = slice(refined);
                if (refined_v > out.value) {
                    out.value = refined_v;
                    out.angles.angles[k][i] = refined;
                } else if (best_v > out.value) {
                    out.value = best_v;
                    out.angles.angles[k][i] = best_x;
                }
            }
        }
        if (out.value - sweep_start < options.value_tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

ViolationSearch maximize_violation(int n, SignVariant variant, int restarts,
                                   std::uint64_t seed) {
    if (n < 2 || n > 10)
        throw std::invalid_argument("violation search supports 2 <= n <= 10");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    const std::size_t count = index_count(n);
    std::vector<std::int8_t> coeff_signs(count);
    for (std::uint32_t code = 0; code < count; ++code)
        coeff_signs[code] = static_cast<std::int8_t>(nu(variant, std::popcount(code)));

    // <S> on the GHZ(+) state via the closed-form correlations.
    auto objective = [&](const AngleSettings& a) {
        double total = 0.0;
        for (std::uint32_t code = 0; code < count; ++code) {
            double sum = 0.0;
            for (int k = 0; k < n; ++k) sum += a.angles[k][(code >> k) & 1u];
            total += coeff_signs[code] * std::cos(sum);
        }
        return total;
    };

    ViolationSearch best;
    best.value = -1.0;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
        std::vector<std::array<double, 2>> start(n);
        for (auto& pair : start) {
            pair[0] = rng.uniform(-kPi, kPi);
            pair[1] = rng.uniform(-kPi, kPi);
        }
        AscentResult result =
            maximize_abs_over_angles(objective, AngleSettings(n, std::move(start)));
        if (result.value > best.value) {
            best.value = result.value;
            best.angles = std::move(result.angles);
            best.converged = result.converged;
        }
    }
    return best;
}

double product_state_expectation(const BiseparableComponent& component, int n,
                                 SignVariant variant, const AngleSettings& settings) {
    const Bipartition& part = component.partition;
    if (part.n() != n || settings.n != n)
        throw std::invalid_argument("component dimension mismatch");
    const auto a_pos = part.subset_a();
    const auto b_pos = part.subset_b();
    if (component.factor_a.n() != static_cast<int>(a_pos.size()) ||
        component.factor_b.n() != static_cast<int>(b_pos.size()))
        throw std::invalid_argument("factor size does not match its cluster");

    // Per-cluster correlation tables over the cluster's own setting codes.
    auto block_table = [&](const StateVector& factor, const std::vector<int>& positions) {
        const std::size_t codes = std::size_t{1} << positions.size();
        std::vector<double> table(codes);
        std::vector<Complex> scratch;
        for (std::uint32_t bc = 0; bc < codes; ++bc) {
            scratch = factor.amplitudes();
            for (std::size_t j = 0; j < positions.size(); ++j) {
                const int setting = (bc >> j) & 1u ? 2 : 1;
                apply_single_qubit(scratch, static_cast<int>(j) + 1,
                                   spin_observable(settings.angle(positions[j], setting)));
            }
            Complex dot = 0.0;
            const auto& amp = factor.amplitudes();
            for (std::size_t i = 0; i < amp.size(); ++i)
                dot += std::conj(amp[i]) * scratch[i];
            table[bc] = checked_real(dot, "cluster correlation");
        }
        return table;
    };
    const auto table_a = block_table(component.factor_a, a_pos);
    const auto table_b = block_table(component.factor_b, b_pos);

    double total = 0.0;
    const std::size_t acount = table_a.size(), bcount = table_b.size();
    for (std::uint32_t a = 0; a < acount; ++a) {
        const int ta = std::popcount(a);
        for (std::uint32_t b = 0; b < bcount; ++b)
            total += nu(variant, ta + std::popcount(b)) * table_a[a] * table_b[b];
    }
    return total;
}

double biseparable_expectation(const BiseparableEnsemble& ensemble,
                               SignVariant variant, const AngleSettings& settings) {
    if (ensemble.n < 2 || ensemble.n > 10)
        throw std::invalid_argument("biseparable expectation supports 2 <= n <= 10");
    if (ensemble.components.empty())
        throw validation_error("ensemble has no components");
    double weight_sum = 0.0;
    for (const auto& c : ensemble.components) {
        if (c.weight < 0.0) throw validation_error("ensemble weights must be nonnegative");
        weight_sum += c.weight;
    }
    if (std::abs(weight_sum - 1.0) > kEqTol)
        throw validation_error("ensemble weights must sum to 1 (tolerance 1e-12)");
    double total = 0.0;
    for (const auto& c : ensemble.components)
        total += c.weight * product_state_expectation(c, ensemble.n, variant, settings);
    return total;
}

std::vector<double> outcome_distribution(const StateVector& state,
                                         const AngleSettings& settings,
                                         const MultiIndex& index) {
    if (state.n() != settings.n || state.n() != index.n())
        throw std::invalid_argument("state/settings/index dimension mismatch");
    std::vector<Complex> amp = state.amplitudes();
    const double inv_sqrt2 = std::sqrt(0.5);
    for (int k = 1; k <= state.n(); ++k) {
        const double alpha = settings.angle(k, index.setting(k));
        // Rows are the +1 and -1 eigenvectors of the in-plane observable.
        OperatorMatrix basis(2);
        basis.at(0, 0) = inv_sqrt2;
        basis.at(0, 1) = inv_sqrt2 * Complex(std::cos(alpha), -std::sin(alpha));
        basis.at(1, 0) = inv_sqrt2;
        basis.at(1, 1) = -inv_sqrt2 * Complex(std::cos(alpha), -std::sin(alpha));
        apply_single_qubit(amp, k, basis);
    }
    std::vector<double> probs(amp.size());
    double total = 0.0;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        probs[i] = std::norm(amp[i]);
        total += probs[i];
    }
    if (std::abs(total - 1.0) > kImagResidueLimit)
        throw numerical_error("outcome distribution does not sum to 1");
    for (double& p : probs) p /= total;
    return probs;
}

} // namespace partsep
