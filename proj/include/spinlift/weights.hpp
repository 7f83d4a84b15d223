// Trigonometric vertex weights of the graded model, q = e^{-gamma}:
//
//   a_g(l) = (q^{2(1-g)} - q^{2g} e^{2l}) / (q^2 - e^{2l})   (g = grade 0 or 1)
//   b(l)   = q (1 - e^{2l})              / (q^2 - e^{2l})
//   c(l)   = (q^2 - 1) e^{2l}            / (q^2 - e^{2l})
//   d(l)   = (q^2 - 1)                   / (q^2 - e^{2l})
//
// a_0 == 1 identically.  Evaluation within 1e-10 of the pole e^{2l} = q^2 is
// a hard domain error, never a large finite number.

#pragma once

#include "spinlift/model.hpp"

namespace spinlift {

enum class WeightKind { A, B, C, D };

inline constexpr double kPoleGuard = 1e-10;

namespace detail {
inline cd pole_checked_denominator(const ModelSpec& spec, cd lambda) {
    const cd z = std::exp(2.0 * lambda);
    const cd den = spec.q * spec.q - z;
    if (std::abs(den) <= kPoleGuard)
        throw std::domain_error("weight evaluation at the pole e^{2 lambda} = q^2");
    return den;
}
}  // namespace detail

inline cd weight_a(const ModelSpec& spec, int grade, cd lambda) {
    const cd den = detail::pole_checked_denominator(spec, lambda);
    if (grade == 0) return cd(1, 0);
    const cd z = std::exp(2.0 * lambda);
    return (cd(1, 0) - spec.q * spec.q * z) / den;
}

inline cd weight_b(const ModelSpec& spec, cd lambda) {
    const cd den = detail::pole_checked_denominator(spec, lambda);
    const cd z = std::exp(2.0 * lambda);
    return spec.q * (cd(1, 0) - z) / den;
}

inline cd weight_c(const ModelSpec& spec, cd lambda) {
    const cd den = detail::pole_checked_denominator(spec, lambda);
    const cd z = std::exp(2.0 * lambda);
    return (spec.q * spec.q - cd(1, 0)) * z / den;
}

inline cd weight_d(const ModelSpec& spec, cd lambda) {
    const cd den = detail::pole_checked_denominator(spec, lambda);
    return (spec.q * spec.q - cd(1, 0)) / den;
}

// Kind-dispatched evaluation; `grade` is consulted for kind A only.
inline cd weight(const ModelSpec& spec, WeightKind kind, cd lambda, int grade = 0) {
    switch (kind) {
        case WeightKind::A: return weight_a(spec, grade, lambda);
        case WeightKind::B: return weight_b(spec, lambda);
        case WeightKind::C: return weight_c(spec, lambda);
        case WeightKind::D: return weight_d(spec, lambda);
    }
    throw std::invalid_argument("weight: unknown kind");
}

// Weight table bound to one model's q.
struct BoltzmannWeights {
    ModelSpec spec;

    explicit BoltzmannWeights(ModelSpec s) : spec(std::move(s)) { spec.validate(); }

    cd a(int grade, cd lambda) const { return weight_a(spec, grade, lambda); }
    cd b(cd lambda) const { return weight_b(spec, lambda); }
    cd c(cd lambda) const { return weight_c(spec, lambda); }
    cd d(cd lambda) const { return weight_d(spec, lambda); }
};

// Exact first derivatives at lambda = 0 (used by the closed-form Hamiltonian).
inline cd weight_a_deriv0(const ModelSpec& spec, int grade) {
    if (grade == 0) return cd(0, 0);
    const cd q2 = spec.q * spec.q;
    return 2.0 * (cd(1, 0) + q2) / (cd(1, 0) - q2);
}

inline cd weight_b_deriv0(const ModelSpec& spec) {
    const cd q2 = spec.q * spec.q;
    return 2.0 * spec.q / (cd(1, 0) - q2);
}

inline cd weight_c_deriv0(const ModelSpec& spec) {
    const cd q2 = spec.q * spec.q;
    return -2.0 * q2 / (cd(1, 0) - q2);
}

inline cd weight_d_deriv0(const ModelSpec& spec) {
    const cd q2 = spec.q * spec.q;
    return -2.0 / (cd(1, 0) - q2);
}

}  // namespace spinlift
