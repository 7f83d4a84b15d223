// Nested Bethe-ansatz layer: the level eigenvalue recursion, Bethe equations,
// a damped Newton solver for the rapidities, closed-form energies, and
// explicit one-magnon vectors.
//
// Levels run k = 0 .. K with K = m + n - 1.  Level 0 carries the chain data
// (p_0 sites, level-0 inhomogeneities); levels 1 .. K carry magnon rapidities.
// The final level K is a cyclic shift: its eigenvalue is a root of unity
// omega = exp(2 pi i branch / p_K) times a product of a-weights, with the
// empty-level constant (-1)^{|K|} n_K (the supertrace of the identity on a
// zero-length level-K chain).

#pragma once

#include <functional>

#include "spinlift/chain.hpp"

namespace spinlift {

struct BetheConfig {
    ChainSpec chain;
    std::vector<std::vector<cd>> rapidities;  // rapidities[k-1] = level-k list
    int final_branch = 0;
    std::vector<int> pseudo_vacuum_labels;    // label chosen in each A_k; defaults to 0

    int levels() const { return chain.model.num_bases() - 1; }  // K

    int magnons(int k) const {  // p_k
        if (k == 0) return chain.p0;
        return static_cast<int>(rapidities.at(k - 1).size());
    }

    const std::vector<cd>& level_points(int k) const {
        if (k == 0) return chain.inhomogeneities;
        return rapidities.at(k - 1);
    }

    bool bosonic_mode() const { return chain.model.n == 0; }

    StateIndex vacuum_state() const {
        const int label = pseudo_vacuum_labels.empty() ? 0 : pseudo_vacuum_labels[0];
        return {0, label};
    }

    void validate() const;

    // p_{k+1} <= p_k is the admissible-nesting convention; violations are
    // reported here, not rejected.
    std::vector<std::string> admissibility_warnings() const;
};

struct LevelTerms {
    cd shift_term;   // delta_{p_k p_{k+1}} (n_k - 1) contribution
    cd direct_term;  // a-product term
    cd nested_term;  // b-product times the level-(k+1) eigenvalue
    cd total() const { return shift_term + direct_term + nested_term; }
};

// One level's eigenvalue as a function of the spectral parameter.
struct LevelEigenvalue {
    int k = 0;
    std::function<cd(cd)> value;
};

LevelEigenvalue level_eigenvalue(const BetheConfig& config, int k);

// Final-level eigenvalue; the k = K base case of the recursion.
cd final_level_eigenvalue(const BetheConfig& config, cd mu);

// Level-k eigenvalue Lambda^k(mu), k in [0, K].  Throws std::domain_error on
// evaluation at a b-zero of a deeper level.
cd eigenvalue_recursion(const BetheConfig& config, int k, cd mu);

// Term-by-term breakdown of one recursion step (diagnostics and tests).
LevelTerms eigenvalue_terms(const BetheConfig& config, int k, cd mu);

// Level-k Bethe equation for rapidity lambda^{k+1}_z, as LHS - RHS.  The RHS
// is 1 in graded mode and 1/a_{k+1}(0) in bosonic mode, and acquires a factor
// 1/omega when k+1 is the final level.
cd bethe_residual(const BetheConfig& config, int k, int z);

// All residuals stacked in level-major order.
Vector bethe_residual_vector(const BetheConfig& config);

struct BetheSolveReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
    std::string failure;              // empty when converged
    cd termination_constant{0, 0};    // empty-final-level constant, when applicable
    std::vector<std::string> warnings;
};

// Damped Newton on the stacked residuals, starting from config.rapidities
// (updated in place).  Step halving up to 8 times per iteration; solutions
// with coincident same-level rapidities (within 1e-8) are rejected.
BetheSolveReport solve_bethe(BetheConfig& config, double tol = 1e-10, int max_iter = 200);

// Per-magnon energy summand for bosonic level-1 states,
// sinh(g) / (sinh(l + g) sinh(l)) with g = -log q on the principal branch.
cd bosonic_magnon_energy(const ModelSpec& spec, cd lambda);

// Closed-form energy of a homogeneous-chain solution with p_0 > p_k for all
// k >= 1; picks the bosonic or fermionic formula from the grade of base 1.
cd energy(const BetheConfig& config);

// Roots of b(lambda)^{p0} = 1 for the homogeneous chain: one rapidity per
// p0-th root of unity omega, e^{2 lambda} = q (omega q - 1) / (omega - q).
std::vector<cd> one_magnon_closed_form_roots(const ChainSpec& chain);

// Applies the creation entry B_target(lambda1) of the monodromy to the product
// pseudo-vacuum |a0 ... a0>.  Throws if the result vanishes.
Vector one_magnon_vector(const ChainSpec& chain, cd lambda1, StateIndex target,
                         StateIndex vacuum_label);

// Product pseudo-vacuum |a0 ... a0> as a unit vector.
Vector pseudo_vacuum_vector(const ChainSpec& chain, StateIndex vacuum_label);

}  // namespace spinlift
