// Graded local spaces with multiplicity index sets.
//
// A model has m grade-0 ("bosonic") and n grade-1 ("fermionic") base indices,
// ordered bosons first, and each base index I carries n_I interchangeable
// labels.  A chain site state is a (base, label) pair; the flattened ordinal
// runs label-contiguously in base order, so the grade is a monotone step
// function of the ordinal.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinlift {

using cd = std::complex<double>;

// Where the intra-set weight of the lifted R-matrix lives: on label-diagonal
// units or on label-exchange units.  Inequivalent operators once any n_I > 1.
enum class LiftConvention { Exchange, Diagonal };

struct StateIndex {
    int base = 0;   // I in [0, m+n)
    int label = 0;  // a in [0, n_I)

    friend bool operator==(const StateIndex&, const StateIndex&) = default;
};

struct ModelSpec {
    int m = 0;
    int n = 0;
    std::vector<int> multiplicities;  // length m+n, every entry >= 1
    cd q{0.5, 0.0};                   // deformation, q = e^{-gamma}
    LiftConvention lift = LiftConvention::Exchange;

    int num_bases() const { return m + n; }

    int grade(int base) const { return base < m ? 0 : 1; }

    bool graded() const { return n > 0; }

    // N = sum of multiplicities
    int local_dim() const {
        int d = 0;
        for (int v : multiplicities) d += v;
        return d;
    }

    void validate() const {
        if (m < 0 || n < 0 || m + n < 2)
            throw std::invalid_argument("ModelSpec: need m + n >= 2");
        if (static_cast<int>(multiplicities.size()) != m + n)
            throw std::invalid_argument("ModelSpec: multiplicities must have length m + n");
        for (int v : multiplicities)
            if (v < 1) throw std::invalid_argument("ModelSpec: every multiplicity must be >= 1");
        const double tol = 1e-12;
        if (std::abs(q) < tol)
            throw std::invalid_argument("ModelSpec: q must be nonzero");
        if (std::abs(q - cd(1, 0)) < tol || std::abs(q + cd(1, 0)) < tol)
            throw std::invalid_argument("ModelSpec: q^2 != 1 required (weights carry q^2 - 1 and q^2 - e^{2 lambda} denominators)");
    }

    int flatten(StateIndex s) const {
        int off = 0;
        for (int j = 0; j < s.base; ++j) off += multiplicities[j];
        return off + s.label;
    }

    StateIndex unflatten(int flat) const {
        int rest = flat;
        for (int j = 0; j < num_bases(); ++j) {
            if (rest < multiplicities[j]) return {j, rest};
            rest -= multiplicities[j];
        }
        throw std::out_of_range("ModelSpec::unflatten: ordinal " + std::to_string(flat) +
                                " outside [0, " + std::to_string(local_dim()) + ")");
    }

    int base_of(int flat) const { return unflatten(flat).base; }

    int state_grade(int flat) const { return grade(base_of(flat)); }

    // Canonical basis order: base ascending, label ascending.
    std::vector<StateIndex> enumerate_states() const {
        std::vector<StateIndex> out;
        out.reserve(local_dim());
        for (int j = 0; j < num_bases(); ++j)
            for (int a = 0; a < multiplicities[j]; ++a) out.push_back({j, a});
        return out;
    }

    // Same bases and q, all multiplicities collapsed to singletons.
    ModelSpec base_model() const {
        ModelSpec b = *this;
        b.multiplicities.assign(m + n, 1);
        return b;
    }
};

}  // namespace spinlift
