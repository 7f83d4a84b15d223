// Inhomogeneous closed chains: Lax operators, monodromy, transfer matrix,
// and the nearest-neighbour Hamiltonian of the homogeneous chain.

#pragma once

#include "spinlift/rmatrix.hpp"

namespace spinlift {

struct ChainSpec {
    ModelSpec model;
    int p0 = 1;                       // chain length
    std::vector<cd> inhomogeneities;  // level-0 shifts, length p0
    long dim_cap = 16384;             // builders refuse N^p0 beyond this

    bool homogeneous(double tol = 1e-12) const {
        for (cd l : inhomogeneities)
            if (std::abs(l) > tol) return false;
        return true;
    }

    static ChainSpec homogeneous_chain(ModelSpec m, int p0) {
        ChainSpec c;
        c.model = std::move(m);
        c.p0 = p0;
        c.inhomogeneities.assign(p0, cd(0, 0));
        return c;
    }

    long hilbert_dim() const {  // N^p0, capped check left to the builders
        long d = 1;
        for (int x = 0; x < p0; ++x) {
            d *= model.local_dim();
            if (d > (1L << 40)) throw std::overflow_error("ChainSpec: Hilbert dimension overflow");
        }
        return d;
    }

    void validate() const {
        model.validate();
        if (p0 < 1) throw std::invalid_argument("ChainSpec: p0 must be >= 1");
        if (static_cast<int>(inhomogeneities.size()) != p0)
            throw std::invalid_argument("ChainSpec: need one inhomogeneity per site");
    }

    void check_cap() const {
        if (hilbert_dim() > dim_cap)
            throw std::invalid_argument("ChainSpec: Hilbert dimension " + std::to_string(hilbert_dim()) +
                                        " exceeds cap " + std::to_string(dim_cap));
    }
};

// L_{a x}(mu) = R_{a x}(mu - lambda0_x) on aux (x) site; x is 1-based.
SpectralOperator lax(const ChainSpec& chain, int x, cd mu);

// T(mu) = L_{p0}(mu) ... L_1(mu) on aux (x) chain (slot 0 is the aux space).
SpectralOperator monodromy(const ChainSpec& chain, cd mu);

// Supertrace of the monodromy over the aux space; plain trace when n = 0.
SpectralOperator transfer(const ChainSpec& chain, cd mu);

// Max-norm of R12(l-m) T1(l) T2(m) - T2(m) T1(l) R12(l-m) on aux1 (x) aux2 (x) chain.
double rtt_residual(const ChainSpec& chain, cd lambda, cd mu);

// Two-site density h = P * dR/dl|_0 of the label-diagonal lift, in closed form:
//   intra-set exchange units  (-1)^{|I|} a_I'(0)      (nonzero for fermionic I)
//   inter-set exchange units  (-1)^{|I||J|} b'(0)
//   inter-set diagonal units  c'(0) / d'(0) by slot-base order
SpectralOperator hamiltonian_density_closed(const ModelSpec& spec);

// Central-difference oracle P * (R(h) - R(-h)) / (2h), R per the spec's lift.
SpectralOperator hamiltonian_density_fd(const ModelSpec& spec, double h);

// Closed-chain sums of the densities over bonds (x, x+1) and the wrap bond.
SpectralOperator hamiltonian_closed(const ChainSpec& chain);
SpectralOperator hamiltonian_fd(const ChainSpec& chain, double h);

// Graded one-site cyclic shift; commutes with the homogeneous Hamiltonian.
SpectralOperator translation_operator(const ChainSpec& chain);

}  // namespace spinlift
