#include "spinlift/chain.hpp"

namespace spinlift {

SpectralOperator lax(const ChainSpec& chain, int x, cd mu) {
    chain.validate();
    if (x < 1 || x > chain.p0) throw std::out_of_range("lax: site index outside [1, p0]");
    return build_r_lifted(chain.model, mu - chain.inhomogeneities[x - 1]);
}

SpectralOperator monodromy(const ChainSpec& chain, cd mu) {
    chain.validate();
    chain.check_cap();
    const int p0 = chain.p0;

    SpectralOperator t;
    t.factors.assign(p0 + 1, chain.model.local_dim());
    t.mat = Matrix::Identity(t.side(), t.side());
    // Site p0 leftmost: right-multiply so L_1 acts first.
    for (int x = p0; x >= 1; --x) {
        const SpectralOperator lx = embed(lax(chain, x, mu), {0, x}, p0 + 1, chain.model);
        t.mat = t.mat * lx.mat;
    }
    return t;
}

SpectralOperator transfer(const ChainSpec& chain, cd mu) {
    return supertrace_aux(monodromy(chain, mu), chain.model);
}

double rtt_residual(const ChainSpec& chain, cd lambda, cd mu) {
    chain.validate();
    const int p0 = chain.p0;
    const ModelSpec& spec = chain.model;

    const SpectralOperator tl = monodromy(chain, lambda);
    const SpectralOperator tm = monodromy(chain, mu);

    std::vector<int> pos1{0}, pos2{1};
    for (int x = 1; x <= p0; ++x) {
        pos1.push_back(x + 1);
        pos2.push_back(x + 1);
    }
    const Matrix t1 = embed(tl, pos1, p0 + 2, spec).mat;
    const Matrix t2 = embed(tm, pos2, p0 + 2, spec).mat;
    const Matrix r12 = embed(build_r_lifted(spec, lambda - mu), {0, 1}, p0 + 2, spec).mat;

    return max_norm(r12 * t1 * t2 - t2 * t1 * r12);
}

SpectralOperator hamiltonian_density_closed(const ModelSpec& spec) {
    spec.validate();
    const int N = spec.local_dim();

    const cd da1 = weight_a_deriv0(spec, 1);
    const cd db = weight_b_deriv0(spec);
    const cd dc = weight_c_deriv0(spec);
    const cd dd = weight_d_deriv0(spec);

    SpectralOperator h;
    h.factors = {N, N};
    h.mat = Matrix::Zero(long(N) * N, long(N) * N);
    auto at = [&](int r1, int r2, int c1, int c2) -> cd& {
        return h.mat(long(r1) * N + r2, long(c1) * N + c2);
    };

    for (int u = 0; u < N; ++u) {
        const int I = spec.base_of(u);
        for (int w = 0; w < N; ++w) {
            const int J = spec.base_of(w);
            if (I == J) {
                if (spec.grade(I) == 1) at(w, u, u, w) += -da1;
                continue;
            }
            const double sign = (spec.grade(I) & spec.grade(J)) ? -1.0 : 1.0;
            at(w, u, u, w) += sign * db;
            // diagonal at (w, u): c' when base(u) < base(w), d' otherwise
            at(w, u, w, u) += (I < J) ? dc : dd;
        }
    }
    return h;
}

SpectralOperator hamiltonian_density_fd(const ModelSpec& spec, double h) {
    spec.validate();
    if (h < 1e-6 || h > 1e-3)
        throw std::invalid_argument("hamiltonian_density_fd: step must lie in [1e-6, 1e-3]");
    const SpectralOperator rp = build_r_lifted(spec, cd(h, 0));
    const SpectralOperator rm = build_r_lifted(spec, cd(-h, 0));
    const SpectralOperator p = graded_permutation(spec);
    SpectralOperator out;
    out.factors = rp.factors;
    out.mat = p.mat * (rp.mat - rm.mat) / (2.0 * h);
    return out;
}

namespace {

SpectralOperator sum_over_bonds(const ChainSpec& chain, const SpectralOperator& density) {
    chain.check_cap();
    if (chain.p0 < 2)
        throw std::invalid_argument("hamiltonian: need p0 >= 2 for nearest-neighbour bonds");
    if (!chain.homogeneous())
        throw std::invalid_argument("hamiltonian: closed form assumes vanishing inhomogeneities");
    const ModelSpec& spec = chain.model;
    const int p0 = chain.p0;

    SpectralOperator h;
    h.factors.assign(p0, spec.local_dim());
    h.mat = Matrix::Zero(h.side(), h.side());
    for (int x = 0; x + 1 < p0; ++x) h.mat += embed(density, {x, x + 1}, p0, spec).mat;

    // Wrap bond (site p0, site 1): swap the density's slot roles.
    const Matrix pm = graded_permutation(spec).mat;
    SpectralOperator wrapped;
    wrapped.factors = density.factors;
    wrapped.mat = pm * density.mat * pm;
    h.mat += embed(wrapped, {0, p0 - 1}, p0, spec).mat;
    return h;
}

}  // namespace

SpectralOperator hamiltonian_closed(const ChainSpec& chain) {
    chain.validate();
    return sum_over_bonds(chain, hamiltonian_density_closed(chain.model));
}

SpectralOperator hamiltonian_fd(const ChainSpec& chain, double h) {
    chain.validate();
    return sum_over_bonds(chain, hamiltonian_density_fd(chain.model, h));
}

SpectralOperator translation_operator(const ChainSpec& chain) {
    chain.validate();
    chain.check_cap();
    const int p0 = chain.p0;
    const ModelSpec& spec = chain.model;
    const SpectralOperator p = graded_permutation(spec);

    // Product of adjacent graded swaps moving the last site to the front;
    // equals the exchange-convention transfer matrix at the origin.
    SpectralOperator u;
    u.factors.assign(p0, spec.local_dim());
    u.mat = Matrix::Identity(u.side(), u.side());
    for (int x = 0; x + 1 < p0; ++x) u.mat = u.mat * embed(p, {x, x + 1}, p0, spec).mat;
    return u;
}

}  // namespace spinlift
