#include "spinlift/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace spinlift {

namespace {

bool lex_less(cd a, cd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

std::vector<cd> dense_spectrum(const Matrix& mat) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("dense_spectrum: square input required");
    Eigen::ComplexEigenSolver<Matrix> solver(mat, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense_spectrum: eigensolver did not converge");
    std::vector<cd> eigs(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(eigs.begin(), eigs.end(), lex_less);
    return eigs;
}

std::vector<cd> dense_spectrum(const SpectralOperator& op) {
    op.check();
    return dense_spectrum(op.mat);
}

std::vector<DegeneracyClass> degeneracy_histogram(std::vector<cd> eigenvalues, double atol,
                                                  double rtol) {
    if (atol <= 0 && rtol <= 0) throw std::invalid_argument("degeneracy_histogram: tol > 0 required");
    std::sort(eigenvalues.begin(), eigenvalues.end(), lex_less);
    std::vector<DegeneracyClass> classes;
    for (const cd v : eigenvalues) {
        if (!classes.empty()) {
            DegeneracyClass& last = classes.back();
            if (std::abs(v - last.representative) <= atol + rtol * std::abs(last.representative)) {
                ++last.count;
                continue;
            }
        }
        classes.push_back({v, 1});
    }
    return classes;
}

SpectralOperator label_permutation_site(const ModelSpec& spec, int base,
                                        const std::vector<int>& perm) {
    spec.validate();
    if (base < 0 || base >= spec.num_bases())
        throw std::invalid_argument("label_permutation_site: base index out of range");
    const int nI = spec.multiplicities[base];
    if (static_cast<int>(perm.size()) != nI)
        throw std::invalid_argument("label_permutation_site: permutation size != multiplicity");
    std::vector<bool> seen(nI, false);
    for (int p : perm) {
        if (p < 0 || p >= nI || seen[p])
            throw std::invalid_argument("label_permutation_site: not a permutation");
        seen[p] = true;
    }

    const int N = spec.local_dim();
    SpectralOperator op;
    op.factors = {N};
    op.mat = Matrix::Zero(N, N);
    for (int s = 0; s < N; ++s) {
        const StateIndex st = spec.unflatten(s);
        const int target = (st.base == base) ? spec.flatten({base, perm[st.label]}) : s;
        op.mat(target, s) = cd(1, 0);
    }
    return op;
}

SpectralOperator label_permutation_chain(const ChainSpec& chain, int base,
                                         const std::vector<int>& perm) {
    chain.validate();
    chain.check_cap();
    const SpectralOperator site = label_permutation_site(chain.model, base, perm);
    // Label permutations preserve every grade, so the graded embedding carries
    // no signs and the chain operator is a plain Kronecker power.
    SpectralOperator out;
    out.factors.assign(chain.p0, chain.model.local_dim());
    out.mat = Matrix::Identity(out.side(), out.side());
    for (int x = 0; x < chain.p0; ++x)
        out.mat = embed(site, {x}, chain.p0, chain.model).mat * out.mat;
    return out;
}

BranchTable track_transfer_branches(const ChainSpec& chain, const std::vector<cd>& mu_grid) {
    chain.validate();
    chain.check_cap();
    if (mu_grid.empty()) throw std::invalid_argument("track_transfer_branches: empty grid");

    // Continuation needs closely spaced points; refine each requested
    // interval and keep track of which walk points are requested ones.
    std::vector<cd> walk;
    std::vector<int> record_at;
    for (size_t j = 0; j < mu_grid.size(); ++j) {
        if (j > 0) {
            const cd step = mu_grid[j] - mu_grid[j - 1];
            const int substeps = std::max(1, int(std::ceil(std::abs(step) / 0.02)));
            for (int s = 1; s < substeps; ++s)
                walk.push_back(mu_grid[j - 1] + (double(s) / substeps) * step);
        }
        walk.push_back(mu_grid[j]);
        record_at.push_back(static_cast<int>(walk.size()) - 1);
    }

    const long dim = chain.hilbert_dim();
    BranchTable table;
    table.mu_grid = mu_grid;
    table.branch_values.resize(dim, mu_grid.size());

    Matrix prev_vectors;
    std::vector<cd> prev_values(dim);
    size_t next_record = 0;

    for (size_t j = 0; j < walk.size(); ++j) {
        Eigen::ComplexEigenSolver<Matrix> solver(transfer(chain, walk[j]).mat, true);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("track_transfer_branches: eigensolver did not converge");
        const Vector vals = solver.eigenvalues();
        const Matrix vecs = solver.eigenvectors();

        std::vector<int> assignment(dim, -1);
        if (j == 0) {
            // Branch order fixed by the sorted spectrum at the first point.
            std::vector<int> order(dim);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return lex_less(vals(a), vals(b)); });
            for (long b = 0; b < dim; ++b) assignment[b] = order[b];
        } else {
            // Greedy assignment by value distance discounted by eigenvector
            // overlap: the commuting family shares a mu-independent
            // eigenbasis, so the true continuation has overlap near one and
            // survives branch crossings that value distance alone mixes up.
            struct Cand {
                double cost;
                int branch;
                int idx;
            };
            std::vector<Cand> cands;
            cands.reserve(dim * dim);
            for (long b = 0; b < dim; ++b)
                for (long i = 0; i < dim; ++i) {
                    const double dist = std::abs(vals(i) - prev_values[b]);
                    const double overlap = std::abs(prev_vectors.col(b).dot(vecs.col(i)));
                    cands.push_back({dist / (overlap + 0.05), int(b), int(i)});
                }
            std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& c) {
                if (a.cost != c.cost) return a.cost < c.cost;
                if (a.branch != c.branch) return a.branch < c.branch;
                return a.idx < c.idx;
            });
            std::vector<bool> branch_done(dim, false), idx_done(dim, false);
            long assigned = 0;
            for (const Cand& c : cands) {
                if (assigned == dim) break;
                if (branch_done[c.branch] || idx_done[c.idx]) continue;
                assignment[c.branch] = c.idx;
                branch_done[c.branch] = true;
                idx_done[c.idx] = true;
                ++assigned;
            }
        }

        Matrix reordered_vecs(dim, dim);
        for (long b = 0; b < dim; ++b) {
            prev_values[b] = vals(assignment[b]);
            reordered_vecs.col(b) = vecs.col(assignment[b]);
        }
        prev_vectors = reordered_vecs;
        if (next_record < record_at.size() && record_at[next_record] == static_cast<int>(j)) {
            for (long b = 0; b < dim; ++b) table.branch_values(b, next_record) = prev_values[b];
            ++next_record;
        }
    }
    return table;
}

SpectrumReport match_aba_to_ed(const ChainSpec& chain, const std::vector<BetheConfig>& solutions,
                               const std::vector<cd>& mu_grid, double tol) {
    const BranchTable table = track_transfer_branches(chain, mu_grid);
    const long dim = table.branch_values.rows();

    SpectrumReport report;
    report.eigenvalues.resize(dim);
    for (long b = 0; b < dim; ++b) report.eigenvalues[b] = table.branch_values(b, 0);
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), lex_less);
    report.degeneracy_classes = degeneracy_histogram(report.eigenvalues);

    for (size_t s = 0; s < solutions.size(); ++s) {
        AbaMatch match;
        match.solution = static_cast<int>(s);
        double best = std::numeric_limits<double>::infinity();
        for (long b = 0; b < dim; ++b) {
            double dev = 0;
            for (size_t j = 0; j < mu_grid.size(); ++j) {
                const cd ed = table.branch_values(b, j);
                const cd aba = eigenvalue_recursion(solutions[s], 0, mu_grid[j]);
                dev = std::max(dev, std::abs(aba - ed) / std::max(std::abs(ed), 1e-12));
            }
            if (dev < best) {
                best = dev;
                match.branch = static_cast<int>(b);
            }
        }
        match.max_rel_deviation = best;
        match.matched = best < tol;
        if (!match.matched) match.branch = -1;
        report.matches.push_back(match);
    }
    return report;
}

}  // namespace spinlift
