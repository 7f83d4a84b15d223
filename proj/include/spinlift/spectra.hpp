// Dense exact diagonalization, degeneracy clustering, and matching of Bethe
// eigenvalue curves against transfer-matrix branches tracked over a mu-grid.

#pragma once

#include "spinlift/bethe.hpp"

namespace spinlift {

// Eigenvalues of a (generically non-normal) dense operator, sorted by
// (re, im).  Throws on eigensolver failure.
std::vector<cd> dense_spectrum(const SpectralOperator& op);
std::vector<cd> dense_spectrum(const Matrix& mat);

struct DegeneracyClass {
    cd representative{0, 0};
    int count = 0;
};

// Greedy clustering of the sorted eigenvalue list; two values join a class
// when |v - rep| <= atol + rtol |rep|.  Stable under input permutation.
std::vector<DegeneracyClass> degeneracy_histogram(std::vector<cd> eigenvalues,
                                                  double atol = 1e-9, double rtol = 1e-9);

// Single-site operator permuting the labels of one base index; the identity
// on every other state.  Commutes with transfer matrices and Hamiltonians.
SpectralOperator label_permutation_site(const ModelSpec& spec, int base,
                                        const std::vector<int>& perm);

// The same permutation applied simultaneously at every chain site.
SpectralOperator label_permutation_chain(const ChainSpec& chain, int base,
                                         const std::vector<int>& perm);

// Transfer-matrix eigenvalue branches over a mu-grid, continued from the
// first grid point by nearest-value assignment with eigenvector-overlap
// tie-breaking.  branch_values(b, j) is branch b at mu_grid[j].
struct BranchTable {
    std::vector<cd> mu_grid;
    Matrix branch_values;  // dim x grid
};

BranchTable track_transfer_branches(const ChainSpec& chain, const std::vector<cd>& mu_grid);

struct AbaMatch {
    int solution = -1;
    int branch = -1;             // -1 when unmatched
    double max_rel_deviation = 0.0;
    bool matched = false;
};

struct SpectrumReport {
    std::vector<cd> eigenvalues;                  // transfer spectrum at mu_grid[0]
    std::vector<DegeneracyClass> degeneracy_classes;
    std::vector<AbaMatch> matches;                // one entry per solution, never dropped
};

// For each Bethe solution, the branch minimizing the maximal relative
// deviation of Lambda^0 over the grid; a match requires deviation < tol.
SpectrumReport match_aba_to_ed(const ChainSpec& chain, const std::vector<BetheConfig>& solutions,
                               const std::vector<cd>& mu_grid, double tol = 1e-8);

}  // namespace spinlift
