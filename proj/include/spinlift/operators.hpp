// Dense operators on graded tensor-product spaces.
//
// Sign convention (the one every module relies on): for matrix units,
//
//     e_x{}^y (x)_s e_u{}^v  =  (-1)^{|u| (|x| + |y|)}  e_x{}^y (x) e_u{}^v,
//
// i.e. the graded tensor product dresses the plain Kronecker product with the
// second factor's row grade times the parity of the first factor's index pair.
// Iterating left-to-right gives the multi-factor rule: factor j contributes
// (-1)^{|r_j| * sum_{i<j} (|r_i| + |c_i|)}.  States are plain column vectors;
// all signs live in operator entries, so composition is ordinary matrix
// multiplication and eigenproblems are ordinary dense linear algebra.

#pragma once

#include <Eigen/Dense>

#include "spinlift/model.hpp"

namespace spinlift {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct SpectralOperator {
    std::vector<int> factors;  // local dimension per tensor slot
    Matrix mat;                // side = product of factors, big-endian slot order

    long side() const {
        long s = 1;
        for (int f : factors) s *= f;
        return s;
    }

    void check() const {
        if (mat.rows() != mat.cols() || mat.rows() != side())
            throw std::invalid_argument("SpectralOperator: matrix side does not match factor product");
    }

    static SpectralOperator identity(std::vector<int> factors) {
        SpectralOperator op;
        op.factors = std::move(factors);
        const long s = op.side();
        op.mat = Matrix::Identity(s, s);
        return op;
    }
};

// Big-endian mixed-radix codec: slot 0 is the most significant digit.
inline std::vector<int> decode_index(long flat, const std::vector<int>& dims) {
    std::vector<int> digits(dims.size());
    for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
        digits[j] = static_cast<int>(flat % dims[j]);
        flat /= dims[j];
    }
    return digits;
}

inline long encode_index(const std::vector<int>& digits, const std::vector<int>& dims) {
    long flat = 0;
    for (size_t j = 0; j < dims.size(); ++j) flat = flat * dims[j] + digits[j];
    return flat;
}

// Total grade of a flattened multi-state (each slot a copy of the local space).
inline int multi_grade(long flat, const std::vector<int>& dims, const ModelSpec& spec) {
    int g = 0;
    for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
        g += spec.state_grade(static_cast<int>(flat % dims[j]));
        flat /= dims[j];
    }
    return g & 1;
}

double max_norm(const Matrix& a);

// Graded tensor product; factor lists concatenate.  Reduces to the plain
// Kronecker product when every participating grade is 0.
SpectralOperator graded_tensor(const SpectralOperator& a, const SpectralOperator& b,
                               const ModelSpec& spec);

// Places `op` on the slots `positions` (strictly increasing) of a
// `total_factors`-slot chain of local spaces, graded identity elsewhere.
// Identity slot j picks up (-1)^{|s_j| * G_j} with G_j the parity of op's
// index pairs on slots left of j.
SpectralOperator embed(const SpectralOperator& op, const std::vector<int>& positions,
                       int total_factors, const ModelSpec& spec);

// P (v (x) w) = (-1)^{|v||w|} w (x) v on two sites; an involution.
SpectralOperator graded_permutation(const ModelSpec& spec);

// Partial trace over slot 0 weighted by (-1)^{grade} of the traced state.
// Coincides with the plain partial trace for purely bosonic models.
SpectralOperator supertrace_aux(const SpectralOperator& op, const ModelSpec& spec);

}  // namespace spinlift
