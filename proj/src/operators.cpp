#include "spinlift/operators.hpp"

namespace spinlift {

double max_norm(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

SpectralOperator graded_tensor(const SpectralOperator& a, const SpectralOperator& b,
                               const ModelSpec& spec) {
    a.check();
    b.check();
    const long da = a.side(), db = b.side();

    // Grade tables for the two row/column spaces.
    std::vector<int> ga(da), gb(db);
    for (long i = 0; i < da; ++i) ga[i] = multi_grade(i, a.factors, spec);
    for (long i = 0; i < db; ++i) gb[i] = multi_grade(i, b.factors, spec);

    SpectralOperator out;
    out.factors = a.factors;
    out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
    out.mat = Matrix::Zero(da * db, da * db);

    for (long ra = 0; ra < da; ++ra)
        for (long ca = 0; ca < da; ++ca) {
            const cd va = a.mat(ra, ca);
            if (va == cd(0, 0)) continue;
            const int pair_a = (ga[ra] + ga[ca]) & 1;
            for (long rb = 0; rb < db; ++rb)
                for (long cb = 0; cb < db; ++cb) {
                    const cd vb = b.mat(rb, cb);
                    if (vb == cd(0, 0)) continue;
                    const double sign = (pair_a & gb[rb]) ? -1.0 : 1.0;
                    out.mat(ra * db + rb, ca * db + cb) = sign * va * vb;
                }
        }
    return out;
}

SpectralOperator embed(const SpectralOperator& op, const std::vector<int>& positions,
                       int total_factors, const ModelSpec& spec) {
    op.check();
    if (positions.size() != op.factors.size())
        throw std::invalid_argument("embed: positions must match op factor count");
    for (size_t k = 0; k + 1 < positions.size(); ++k)
        if (positions[k] >= positions[k + 1])
            throw std::invalid_argument("embed: positions must be strictly increasing");
    if (!positions.empty() && (positions.front() < 0 || positions.back() >= total_factors))
        throw std::invalid_argument("embed: position outside target space");

    const int N = spec.local_dim();
    for (int f : op.factors)
        if (f != N) throw std::invalid_argument("embed: op factors must be copies of the local space");

    std::vector<int> dims(total_factors, N);
    std::vector<bool> is_op(total_factors, false);
    for (int p : positions) is_op[p] = true;

    std::vector<int> id_slots;
    for (int j = 0; j < total_factors; ++j)
        if (!is_op[j]) id_slots.push_back(j);
    long id_dim = 1;
    for (size_t k = 0; k < id_slots.size(); ++k) id_dim *= N;

    std::vector<int> grade_of(N);
    for (int s = 0; s < N; ++s) grade_of[s] = spec.state_grade(s);

    SpectralOperator out;
    out.factors = dims;
    out.mat = Matrix::Zero(out.side(), out.side());

    const long dop = op.side();
    std::vector<int> rdig(op.factors.size()), cdig(op.factors.size());
    std::vector<int> global_r(total_factors), global_c(total_factors);
    std::vector<int> iddig(id_slots.size());

    for (long r = 0; r < dop; ++r) {
        rdig = decode_index(r, op.factors);
        for (long c = 0; c < dop; ++c) {
            const cd v = op.mat(r, c);
            if (v == cd(0, 0)) continue;
            cdig = decode_index(c, op.factors);

            // Parity of op's (row,col) grade pairs left of each identity slot.
            std::vector<int> left_pair_parity(id_slots.size(), 0);
            for (size_t k = 0; k < id_slots.size(); ++k) {
                int par = 0;
                for (size_t t = 0; t < positions.size(); ++t)
                    if (positions[t] < id_slots[k])
                        par ^= (grade_of[rdig[t]] + grade_of[cdig[t]]) & 1;
                left_pair_parity[k] = par;
            }

            for (size_t t = 0; t < positions.size(); ++t) {
                global_r[positions[t]] = rdig[t];
                global_c[positions[t]] = cdig[t];
            }

            for (long id = 0; id < id_dim; ++id) {
                long rest = id;
                int sign_exp = 0;
                for (int k = static_cast<int>(id_slots.size()) - 1; k >= 0; --k) {
                    iddig[k] = static_cast<int>(rest % N);
                    rest /= N;
                    sign_exp ^= grade_of[iddig[k]] & left_pair_parity[k];
                }
                for (size_t k = 0; k < id_slots.size(); ++k) {
                    global_r[id_slots[k]] = iddig[k];
                    global_c[id_slots[k]] = iddig[k];
                }
                const long R = encode_index(global_r, dims);
                const long C = encode_index(global_c, dims);
                out.mat(R, C) += (sign_exp ? -1.0 : 1.0) * v;
            }
        }
    }
    return out;
}

SpectralOperator graded_permutation(const ModelSpec& spec) {
    spec.validate();
    const int N = spec.local_dim();
    SpectralOperator p;
    p.factors = {N, N};
    p.mat = Matrix::Zero(long(N) * N, long(N) * N);
    for (int y = 0; y < N; ++y)
        for (int v = 0; v < N; ++v) {
            const double sign = (spec.state_grade(y) & spec.state_grade(v)) ? -1.0 : 1.0;
            p.mat(long(v) * N + y, long(y) * N + v) = sign;
        }
    return p;
}

SpectralOperator supertrace_aux(const SpectralOperator& op, const ModelSpec& spec) {
    op.check();
    if (op.factors.empty() || op.factors[0] != spec.local_dim())
        throw std::invalid_argument("supertrace_aux: slot 0 must carry the local space");
    const int N = op.factors[0];

    SpectralOperator out;
    out.factors.assign(op.factors.begin() + 1, op.factors.end());
    const long rest = out.side();
    out.mat = Matrix::Zero(rest, rest);
    for (int w = 0; w < N; ++w) {
        const double weight = spec.state_grade(w) ? -1.0 : 1.0;
        out.mat += weight * op.mat.block(long(w) * rest, long(w) * rest, rest, rest);
    }
    return out;
}

}  // namespace spinlift
