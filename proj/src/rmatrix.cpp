#include "spinlift/rmatrix.hpp"

#include <algorithm>

namespace spinlift {

namespace {

SpectralOperator build_entries(const ModelSpec& spec, cd lambda) {
    const int N = spec.local_dim();

    const cd b = weight_b(spec, lambda);
    const cd c = weight_c(spec, lambda);
    const cd d = weight_d(spec, lambda);
    std::vector<cd> a(2);
    a[0] = weight_a(spec, 0, lambda);
    a[1] = spec.graded() ? weight_a(spec, 1, lambda) : cd(0, 0);

    SpectralOperator r;
    r.factors = {N, N};
    r.mat = Matrix::Zero(long(N) * N, long(N) * N);

    auto at = [&](int r1, int r2, int c1, int c2) -> cd& {
        return r.mat(long(r1) * N + r2, long(c1) * N + c2);
    };

    for (int u = 0; u < N; ++u) {
        const int I = spec.base_of(u);
        for (int w = 0; w < N; ++w) {
            const int J = spec.base_of(w);
            if (I == J) {
                const cd aI = a[spec.grade(I)];
                if (spec.lift == LiftConvention::Diagonal)
                    at(u, w, u, w) = aI;
                else
                    at(u, w, w, u) = aI;
                continue;
            }
            at(u, w, u, w) = b;
            const double sign = (spec.grade(I) & spec.grade(J)) ? -1.0 : 1.0;
            at(u, w, w, u) = sign * (I < J ? c : d);
        }
    }
    return r;
}

}  // namespace

SpectralOperator build_r_base(const ModelSpec& spec, cd lambda) {
    spec.validate();
    return build_entries(spec.base_model(), lambda);
}

SpectralOperator build_r_lifted(const ModelSpec& spec, cd lambda) {
    spec.validate();
    return build_entries(spec, lambda);
}

double check_ybe(const ModelSpec& spec, cd u, cd v, cd w, LiftConvention convention) {
    ModelSpec s = spec;
    s.lift = convention;
    const SpectralOperator r12 = build_r_lifted(s, u - v);
    const SpectralOperator r13 = build_r_lifted(s, u - w);
    const SpectralOperator r23 = build_r_lifted(s, v - w);

    const Matrix m12 = embed(r12, {0, 1}, 3, s).mat;
    const Matrix m13 = embed(r13, {0, 2}, 3, s).mat;
    const Matrix m23 = embed(r23, {1, 2}, 3, s).mat;

    return max_norm(m12 * m13 * m23 - m23 * m13 * m12);
}

double check_ybe(const ModelSpec& spec, cd u, cd v, cd w) {
    return check_ybe(spec, u, v, w, spec.lift);
}

bool check_form_constraint(const SpectralOperator& r, const ModelSpec& spec, double tol) {
    r.check();
    if (r.factors.size() != 2)
        throw std::invalid_argument("check_form_constraint: expected a two-site operator");
    const int N = spec.local_dim();
    if (r.factors[0] != N || r.factors[1] != N)
        throw std::invalid_argument("check_form_constraint: operator does not act on V (x) V");

    auto key = [&](int s1, int s2) { return s1 <= s2 ? std::pair{s1, s2} : std::pair{s2, s1}; };
    for (int r1 = 0; r1 < N; ++r1)
        for (int r2 = 0; r2 < N; ++r2)
            for (int c1 = 0; c1 < N; ++c1)
                for (int c2 = 0; c2 < N; ++c2) {
                    if (std::abs(r.mat(long(r1) * N + r2, long(c1) * N + c2)) <= tol) continue;
                    if (key(r1, r2) != key(c1, c2)) return false;
                }
    return true;
}

}  // namespace spinlift
