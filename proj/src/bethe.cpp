#include "spinlift/bethe.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace spinlift {

namespace {

constexpr double kBZeroGuard = 1e-13;
constexpr double kCollisionTol = 1e-8;

cd checked_b(const ModelSpec& spec, cd lambda) {
    const cd b = weight_b(spec, lambda);
    if (std::abs(b) < kBZeroGuard)
        throw std::domain_error("level eigenvalue evaluated at a b-zero");
    return b;
}

}  // namespace

void BetheConfig::validate() const {
    chain.validate();
    const int K = levels();
    if (static_cast<int>(rapidities.size()) != K)
        throw std::invalid_argument("BetheConfig: need one rapidity list per level 1..K");
    if (!pseudo_vacuum_labels.empty()) {
        if (static_cast<int>(pseudo_vacuum_labels.size()) != K + 1)
            throw std::invalid_argument("BetheConfig: pseudo_vacuum_labels must cover levels 0..K");
        for (int k = 0; k <= K; ++k)
            if (pseudo_vacuum_labels[k] < 0 ||
                pseudo_vacuum_labels[k] >= chain.model.multiplicities[k])
                throw std::invalid_argument("BetheConfig: pseudo-vacuum label outside A_k");
    }
    if (magnons(levels()) > 0 && final_branch < 0)
        throw std::invalid_argument("BetheConfig: final_branch must be nonnegative");
}

std::vector<std::string> BetheConfig::admissibility_warnings() const {
    std::vector<std::string> out;
    for (int k = 0; k < levels(); ++k)
        if (magnons(k + 1) > magnons(k))
            out.push_back("p_" + std::to_string(k + 1) + " = " + std::to_string(magnons(k + 1)) +
                          " exceeds p_" + std::to_string(k) + " = " + std::to_string(magnons(k)));
    return out;
}

cd final_level_eigenvalue(const BetheConfig& config, cd mu) {
    const ModelSpec& spec = config.chain.model;
    const int K = config.levels();
    const int gK = spec.grade(K);
    const double sign = gK ? -1.0 : 1.0;
    const int pK = config.magnons(K);
    if (pK == 0) return sign * double(spec.multiplicities[K]);

    const double angle = 2.0 * std::numbers::pi * double(config.final_branch % pK) / double(pK);
    const cd omega{std::cos(angle), std::sin(angle)};
    cd prod{1, 0};
    for (cd l : config.level_points(K)) prod *= weight_a(spec, gK, mu - l);
    return sign * omega * prod;
}

LevelTerms eigenvalue_terms(const BetheConfig& config, int k, cd mu) {
    const ModelSpec& spec = config.chain.model;
    const int K = config.levels();
    if (k < 0 || k >= K) throw std::out_of_range("eigenvalue_terms: level outside [0, K)");

    const int gk = spec.grade(k);
    const double sign = gk ? -1.0 : 1.0;
    const auto& here = config.level_points(k);
    const auto& next = config.level_points(k + 1);

    cd b_prod{1, 0}, a_prod{1, 0};
    for (cd l : here) {
        b_prod *= weight_b(spec, mu - l);
        a_prod *= weight_a(spec, gk, mu - l);
    }

    LevelTerms t;
    t.shift_term = (config.magnons(k) == config.magnons(k + 1))
                       ? sign * double(spec.multiplicities[k] - 1) * b_prod
                       : cd(0, 0);

    cd ratio{1, 0};
    for (cd l : next) ratio *= weight_a(spec, gk, l - mu) / checked_b(spec, l - mu);
    t.direct_term = sign * a_prod * ratio;

    cd inv{1, 0};
    bool next_zero = false;
    for (cd l : next) {
        const cd b = weight_b(spec, mu - l);
        if (std::abs(b) < kBZeroGuard) { next_zero = true; break; }
        inv /= b;
    }
    // b_prod vanishes exactly when mu sits on a level-k point; the nested term
    // is then zero regardless of the deeper levels.
    if (std::abs(b_prod) == 0.0)
        t.nested_term = cd(0, 0);
    else if (next_zero)
        throw std::domain_error("level eigenvalue evaluated at a b-zero");
    else
        t.nested_term = b_prod * inv * eigenvalue_recursion(config, k + 1, mu);
    return t;
}

cd eigenvalue_recursion(const BetheConfig& config, int k, cd mu) {
    config.chain.model.validate();
    const int K = config.levels();
    if (k < 0 || k > K) throw std::out_of_range("eigenvalue_recursion: level outside [0, K]");
    if (k == K) return final_level_eigenvalue(config, mu);
    return eigenvalue_terms(config, k, mu).total();
}

LevelEigenvalue level_eigenvalue(const BetheConfig& config, int k) {
    if (k < 0 || k > config.levels())
        throw std::out_of_range("level_eigenvalue: level outside [0, K]");
    return {k, [config, k](cd mu) { return eigenvalue_recursion(config, k, mu); }};
}

cd bethe_residual(const BetheConfig& config, int k, int z) {
    const ModelSpec& spec = config.chain.model;
    const int K = config.levels();
    if (k < 0 || k >= K) throw std::out_of_range("bethe_residual: level outside [0, K)");
    const auto& next = config.level_points(k + 1);
    if (z < 0 || z >= static_cast<int>(next.size()))
        throw std::out_of_range("bethe_residual: magnon index outside level");

    for (size_t i = 0; i < next.size(); ++i)
        for (size_t j = i + 1; j < next.size(); ++j)
            if (std::abs(next[i] - next[j]) < kCollisionTol)
                throw std::invalid_argument("bethe_residual: coincident rapidities");

    const int gk = spec.grade(k);
    const int gk1 = spec.grade(k + 1);
    const cd lz = next[z];

    cd lhs{1, 0};
    if (k + 2 <= K)
        for (cd l : config.level_points(k + 2))
            lhs *= weight_a(spec, gk1, l - lz) / checked_b(spec, l - lz);

    for (size_t y = 0; y < next.size(); ++y) {
        if (static_cast<int>(y) == z) continue;
        const cd ly = next[y];
        lhs *= weight_a(spec, gk1, lz - ly) * checked_b(spec, ly - lz) /
               (weight_a(spec, gk, ly - lz) * checked_b(spec, lz - ly));
    }

    for (cd l : config.level_points(k))
        lhs *= checked_b(spec, lz - l) / weight_a(spec, gk, lz - l);

    cd rhs = config.bosonic_mode() ? cd(1, 0) / weight_a(spec, gk1, cd(0, 0)) : cd(1, 0);
    if (k + 1 == K && config.magnons(K) > 0) {
        const int pK = config.magnons(K);
        const double angle = 2.0 * std::numbers::pi * double(config.final_branch % pK) / double(pK);
        rhs /= cd{std::cos(angle), std::sin(angle)};
    }
    return lhs - rhs;
}

Vector bethe_residual_vector(const BetheConfig& config) {
    int total = 0;
    for (int k = 1; k <= config.levels(); ++k) total += config.magnons(k);
    Vector f(total);
    int at = 0;
    for (int k = 0; k < config.levels(); ++k)
        for (int z = 0; z < config.magnons(k + 1); ++z) f(at++) = bethe_residual(config, k, z);
    return f;
}

namespace {

std::vector<cd*> flat_rapidities(BetheConfig& config) {
    std::vector<cd*> out;
    for (auto& level : config.rapidities)
        for (auto& l : level) out.push_back(&l);
    return out;
}

bool has_collision(const BetheConfig& config) {
    for (const auto& level : config.rapidities)
        for (size_t i = 0; i < level.size(); ++i)
            for (size_t j = i + 1; j < level.size(); ++j)
                if (std::abs(level[i] - level[j]) < kCollisionTol) return true;
    return false;
}

}  // namespace

BetheSolveReport solve_bethe(BetheConfig& config, double tol, int max_iter) {
    config.validate();
    BetheSolveReport report;
    report.warnings = config.admissibility_warnings();
    if (config.magnons(config.levels()) == 0) {
        const int K = config.levels();
        const double sign = config.chain.model.grade(K) ? -1.0 : 1.0;
        report.termination_constant = sign * double(config.chain.model.multiplicities[K]);
    }

    if (has_collision(config)) {
        report.failure = "collision: coincident seed rapidities";
        return report;
    }

    auto vars = flat_rapidities(config);
    const int M = static_cast<int>(vars.size());
    if (M == 0) {  // pure vacuum: nothing to solve
        report.converged = true;
        return report;
    }

    const double jac_step = 1e-6;
    Vector f;
    try {
        f = bethe_residual_vector(config);
    } catch (const std::exception& e) {
        report.failure = std::string("residual evaluation failed at seed: ") + e.what();
        return report;
    }

    for (int iter = 0; iter < max_iter; ++iter) {
        report.residual = f.cwiseAbs().maxCoeff();
        if (report.residual < tol) {
            report.converged = true;
            report.iterations = iter;
            if (has_collision(config)) {
                report.converged = false;
                report.failure = "collision: rapidities merged during iteration";
            }
            return report;
        }

        // Central-difference Jacobian; residuals are holomorphic off the poles.
        Matrix jac(M, M);
        for (int j = 0; j < M; ++j) {
            const cd save = *vars[j];
            *vars[j] = save + cd(jac_step, 0);
            const Vector fp = bethe_residual_vector(config);
            *vars[j] = save - cd(jac_step, 0);
            const Vector fm = bethe_residual_vector(config);
            *vars[j] = save;
            jac.col(j) = (fp - fm) / (2.0 * jac_step);
        }

        Eigen::ColPivHouseholderQR<Matrix> qr(jac);
        if (qr.rank() < M) {
            report.failure = "singular Jacobian";
            report.iterations = iter;
            return report;
        }
        const Vector step = qr.solve(-f);

        double eta = 1.0;
        bool accepted = false;
        std::vector<cd> saved(M);
        for (int j = 0; j < M; ++j) saved[j] = *vars[j];
        for (int halving = 0; halving <= 8; ++halving) {
            for (int j = 0; j < M; ++j) *vars[j] = saved[j] + eta * step(j);
            try {
                const Vector ftrial = bethe_residual_vector(config);
                if (ftrial.cwiseAbs().maxCoeff() < report.residual) {
                    f = ftrial;
                    accepted = true;
                    break;
                }
            } catch (const std::exception&) {
                // stepped onto a pole; damp further
            }
            eta *= 0.5;
        }
        if (!accepted) {
            for (int j = 0; j < M; ++j) *vars[j] = saved[j];
            report.failure = "stalled: residual did not decrease within 8 step halvings";
            report.iterations = iter + 1;
            return report;
        }
    }

    report.iterations = max_iter;
    report.residual = f.cwiseAbs().maxCoeff();
    report.failure = "no convergence after max_iter iterations";
    return report;
}

cd bosonic_magnon_energy(const ModelSpec& spec, cd lambda) {
    const cd gamma = -std::log(spec.q);
    const cd s0 = std::sinh(lambda);
    const cd sg = std::sinh(lambda + gamma);
    if (std::abs(s0) < 1e-12 || std::abs(sg) < 1e-12)
        throw std::domain_error("energy: rapidity at a pole (lambda = 0 or -gamma)");
    return std::sinh(gamma) / (sg * s0);
}

cd energy(const BetheConfig& config) {
    config.validate();
    const ModelSpec& spec = config.chain.model;
    if (!config.chain.homogeneous())
        throw std::invalid_argument("energy: formula assumes a homogeneous chain");
    for (int k = 1; k <= config.levels(); ++k)
        if (config.magnons(k) >= config.chain.p0)
            throw std::invalid_argument("energy: formula assumes p_0 > p_k for all k >= 1");

    const cd gamma = -std::log(spec.q);
    const auto& level1 = config.rapidities[0];

    if (spec.grade(1) == 0) {
        cd e{0, 0};
        for (cd l : level1) e += bosonic_magnon_energy(spec, l);
        return e;
    }

    const double p0 = config.chain.p0;
    const double p1 = static_cast<double>(level1.size());
    cd e = cd(p0 - p1, 0) - p0 * std::cosh(gamma) / std::sinh(gamma);
    for (cd l : level1) {
        const cd s = std::sinh(l);
        if (std::abs(s) < 1e-12)
            throw std::domain_error("energy: rapidity at a pole (lambda = 0)");
        e += std::cosh(l) / s;
    }
    return e;
}

std::vector<cd> one_magnon_closed_form_roots(const ChainSpec& chain) {
    chain.validate();
    if (!chain.homogeneous())
        throw std::invalid_argument("one_magnon_closed_form_roots: homogeneous chains only");
    const cd q = chain.model.q;
    std::vector<cd> roots;
    roots.reserve(chain.p0);
    for (int j = 0; j < chain.p0; ++j) {
        const double angle = 2.0 * std::numbers::pi * double(j) / double(chain.p0);
        const cd omega{std::cos(angle), std::sin(angle)};
        if (std::abs(omega - q) < 1e-12)
            throw std::domain_error("one_magnon_closed_form_roots: q collides with a root of unity");
        const cd z = q * (omega * q - cd(1, 0)) / (omega - q);
        roots.push_back(0.5 * std::log(z));
    }
    return roots;
}

Vector pseudo_vacuum_vector(const ChainSpec& chain, StateIndex vacuum_label) {
    chain.validate();
    chain.check_cap();
    if (vacuum_label.base != 0)
        throw std::invalid_argument("pseudo_vacuum_vector: vacuum label must live in A_0");
    const int N = chain.model.local_dim();
    const int s = chain.model.flatten(vacuum_label);
    long index = 0;
    for (int x = 0; x < chain.p0; ++x) index = index * N + s;
    Vector v = Vector::Zero(chain.hilbert_dim());
    v(index) = cd(1, 0);
    return v;
}

Vector one_magnon_vector(const ChainSpec& chain, cd lambda1, StateIndex target,
                         StateIndex vacuum_label) {
    chain.validate();
    if (target == vacuum_label)
        throw std::invalid_argument("one_magnon_vector: target must differ from the vacuum label");

    const SpectralOperator t = monodromy(chain, lambda1);
    const long rest = chain.hilbert_dim();
    const int row = chain.model.flatten(vacuum_label);  // aux row of B_target
    const int col = chain.model.flatten(target);        // aux column
    const Matrix block = t.mat.block(long(row) * rest, long(col) * rest, rest, rest);

    const Vector v = block * pseudo_vacuum_vector(chain, vacuum_label);
    if (v.norm() < 1e-14)
        throw std::runtime_error("one_magnon_vector: creation entry annihilates the pseudo-vacuum");
    return v;
}

}  // namespace spinlift
