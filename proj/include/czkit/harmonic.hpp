#pragma once

#include <utility>
#include <vector>

#include "czkit/common.hpp"
#include "czkit/hpoly.hpp"

namespace czkit {

inline std::vector<Monomial> monomial_basis(int n_vars, int degree) {
    std::vector<Monomial> out;
    std::vector<int> cur(static_cast<size_t>(n_vars), 0);
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == n_vars - 1) {
            cur[static_cast<size_t>(var)] = remaining;
            out.emplace_back(cur);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[static_cast<size_t>(var)] = e;
            self(self, var + 1, remaining - e);
        }
        cur[static_cast<size_t>(var)] = 0;
    };
    if (degree < 0) return out;
    rec(rec, 0, degree);
    return out;
}

// Solves M x = rhs exactly, where M is square rational and the right-hand
// side (hence the solution) lives in the scalar tower.
inline std::vector<PiScalar> solve_rational_system(std::vector<std::vector<Rational>> M,
                                                   std::vector<PiScalar> rhs) {
    size_t dim = M.size();
    internal_check(rhs.size() == dim, "linear system shape mismatch");
    for (size_t col = 0; col < dim; ++col) {
        size_t pivot = col;
        while (pivot < dim && M[pivot][col] == 0) ++pivot;
        if (pivot == dim) throw internal_error("singular system in exact linear solve");
        std::swap(M[pivot], M[col]);
        std::swap(rhs[pivot], rhs[col]);
        Rational inv = Rational(1) / M[col][col];
        for (size_t j = col; j < dim; ++j) M[col][j] *= inv;
        rhs[col] *= inv;
        for (size_t row = 0; row < dim; ++row) {
            if (row == col || M[row][col] == 0) continue;
            Rational f = M[row][col];
            for (size_t j = col; j < dim; ++j) M[row][j] -= f * M[col][j];
            rhs[row] -= rhs[col] * f;
        }
    }
    return rhs;
}

// One layer of the decomposition p = H + |x|^2 R with H harmonic: R is the
// unique solution of the linear system lap(|x|^2 R) = lap(p). (The paper
// only cites the existence of the expansion; an exact linear solve is
// dimension-agnostic and self-verifying through the reconstruction check.)
inline HPoly harmonic_defect(const HPoly& p) {
    int n = p.n_vars();
    int d = p.degree();
    HPoly lap = laplacian(p);
    HPoly R(n, d - 2);
    if (lap.is_zero()) return R;
    std::vector<Monomial> basis = monomial_basis(n, d - 2);
    std::map<Monomial, size_t, GradedLexLess> index;
    for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    std::vector<std::vector<Rational>> M(basis.size(), std::vector<Rational>(basis.size(), Rational(0)));
    HPoly r2 = radial_power(n, 1);
    for (size_t j = 0; j < basis.size(); ++j) {
        HPoly img = laplacian(poly_mul(r2, HPoly::from_monomial(basis[j], PiScalar::one())));
        for (const auto& [m, c] : img.terms()) M[index.at(m)][j] = c.as_rational();
    }
    std::vector<PiScalar> rhs(basis.size());
    for (const auto& [m, c] : lap.terms()) rhs[index.at(m)] = c;
    std::vector<PiScalar> sol = solve_rational_system(std::move(M), std::move(rhs));
    for (size_t j = 0; j < basis.size(); ++j) R.add_term(basis[j], sol[j]);
    return R;
}

// Unique expansion p = sum_k H_{d-2k} |x|^(2k) with every H harmonic.
// Verified before returning: each layer is lap-annihilated and the layers
// reassemble to p exactly.
inline std::vector<std::pair<HPoly, int>> decompose(const HPoly& p) {
    std::vector<std::pair<HPoly, int>> out;
    HPoly cur = p;
    int k = 0;
    while (!cur.is_zero()) {
        HPoly H = cur;
        HPoly next(cur.n_vars(), cur.degree() >= 2 ? cur.degree() - 2 : 0);
        if (cur.degree() >= 2) {
            HPoly R = harmonic_defect(cur);
            if (!R.is_zero()) {
                H = poly_sub(cur, poly_mul(radial_power(cur.n_vars(), 1), R));
                next = R;
            }
        }
        internal_check(is_harmonic(H), "decomposition layer is not harmonic");
        if (!H.is_zero()) out.emplace_back(H, k);
        cur = next;
        ++k;
    }
    if (!p.is_zero()) {
        HPoly rebuilt(p.n_vars(), p.degree());
        for (const auto& [H, kk] : out)
            rebuilt = poly_add(rebuilt, poly_mul(H, radial_power(p.n_vars(), kk)));
        internal_check(rebuilt == p, "harmonic decomposition failed to reconstruct its input");
    }
    return out;
}

struct HarmonicComponent {
    int degree;
    HPoly poly;
};

// The expansion of a kernel in spherical harmonics: the even harmonic pieces
// P_{2j}, strictly increasing degrees, no constant term (zero mean on the
// sphere).
class HarmonicExpansion {
public:
    HarmonicExpansion(int n_vars, std::vector<HarmonicComponent> components)
        : n_(n_vars), components_(std::move(components)) {
        if (components_.empty()) throw validation_error("expansion needs at least one component");
        int prev = 0;
        for (const auto& c : components_) {
            if (c.degree <= prev) throw validation_error("component degrees must be strictly increasing");
            if (c.degree % 2 != 0) throw odd_component("odd-degree spherical harmonic component");
            if (c.poly.n_vars() != n_) throw dimension_mismatch("component dimension mismatch");
            if (c.poly.is_zero()) throw validation_error("zero component in expansion");
            if (c.poly.degree() != c.degree) throw degree_mismatch("component degree mismatch");
            if (!is_harmonic(c.poly)) throw validation_error("component is not harmonic");
            prev = c.degree;
        }
    }

    int n_vars() const { return n_; }
    int max_degree() const { return components_.back().degree; }
    const std::vector<HarmonicComponent>& components() const { return components_; }

private:
    int n_;
    std::vector<HarmonicComponent> components_;
};

// Reads a kernel from its polynomial numerator: num = |x|^(2N) * Omega(x).
// Rejects kernels with nonzero spherical mean and odd (non-even-operator)
// numerators.
inline HarmonicExpansion expansion_from_numerator(const HPoly& num) {
    if (num.is_zero()) throw validation_error("kernel numerator is identically zero");
    if (num.degree() % 2 != 0) throw odd_component("kernel numerator must have even degree");
    std::vector<HarmonicComponent> comps;
    for (const auto& [H, k] : decompose(num)) {
        int deg = num.degree() - 2 * k;
        if (deg == 0)
            throw cancellation_violation("kernel has nonzero mean on the sphere (constant component " +
                                         H.to_string() + ")");
        if (deg % 2 != 0) throw odd_component("kernel has an odd-degree harmonic component");
        comps.push_back({deg, H});
    }
    std::sort(comps.begin(), comps.end(),
              [](const HarmonicComponent& a, const HarmonicComponent& b) { return a.degree < b.degree; });
    return HarmonicExpansion(num.n_vars(), std::move(comps));
}

inline HPoly numerator_from_expansion(const HarmonicExpansion& ex) {
    int twoN = ex.max_degree();
    HPoly num(ex.n_vars(), twoN);
    for (const auto& c : ex.components())
        num = poly_add(num, poly_mul(c.poly, radial_power(ex.n_vars(), (twoN - c.degree) / 2)));
    return num;
}

// The three-dimensional kernel family xy * Q_{2j}(x,y,z) with
// Q_{2j} = sum_k c_k y^(2k) z^(2j-2k). Harmonicity of xy*Q_{2j} forces
//   c_{k+1} = -c_k (2j-2k)(2j-2k-1) / ((2k+2)(2k+3)),   c_0 = 1,
// and the result is lap-checked before returning.
inline HPoly example5_generate(int j) {
    if (j < 0) throw validation_error("example5_generate needs j >= 0");
    HPoly q(3, 2 * j);
    Rational c(1);
    for (int k = 0; k <= j; ++k) {
        q.add_term(Monomial({0, 2 * k, 2 * (j - k)}), PiScalar::from_rational(c));
        c *= Rational(-(2 * j - 2 * k) * (2 * j - 2 * k - 1), (2 * k + 2) * (2 * k + 3));
    }
    HPoly out = poly_mul(hp_term({1, 1, 0}, Rational(1)), q);
    internal_check(is_harmonic(out), "example-5 recurrence produced a non-harmonic polynomial");
    return out;
}

}  // namespace czkit
