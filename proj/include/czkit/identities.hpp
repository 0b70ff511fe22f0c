#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "czkit/common.hpp"
#include "czkit/gamma.hpp"
#include "czkit/pi_scalar.hpp"
#include "czkit/rational.hpp"

namespace czkit {

// Outcome of one identity instance; both sides computed independently and
// compared exactly in the scalar tower.
struct IdentityReport {
    std::string identity;
    std::string params;
    PiScalar lhs;
    PiScalar rhs;
    bool equal = false;
    bool skipped = false;  // tuple outside the identity's admissible range

    static IdentityReport of(std::string name, std::string params, PiScalar l, PiScalar r) {
        IdentityReport rep;
        rep.identity = std::move(name);
        rep.params = std::move(params);
        rep.equal = (l == r);
        rep.lhs = std::move(l);
        rep.rhs = std::move(r);
        return rep;
    }
    static IdentityReport skip(std::string name, std::string params) {
        IdentityReport rep;
        rep.identity = std::move(name);
        rep.params = std::move(params);
        rep.equal = true;
        rep.skipped = true;
        return rep;
    }
};

namespace detail {

inline std::string tuple_str(std::initializer_list<long> vals) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (long v : vals) {
        if (!first) os << ',';
        first = false;
        os << v;
    }
    os << ')';
    return os.str();
}

}  // namespace detail

// sum_{i=L}^{2N-1} (N-n/2)...(N-n/2-i+1) (-1)^i/i! binom(i,L)
//   = (-1)^L binom(N-n/2, L) binom(n/2+N-1, 2N-1-L)
inline IdentityReport verify_eq71(int n, int N, int L) {
    if (L < 0 || L > 2 * N - 1) throw index_out_of_range("eq71 needs 0 <= L <= 2N-1");
    Rational a = Rational(N) - Rational(n, 2);
    Rational lhs(0);
    for (int i = L; i <= 2 * N - 1; ++i) {
        Rational sign(i % 2 == 0 ? 1 : -1);
        lhs += falling_factorial(a, i) * sign / Rational(factorial(i)) * binomial(i, L);
    }
    Rational sign(L % 2 == 0 ? 1 : -1);
    Rational rhs = sign * binomial(a, L) * binomial(Rational(n, 2) + N - 1, 2 * N - 1 - L);
    return IdentityReport::of("eq71", detail::tuple_str({n, N, L}), PiScalar::from_rational(lhs),
                              PiScalar::from_rational(rhs));
}

// sum_{i=L}^{2N-1} (i-N+n/2-1)! binom(i,L)/i!
//   = (L-N+n/2-1)!/L! binom(N+n/2-1, 2N-1-L)
// Factorials of half-integers are Gamma values; for even n the tuple is
// admissible only when every factorial argument is non-negative, and
// inadmissible tuples are reported as skipped.
inline IdentityReport verify_eq72(int n, int N, int L) {
    if (L < 0 || L > 2 * N - 1) throw index_out_of_range("eq72 needs 0 <= L <= 2N-1");
    std::string params = detail::tuple_str({n, N, L});
    Rational off = Rational(n, 2) - N - 1;  // factorial argument is i + off
    if (n % 2 == 0 && Rational(L) + off < 0) return IdentityReport::skip("eq72", params);
    PiScalar lhs;
    for (int i = L; i <= 2 * N - 1; ++i)
        lhs += gamma_rational(Rational(i) + off + 1) * (binomial(i, L) / Rational(factorial(i)));
    PiScalar rhs = gamma_rational(Rational(L) + off + 1) *
                   (binomial(Rational(n, 2) + N - 1, 2 * N - 1 - L) / Rational(factorial(L)));
    return IdentityReport::of("eq72", params, std::move(lhs), std::move(rhs));
}

// Lemma 14: for 1 <= j <= N-1,
// sum_{i=0}^{N-1-j} (-1)^i binom(i+N+j-1+n/2, N-j) binom(n/2+2j+i-1, i)
//                   / ((i+j+n/2)(N-i-j-1)! prod_{k=0}^{i}(n/2+2j+i-k))
//   = binom(N-1, j-1) Gamma(j+n/2) / (j Gamma(N+n/2))
inline IdentityReport verify_lemma14(int n, int N, int j) {
    if (j < 1 || j > N - 1) throw index_out_of_range("lemma14 needs 1 <= j <= N-1");
    Rational half_n(n, 2);
    Rational lhs(0);
    for (int i = 0; i <= N - 1 - j; ++i) {
        Rational prod(1);
        for (int k = 0; k <= i; ++k) prod *= half_n + 2 * j + i - k;
        Rational sign(i % 2 == 0 ? 1 : -1);
        lhs += sign * binomial(half_n + i + N + j - 1, N - j) * binomial(half_n + 2 * j + i - 1, i) /
               ((Rational(i + j) + half_n) * Rational(factorial(N - i - j - 1)) * prod);
    }
    PiScalar gr = gamma_rational(half_n + j) * *gamma_rational(half_n + N).try_invert();
    Rational rhs = binomial(N - 1, j - 1) * gr.as_rational() / Rational(j);
    return IdentityReport::of("lemma14", detail::tuple_str({n, N, j}), PiScalar::from_rational(lhs),
                              PiScalar::from_rational(rhs));
}

// Lemma 15: for N-1 >= L >= j >= k >= 0,
// sum_{s=j}^{N-1} (-1)^s binom(n/2+N+s-1, N-k) binom(n/2+k+s-1, s-j)
//                 / ((s+n/2)(N-s-1)! Gamma(n/2+s+L+1))
//   = (-1)^j (N-L-1)!/(N-k)! binom(N-1, L) / (k! Gamma(n/2+N) binom(n/2+k+j-1, k))
inline IdentityReport verify_lemma15(int n, int N, int L, int j, int k) {
    if (!(N - 1 >= L && L >= j && j >= k && k >= 0))
        throw index_out_of_range("lemma15 needs N-1 >= L >= j >= k >= 0");
    Rational half_n(n, 2);
    PiScalar lhs;
    for (int s = j; s <= N - 1; ++s) {
        Rational sign(s % 2 == 0 ? 1 : -1);
        Rational factor = sign * binomial(half_n + N + s - 1, N - k) * binomial(half_n + k + s - 1, s - j) /
                          ((Rational(s) + half_n) * Rational(factorial(N - s - 1)));
        lhs += *gamma_rational(half_n + s + L + 1).try_invert() * factor;
    }
    Rational sign(j % 2 == 0 ? 1 : -1);
    Rational factor = sign * Rational(factorial(N - L - 1)) / Rational(factorial(N - k)) * binomial(N - 1, L) /
                      (Rational(factorial(k)) * binomial(half_n + k + j - 1, k));
    PiScalar rhs = *gamma_rational(half_n + N).try_invert() * factor;
    return IdentityReport::of("lemma15", detail::tuple_str({n, N, L, j, k}), std::move(lhs), std::move(rhs));
}

// GKP (5.28): sum_k binom(m-r+s, k) binom(nn+r-s, nn-k) binom(r+k, m+nn)
//   = binom(r, m) binom(s, nn), for non-negative integers m, nn and any
// rational r, s.
inline IdentityReport verify_triple_binomial(int m, int nn, const Rational& r, const Rational& s) {
    if (m < 0 || nn < 0) throw index_out_of_range("triple binomial needs m, nn >= 0");
    Rational lhs(0);
    for (int k = 0; k <= nn; ++k)
        lhs += binomial(Rational(m) - r + s, k) * binomial(Rational(nn) + r - s, nn - k) *
               binomial(r + k, m + nn);
    Rational rhs = binomial(r, m) * binomial(s, nn);
    std::ostringstream os;
    os << '(' << m << ',' << nn << ',' << rat_to_string(r) << ',' << rat_to_string(s) << ')';
    return IdentityReport::of("triple_binomial", os.str(), PiScalar::from_rational(lhs),
                              PiScalar::from_rational(rhs));
}

// --- the D(j, m) computation from the Lemma 15 proof ----------------------

// D(j,m) = sum_{i=0}^{N-1-j} (-1)^i binom(n/2+N+i+j-1, N-j-m-1)
//          / (i! (N-i-j-1)! (n/2+i+j))
inline Rational d_sum(int n, int N, int j, int m) {
    Rational half_n(n, 2);
    Rational acc(0);
    for (int i = 0; i <= N - 1 - j; ++i) {
        Rational sign(i % 2 == 0 ? 1 : -1);
        acc += sign * binomial(half_n + N + i + j - 1, N - j - m - 1) /
               (Rational(factorial(i)) * Rational(factorial(N - i - j - 1)) * (half_n + i + j));
    }
    return acc;
}

// The (5.24)-style vanishing: the first inner sum in the D decomposition is
// zero for every m >= 1.
inline IdentityReport verify_d_vanishing(int n, int N, int j, int m) {
    if (m < 1 || j < 0 || j + m > N - 1) throw index_out_of_range("d_vanishing needs m >= 1, j+m <= N-1");
    Rational half_n(n, 2);
    Rational acc(0);
    for (int i = 0; i <= N - 1 - j; ++i) {
        Rational sign(i % 2 == 0 ? 1 : -1);
        acc += sign * binomial(half_n + N + i + j - 1, N - j - m - 1) /
               (Rational(factorial(i)) * Rational(factorial(N - i - j - 1)));
    }
    return IdentityReport::of("d_vanishing", detail::tuple_str({n, N, j, m}), PiScalar::from_rational(acc),
                              PiScalar::zero());
}

// D(j,m) = D(j+m, 0) / ((n/2+j)(n/2+j+1)...(n/2+j+m-1)), and
// D(L,0) = Gamma(n/2+L)/Gamma(n/2+N) binom(N-1, L).
inline IdentityReport verify_d_recursion(int n, int N, int j, int m) {
    if (j < 0 || m < 0 || j + m > N - 1) throw index_out_of_range("d_recursion needs j, m >= 0, j+m <= N-1");
    Rational half_n(n, 2);
    Rational lhs = d_sum(n, N, j, m);
    Rational prod(1);
    for (int t = 0; t < m; ++t) prod *= half_n + j + t;
    Rational rhs = d_sum(n, N, j + m, 0) / prod;
    // Also pin D(L,0) against its closed form.
    int L = j + m;
    PiScalar gr = gamma_rational(half_n + L) * *gamma_rational(half_n + N).try_invert();
    Rational closed = gr.as_rational() * binomial(N - 1, L);
    if (d_sum(n, N, L, 0) != closed)
        return IdentityReport::of("d_recursion", detail::tuple_str({n, N, j, m}),
                                  PiScalar::from_rational(d_sum(n, N, L, 0)), PiScalar::from_rational(closed));
    return IdentityReport::of("d_recursion", detail::tuple_str({n, N, j, m}), PiScalar::from_rational(lhs),
                              PiScalar::from_rational(rhs));
}

// --- full sweep -------------------------------------------------------------

struct SweepRanges {
    std::vector<int> dims{2, 3, 4, 5};
    int max_N = 8;
    std::vector<Rational> binom_r{Rational(5), Rational(7, 2), Rational(-3, 2), Rational(13, 2)};
    std::vector<Rational> binom_s{Rational(3), Rational(3, 2), Rational(-1, 2), Rational(4)};
    int binom_max_mn = 3;
};

struct SweepResult {
    long total = 0;
    long skipped = 0;
    std::vector<IdentityReport> failures;
};

inline SweepResult run_suite(const SweepRanges& ranges = {}) {
    SweepResult res;
    auto take = [&res](IdentityReport rep) {
        ++res.total;
        if (rep.skipped) ++res.skipped;
        if (!rep.equal) res.failures.push_back(std::move(rep));
    };
    for (int n : ranges.dims) {
        for (int N = 1; N <= ranges.max_N; ++N) {
            for (int L = 0; L <= 2 * N - 1; ++L) {
                take(verify_eq71(n, N, L));
                take(verify_eq72(n, N, L));
            }
            for (int j = 1; j <= N - 1; ++j) take(verify_lemma14(n, N, j));
            for (int L = 0; L <= N - 1; ++L)
                for (int j = 0; j <= L; ++j)
                    for (int k = 0; k <= j; ++k) take(verify_lemma15(n, N, L, j, k));
            for (int j = 0; j <= N - 1; ++j)
                for (int m = 0; j + m <= N - 1; ++m) {
                    take(verify_d_recursion(n, N, j, m));
                    if (m >= 1) take(verify_d_vanishing(n, N, j, m));
                }
        }
    }
    for (int m = 0; m <= ranges.binom_max_mn; ++m)
        for (int nn = 0; nn <= ranges.binom_max_mn; ++nn)
            for (const auto& r : ranges.binom_r)
                for (const auto& s : ranges.binom_s) take(verify_triple_binomial(m, nn, r, s));
    return res;
}

}  // namespace czkit
