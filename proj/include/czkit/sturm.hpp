#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "czkit/common.hpp"
#include "czkit/rational.hpp"

namespace czkit {

// Dense univariate polynomial over Q, highest stored coefficient nonzero.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly constant(const Rational& v) { return UPoly(std::vector<Rational>{v}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const { return c_.back(); }
    Rational coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : Rational(0);
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    double eval(double x) const {
        double acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + rat_to_double(c_[i]);
        return acc;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<Rational> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return UPoly(std::move(d));
    }

    friend UPoly operator-(const UPoly& p) {
        std::vector<Rational> d(p.c_);
        for (auto& v : d) v = -v;
        return UPoly(std::move(d));
    }

    friend UPoly operator*(const UPoly& p, const Rational& s) {
        if (s == 0) return UPoly();
        std::vector<Rational> d(p.c_);
        for (auto& v : d) v *= s;
        return UPoly(std::move(d));
    }

    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<Rational> d(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) d[i] -= b.c_[i];
        return UPoly(std::move(d));
    }

    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<Rational> d(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(d));
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline UPoly upoly_remainder(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw division_by_zero("polynomial remainder by zero");
    UPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rational f = r.leading() / b.leading();
        int shift = r.degree() - b.degree();
        std::vector<Rational> t(static_cast<size_t>(shift) + 1, Rational(0));
        t.back() = f;
        r = r - UPoly(std::move(t)) * b;
    }
    return r;
}

inline UPoly upoly_gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = upoly_remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (Rational(1) / a.leading());  // monic
}

inline UPoly square_free_part(const UPoly& p) {
    if (p.is_zero() || p.degree() < 1) return p;
    UPoly g = upoly_gcd(p, p.derivative());
    if (g.degree() < 1) return p;
    // exact division p / g
    UPoly q;
    {
        UPoly r = p;
        std::vector<Rational> qc(static_cast<size_t>(p.degree() - g.degree()) + 1, Rational(0));
        while (!r.is_zero() && r.degree() >= g.degree()) {
            Rational f = r.leading() / g.leading();
            int shift = r.degree() - g.degree();
            qc[static_cast<size_t>(shift)] = f;
            std::vector<Rational> t(static_cast<size_t>(shift) + 1, Rational(0));
            t.back() = f;
            r = r - UPoly(std::move(t)) * g;
        }
        internal_check(r.is_zero(), "square-free division left a remainder");
        q = UPoly(std::move(qc));
    }
    return q;
}

// Canonical Sturm chain; counts distinct real roots regardless of
// multiplicities.
inline std::vector<UPoly> sturm_chain(const UPoly& p) {
    std::vector<UPoly> chain;
    if (p.is_zero()) throw validation_error("Sturm chain of the zero polynomial");
    chain.push_back(p);
    UPoly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        UPoly r = upoly_remainder(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

namespace detail {

inline int sign_variations(const std::vector<int>& signs) {
    int var = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

inline int variations_at(const std::vector<UPoly>& chain, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) signs.push_back(rat_sign(q.eval(x)));
    return sign_variations(signs);
}

inline int variations_at_infinity(const std::vector<UPoly>& chain, bool positive) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) {
        int s = rat_sign(q.leading());
        if (!positive && q.degree() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return sign_variations(signs);
}

}  // namespace detail

inline int count_distinct_real_roots(const UPoly& p) {
    if (p.is_zero()) throw validation_error("root count of the zero polynomial");
    if (p.degree() == 0) return 0;
    auto chain = sturm_chain(p);
    return detail::variations_at_infinity(chain, false) - detail::variations_at_infinity(chain, true);
}

// Number of distinct real roots in (a, b].
inline int count_roots_in(const std::vector<UPoly>& chain, const Rational& a, const Rational& b) {
    return detail::variations_at(chain, a) - detail::variations_at(chain, b);
}

// All real roots lie strictly inside (-B, B).
inline Rational cauchy_root_bound(const UPoly& p) {
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, rat_abs(p.coeff(i) / p.leading()));
    return m + 1;
}

struct RootInterval {
    Rational lo, hi;           // one distinct real root in (lo, hi]
    std::optional<Rational> exact;  // set when the root was identified exactly
};

// Isolating intervals for all distinct real roots, ordered increasingly.
inline std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
    std::vector<RootInterval> out;
    if (p.is_zero() || p.degree() == 0) return out;
    auto chain = sturm_chain(p);
    Rational bound = cauchy_root_bound(p);
    struct Seg {
        Rational lo, hi;
        int count;
    };
    std::vector<Seg> stack{{-bound, bound, count_roots_in(chain, -bound, bound)}};
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 0) continue;
        if (s.count == 1) {
            out.push_back({s.lo, s.hi, std::nullopt});
            continue;
        }
        Rational mid = (s.lo + s.hi) / 2;
        int left = count_roots_in(chain, s.lo, mid);
        // Process right segment after left so results come out ordered.
        stack.push_back({mid, s.hi, s.count - left});
        stack.push_back({s.lo, mid, left});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    // Mark intervals whose right endpoint is itself the root.
    for (auto& iv : out)
        if (p.eval(iv.hi) == 0) iv.exact = iv.hi;
    return out;
}

// Shrinks an isolating interval until hi - lo <= width (keeps the invariant
// that the root lies in (lo, hi]).
inline void refine_root(const std::vector<UPoly>& chain, RootInterval& iv, const Rational& width) {
    if (iv.exact) {
        iv.lo = *iv.exact - width / 2;
        iv.hi = *iv.exact;
        return;
    }
    while (iv.hi - iv.lo > width) {
        Rational mid = (iv.lo + iv.hi) / 2;
        if (chain[0].eval(mid) == 0) {
            iv.exact = mid;
            iv.lo = mid - width / 2;
            iv.hi = mid;
            return;
        }
        if (count_roots_in(chain, iv.lo, mid) == 1)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
}

namespace detail {

inline std::optional<std::vector<long long>> small_divisors(const BigInt& value) {
    BigInt v = value < 0 ? BigInt(-value) : value;
    if (v == 0 || v > BigInt(1) << 62) return std::nullopt;
    long long x = v.convert_to<long long>();
    std::vector<long long> divs;
    for (long long d = 1; d * d <= x; ++d) {
        if (x % d == 0) {
            divs.push_back(d);
            divs.push_back(x / d);
        }
        if (divs.size() > 4096) return std::nullopt;
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    return divs;
}

}  // namespace detail

struct RationalRootResult {
    std::vector<Rational> roots;  // exact rational roots found, ascending
    bool complete = true;         // false when divisor enumeration was abandoned
};

// Exact rational roots by the rational-root test on the primitive integer
// model; gives up (complete = false) when the end coefficients are too
// composite to enumerate cheaply.
inline RationalRootResult rational_roots(const UPoly& p) {
    RationalRootResult res;
    if (p.is_zero() || p.degree() == 0) return res;
    BigInt lcm_den = 1;
    for (const auto& c : p.coeffs()) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
    std::vector<BigInt> a(p.coeffs().size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = numerator(p.coeffs()[i] * Rational(lcm_den));
    size_t low = 0;
    while (low < a.size() && a[low] == 0) ++low;
    if (low > 0) res.roots.push_back(Rational(0));
    if (low + 1 >= a.size()) return res;
    auto pdivs = detail::small_divisors(a[low]);
    auto qdivs = detail::small_divisors(a.back());
    if (!pdivs || !qdivs) {
        res.complete = false;
        return res;
    }
    for (long long pd : *pdivs) {
        for (long long qd : *qdivs) {
            for (int sign : {1, -1}) {
                Rational cand(sign * pd, qd);
                if (p.eval(cand) == 0) res.roots.push_back(cand);
            }
        }
    }
    std::sort(res.roots.begin(), res.roots.end());
    res.roots.erase(std::unique(res.roots.begin(), res.roots.end()), res.roots.end());
    return res;
}

}  // namespace czkit
