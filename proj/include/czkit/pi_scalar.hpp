#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "czkit/common.hpp"
#include "czkit/rational.hpp"

namespace czkit {

// One term of the scalar tower: coeff * 2^(two2/2) * pi^(pi2/2).
// Canonical form keeps two2 in {0, 1}; whole powers of 2 are folded into the
// rational coefficient. pi2 is unrestricted (the tower is Laurent in sqrt(pi)).
struct ScalarKey {
    int pi2 = 0;
    int two2 = 0;
    auto operator<=>(const ScalarKey&) const = default;
};

// Exact element of the ring Q[sqrt2][pi^(1/2), pi^(-1/2)].
//
// Everything closed-form in this library lives here: gamma values at
// half-integers, the gamma_j multiplier constants, ball volumes, and the
// fundamental-solution constants. Equality is decidable term by term, which is
// what makes the dual-path identity checks meaningful. The sqrt2 component
// only ever shows up in odd-dimension work (through 2^(n/2) factors); all
// planar and even-dimension values stay in the pure pi part.
class PiScalar {
public:
    PiScalar() = default;

    static PiScalar zero() { return PiScalar(); }
    static PiScalar one() { return from_rational(Rational(1)); }

    static PiScalar from_rational(const Rational& c) {
        PiScalar s;
        s.accumulate(0, 0, c);
        return s;
    }

    static PiScalar from_int(long v) { return from_rational(Rational(v)); }

    // pi^(k/2)
    static PiScalar pi_half_pow(int k) {
        PiScalar s;
        s.accumulate(k, 0, Rational(1));
        return s;
    }

    static PiScalar sqrt_two() {
        PiScalar s;
        s.accumulate(0, 1, Rational(1));
        return s;
    }

    // 2^(k/2)
    static PiScalar two_half_pow(int k) {
        PiScalar s;
        s.accumulate(0, k, Rational(1));
        return s;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_rational() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && terms_.begin()->first == ScalarKey{0, 0};
    }

    Rational as_rational() const {
        if (terms_.empty()) return Rational(0);
        if (!is_rational()) throw validation_error("scalar is not rational: " + to_string());
        return terms_.begin()->second;
    }

    bool is_single_term() const { return terms_.size() == 1; }

    // The exponent pair of a single-term scalar.
    ScalarKey single_key() const {
        if (!is_single_term()) throw validation_error("scalar is not a monomial");
        return terms_.begin()->first;
    }

    Rational single_coeff() const {
        if (!is_single_term()) throw validation_error("scalar is not a monomial");
        return terms_.begin()->second;
    }

    const std::map<ScalarKey, Rational>& terms() const { return terms_; }

    friend bool operator==(const PiScalar& a, const PiScalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const PiScalar& a, const PiScalar& b) { return !(a == b); }

    PiScalar& operator+=(const PiScalar& o) {
        for (const auto& [k, c] : o.terms_) accumulate(k.pi2, k.two2, c);
        return *this;
    }
    PiScalar& operator-=(const PiScalar& o) {
        for (const auto& [k, c] : o.terms_) accumulate(k.pi2, k.two2, -c);
        return *this;
    }
    friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
    friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
    friend PiScalar operator-(const PiScalar& a) {
        PiScalar r;
        for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
        return r;
    }

    friend PiScalar operator*(const PiScalar& a, const PiScalar& b) {
        PiScalar r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.accumulate(ka.pi2 + kb.pi2, ka.two2 + kb.two2, ca * cb);
        return r;
    }
    PiScalar& operator*=(const PiScalar& o) { return *this = *this * o; }

    PiScalar& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, v] : terms_) v *= c;
        return *this;
    }
    friend PiScalar operator*(PiScalar a, const Rational& c) { return a *= c; }
    friend PiScalar operator*(const Rational& c, PiScalar a) { return a *= c; }

    // Reciprocal. Exists in the tower exactly for nonzero monomials; 1 + pi
    // has no inverse here (the tower is a ring, not a field).
    std::optional<PiScalar> try_invert() const {
        if (is_zero()) throw division_by_zero("inverse of zero scalar");
        if (terms_.size() != 1) return std::nullopt;
        const auto& [k, c] = *terms_.begin();
        PiScalar r;
        r.accumulate(-k.pi2, -k.two2, Rational(1) / c);
        return r;
    }

    // Exact ring division: finds q with a = b*q when such q exists in the
    // tower. Viewing scalars as Laurent polynomials in sqrt(pi) over the field
    // Q(sqrt2), this is univariate exact division.
    static std::optional<PiScalar> try_exact_divide(const PiScalar& a, const PiScalar& b);

    double to_double() const {
        double acc = 0.0;
        for (const auto& [k, c] : terms_)
            acc += rat_to_double(c) * std::pow(2.0, k.two2 * 0.5) * std::pow(M_PI, k.pi2 * 0.5);
        return acc;
    }

    // Rational bound with |value| <= bound, via interval enclosures of pi.
    Rational abs_upper_bound() const;

    std::string to_string() const;
    static PiScalar parse(const std::string& text);

private:
    void accumulate(int pi2, int two2, Rational c) {
        if (c == 0) return;
        // Fold whole powers of 2 into the coefficient.
        int fold = (two2 >= 0) ? two2 / 2 : -((-two2 + 1) / 2);
        c *= rat_pow(Rational(2), fold);
        two2 -= 2 * fold;
        ScalarKey key{pi2, two2};
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<ScalarKey, Rational> terms_;
};

namespace detail {

// Element of Q(sqrt2).
struct QSqrt2 {
    Rational a, b;  // a + b*sqrt2
    bool is_zero() const { return a == 0 && b == 0; }
    friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) { return {x.a + y.a, x.b + y.b}; }
    friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) { return {x.a - y.a, x.b - y.b}; }
    friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
        return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    QSqrt2 inverse() const {
        Rational norm = a * a - 2 * b * b;
        if (norm == 0) throw division_by_zero("inverse of zero in Q(sqrt2)");
        return {a / norm, -b / norm};
    }
};

}  // namespace detail

inline std::optional<PiScalar> PiScalar::try_exact_divide(const PiScalar& a, const PiScalar& b) {
    if (b.is_zero()) throw division_by_zero("exact division by zero scalar");
    if (a.is_zero()) return PiScalar::zero();
    if (b.terms_.size() == 1) return a * *b.try_invert();

    // Collect both operands as dense Laurent polynomials in x = sqrt(pi).
    auto collect = [](const PiScalar& s, int& lo, int& hi) {
        lo = s.terms_.begin()->first.pi2;
        hi = s.terms_.rbegin()->first.pi2;
        std::vector<detail::QSqrt2> c(static_cast<size_t>(hi - lo + 1), detail::QSqrt2{Rational(0), Rational(0)});
        for (const auto& [k, v] : s.terms_) {
            auto& slot = c[static_cast<size_t>(k.pi2 - lo)];
            if (k.two2 == 0)
                slot.a += v;
            else
                slot.b += v;
        }
        return c;
    };
    int alo, ahi, blo, bhi;
    std::vector<detail::QSqrt2> ac = collect(a, alo, ahi);
    std::vector<detail::QSqrt2> bc = collect(b, blo, bhi);
    int qdeg = static_cast<int>(ac.size()) - static_cast<int>(bc.size());
    if (qdeg < 0) return std::nullopt;

    std::vector<detail::QSqrt2> q(static_cast<size_t>(qdeg) + 1, detail::QSqrt2{Rational(0), Rational(0)});
    detail::QSqrt2 lead_inv = bc.back().inverse();
    std::vector<detail::QSqrt2> rem = ac;
    for (int d = qdeg; d >= 0; --d) {
        detail::QSqrt2 top = rem[static_cast<size_t>(d) + bc.size() - 1];
        if (top.is_zero()) continue;
        detail::QSqrt2 f = top * lead_inv;
        q[static_cast<size_t>(d)] = f;
        for (size_t i = 0; i < bc.size(); ++i) {
            auto& slot = rem[static_cast<size_t>(d) + i];
            slot = slot - f * bc[i];
        }
    }
    for (const auto& r : rem)
        if (!r.is_zero()) return std::nullopt;

    PiScalar out;
    for (int d = 0; d <= qdeg; ++d) {
        const auto& f = q[static_cast<size_t>(d)];
        int pi2 = d + alo - blo;
        out.accumulate(pi2, 0, f.a);
        out.accumulate(pi2, 1, f.b);
    }
    return out;
}

inline Rational PiScalar::abs_upper_bound() const {
    // pi in (31415/10000, 31416/10000), sqrt(pi) in (177245/100000, 177246/100000).
    static const Rational PI_UB(31416, 10000), PI_LB(31415, 10000);
    static const Rational SPI_UB(177246, 100000), SPI_LB(177245, 100000);
    static const Rational SQRT2_UB(141422, 100000);
    Rational acc(0);
    for (const auto& [k, c] : terms_) {
        Rational f = rat_abs(c);
        int p = k.pi2;
        if (p >= 0) {
            f *= rat_pow(PI_UB, p / 2);
            if (p % 2) f *= SPI_UB;
        } else {
            int q = -p;
            Rational lb = rat_pow(PI_LB, q / 2);
            if (q % 2) lb *= SPI_LB;
            f /= lb;
        }
        if (k.two2 == 1) f *= SQRT2_UB;
        acc += f;
    }
    return acc;
}

inline std::string PiScalar::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool symbolic = (k.pi2 != 0 || k.two2 != 0);
        if (!symbolic) {
            os << rat_to_string(c);
            continue;
        }
        os << '(' << rat_to_string(c) << ')';
        if (k.two2 == 1) os << "*sqrt2";
        if (k.pi2 != 0) {
            os << "*pi";
            if (k.pi2 != 2) {
                if (k.pi2 % 2 == 0)
                    os << '^' << (k.pi2 / 2);
                else
                    os << "^(" << k.pi2 << "/2)";
            }
        }
    }
    return os.str();
}

namespace detail {

struct ScalarLexer {
    std::string s;
    size_t pos = 0;
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }
    bool eat_word(const char* w) {
        skip_ws();
        size_t len = std::string(w).size();
        if (s.compare(pos, len, w) == 0) {
            pos += len;
            return true;
        }
        return false;
    }
    BigInt parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) throw validation_error("expected integer in scalar literal: '" + s + "'");
        return BigInt(s.substr(start, pos - start));
    }
    Rational parse_rational() {
        BigInt num = parse_int();
        if (eat('/')) return make_rational(num, parse_int());
        return Rational(num);
    }
};

}  // namespace detail

// Parses the textual scalar form. Grammar (whitespace-insensitive):
//   sum    := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := rational | '(' rational ')' | 'sqrt2' | 'pi' ['^' exponent]
//   exponent := int | '(' int ')' | '(' int '/' '2' ')'
// where pi without exponent means pi^1 and rationals are "p" or "p/q".
inline PiScalar PiScalar::parse(const std::string& text) {
    detail::ScalarLexer lx{text};
    PiScalar total;
    bool negate = lx.eat('-');
    if (!negate) lx.eat('+');
    while (true) {
        Rational coeff = negate ? Rational(-1) : Rational(1);
        int pi2 = 0, two2 = 0;
        bool expect_factor = true;
        while (expect_factor) {
            if (lx.eat_word("sqrt2")) {
                two2 += 1;
            } else if (lx.eat_word("pi")) {
                int e2 = 2;
                if (lx.eat('^')) {
                    if (lx.eat('(')) {
                        BigInt k = lx.parse_int();
                        if (lx.eat('/')) {
                            BigInt den = lx.parse_int();
                            if (den != 2) throw validation_error("pi exponent denominator must be 2");
                            e2 = static_cast<int>(k);
                        } else {
                            e2 = 2 * static_cast<int>(k);
                        }
                        if (!lx.eat(')')) throw validation_error("unclosed pi exponent");
                    } else {
                        e2 = 2 * static_cast<int>(lx.parse_int());
                    }
                }
                pi2 += e2;
            } else if (lx.eat('(')) {
                coeff *= lx.parse_rational();
                if (!lx.eat(')')) throw validation_error("unclosed parenthesis in scalar");
            } else {
                coeff *= lx.parse_rational();
            }
            expect_factor = lx.eat('*');
        }
        PiScalar term;
        term.accumulate(pi2, two2, coeff);
        total += term;
        if (lx.eat('+'))
            negate = false;
        else if (lx.eat('-'))
            negate = true;
        else
            break;
    }
    if (!lx.at_end()) throw validation_error("trailing characters in scalar literal: '" + text + "'");
    return total;
}

}  // namespace czkit
