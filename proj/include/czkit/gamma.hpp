#pragma once

#include "czkit/common.hpp"
#include "czkit/pi_scalar.hpp"
#include "czkit/rational.hpp"

namespace czkit {

// Gamma(m/2) for a positive integer m. Integer factorial for even m, a
// rational multiple of sqrt(pi) for odd m.
inline PiScalar gamma_half(long m) {
    if (m < 1) throw validation_error("gamma_half requires m >= 1");
    if (m % 2 == 0) return PiScalar::from_rational(Rational(factorial(m / 2 - 1)));
    long k = (m - 1) / 2;  // Gamma(k + 1/2)
    Rational c = Rational(factorial(2 * k)) / (rat_pow(Rational(4), k) * Rational(factorial(k)));
    return PiScalar::pi_half_pow(1) * c;
}

// Gamma at any integer or half-integer argument away from the poles. Negative
// half-integers come up in the odd-dimension fundamental-solution constants
// (Gamma(2 - n/2) with n odd); they are reached by the downward recurrence
// Gamma(x) = Gamma(x+1)/x from Gamma(1/2).
inline PiScalar gamma_rational(const Rational& a) {
    if (is_integer(a)) {
        if (a < 1) throw validation_error("gamma pole at non-positive integer " + rat_to_string(a));
        return PiScalar::from_rational(Rational(factorial(a.convert_to<long>() - 1)));
    }
    Rational twice = 2 * a;
    if (!is_integer(twice)) throw validation_error("gamma argument must be a half-integer: " + rat_to_string(a));
    long m = twice.convert_to<long>();  // odd
    if (m >= 1) return gamma_half(m);
    Rational c(1);
    Rational x(1, 2);
    while (x > a) {
        x -= 1;
        c /= x;
    }
    return PiScalar::pi_half_pow(1) * c;
}

// Volume of the unit ball: V_n = pi^(n/2) / Gamma(n/2 + 1).
inline PiScalar unit_ball_volume(int n) {
    if (n < 1) throw validation_error("dimension must be >= 1");
    PiScalar g = gamma_rational(Rational(n, 2) + 1);
    return PiScalar::pi_half_pow(n) * *g.try_invert();
}

// Total surface measure of S^(n-1): omega_n = n * V_n.
inline PiScalar sphere_surface_measure(int n) { return unit_ball_volume(n) * Rational(n); }

// The multiplier constant of the degree-j Riesz transform,
//   gamma_j = i^(-j) pi^(n/2) Gamma(j/2) / Gamma((n+j)/2),
// restricted to even j where i^(-j) collapses to the real sign (-1)^(j/2).
inline PiScalar gamma_j(int n, int j) {
    if (n < 2) throw validation_error("gamma_j requires dimension n >= 2");
    if (j < 2 || j % 2 != 0) throw validation_error("gamma_j requires even j >= 2 (even-operator setting)");
    int sign = (j / 2) % 2 == 0 ? 1 : -1;
    PiScalar num = gamma_half(j);
    PiScalar den = gamma_rational(Rational(n + j, 2));
    auto inv = den.try_invert();
    internal_check(inv.has_value(), "gamma value must be a monomial scalar");
    return PiScalar::pi_half_pow(n) * num * *inv * Rational(sign);
}

// gamma_{2j} / gamma_{2j0} as an exact rational; the pi factors cancel.
inline Rational gamma_ratio(int n, int j, int j0) {
    if (j < j0 || j0 < 1) throw validation_error("gamma_ratio requires j >= j0 >= 1");
    PiScalar q = gamma_j(n, 2 * j) * *gamma_j(n, 2 * j0).try_invert();
    return q.as_rational();
}

}  // namespace czkit
