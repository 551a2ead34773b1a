#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <utility>

#include "bianchi/numeric.hpp"

namespace bianchi {

/// Exact element of the biquadratic field Q(sqrt(d1), sqrt(d2)) with
/// d1 >= 1 square-free and d2 < 0 square-free.
///
/// Coordinates are taken in the basis {1, r1, r2, r3} with
///   r1 = sqrt(d1),  r2 = sqrt(d2),  r3 = r1*r2 = s*sqrt(d3),
/// where d3 is the square-free part of d1*d2 and s = sqrt(d1*d2/d3).
/// Folding s into the basis keeps every coordinate rational and makes
/// multiplication closed even when d1*d2 is not square-free.
///
/// Branch convention: sqrt(d1) > 0 and Im sqrt(d2) > 0, so r2 and r3 are the
/// imaginary basis elements and complex conjugation negates exactly those two
/// coordinates.
///
/// Degenerate tower d1 = 1 is allowed; the r1 and r3 coordinates are folded
/// into the rational and r2 coordinates on construction, so they stay zero.
///
/// Values are immutable; all operations are pure.
class BiquadraticNumber {
public:
    BiquadraticNumber();  // zero over Q(sqrt(1), sqrt(-1)), placeholder field
    BiquadraticNumber(long long d1, long long d2);  // zero
    BiquadraticNumber(long long d1, long long d2,
                      Rational c0, Rational c1, Rational c2, Rational c3);

    static BiquadraticNumber from_rational(long long d1, long long d2, const Rational& v);

    /// sqrt(radicand) expressed in Q(sqrt(d1), sqrt(d2)).
    /// The radicand need not be square-free; throws std::domain_error when the
    /// square root does not lie in the field.
    static BiquadraticNumber sqrt_of(long long d1, long long d2, long long radicand);

    long long d1() const { return d1_; }
    long long d2() const { return d2_; }
    long long d3() const { return d3_; }
    long long s() const { return s_; }
    const Rational& coeff(int i) const { return c_[static_cast<size_t>(i)]; }

    bool is_zero() const;
    bool is_rational() const;
    std::optional<Rational> as_rational() const;

    /// Decompose as u + v*sqrt(-D) when the value lies in Q(sqrt(-D));
    /// nullopt otherwise. Requires sqrt(-D) to be expressible in this field.
    std::optional<std::pair<Rational, Rational>> as_quadratic(long long D) const;

    BiquadraticNumber operator-() const;
    BiquadraticNumber operator+(const BiquadraticNumber& o) const;
    BiquadraticNumber operator-(const BiquadraticNumber& o) const;
    BiquadraticNumber operator*(const BiquadraticNumber& o) const;

    /// Multiplicative inverse via the product of the three nontrivial Galois
    /// conjugates; throws std::domain_error on zero.
    BiquadraticNumber inverse() const;

    BiquadraticNumber complex_conj() const;

    /// Galois conjugate: flip1 negates r1 (and r3), flip2 negates r2 (and r3).
    BiquadraticNumber galois(bool flip1, bool flip2) const;

    /// Floating-point shadow, for display and sanity checks only.
    std::complex<double> embed() const;

    bool operator==(const BiquadraticNumber& o) const;
    bool operator!=(const BiquadraticNumber& o) const { return !(*this == o); }

    std::string str() const;

private:
    void check_same_field(const BiquadraticNumber& o) const;

    long long d1_, d2_, d3_, s_;
    std::array<Rational, 4> c_;
};

BiquadraticNumber operator*(const Rational& r, const BiquadraticNumber& x);

/// 2x2 matrix over one biquadratic field; all entries share (d1, d2).
struct Matrix2 {
    BiquadraticNumber a, b, c, d;

    Matrix2(BiquadraticNumber a_, BiquadraticNumber b_,
            BiquadraticNumber c_, BiquadraticNumber d_);

    static Matrix2 identity(long long d1, long long d2);

    Matrix2 operator*(const Matrix2& o) const;
    BiquadraticNumber det() const;
    BiquadraticNumber trace() const;
    Matrix2 complex_conj() const;

    /// Inverse by adjugate over the exact determinant; throws on det = 0.
    Matrix2 inverse() const;

    bool operator==(const Matrix2& o) const;

    std::string str() const;
};

}  // namespace bianchi
