#include "bianchi/biquadratic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bianchi {

namespace {

void validate_field(long long d1, long long d2) {
    if (d1 < 1 || !is_squarefree(d1))
        throw std::invalid_argument("BiquadraticNumber: d1 must be a positive square-free integer");
    if (d2 >= 0 || !is_squarefree(d2))
        throw std::invalid_argument("BiquadraticNumber: d2 must be a negative square-free integer");
}

}  // namespace

BiquadraticNumber::BiquadraticNumber() : BiquadraticNumber(1, -1) {}

BiquadraticNumber::BiquadraticNumber(long long d1, long long d2)
    : BiquadraticNumber(d1, d2, 0, 0, 0, 0) {}

BiquadraticNumber::BiquadraticNumber(long long d1, long long d2,
                                     Rational c0, Rational c1, Rational c2, Rational c3)
    : d1_(d1), d2_(d2) {
    validate_field(d1, d2);
    d3_ = squarefree_part(d1 * d2);
    s_ = isqrt_ll(d1 * d2 / d3_);
    if (d1_ == 1) {
        // r1 = 1 and r3 = r2; keep the degenerate coordinates at zero.
        c0 += c1;
        c2 += c3;
        c1 = 0;
        c3 = 0;
    }
    c_ = {std::move(c0), std::move(c1), std::move(c2), std::move(c3)};
}

BiquadraticNumber BiquadraticNumber::from_rational(long long d1, long long d2, const Rational& v) {
    return BiquadraticNumber(d1, d2, v, 0, 0, 0);
}

BiquadraticNumber BiquadraticNumber::sqrt_of(long long d1, long long d2, long long radicand) {
    if (radicand == 0) return BiquadraticNumber(d1, d2);
    BiquadraticNumber probe(d1, d2);
    long long sf = squarefree_part(radicand);
    Rational t = isqrt_ll(radicand / sf);
    if (sf == 1) return from_rational(d1, d2, t);
    if (sf == d1) return BiquadraticNumber(d1, d2, 0, t, 0, 0);
    if (sf == d2) return BiquadraticNumber(d1, d2, 0, 0, t, 0);
    if (sf == probe.d3()) return BiquadraticNumber(d1, d2, 0, 0, 0, t / probe.s());
    throw std::domain_error("sqrt_of: radicand has no square root in Q(sqrt(d1), sqrt(d2))");
}

bool BiquadraticNumber::is_zero() const {
    return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

bool BiquadraticNumber::is_rational() const {
    return c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

std::optional<Rational> BiquadraticNumber::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return c_[0];
}

std::optional<std::pair<Rational, Rational>> BiquadraticNumber::as_quadratic(long long D) const {
    if (D <= 0 || !is_squarefree(D))
        throw std::invalid_argument("as_quadratic: D must be positive square-free");
    if (c_[1] != 0) return std::nullopt;
    // sqrt(-D) is r2 when d2 = -D, or r3/s when d3 = -D; exclusive for d1 > 1.
    if (d2_ == -D) {
        if (c_[3] != 0) return std::nullopt;
        return std::make_pair(c_[0], c_[2]);
    }
    if (d3_ == -D) {
        if (c_[2] != 0) return std::nullopt;
        return std::make_pair(c_[0], c_[3] * s_);
    }
    if (c_[2] == 0 && c_[3] == 0) return std::make_pair(c_[0], Rational(0));
    return std::nullopt;
}

void BiquadraticNumber::check_same_field(const BiquadraticNumber& o) const {
    if (d1_ != o.d1_ || d2_ != o.d2_)
        throw std::invalid_argument("BiquadraticNumber: mismatched field parameters (d1, d2)");
}

BiquadraticNumber BiquadraticNumber::operator-() const {
    return BiquadraticNumber(d1_, d2_, -c_[0], -c_[1], -c_[2], -c_[3]);
}

BiquadraticNumber BiquadraticNumber::operator+(const BiquadraticNumber& o) const {
    check_same_field(o);
    return BiquadraticNumber(d1_, d2_, c_[0] + o.c_[0], c_[1] + o.c_[1],
                             c_[2] + o.c_[2], c_[3] + o.c_[3]);
}

BiquadraticNumber BiquadraticNumber::operator-(const BiquadraticNumber& o) const {
    return *this + (-o);
}

BiquadraticNumber BiquadraticNumber::operator*(const BiquadraticNumber& o) const {
    check_same_field(o);
    const auto& a = c_;
    const auto& b = o.c_;
    Rational p1(d1_), p2(d2_), p12(d1_ * d2_);
    // r1^2 = d1, r2^2 = d2, r3^2 = d1*d2, r1*r2 = r3, r1*r3 = d1*r2, r2*r3 = d2*r1.
    Rational e0 = a[0] * b[0] + p1 * a[1] * b[1] + p2 * a[2] * b[2] + p12 * a[3] * b[3];
    Rational e1 = a[0] * b[1] + a[1] * b[0] + p2 * (a[2] * b[3] + a[3] * b[2]);
    Rational e2 = a[0] * b[2] + a[2] * b[0] + p1 * (a[1] * b[3] + a[3] * b[1]);
    Rational e3 = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1];
    return BiquadraticNumber(d1_, d2_, e0, e1, e2, e3);
}

BiquadraticNumber BiquadraticNumber::galois(bool flip1, bool flip2) const {
    return BiquadraticNumber(d1_, d2_, c_[0],
                             flip1 ? -c_[1] : c_[1],
                             flip2 ? -c_[2] : c_[2],
                             (flip1 != flip2) ? -c_[3] : c_[3]);
}

BiquadraticNumber BiquadraticNumber::complex_conj() const {
    // r2 and r3 are purely imaginary under the fixed branch choice.
    return BiquadraticNumber(d1_, d2_, c_[0], c_[1], -c_[2], -c_[3]);
}

BiquadraticNumber BiquadraticNumber::inverse() const {
    if (is_zero()) throw std::domain_error("BiquadraticNumber: division by zero");
    BiquadraticNumber cofactor = galois(true, false) * galois(false, true) * galois(true, true);
    BiquadraticNumber norm = *this * cofactor;
    auto n = norm.as_rational();
    if (!n || *n == 0)
        throw std::logic_error("BiquadraticNumber: field norm not a nonzero rational");
    Rational inv_n = Rational(1) / *n;
    return inv_n * cofactor;
}

std::complex<double> BiquadraticNumber::embed() const {
    auto f = [](const Rational& q) { return q.convert_to<double>(); };
    double re = f(c_[0]) + f(c_[1]) * std::sqrt(static_cast<double>(d1_));
    double im = f(c_[2]) * std::sqrt(static_cast<double>(-d2_)) +
                f(c_[3]) * static_cast<double>(s_) * std::sqrt(static_cast<double>(-d3_));
    return {re, im};
}

bool BiquadraticNumber::operator==(const BiquadraticNumber& o) const {
    check_same_field(o);
    return c_ == o.c_;
}

std::string BiquadraticNumber::str() const {
    static const char* basis[4] = {"", "*sqrt(d1)", "*sqrt(d2)", "*sqrt(d1*d2)"};
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < 4; ++i) {
        if (c_[static_cast<size_t>(i)] == 0) continue;
        if (any) os << " + ";
        os << rational_str(c_[static_cast<size_t>(i)]) << basis[i];
        any = true;
    }
    if (!any) os << "0";
    os << " [d1=" << d1_ << ", d2=" << d2_ << "]";
    return os.str();
}

BiquadraticNumber operator*(const Rational& r, const BiquadraticNumber& x) {
    return BiquadraticNumber::from_rational(x.d1(), x.d2(), r) * x;
}

Matrix2::Matrix2(BiquadraticNumber a_, BiquadraticNumber b_,
                 BiquadraticNumber c_, BiquadraticNumber d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (a.d1() != b.d1() || a.d1() != c.d1() || a.d1() != d.d1() ||
        a.d2() != b.d2() || a.d2() != c.d2() || a.d2() != d.d2())
        throw std::invalid_argument("Matrix2: entries must share (d1, d2)");
}

Matrix2 Matrix2::identity(long long d1, long long d2) {
    auto one = BiquadraticNumber::from_rational(d1, d2, 1);
    auto zero = BiquadraticNumber(d1, d2);
    return Matrix2(one, zero, zero, one);
}

Matrix2 Matrix2::operator*(const Matrix2& o) const {
    return Matrix2(a * o.a + b * o.c, a * o.b + b * o.d,
                   c * o.a + d * o.c, c * o.b + d * o.d);
}

BiquadraticNumber Matrix2::det() const { return a * d - b * c; }

BiquadraticNumber Matrix2::trace() const { return a + d; }

Matrix2 Matrix2::complex_conj() const {
    return Matrix2(a.complex_conj(), b.complex_conj(),
                   c.complex_conj(), d.complex_conj());
}

Matrix2 Matrix2::inverse() const {
    BiquadraticNumber inv_det = det().inverse();
    return Matrix2(inv_det * d, inv_det * (-b), inv_det * (-c), inv_det * a);
}

bool Matrix2::operator==(const Matrix2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
}

std::string Matrix2::str() const {
    return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]";
}

}  // namespace bianchi
