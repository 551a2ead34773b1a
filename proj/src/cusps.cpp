#include "bianchi/cusps.hpp"

#include <sstream>
#include <stdexcept>

namespace bianchi {

namespace {

Int gcd4(const Int& a, const Int& b, const Int& c, const Int& d) {
    using boost::multiprecision::gcd;
    return gcd(gcd(a, b), gcd(c, d));
}

}  // namespace

OElement o_add(const OElement& a, const OElement& b) { return {a.x + b.x, a.y + b.y}; }

OElement o_neg(const OElement& a) { return {-a.x, -a.y}; }

OElement o_mul(const OElement& a, const OElement& b, const FieldDiscriminant& disc) {
    // omega^2 = t*omega - n.
    const Int t = disc.omega_trace();
    const Int n = disc.omega_norm();
    return {a.x * b.x - n * a.y * b.y, a.x * b.y + a.y * b.x + t * a.y * b.y};
}

std::string o_str(const OElement& e) {
    if (e.y == 0) return e.x.str();
    std::string s;
    if (e.x != 0) s = e.x.str();
    if (e.y == 1) s += s.empty() ? "w" : "+w";
    else if (e.y == -1) s += "-w";
    else {
        if (!s.empty() && e.y > 0) s += "+";
        s += e.y.str() + "*w";
    }
    return s;
}

Cusp make_cusp(OElement p, OElement q) {
    if (p.is_zero() && q.is_zero())
        throw std::invalid_argument("make_cusp: (0, 0) is not a projective point");
    Int g = gcd4(p.x, p.y, q.x, q.y);
    if (g < 0) g = -g;
    if (g > 1) {
        p.x /= g; p.y /= g;
        q.x /= g; q.y /= g;
    }
    return {p, q};
}

bool same_cusp_point(const Cusp& a, const Cusp& b, const FieldDiscriminant& disc) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
    return o_mul(a.p, b.q, disc) == o_mul(b.p, a.q, disc);
}

std::string cusp_str(const Cusp& c) {
    if (c.is_infinity()) return "inf";
    return "(" + o_str(c.p) + ")/(" + o_str(c.q) + ")";
}

std::pair<Rational, Rational> cusp_value(const Cusp& c, const FieldDiscriminant& disc) {
    if (c.is_infinity())
        throw std::invalid_argument("cusp_value: cusp at infinity has no finite value");
    const Int t = disc.omega_trace();
    const Int n = disc.omega_norm();
    // p * conj(q) = X + Y*omega, |q|^2 = N.
    Int X = c.p.x * (c.q.x + t * c.q.y) + c.p.y * c.q.y * n;
    Int Y = c.p.y * c.q.x - c.p.x * c.q.y;
    Int N = c.q.x * c.q.x + t * c.q.x * c.q.y + n * c.q.y * c.q.y;
    if (disc.half_omega) return {Rational(2 * X + Y, 2 * N), Rational(Y, 2 * N)};
    return {Rational(X, N), Rational(Y, N)};
}

Cusp cusp_from_quadratic(const Rational& u, const Rational& v, const FieldDiscriminant& disc) {
    using boost::multiprecision::lcm;
    Int e = lcm(denominator(u), denominator(v));
    Int a = numerator(u) * (e / denominator(u));
    Int b = numerator(v) * (e / denominator(v));
    if (disc.half_omega) {
        // sqrt(-D) = 2*omega - 1.
        return make_cusp({a - b, 2 * b}, {e, 0});
    }
    return make_cusp({a, b}, {e, 0});
}

BiquadraticNumber bq_sqrt_neg_d(long long d1, long long d2, long long D) {
    return BiquadraticNumber::sqrt_of(d1, d2, -D);
}

BiquadraticNumber oelement_to_bq(const OElement& e, const FieldDiscriminant& disc,
                                 long long d1, long long d2) {
    BiquadraticNumber root = bq_sqrt_neg_d(d1, d2, disc.D);
    Rational x(e.x), y(e.y);
    if (disc.half_omega) {
        // omega = (1 + sqrt(-D))/2
        return BiquadraticNumber::from_rational(d1, d2, x + y / 2) + (y / 2) * root;
    }
    return BiquadraticNumber::from_rational(d1, d2, x) + y * root;
}

Cusp moebius_apply(const Matrix2& M, const Cusp& c, const FieldDiscriminant& disc) {
    const long long d1 = M.a.d1();
    const long long d2 = M.a.d2();
    BiquadraticNumber zp(d1, d2), zq(d1, d2);
    if (c.is_infinity()) {
        zp = BiquadraticNumber::from_rational(d1, d2, 1);
    } else {
        zp = oelement_to_bq(c.p, disc, d1, d2);
        zq = oelement_to_bq(c.q, disc, d1, d2);
    }
    BiquadraticNumber num = M.a * zp + M.b * zq;
    BiquadraticNumber den = M.c * zp + M.d * zq;
    if (den.is_zero()) {
        if (num.is_zero())
            throw std::domain_error("moebius_apply: matrix is singular at this point");
        return Cusp::infinity();
    }
    auto uv = (num * den.inverse()).as_quadratic(disc.D);
    if (!uv)
        throw std::domain_error("moebius_apply: image does not lie in Q(sqrt(-D))");
    return cusp_from_quadratic(uv->first, uv->second, disc);
}

IdealHNF cusp_ideal(const Cusp& c, const FieldDiscriminant& disc) {
    std::vector<std::pair<Int, Int>> gens;
    if (!c.p.is_zero()) gens.emplace_back(c.p.x, c.p.y);
    if (!c.q.is_zero()) gens.emplace_back(c.q.x, c.q.y);
    return ideal_from_generators(gens, disc);
}

bool is_singular(const Cusp& c, const FieldDiscriminant& disc) {
    return !is_principal(cusp_ideal(c, disc), disc);
}

int cusp_class_index(const Cusp& c, const FieldDiscriminant& disc,
                     const ClassGroupStructure& s) {
    return s.index_of(reduce_form(ideal_to_form(cusp_ideal(c, disc), disc)));
}

std::vector<Cusp> cusp_representatives(const FieldDiscriminant& disc,
                                       const ClassGroupStructure& s) {
    std::vector<Cusp> out{Cusp::infinity()};
    const BinaryQuadraticForm pf = principal_form(disc);
    for (const auto& f : s.representatives) {
        if (f == pf) continue;
        // The root ((b - t)/2 + omega)/a of the class of f, with the rational
        // part of the numerator shifted into [0, a).
        Int px = disc.half_omega ? Int((f.b - 1) / 2) : Int(f.b / 2);
        px %= f.a;
        if (px < 0) px += f.a;
        out.push_back(make_cusp({px, 1}, {f.a, 0}));
    }
    return out;
}

bool in_fundamental_rectangle(const Cusp& c, const FieldDiscriminant& disc) {
    if (c.is_infinity())
        throw std::invalid_argument("in_fundamental_rectangle: finite cusp required");
    auto [u, v] = cusp_value(c, disc);
    using boost::multiprecision::abs;
    Rational im_bound = disc.half_omega ? Rational(1, 4) : Rational(1, 2);
    return abs(u) <= Rational(1, 2) && abs(v) <= im_bound;
}

}  // namespace bianchi
