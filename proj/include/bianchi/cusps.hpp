#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bianchi/biquadratic.hpp"
#include "bianchi/classgroup.hpp"

namespace bianchi {

/// Element x + y*omega of the ring of integers O, in the {1, omega} basis
/// fixed by the ambient FieldDiscriminant.
struct OElement {
    Int x, y;
    bool is_zero() const { return x == 0 && y == 0; }
    bool operator==(const OElement&) const = default;
};

OElement o_add(const OElement& a, const OElement& b);
OElement o_neg(const OElement& a);
OElement o_mul(const OElement& a, const OElement& b, const FieldDiscriminant& disc);

std::string o_str(const OElement& e);

/// Point p/q of P^1(Q(sqrt(-D))): q = 0 means the cusp at infinity.
/// The pair is normalized so its rational integer content is 1.
struct Cusp {
    OElement p, q;

    static Cusp infinity() { return {{1, 0}, {0, 0}}; }
    bool is_infinity() const { return q.is_zero(); }
    bool operator==(const Cusp&) const = default;
};

/// Builds a content-normalized cusp; throws when p = q = 0.
Cusp make_cusp(OElement p, OElement q);

/// Same point of P^1 (not Gamma-equivalence).
bool same_cusp_point(const Cusp& a, const Cusp& b, const FieldDiscriminant& disc);

std::string cusp_str(const Cusp& c);

/// p/q as (u, v) with value u + v*sqrt(-D); cusp must be finite.
std::pair<Rational, Rational> cusp_value(const Cusp& c, const FieldDiscriminant& disc);

/// Cusp for the field point u + v*sqrt(-D).
Cusp cusp_from_quadratic(const Rational& u, const Rational& v, const FieldDiscriminant& disc);

/// O-element as a value of the biquadratic field (d1, d2); requires sqrt(-D)
/// to be expressible there.
BiquadraticNumber oelement_to_bq(const OElement& e, const FieldDiscriminant& disc,
                                 long long d1, long long d2);

/// sqrt(-D) in the field (d1, d2); throws when not expressible.
BiquadraticNumber bq_sqrt_neg_d(long long d1, long long d2, long long D);

/// Moebius action of M on a cusp. The result must lie in Q(sqrt(-D));
/// otherwise a std::domain_error is thrown (the matrix is not a symmetry of
/// this field's cusps).
Cusp moebius_apply(const Matrix2& M, const Cusp& c, const FieldDiscriminant& disc);

/// The O-ideal generated by p and q.
IdealHNF cusp_ideal(const Cusp& c, const FieldDiscriminant& disc);

/// A cusp is singular iff its ideal is not principal, i.e. iff it is not in
/// the Gamma-orbit of infinity.
bool is_singular(const Cusp& c, const FieldDiscriminant& disc);

/// Index of the cusp's ideal class among s.representatives.
int cusp_class_index(const Cusp& c, const FieldDiscriminant& disc,
                     const ClassGroupStructure& s);

/// One cusp per ideal class: infinity first, then a representative derived
/// from each non-principal reduced form.
std::vector<Cusp> cusp_representatives(const FieldDiscriminant& disc,
                                       const ClassGroupStructure& s);

/// Closed fundamental rectangle of the translation lattice at infinity:
/// |Re| <= 1/2 and |Im| <= Im(omega)/2, decided exactly over rationals.
bool in_fundamental_rectangle(const Cusp& c, const FieldDiscriminant& disc);

}  // namespace bianchi
