#pragma once

#include <compare>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bianchi/numeric.hpp"

namespace bianchi {

/// Thrown for D = 1 (Gaussian integers) and D = 3 (Eisensteinian integers),
/// which are outside the scope of this tool.
struct ExcludedFieldError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The imaginary quadratic field Q(sqrt(-D)), D > 0 square-free, D != 1, 3.
///
/// delta is the field discriminant: -D when D = 3 (mod 4), else -4D.
/// omega is the second basis element of the ring of integers O = Z[omega]:
/// omega = (1 + sqrt(-D))/2 when D = 3 (mod 4), else omega = sqrt(-D).
struct FieldDiscriminant {
    long long D;
    long long delta;
    bool half_omega;  // true iff omega = (1 + sqrt(-D))/2

    static FieldDiscriminant make(long long D);

    long long omega_trace() const { return half_omega ? 1 : 0; }
    long long omega_norm() const { return half_omega ? (D + 1) / 4 : D; }
};

/// Positive definite integral binary quadratic form a*x^2 + b*x*y + c*y^2
/// with b^2 - 4ac = delta.
struct BinaryQuadraticForm {
    Int a, b, c;
    bool operator==(const BinaryQuadraticForm&) const = default;
    bool operator<(const BinaryQuadraticForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

/// Nonzero ideal of O in Hermite normal form: the Z-module
/// alpha * (Z*a + Z*(b + omega)) with a > 0, 0 <= b < a, alpha >= 1.
/// Norm of the ideal is alpha^2 * a.
struct IdealHNF {
    Int a, b, alpha;
    Int norm() const { return alpha * alpha * a; }
    bool operator==(const IdealHNF&) const = default;
};

struct ClassGroupStructure {
    long long h = 1;
    std::vector<long long> elementary_divisors;  // invariant factors, each dividing the previous
    long long genus_count = 1;                   // classes of order dividing 2
    std::vector<BinaryQuadraticForm> representatives;  // reduced, sorted lexicographically

    // representatives are sorted, so the principal form (a = 1) is first.
    int principal_index() const { return 0; }
    int index_of(const BinaryQuadraticForm& reduced) const;
};

BinaryQuadraticForm principal_form(const FieldDiscriminant& disc);

/// Gauss reduction: |b| <= a <= c, with b >= 0 when |b| = a or a = c.
BinaryQuadraticForm reduce_form(BinaryQuadraticForm f);

/// All reduced positive definite forms of discriminant delta, sorted; the
/// length is the class number h.
std::vector<BinaryQuadraticForm> enumerate_reduced_forms(const FieldDiscriminant& disc);

/// Group law on classes; returns the reduced representative of the composed
/// class. Implemented by ideal multiplication through the form/ideal
/// correspondence.
BinaryQuadraticForm compose(const BinaryQuadraticForm& f, const BinaryQuadraticForm& g,
                            const FieldDiscriminant& disc);

ClassGroupStructure class_group_structure(const FieldDiscriminant& disc);

/// (is_elementary_two, is_cyclic_two_power): the two readings of the
/// "class group = Z/2^m" hypothesis. Both true for the trivial group.
std::pair<bool, bool> corollary_predicates(const ClassGroupStructure& s);

/// Ideal generated by O-elements given as coordinates (x, y) = x + y*omega.
IdealHNF ideal_from_generators(std::span<const std::pair<Int, Int>> gens,
                               const FieldDiscriminant& disc);

IdealHNF ideal_multiply(const IdealHNF& I, const IdealHNF& J, const FieldDiscriminant& disc);

BinaryQuadraticForm ideal_to_form(const IdealHNF& I, const FieldDiscriminant& disc);
IdealHNF form_to_ideal(const BinaryQuadraticForm& f, const FieldDiscriminant& disc);

bool is_principal(const IdealHNF& I, const FieldDiscriminant& disc);

/// (n, N): n the number of prime divisors of D, and the predicted cusp count
/// N = 2^(n-1) for D = 3 (mod 4), N = 2^n for D = 1 or 2 (mod 4).
std::pair<int, long long> paper_cusp_count(long long D);

}  // namespace bianchi
