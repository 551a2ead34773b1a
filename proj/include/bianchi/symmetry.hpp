#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bianchi/cusps.hpp"

namespace bianchi {

/// The eight families of additional symmetries in Bianchi's classification.
/// Types III and IV do not use the divisor parameter m.
enum class SymmetryType { I = 1, II, III, IV, V, VI, VII, VIII };

std::string symmetry_type_name(SymmetryType t);
bool type_uses_m(SymmetryType t);

/// Right-hand side of the type's Diophantine condition: 1 for I-II,
/// 2 for III-VI, 4 for VII-VIII.
long long type_rhs(SymmetryType t);

/// Coefficient of the b*c term in the condition equation:
/// m, D/m, 4, 4D, 4m, 4D/m, 4m, 4D/m for types I..VIII.
long long bc_coefficient(SymmetryType t, long long D, long long m);

/// Biquadratic field (d1, d2) housing the type's matrix entries.
std::pair<long long, long long> type_field(SymmetryType t, long long D, long long m);

/// Congruence on D mod 4 plus the quadratic residue / character condition,
/// residues tested exhaustively (the moduli may be composite).
/// m must divide D with 1 < m < D for the types that use it.
bool type_applicable(SymmetryType t, long long D, long long m);

/// Only the congruence and residue conditions, without validating the range
/// of m (used to report skipped character conditions).
bool character_condition_holds(SymmetryType t, long long D, long long m);

/// Exact left side of the condition equation; the tuple is admissible iff
/// this equals type_rhs(t).
long long condition_lhs(SymmetryType t, long long D, long long m,
                        long long a1, long long a2, long long b, long long c);

/// Sign of det(M) forced by the condition equation: -1 for types I, III, V,
/// VII and +1 for types II, IV, VI, VIII. Symbolically, det = -(lhs)/k for
/// the odd types and +(lhs)/k for the even types (k the rhs normalizer), so
/// an admissible tuple always has det equal to this sign. No entry-sign
/// variant of the even-type rows can reach det = -1 while M * conj(M) stays
/// scalar: with B and C proportional to the imaginary radical, the scalar
/// condition forces the lower-right entry to be conj(A), pinning det = +1.
long long type_det_sign(SymmetryType t);

/// Matrix of the symmetry, entries exact over type_field(t, D, m).
/// Throws std::invalid_argument when the condition equation is violated.
Matrix2 build_matrix(SymmetryType t, long long D, long long m,
                     long long a1, long long a2, long long b, long long c);

/// (sigma, r^2): sigma = M(infinity) as an O-pair, r^2 = 1/(C * conj(C)) with
/// C the lower-left entry.
std::pair<Cusp, Rational> sigma_and_radius(const Matrix2& M, const FieldDiscriminant& disc);

/// The tabulated radius formula, for cross-checking against the matrix.
Rational table_radius_sq(SymmetryType t, long long D, long long m, long long c);

/// The tabulated sigma column as (u, v) with sigma = u + v*sqrt(-D).
std::pair<Rational, Rational> table_sigma(SymmetryType t, long long D, long long m,
                                          long long a1, long long a2, long long c);

struct VerificationReport {
    bool det_is_minus_one = false;    // det = -1 (holds exactly for types I, III, V, VII)
    bool det_matches_type = false;    // det = type_det_sign(type) exactly
    bool involution_ok = false;       // M * conj(M) = +-identity
    bool normalizes_gamma = false;    // conjugates of the sampled generators lie in SL2(O)
    bool radius_lt_one = false;
    bool sigma_singular = false;
    bool flip_ok = false;             // the conjugation-composed map swaps infinity and sigma
    bool involution_is_plus_identity = false;

    bool verified() const {
        return det_matches_type && involution_ok && normalizes_gamma &&
               radius_lt_one && sigma_singular && flip_ok;
    }
};

struct SymmetryCandidate {
    SymmetryType type;
    long long D;
    long long m;  // 0 for types III/IV (unused sentinel, never enters formulas)
    long long a1, a2, b, c;
    Matrix2 matrix;
    Cusp sigma;
    Rational radius_sq;
    int class_index = -1;
    VerificationReport report;
    bool character_condition_ok = true;
    bool sigma_column_match = true;   // tabulated sigma equals A/C up to conjugation
};

/// Builds matrix, sigma, and radius for one parameter tuple. Throws when the
/// condition equation fails.
SymmetryCandidate make_candidate(SymmetryType t, long long D, long long m,
                                 long long a1, long long a2, long long b, long long c,
                                 const FieldDiscriminant& disc);

/// Runs the six checks; fills cand.report and cand.class_index.
VerificationReport verify_candidate(SymmetryCandidate& cand, const FieldDiscriminant& disc,
                                    const ClassGroupStructure& s);

struct SearchConfig {
    long long c_max = 12;
    long long rectangle_slack = 1;
    bool strict = false;
    bool enforce_character_conditions = true;
    int workers = 1;
};

struct SearchResult {
    /// Every fully verified candidate, sorted by (type, m, c, a1, a2, b).
    std::vector<SymmetryCandidate> verified;
    /// At most one candidate per (type, ideal class), minimal parameters.
    std::vector<SymmetryCandidate> deduped;
    /// Verified candidates that violate a skipped character condition.
    int character_skips = 0;
    /// Candidates whose tabulated sigma column disagrees with A/C.
    int sigma_column_mismatches = 0;
};

/// Exhaustive bounded search over all types, divisors m of D, c in
/// [1, c_max], and (a1, a2) inside the slack-enlarged fundamental rectangle
/// bound on sigma; deterministic output.
SearchResult search_symmetries(long long D, const SearchConfig& cfg,
                               const FieldDiscriminant& disc, const ClassGroupStructure& s);

/// The two historical matrices (Case A: D = 1, 2 mod 4 with a prime divisor
/// m < D; Case B: D = 1 mod 4), paired with their cusps. These matrices are
/// projective; only the flip property is guaranteed.
std::vector<std::pair<Matrix2, Cusp>> intro_case_matrices(long long D);

/// One of the Klein four-group symmetries gamma -> conj(gamma),
/// gamma -> E*gamma*E, or their composite.
struct BasicSymmetry {
    std::string name;
    std::function<Matrix2(const Matrix2&)> apply;
};

std::array<BasicSymmetry, 3> basic_symmetries();

/// The parabolic generators [[1,1],[0,1]] and [[1,omega],[0,1]] of the cusp
/// stabilizer at infinity, over the field (d1, d2).
std::pair<Matrix2, Matrix2> stabilizer_generators(const FieldDiscriminant& disc,
                                                  long long d1, long long d2);

/// M * gamma * M^-1 for gamma in {gamma_x, gamma_y}; both are parabolic
/// elements of SL2(O) fixing sigma when the candidate is verified.
std::pair<Matrix2, Matrix2> conjugated_generators(const SymmetryCandidate& cand,
                                                  const FieldDiscriminant& disc);

/// True when the entry lies in O (used for the normalization checks).
bool bq_in_ring_of_integers(const BiquadraticNumber& x, const FieldDiscriminant& disc);

/// True when all four entries lie in O and det = 1.
bool matrix_in_sl2_o(const Matrix2& M, const FieldDiscriminant& disc);

}  // namespace bianchi
