#include "bianchi/symmetry.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <tuple>

namespace bianchi {

namespace {

BiquadraticNumber bq_int(long long d1, long long d2, long long v) {
    return BiquadraticNumber::from_rational(d1, d2, Rational(v));
}

bool congruence_ok(SymmetryType t, long long D) {
    long long r = D % 4;
    switch (t) {
        case SymmetryType::I:
        case SymmetryType::II:
            return r == 1 || r == 2;
        case SymmetryType::III:
        case SymmetryType::IV:
        case SymmetryType::V:
        case SymmetryType::VI:
            return r == 1;
        case SymmetryType::VII:
        case SymmetryType::VIII:
            return r == 3;
    }
    return false;
}

void check_m(SymmetryType t, long long D, long long m) {
    if (!type_uses_m(t)) return;
    if (m <= 1 || m >= D || D % m != 0)
        throw std::invalid_argument("symmetry: m must be a divisor of D with 1 < m < D");
}

long long floor_rational(const Rational& q) {
    Int n = numerator(q), d = denominator(q);
    Int f = n / d;
    if (n < 0 && n % d != 0) f -= 1;
    return f.convert_to<long long>();
}

}  // namespace

std::string symmetry_type_name(SymmetryType t) {
    static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
    return names[static_cast<int>(t) - 1];
}

bool type_uses_m(SymmetryType t) {
    return t != SymmetryType::III && t != SymmetryType::IV;
}

long long type_rhs(SymmetryType t) {
    switch (t) {
        case SymmetryType::I:
        case SymmetryType::II:
            return 1;
        case SymmetryType::III:
        case SymmetryType::IV:
        case SymmetryType::V:
        case SymmetryType::VI:
            return 2;
        case SymmetryType::VII:
        case SymmetryType::VIII:
            return 4;
    }
    return 0;
}

long long bc_coefficient(SymmetryType t, long long D, long long m) {
    switch (t) {
        case SymmetryType::I: return m;
        case SymmetryType::II: return D / m;
        case SymmetryType::III: return 4;
        case SymmetryType::IV: return 4 * D;
        case SymmetryType::V: return 4 * m;
        case SymmetryType::VI: return 4 * D / m;
        case SymmetryType::VII: return 4 * m;
        case SymmetryType::VIII: return 4 * D / m;
    }
    return 0;
}

std::pair<long long, long long> type_field(SymmetryType t, long long D, long long m) {
    switch (t) {
        case SymmetryType::I:
        case SymmetryType::II:
        case SymmetryType::VII:
        case SymmetryType::VIII:
            return {m, -D / m};
        case SymmetryType::III:
        case SymmetryType::IV:
            return {2, -D};
        case SymmetryType::V:
        case SymmetryType::VI:
            return {2 * m, -2 * D / m};
    }
    return {1, -1};
}

bool character_condition_holds(SymmetryType t, long long D, long long m) {
    switch (t) {
        case SymmetryType::I:
        case SymmetryType::VII:
            return is_quadratic_residue(D / m, m);
        case SymmetryType::II:
        case SymmetryType::VIII:
            return is_quadratic_residue(m, D / m);
        case SymmetryType::III:
            return true;
        case SymmetryType::IV:
            return is_quadratic_residue(2, D);
        case SymmetryType::V:
            return is_quadratic_residue(2, m) == is_quadratic_residue(D / m, m);
        case SymmetryType::VI:
            return is_quadratic_residue(2, D / m) == is_quadratic_residue(m, D / m);
    }
    return false;
}

bool type_applicable(SymmetryType t, long long D, long long m) {
    check_m(t, D, m);
    return congruence_ok(t, D) && character_condition_holds(t, D, m);
}

long long condition_lhs(SymmetryType t, long long D, long long m,
                        long long a1, long long a2, long long b, long long c) {
    long long quad;
    if (t == SymmetryType::III || t == SymmetryType::IV)
        quad = a1 * a1 + D * a2 * a2;
    else
        quad = m * a1 * a1 + (D / m) * a2 * a2;
    return quad + bc_coefficient(t, D, m) * b * c;
}

long long type_det_sign(SymmetryType t) {
    switch (t) {
        case SymmetryType::I:
        case SymmetryType::III:
        case SymmetryType::V:
        case SymmetryType::VII:
            return -1;
        case SymmetryType::II:
        case SymmetryType::IV:
        case SymmetryType::VI:
        case SymmetryType::VIII:
            return 1;
    }
    return 0;
}

Matrix2 build_matrix(SymmetryType t, long long D, long long m,
                     long long a1, long long a2, long long b, long long c) {
    if (D <= 0 || !is_squarefree(D))
        throw std::invalid_argument("build_matrix: D must be positive square-free");
    check_m(t, D, m);
    if (condition_lhs(t, D, m, a1, a2, b, c) != type_rhs(t))
        throw std::invalid_argument("build_matrix: condition equation violated");

    auto [f1, f2] = type_field(t, D, m);
    auto rt = [&](long long radicand) { return BiquadraticNumber::sqrt_of(f1, f2, radicand); };
    const Rational half(1, 2);
    Rational ra1(a1), ra2(a2), rb(b), rc(c);

    switch (t) {
        case SymmetryType::I: {
            auto rm = rt(m), rdm = rt(-D / m);
            return Matrix2(ra1 * rm + ra2 * rdm, rb * rm, rc * rm, ra2 * rdm - ra1 * rm);
        }
        case SymmetryType::II: {
            auto rm = rt(m), rdm = rt(-D / m);
            return Matrix2(ra1 * rm + ra2 * rdm, rb * rdm, rc * rdm, ra1 * rm - ra2 * rdm);
        }
        case SymmetryType::III: {
            auto r2 = rt(2), r2d = rt(-2 * D);
            return Matrix2(half * (ra1 * r2 + ra2 * r2d), rb * r2, rc * r2,
                           half * (ra2 * r2d - ra1 * r2));
        }
        case SymmetryType::IV: {
            auto r2 = rt(2), r2d = rt(-2 * D);
            return Matrix2(half * (ra1 * r2 + ra2 * r2d), rb * r2d, rc * r2d,
                           half * (ra1 * r2 - ra2 * r2d));
        }
        case SymmetryType::V: {
            auto r2m = rt(2 * m), r2dm = rt(-2 * D / m);
            return Matrix2(half * (ra1 * r2m + ra2 * r2dm), rb * r2m, rc * r2m,
                           half * (ra2 * r2dm - ra1 * r2m));
        }
        case SymmetryType::VI: {
            auto r2m = rt(2 * m), r2dm = rt(-2 * D / m);
            return Matrix2(half * (ra1 * r2m + ra2 * r2dm), rb * r2dm, rc * r2dm,
                           half * (ra1 * r2m - ra2 * r2dm));
        }
        case SymmetryType::VII: {
            auto rm = rt(m), rdm = rt(-D / m);
            return Matrix2(half * (ra1 * rm + ra2 * rdm), rb * rm, rc * rm,
                           half * (ra2 * rdm - ra1 * rm));
        }
        case SymmetryType::VIII: {
            auto rm = rt(m), rdm = rt(-D / m);
            return Matrix2(half * (ra1 * rm + ra2 * rdm), rb * rdm, rc * rdm,
                           half * (ra1 * rm - ra2 * rdm));
        }
    }
    throw std::logic_error("build_matrix: unknown type");
}

std::pair<Cusp, Rational> sigma_and_radius(const Matrix2& M, const FieldDiscriminant& disc) {
    Cusp sigma = moebius_apply(M, Cusp::infinity(), disc);
    auto csq = (M.c * M.c.complex_conj()).as_rational();
    if (!csq || *csq <= 0)
        throw std::domain_error("sigma_and_radius: |C|^2 is not a positive rational");
    return {sigma, Rational(1) / *csq};
}

Rational table_radius_sq(SymmetryType t, long long D, long long m, long long c) {
    Rational c2(c * c);
    switch (t) {
        case SymmetryType::I: return Rational(1) / (c2 * m);
        case SymmetryType::II: return Rational(m) / (c2 * D);
        case SymmetryType::III: return Rational(1) / (2 * c2);
        case SymmetryType::IV: return Rational(1) / (2 * c2 * D);
        case SymmetryType::V: return Rational(1) / (2 * c2 * m);
        case SymmetryType::VI: return Rational(m) / (2 * c2 * D);
        case SymmetryType::VII: return Rational(1) / (c2 * m);
        case SymmetryType::VIII: return Rational(m) / (c2 * D);
    }
    return 0;
}

std::pair<Rational, Rational> table_sigma(SymmetryType t, long long D, long long m,
                                          long long a1, long long a2, long long c) {
    switch (t) {
        case SymmetryType::I: return {Rational(a1, c), Rational(a2) / (Rational(c) * m)};
        // The tabulated Type II column carries an extra factor c in the
        // imaginary part; A/C expands without it. Reported as a mismatch.
        case SymmetryType::II: return {Rational(a2, c), Rational(-a1 * m, D)};
        case SymmetryType::III: return {Rational(a1, 2 * c), Rational(a2, 2 * c)};
        case SymmetryType::IV: return {Rational(a2, 2 * c), Rational(-a1) / (Rational(2 * c) * D)};
        case SymmetryType::V: return {Rational(a1, 2 * c), Rational(a2) / (Rational(2 * c) * m)};
        case SymmetryType::VI: return {Rational(a2, 2 * c), Rational(a1 * m) / (Rational(2 * c) * D)};
        case SymmetryType::VII: return {Rational(a1, 2 * c), Rational(a2) / (Rational(2 * c) * m)};
        case SymmetryType::VIII: return {Rational(a2, 2 * c), Rational(a1 * m) / (Rational(2 * c) * D)};
    }
    return {0, 0};
}

SymmetryCandidate make_candidate(SymmetryType t, long long D, long long m,
                                 long long a1, long long a2, long long b, long long c,
                                 const FieldDiscriminant& disc) {
    if (c < 1) throw std::invalid_argument("make_candidate: c must be >= 1");
    Matrix2 M = build_matrix(t, D, m, a1, a2, b, c);
    auto [sigma, rsq] = sigma_and_radius(M, disc);
    if (rsq != table_radius_sq(t, D, m, c))
        throw std::logic_error("make_candidate: matrix radius disagrees with the tabulated formula");
    SymmetryCandidate cand{t, D, type_uses_m(t) ? m : 0, a1, a2, b, c,
                           M, sigma, rsq};
    auto [u, v] = cusp_value(sigma, disc);
    auto [tu, tv] = table_sigma(t, D, m, a1, a2, c);
    cand.sigma_column_match = (u == tu) && (v == tv || v == -tv);
    return cand;
}

bool bq_in_ring_of_integers(const BiquadraticNumber& x, const FieldDiscriminant& disc) {
    auto uv = x.as_quadratic(disc.D);
    if (!uv) return false;
    const auto& [u, v] = *uv;
    if (disc.half_omega) {
        Rational y = 2 * v;
        return denominator(y) == 1 && denominator(Rational(u - v)) == 1;
    }
    return denominator(u) == 1 && denominator(v) == 1;
}

bool matrix_in_sl2_o(const Matrix2& M, const FieldDiscriminant& disc) {
    if (!bq_in_ring_of_integers(M.a, disc) || !bq_in_ring_of_integers(M.b, disc) ||
        !bq_in_ring_of_integers(M.c, disc) || !bq_in_ring_of_integers(M.d, disc))
        return false;
    auto det = M.det().as_rational();
    return det && *det == 1;
}

std::pair<Matrix2, Matrix2> stabilizer_generators(const FieldDiscriminant& disc,
                                                  long long d1, long long d2) {
    auto one = bq_int(d1, d2, 1);
    auto zero = BiquadraticNumber(d1, d2);
    auto omega = oelement_to_bq({0, 1}, disc, d1, d2);
    return {Matrix2(one, one, zero, one), Matrix2(one, omega, zero, one)};
}

VerificationReport verify_candidate(SymmetryCandidate& cand, const FieldDiscriminant& disc,
                                    const ClassGroupStructure& s) {
    const Matrix2& M = cand.matrix;
    const long long d1 = M.a.d1(), d2 = M.a.d2();
    VerificationReport r;

    auto det = M.det().as_rational();
    r.det_is_minus_one = det && *det == -1;
    r.det_matches_type = det && *det == type_det_sign(cand.type);

    Matrix2 mm = M * M.complex_conj();
    Matrix2 id = Matrix2::identity(d1, d2);
    Matrix2 neg_id = Matrix2(-id.a, id.b, id.c, -id.d);
    r.involution_is_plus_identity = (mm == id);
    r.involution_ok = r.involution_is_plus_identity || mm == neg_id;

    if (r.det_matches_type) {
        // det is a rational unit here, so the inverse is the adjugate over det.
        Rational inv_det = Rational(1) / *det;
        Matrix2 minv(inv_det * M.d, inv_det * -M.b, inv_det * -M.c, inv_det * M.a);
        // conj(g) * minv expanded for the three sparse generators
        // gx = [[1,1],[0,1]], gy = [[1,omega],[0,1]], s = [[0,-1],[1,0]].
        auto wbar = oelement_to_bq({0, 1}, disc, d1, d2).complex_conj();
        Matrix2 products[] = {
            Matrix2(minv.a + minv.c, minv.b + minv.d, minv.c, minv.d),
            Matrix2(minv.a + wbar * minv.c, minv.b + wbar * minv.d, minv.c, minv.d),
            Matrix2(-minv.c, -minv.d, minv.a, minv.b)};
        r.normalizes_gamma = true;
        for (const Matrix2& p : products) {
            if (!matrix_in_sl2_o(M * p, disc)) {
                r.normalizes_gamma = false;
                break;
            }
        }
    }

    r.radius_lt_one = cand.radius_sq < 1;
    cand.class_index = cusp_class_index(cand.sigma, disc, s);
    r.sigma_singular = cand.class_index != s.principal_index();

    // The symmetry acts by z -> M(conj(z)); it must swap infinity and sigma.
    // M(infinity) = A/C equals sigma = p/q iff A*q - C*p = 0, and
    // M(conj(sigma)) = infinity iff the denominator C*conj(p) + D*conj(q)
    // vanishes (det != 0 keeps the numerator away from 0/0).
    auto sp = oelement_to_bq(cand.sigma.p, disc, d1, d2);
    auto sq = oelement_to_bq(cand.sigma.q, disc, d1, d2);
    bool to_sigma = (M.a * sq - M.c * sp).is_zero();
    bool to_inf = det && *det != 0 &&
                  (M.c * sp.complex_conj() + M.d * sq.complex_conj()).is_zero();
    r.flip_ok = to_sigma && to_inf;

    cand.report = r;
    return r;
}

namespace {

// Box bounds on (a1, a2): the tight fundamental-rectangle bound on each
// sigma coordinate plus `slack` extra rectangle-translates, e.g. for Type I
// |a1| <= c/2 + slack and |a2| <= c*m/2 + slack.
std::pair<long long, long long> search_bounds(SymmetryType t, long long D, long long m,
                                              long long c, long long slack) {
    auto half = [slack](long long x) { return x / 2 + slack; };
    switch (t) {
        case SymmetryType::I: return {half(c), half(c * m)};
        case SymmetryType::II: return {half(c * D / m), half(c)};
        case SymmetryType::III: return {half(2 * c), half(2 * c)};
        case SymmetryType::IV: return {half(2 * c * D), half(2 * c)};
        case SymmetryType::V: return {half(2 * c), half(2 * c * m)};
        case SymmetryType::VI: return {half(2 * c * D / m), half(2 * c)};
        // Im(omega)/2 is half as tall when omega = (1 + sqrt(-D))/2.
        case SymmetryType::VII: return {half(2 * c), half(c * m)};
        case SymmetryType::VIII: return {half(c * D / m), half(2 * c)};
    }
    return {0, 0};
}

struct DedupKey {
    long long c, abs_a1, abs_a2, abs_b;
    int neg_a1, neg_a2, neg_b;
    long long m, a1, a2, b;
    auto operator<=>(const DedupKey&) const = default;
};

DedupKey dedup_key(const SymmetryCandidate& x) {
    return {x.c, std::llabs(x.a1), std::llabs(x.a2), std::llabs(x.b),
            x.a1 < 0, x.a2 < 0, x.b < 0, x.m, x.a1, x.a2, x.b};
}

bool output_order(const SymmetryCandidate& x, const SymmetryCandidate& y) {
    return std::tie(x.type, x.m, x.c, x.a1, x.a2, x.b) <
           std::tie(y.type, y.m, y.c, y.a1, y.a2, y.b);
}

}  // namespace

SearchResult search_symmetries(long long D, const SearchConfig& cfg,
                               const FieldDiscriminant& disc, const ClassGroupStructure& s) {
    if (disc.D != D)
        throw std::invalid_argument("search_symmetries: discriminant does not match D");
    SearchResult res;

    static const SymmetryType all_types[] = {
        SymmetryType::I, SymmetryType::II, SymmetryType::III, SymmetryType::IV,
        SymmetryType::V, SymmetryType::VI, SymmetryType::VII, SymmetryType::VIII};

    for (SymmetryType t : all_types) {
        if (!congruence_ok(t, D)) continue;
        std::vector<long long> ms;
        if (type_uses_m(t)) {
            for (long long m : divisors(D))
                if (m > 1 && m < D) ms.push_back(m);
        } else {
            ms.push_back(0);
        }
        const long long rhs = type_rhs(t);
        for (long long m : ms) {
            bool char_ok = character_condition_holds(t, D, m);
            if (cfg.enforce_character_conditions && !char_ok) continue;
            const long long K = bc_coefficient(t, D, m);
            for (long long c = 1; c <= cfg.c_max; ++c) {
                auto [a1max, a2max] = search_bounds(t, D, m, c, cfg.rectangle_slack);
                const long long Kc = K * c;
                for (long long a1 = -a1max; a1 <= a1max; ++a1) {
                    for (long long a2 = -a2max; a2 <= a2max; ++a2) {
                        long long quad = (t == SymmetryType::III || t == SymmetryType::IV)
                                             ? a1 * a1 + D * a2 * a2
                                             : m * a1 * a1 + (D / m) * a2 * a2;
                        long long numer = rhs - quad;
                        if (numer % Kc != 0) continue;
                        long long b = numer / Kc;
                        SymmetryCandidate cand = make_candidate(t, D, m, a1, a2, b, c, disc);
                        verify_candidate(cand, disc, s);
                        if (!cand.report.verified()) continue;
                        cand.character_condition_ok = char_ok;
                        res.verified.push_back(std::move(cand));
                    }
                }
            }
        }
    }

    std::sort(res.verified.begin(), res.verified.end(), output_order);

    std::map<std::pair<SymmetryType, int>, const SymmetryCandidate*> best;
    for (const auto& cand : res.verified) {
        if (!cand.character_condition_ok) ++res.character_skips;
        if (!cand.sigma_column_match) ++res.sigma_column_mismatches;
        auto key = std::make_pair(cand.type, cand.class_index);
        auto it = best.find(key);
        if (it == best.end() || dedup_key(cand) < dedup_key(*it->second))
            best[key] = &cand;
    }
    for (const auto& [key, cand] : best) res.deduped.push_back(*cand);
    std::sort(res.deduped.begin(), res.deduped.end(), output_order);
    return res;
}

std::vector<std::pair<Matrix2, Cusp>> intro_case_matrices(long long D) {
    if (D <= 0 || !is_squarefree(D) || D == 1 || D == 3)
        throw std::invalid_argument("intro_case_matrices: D out of scope");
    FieldDiscriminant disc = FieldDiscriminant::make(D);
    std::vector<std::pair<Matrix2, Cusp>> out;

    if (D % 4 == 1 || D % 4 == 2) {
        auto primes = prime_divisors(D);
        long long m = primes.front();
        if (m < D) {
            long long d1 = m, d2 = -D / m;
            auto rm = BiquadraticNumber::sqrt_of(d1, d2, m);
            auto rdm = BiquadraticNumber::sqrt_of(d1, d2, -D / m);
            Matrix2 M(rdm, -rm, rm, rdm);
            Cusp sigma = cusp_from_quadratic(0, Rational(1, m), disc);
            out.emplace_back(M, sigma);
        }
    }
    if (D % 4 == 1 && D > 1) {
        long long d1 = 2, d2 = -D;
        auto r2 = BiquadraticNumber::sqrt_of(d1, d2, 2);
        auto r2d = BiquadraticNumber::sqrt_of(d1, d2, -2 * D);
        const Rational half(1, 2);
        Matrix2 M(half * (r2 + r2d), Rational(-(D - 1), 4) * r2, r2, half * (r2d - r2));
        Cusp sigma = cusp_from_quadratic(Rational(1, 2), Rational(1, 2), disc);
        out.emplace_back(M, sigma);
    }
    return out;
}

std::array<BasicSymmetry, 3> basic_symmetries() {
    BasicSymmetry conj{"c", [](const Matrix2& g) { return g.complex_conj(); }};
    BasicSymmetry rot{"e", [](const Matrix2& g) { return Matrix2(g.a, -g.b, -g.c, g.d); }};
    BasicSymmetry both{"ce", [](const Matrix2& g) {
                           Matrix2 h = g.complex_conj();
                           return Matrix2(h.a, -h.b, -h.c, h.d);
                       }};
    return {conj, rot, both};
}

std::pair<Matrix2, Matrix2> conjugated_generators(const SymmetryCandidate& cand,
                                                  const FieldDiscriminant& disc) {
    const Matrix2& M = cand.matrix;
    auto det = M.det().as_rational();
    Matrix2 minv = (det && *det != 0)
                       // rational determinant: the inverse is the adjugate over det
                       ? Matrix2(Rational(1) / *det * M.d, Rational(1) / *det * -M.b,
                                 Rational(1) / *det * -M.c, Rational(1) / *det * M.a)
                       : M.inverse();
    auto omega = oelement_to_bq({0, 1}, disc, M.a.d1(), M.a.d2());
    // g * minv expanded for gx = [[1,1],[0,1]] and gy = [[1,omega],[0,1]].
    Matrix2 px(minv.a + minv.c, minv.b + minv.d, minv.c, minv.d);
    Matrix2 py(minv.a + omega * minv.c, minv.b + omega * minv.d, minv.c, minv.d);
    return {M * px, M * py};
}

}  // namespace bianchi
