#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "bianchi/symmetry.hpp"

using namespace bianchi;

namespace {

const SymmetryType all_types[] = {
    SymmetryType::I, SymmetryType::II, SymmetryType::III, SymmetryType::IV,
    SymmetryType::V, SymmetryType::VI, SymmetryType::VII, SymmetryType::VIII};

OElement oe(long long x, long long y) { return {Int(x), Int(y)}; }

BiquadraticNumber minus_one(long long d1, long long d2) {
    return BiquadraticNumber::from_rational(d1, d2, Rational(-1));
}

}  // namespace

TEST_CASE("type table data") {
    CHECK(symmetry_type_name(SymmetryType::I) == "I");
    CHECK(symmetry_type_name(SymmetryType::VIII) == "VIII");
    CHECK(type_uses_m(SymmetryType::I));
    CHECK_FALSE(type_uses_m(SymmetryType::III));
    CHECK_FALSE(type_uses_m(SymmetryType::IV));

    CHECK(type_rhs(SymmetryType::I) == 1);
    CHECK(type_rhs(SymmetryType::IV) == 2);
    CHECK(type_rhs(SymmetryType::VII) == 4);

    CHECK(bc_coefficient(SymmetryType::I, 6, 2) == 2);
    CHECK(bc_coefficient(SymmetryType::II, 6, 2) == 3);
    CHECK(bc_coefficient(SymmetryType::III, 5, 0) == 4);
    CHECK(bc_coefficient(SymmetryType::IV, 5, 0) == 20);
    CHECK(bc_coefficient(SymmetryType::V, 65, 5) == 20);
    CHECK(bc_coefficient(SymmetryType::VI, 65, 5) == 52);
    CHECK(bc_coefficient(SymmetryType::VII, 35, 5) == 20);
    CHECK(bc_coefficient(SymmetryType::VIII, 35, 5) == 28);

    CHECK(type_field(SymmetryType::I, 6, 2) == std::make_pair(2LL, -3LL));
    CHECK(type_field(SymmetryType::III, 5, 0) == std::make_pair(2LL, -5LL));
    CHECK(type_field(SymmetryType::V, 65, 5) == std::make_pair(10LL, -26LL));
    CHECK(type_field(SymmetryType::VII, 35, 5) == std::make_pair(5LL, -7LL));
}

TEST_CASE("applicability") {
    // D = 6 = 2 (mod 4): type I with m = 2 since 3 is a square mod 2
    CHECK(type_applicable(SymmetryType::I, 6, 2));
    CHECK_FALSE(type_applicable(SymmetryType::II, 6, 2));   // 2 is not a QR mod 3
    CHECK_FALSE(type_applicable(SymmetryType::I, 6, 3));    // 2 is not a QR mod 3
    CHECK_FALSE(type_applicable(SymmetryType::III, 6, 0));  // needs D = 1 (mod 4)
    CHECK_FALSE(type_applicable(SymmetryType::VII, 6, 2));  // needs D = 3 (mod 4)

    // Type III has no residue condition; type IV needs 2 to be a QR mod D
    CHECK(type_applicable(SymmetryType::III, 5, 0));
    CHECK(type_applicable(SymmetryType::III, 13, 0));
    CHECK_FALSE(type_applicable(SymmetryType::IV, 13, 0));  // 13 = 5 (mod 8)
    CHECK(type_applicable(SymmetryType::IV, 17, 0));        // 17 = 1 (mod 8)

    // D = 15: neither VII nor VIII holds (residue conditions fail)
    CHECK_FALSE(type_applicable(SymmetryType::VII, 15, 3));
    CHECK_FALSE(type_applicable(SymmetryType::VII, 15, 5));
    CHECK_FALSE(type_applicable(SymmetryType::VIII, 15, 3));
    CHECK_FALSE(type_applicable(SymmetryType::VIII, 15, 5));

    // D = 39, m = 3: 13 = 1 (mod 3) is a QR, so type VII applies
    CHECK(type_applicable(SymmetryType::VII, 39, 3));

    CHECK_THROWS_AS(type_applicable(SymmetryType::I, 6, 6), std::invalid_argument);
    CHECK_THROWS_AS(type_applicable(SymmetryType::I, 6, 1), std::invalid_argument);
    CHECK_THROWS_AS(type_applicable(SymmetryType::I, 6, 4), std::invalid_argument);
}

TEST_CASE("condition equation") {
    CHECK(condition_lhs(SymmetryType::I, 6, 2, 0, 1, -1, 1) == 1);
    CHECK(condition_lhs(SymmetryType::I, 10, 2, 0, 1, -2, 1) == 1);
    CHECK(condition_lhs(SymmetryType::I, 6, 2, 0, 1, 0, 1) == 3);
    CHECK(condition_lhs(SymmetryType::III, 5, 0, 1, 1, -1, 1) == 2);
    CHECK(condition_lhs(SymmetryType::III, 37, 0, 1, 1, -9, 1) == 2);
    CHECK(condition_lhs(SymmetryType::VII, 39, 3, 1, 1, -1, 1) == 4);
}

TEST_CASE("matrix construction") {
    // Type I, D = 6: [[sqrt(-3), -sqrt(2)], [sqrt(2), sqrt(-3)]]
    Matrix2 M = build_matrix(SymmetryType::I, 6, 2, 0, 1, -1, 1);
    auto r2 = BiquadraticNumber::sqrt_of(2, -3, 2);
    auto r3 = BiquadraticNumber::sqrt_of(2, -3, -3);
    CHECK(M == Matrix2(r3, -r2, r2, r3));
    CHECK(M.det() == minus_one(2, -3));
    CHECK(M * M.complex_conj() == Matrix2::identity(2, -3));

    // Type III, D = 5: [[(sqrt(2) + sqrt(-10))/2, -sqrt(2)], [sqrt(2), (sqrt(-10) - sqrt(2))/2]]
    Matrix2 M3 = build_matrix(SymmetryType::III, 5, 0, 1, 1, -1, 1);
    auto s2 = BiquadraticNumber::sqrt_of(2, -5, 2);
    auto s10 = BiquadraticNumber::sqrt_of(2, -5, -10);
    Rational half(1, 2);
    CHECK(M3 == Matrix2(half * (s2 + s10), -s2, s2, half * (s10 - s2)));
    CHECK(M3.det() == minus_one(2, -5));
    CHECK(M3 * M3.complex_conj() == Matrix2::identity(2, -5));

    // violated condition is rejected
    CHECK_THROWS_AS(build_matrix(SymmetryType::I, 6, 2, 0, 1, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_matrix(SymmetryType::I, 12, 2, 0, 1, -1, 1), std::invalid_argument);
}

TEST_CASE("sigma and radius") {
    auto d6 = FieldDiscriminant::make(6);
    Matrix2 M = build_matrix(SymmetryType::I, 6, 2, 0, 1, -1, 1);
    auto [sigma, rsq] = sigma_and_radius(M, d6);
    CHECK(same_cusp_point(sigma, make_cusp(oe(0, 1), oe(2, 0)), d6));  // sqrt(-6)/2
    CHECK(rsq == Rational(1, 2));
    CHECK(rsq == table_radius_sq(SymmetryType::I, 6, 2, 1));

    auto d5 = FieldDiscriminant::make(5);
    Matrix2 M3 = build_matrix(SymmetryType::III, 5, 0, 1, 1, -1, 1);
    auto [sigma3, rsq3] = sigma_and_radius(M3, d5);
    CHECK(same_cusp_point(sigma3, make_cusp(oe(1, 1), oe(2, 0)), d5));  // (1 + sqrt(-5))/2
    CHECK(rsq3 == Rational(1, 2));

    CHECK(table_radius_sq(SymmetryType::II, 6, 2, 1) == Rational(1, 3));
    CHECK(table_radius_sq(SymmetryType::IV, 13, 0, 2) == Rational(1, 104));
    CHECK(table_sigma(SymmetryType::I, 6, 2, 0, 1, 1) ==
          std::make_pair(Rational(0), Rational(1, 2)));
    CHECK(table_sigma(SymmetryType::III, 5, 0, 1, 1, 1) ==
          std::make_pair(Rational(1, 2), Rational(1, 2)));
}

TEST_CASE("ring membership") {
    auto d6 = FieldDiscriminant::make(6);
    auto one = BiquadraticNumber::from_rational(2, -3, 1);
    auto r6 = BiquadraticNumber::sqrt_of(2, -3, -6);
    CHECK(bq_in_ring_of_integers(one, d6));
    CHECK(bq_in_ring_of_integers(r6, d6));
    CHECK(bq_in_ring_of_integers(one + r6, d6));
    CHECK_FALSE(bq_in_ring_of_integers(Rational(1, 2) * r6, d6));
    CHECK_FALSE(bq_in_ring_of_integers(BiquadraticNumber::sqrt_of(2, -3, 2), d6));

    // half-integer coordinates are integral when D = 3 (mod 4)
    auto d7 = FieldDiscriminant::make(7);
    BiquadraticNumber om(2, -7, Rational(1, 2), Rational(0), Rational(1, 2), Rational(0));
    CHECK(bq_in_ring_of_integers(om, d7));
    BiquadraticNumber bad(2, -7, Rational(0), Rational(0), Rational(1, 2), Rational(0));
    CHECK_FALSE(bq_in_ring_of_integers(bad, d7));

    CHECK(matrix_in_sl2_o(Matrix2::identity(2, -3), d6));
    CHECK_FALSE(matrix_in_sl2_o(build_matrix(SymmetryType::I, 6, 2, 0, 1, -1, 1), d6));
}

TEST_CASE("stabilizer generators and basic symmetries") {
    auto d6 = FieldDiscriminant::make(6);
    auto [gx, gy] = stabilizer_generators(d6, 2, -3);
    CHECK(gx.det() == BiquadraticNumber::from_rational(2, -3, 1));
    CHECK(gy.det() == BiquadraticNumber::from_rational(2, -3, 1));
    CHECK(gy.b == BiquadraticNumber::sqrt_of(2, -3, -6));
    CHECK(matrix_in_sl2_o(gx, d6));
    CHECK(matrix_in_sl2_o(gy, d6));

    auto d7 = FieldDiscriminant::make(7);
    auto [hx, hy] = stabilizer_generators(d7, 2, -7);
    CHECK(hy.b == BiquadraticNumber(2, -7, Rational(1, 2), Rational(0), Rational(1, 2), Rational(0)));

    auto syms = basic_symmetries();
    REQUIRE(syms.size() == 3);
    // each is an involution preserving SL2(O), and c(gy) negates the omega part
    for (const auto& s : syms) {
        Matrix2 g = gx * gy * Matrix2(gx.a, -gx.b, -gx.c, gx.d);
        CHECK(s.apply(s.apply(g)) == g);
        CHECK(matrix_in_sl2_o(s.apply(g), d6));
        CHECK(s.apply(g).det() == g.det());
    }
}

TEST_CASE("verification of the tabulated examples") {
    struct Row {
        SymmetryType t;
        long long D, m, a1, a2, b, c;
    };
    const Row rows[] = {
        {SymmetryType::I, 6, 2, 0, 1, -1, 1},
        {SymmetryType::I, 10, 2, 0, 1, -2, 1},
        {SymmetryType::I, 22, 2, 0, 1, -5, 1},
        {SymmetryType::I, 58, 2, 0, 1, -14, 1},
        {SymmetryType::III, 5, 0, 1, 1, -1, 1},
        {SymmetryType::III, 13, 0, 1, 1, -3, 1},
        {SymmetryType::III, 37, 0, 1, 1, -9, 1},
    };
    for (const auto& row : rows) {
        CAPTURE(row.D);
        auto disc = FieldDiscriminant::make(row.D);
        auto s = class_group_structure(disc);
        auto cand = make_candidate(row.t, row.D, row.m, row.a1, row.a2, row.b, row.c, disc);
        auto rep = verify_candidate(cand, disc, s);
        CHECK(rep.det_is_minus_one);
        CHECK(rep.det_matches_type);
        CHECK(rep.involution_ok);
        CHECK(rep.involution_is_plus_identity);
        CHECK(rep.normalizes_gamma);
        CHECK(rep.radius_lt_one);
        CHECK(rep.sigma_singular);
        CHECK(rep.flip_ok);
        CHECK(rep.verified());
        CHECK(cand.class_index != s.principal_index());
        CHECK(cand.sigma_column_match);

        // conjugated parabolic generators land in SL2(O) and fix sigma
        auto [cx, cy] = conjugated_generators(cand, disc);
        for (const auto& g : {cx, cy}) {
            CHECK(matrix_in_sl2_o(g, disc));
            CHECK(g.trace() == BiquadraticNumber::from_rational(g.a.d1(), g.a.d2(), 2));
            CHECK(same_cusp_point(moebius_apply(g, cand.sigma, disc), cand.sigma, disc));
        }
    }
}

TEST_CASE("even-type symmetries verify with determinant +1") {
    // Type II, D = 6, m = 3: condition 3*1 + 2*0 + 2*(-1) = 1.
    auto disc = FieldDiscriminant::make(6);
    auto s = class_group_structure(disc);
    auto cand = make_candidate(SymmetryType::II, 6, 3, 1, 0, -1, 1, disc);
    auto rep = verify_candidate(cand, disc, s);
    CHECK(cand.matrix.det() == BiquadraticNumber::from_rational(3, -2, 1));
    CHECK_FALSE(rep.det_is_minus_one);
    CHECK(rep.det_matches_type);
    CHECK(rep.involution_is_plus_identity);
    CHECK(rep.normalizes_gamma);
    CHECK(rep.sigma_singular);
    CHECK(rep.flip_ok);
    CHECK(rep.verified());
    // sigma = sqrt(3)/sqrt(-2) = -sqrt(-6)/2, same class as sqrt(-6)/2
    CHECK(cand.radius_sq == Rational(1, 2));
    CHECK(cand.class_index == cusp_class_index(make_cusp(oe(0, 1), oe(2, 0)), disc, s));
}

TEST_CASE("search finds the tabulated rows and respects dedup") {
    SearchConfig cfg;
    cfg.c_max = 4;

    auto contains = [](const std::vector<SymmetryCandidate>& v, SymmetryType t,
                       long long m, long long a1, long long a2, long long b, long long c) {
        for (const auto& x : v)
            if (x.type == t && x.m == m && x.a1 == a1 && x.a2 == a2 && x.b == b && x.c == c)
                return true;
        return false;
    };

    {
        auto disc = FieldDiscriminant::make(5);
        auto s = class_group_structure(disc);
        auto res = search_symmetries(5, cfg, disc, s);
        CHECK(contains(res.verified, SymmetryType::III, 0, 1, 1, -1, 1));
        CHECK(contains(res.deduped, SymmetryType::III, 0, 1, 1, -1, 1));
        // all verified candidates pass the full battery and their deduped
        // class indices are pairwise distinct per type
        std::set<std::pair<SymmetryType, int>> seen;
        for (const auto& x : res.deduped)
            CHECK(seen.insert({x.type, x.class_index}).second);
        for (const auto& x : res.verified) {
            CHECK(x.report.verified());
            CHECK(x.radius_sq == table_radius_sq(x.type, x.D, x.m, x.c));
        }
    }
    {
        auto disc = FieldDiscriminant::make(58);
        auto s = class_group_structure(disc);
        auto res = search_symmetries(58, cfg, disc, s);
        CHECK(contains(res.deduped, SymmetryType::I, 2, 0, 1, -14, 1));
    }
    {
        auto disc = FieldDiscriminant::make(15);
        auto s = class_group_structure(disc);
        auto res = search_symmetries(15, cfg, disc, s);
        CHECK(res.verified.empty());
        CHECK(res.deduped.empty());
    }

    // determinism: two runs agree
    {
        auto disc = FieldDiscriminant::make(30);
        auto s = class_group_structure(disc);
        auto r1 = search_symmetries(30, cfg, disc, s);
        auto r2 = search_symmetries(30, cfg, disc, s);
        REQUIRE(r1.verified.size() == r2.verified.size());
        for (size_t i = 0; i < r1.verified.size(); ++i) {
            CHECK(r1.verified[i].matrix == r2.verified[i].matrix);
            CHECK(r1.verified[i].class_index == r2.verified[i].class_index);
        }
    }
}

TEST_CASE("determinant sign identity for admissible tuples") {
    // Whenever the condition equation holds, the determinant is exactly the
    // type-parity sign: -(lhs) for I/III/V/VII, +(lhs) for II/IV/VI/VIII.
    CHECK(type_det_sign(SymmetryType::I) == -1);
    CHECK(type_det_sign(SymmetryType::II) == 1);
    CHECK(type_det_sign(SymmetryType::III) == -1);
    CHECK(type_det_sign(SymmetryType::VIII) == 1);

    auto congruent = [](SymmetryType t, long long D) {
        long long r = D % 4;
        if (t == SymmetryType::I || t == SymmetryType::II) return r == 1 || r == 2;
        if (t == SymmetryType::VII || t == SymmetryType::VIII) return r == 3;
        return r == 1;
    };

    std::mt19937 rng(31337);
    for (SymmetryType t : all_types) {
        int found = 0;
        for (long long D = 2; D <= 120 && found < 12; ++D) {
            if (!is_squarefree(D) || D == 3 || !congruent(t, D)) continue;
            std::vector<long long> ms;
            if (type_uses_m(t)) {
                for (long long m : divisors(D))
                    if (m > 1 && m < D) ms.push_back(m);
            } else {
                ms.push_back(0);
            }
            for (long long m : ms) {
                for (long long c = 1; c <= 2 && found < 12; ++c) {
                    long long K = bc_coefficient(t, D, m) * c;
                    std::uniform_int_distribution<long long> a1d(-60, 60), a2d(-4, 4);
                    for (int tries = 0; tries < 400 && found < 12; ++tries) {
                        long long a1 = a1d(rng), a2 = a2d(rng);
                        long long quad = type_uses_m(t) ? m * a1 * a1 + (D / m) * a2 * a2
                                                        : a1 * a1 + D * a2 * a2;
                        long long numer = type_rhs(t) - quad;
                        if (numer % K != 0) continue;
                        Matrix2 M = build_matrix(t, D, m, a1, a2, numer / K, c);
                        auto [d1, d2] = type_field(t, D, m);
                        CHECK(M.det() == BiquadraticNumber::from_rational(
                                             d1, d2, Rational(type_det_sign(t))));
                        // and the composed involution is exactly the identity
                        CHECK(M * M.complex_conj() == Matrix2::identity(d1, d2));
                        ++found;
                    }
                }
            }
        }
        CHECK(found > 0);
    }
}

TEST_CASE("historical case matrices") {
    auto d6 = FieldDiscriminant::make(6);
    auto cases6 = intro_case_matrices(6);
    REQUIRE(cases6.size() == 1);
    const auto& [M6, sigma6] = cases6[0];
    CHECK(same_cusp_point(sigma6, make_cusp(oe(0, 1), oe(2, 0)), d6));
    CHECK(moebius_apply(M6, Cusp::infinity(), d6) == sigma6);
    CHECK(M6.det().as_rational() == Rational(-1));  // 2 - 3 with both terms negated

    auto d5 = FieldDiscriminant::make(5);
    auto cases5 = intro_case_matrices(5);
    REQUIRE(cases5.size() == 1);  // 5 is prime: only the D = 1 (mod 4) construction
    const auto& [M5, sigma5] = cases5[0];
    CHECK(same_cusp_point(sigma5, make_cusp(oe(1, 1), oe(2, 0)), d5));
    CHECK(moebius_apply(M5, Cusp::infinity(), d5) == sigma5);

    auto d10 = FieldDiscriminant::make(10);
    auto cases10 = intro_case_matrices(10);
    REQUIRE(cases10.size() == 1);
    CHECK(cases10[0].first.det().as_rational() == Rational(-3));  // projective, not unimodular

    auto cases13 = intro_case_matrices(13);  // prime, 1 (mod 4)
    REQUIRE(cases13.size() == 1);

    CHECK(intro_case_matrices(7).empty());  // 7 = 3 (mod 4), prime
    CHECK_THROWS_AS(intro_case_matrices(12), std::invalid_argument);
}
