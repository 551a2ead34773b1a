#include "bianchi/classgroup.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include <boost/multiprecision/integer.hpp>

namespace bianchi {

namespace {

Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// g = u*a + v*b, g >= 0.
Int ext_gcd(Int a, Int b, Int& u, Int& v) {
    Int old_r = a, r = b;
    Int old_u = 1, cu = 0;
    Int old_v = 0, cv = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_u - q * cu; old_u = cu; cu = t;
        t = old_v - q * cv; old_v = cv; cv = t;
    }
    if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
    u = old_u;
    v = old_v;
    return old_r;
}

Int mod_positive(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

FieldDiscriminant FieldDiscriminant::make(long long D) {
    if (D == 1)
        throw ExcludedFieldError("D = 1 (Gaussian integers) is excluded");
    if (D == 3)
        throw ExcludedFieldError("D = 3 (Eisensteinian integers) is excluded");
    if (D <= 0 || !is_squarefree(D))
        throw std::invalid_argument("FieldDiscriminant: D must be a positive square-free integer");
    FieldDiscriminant disc;
    disc.D = D;
    disc.half_omega = (D % 4 == 3);
    disc.delta = disc.half_omega ? -D : -4 * D;
    return disc;
}

int ClassGroupStructure::index_of(const BinaryQuadraticForm& reduced) const {
    auto it = std::lower_bound(representatives.begin(), representatives.end(), reduced);
    if (it == representatives.end() || !(*it == reduced))
        throw std::invalid_argument("ClassGroupStructure: form is not a stored representative");
    return static_cast<int>(it - representatives.begin());
}

BinaryQuadraticForm principal_form(const FieldDiscriminant& disc) {
    if (disc.half_omega) return {1, 1, (disc.D + 1) / 4};
    return {1, 0, disc.D};
}

BinaryQuadraticForm reduce_form(BinaryQuadraticForm f) {
    if (f.a <= 0)
        throw std::invalid_argument("reduce_form: form must be positive definite");
    Int delta = f.b * f.b - 4 * f.a * f.c;
    for (;;) {
        // Translate b into (-a, a].
        if (f.b > f.a || f.b <= -f.a) {
            Int two_a = 2 * f.a;
            Int bb = mod_positive(f.b + f.a, two_a) - f.a;  // in (-a, a]
            f.b = bb;
            f.c = (f.b * f.b - delta) / (4 * f.a);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.b < 0 && (f.b == -f.a || f.a == f.c)) f.b = -f.b;
        return f;
    }
}

std::vector<BinaryQuadraticForm> enumerate_reduced_forms(const FieldDiscriminant& disc) {
    std::vector<BinaryQuadraticForm> out;
    long long bound = isqrt_ll(-disc.delta / 3);
    for (long long a = 1; a <= bound; ++a) {
        for (long long b = -a; b <= a; ++b) {
            Int num = Int(b) * b - disc.delta;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (b == -a || c == a)) continue;
            if (int_gcd(int_gcd(Int(a), Int(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

IdealHNF ideal_from_generators(std::span<const std::pair<Int, Int>> gens,
                               const FieldDiscriminant& disc) {
    // Close the Z-span under multiplication by omega, then bring the rank-2
    // lattice of (x, y) coordinates into Hermite normal form.
    const Int n = disc.omega_norm();
    const Int t = disc.omega_trace();
    std::vector<std::pair<Int, Int>> all;
    for (const auto& [x, y] : gens) {
        all.emplace_back(x, y);
        all.emplace_back(-n * y, x + t * y);  // omega * (x + y*omega)
    }
    Int A = 0, Bx = 0, By = 0;
    for (const auto& [x, y] : all) {
        if (y == 0) {
            A = int_gcd(A, x);
            continue;
        }
        if (By == 0) {
            Bx = x;
            By = y;
            continue;
        }
        Int u, v;
        Int g = ext_gcd(By, y, u, v);
        A = int_gcd(A, (By / g) * x - (y / g) * Bx);
        Bx = u * Bx + v * x;
        By = g;
    }
    if (By < 0) { By = -By; Bx = -Bx; }
    if (A < 0) A = -A;
    if (A == 0 || By == 0)
        throw std::invalid_argument("ideal_from_generators: generators span a rank < 2 module");
    Bx = mod_positive(Bx, A);
    if (A % By != 0 || Bx % By != 0)
        throw std::logic_error("ideal_from_generators: module is not an O-ideal");
    IdealHNF I;
    I.alpha = By;
    I.a = A / By;
    I.b = mod_positive(Bx / By, I.a);
    return I;
}

IdealHNF ideal_multiply(const IdealHNF& I, const IdealHNF& J, const FieldDiscriminant& disc) {
    const Int n = disc.omega_norm();
    const Int t = disc.omega_trace();
    auto basis = [](const IdealHNF& K) {
        return std::array<std::pair<Int, Int>, 2>{
            std::pair<Int, Int>{K.alpha * K.a, 0},
            std::pair<Int, Int>{K.alpha * K.b, K.alpha}};
    };
    std::vector<std::pair<Int, Int>> prods;
    for (const auto& [x1, y1] : basis(I))
        for (const auto& [x2, y2] : basis(J))
            prods.emplace_back(x1 * x2 - n * y1 * y2, x1 * y2 + x2 * y1 + t * y1 * y2);
    return ideal_from_generators(prods, disc);
}

BinaryQuadraticForm ideal_to_form(const IdealHNF& I, const FieldDiscriminant& disc) {
    // Norm form of the primitive part [a, b + omega], divided by its norm a.
    const Int n = disc.omega_norm();
    const Int t = disc.omega_trace();
    Int cc = I.b * I.b + t * I.b + n;
    if (cc % I.a != 0)
        throw std::invalid_argument("ideal_to_form: HNF data is not omega-closed");
    return {I.a, 2 * I.b + t, cc / I.a};
}

IdealHNF form_to_ideal(const BinaryQuadraticForm& f, const FieldDiscriminant& disc) {
    // Inverse of ideal_to_form: b = 2*B + t, so B = (b - t)/2 (mod a).
    Int braw = disc.half_omega ? Int((f.b - 1) / 2) : Int(f.b / 2);
    IdealHNF I;
    I.alpha = 1;
    I.a = f.a;
    I.b = mod_positive(braw, f.a);
    return I;
}

bool is_principal(const IdealHNF& I, const FieldDiscriminant& disc) {
    return reduce_form(ideal_to_form(I, disc)) == principal_form(disc);
}

BinaryQuadraticForm compose(const BinaryQuadraticForm& f, const BinaryQuadraticForm& g,
                            const FieldDiscriminant& disc) {
    if (f.b * f.b - 4 * f.a * f.c != disc.delta || g.b * g.b - 4 * g.a * g.c != disc.delta)
        throw std::invalid_argument("compose: discriminant mismatch");
    IdealHNF K = ideal_multiply(form_to_ideal(f, disc), form_to_ideal(g, disc), disc);
    return reduce_form(ideal_to_form(K, disc));
}

namespace {

// Invariant factors of a finite abelian group given by its multiplication
// table, largest first. Brute force; fine at class-group desk scale.
std::vector<long long> invariant_factors(const std::vector<std::vector<int>>& table, int id) {
    const int n = static_cast<int>(table.size());
    if (n == 1) return {};
    auto order_of = [&](int g) {
        int k = 1, x = g;
        while (x != id) { x = table[static_cast<size_t>(x)][static_cast<size_t>(g)]; ++k; }
        return k;
    };
    int best = id, best_ord = 1;
    for (int g = 0; g < n; ++g) {
        int o = order_of(g);
        if (o > best_ord) { best = g; best_ord = o; }
    }
    if (best_ord == n) return {n};
    // Quotient by <best> and recurse.
    std::set<int> sub;
    for (int x = id;;) {
        sub.insert(x);
        x = table[static_cast<size_t>(x)][static_cast<size_t>(best)];
        if (x == id) break;
    }
    std::vector<int> coset_rep(static_cast<size_t>(n), -1);
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
        if (coset_rep[static_cast<size_t>(x)] != -1) continue;
        int rep = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int s : sub)
            coset_rep[static_cast<size_t>(table[static_cast<size_t>(x)][static_cast<size_t>(s)])] = rep;
    }
    const int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> qt(static_cast<size_t>(q), std::vector<int>(static_cast<size_t>(q)));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            qt[static_cast<size_t>(i)][static_cast<size_t>(j)] = coset_rep[static_cast<size_t>(
                table[static_cast<size_t>(reps[static_cast<size_t>(i)])][static_cast<size_t>(reps[static_cast<size_t>(j)])])];
    std::vector<long long> rest = invariant_factors(qt, coset_rep[static_cast<size_t>(id)]);
    std::vector<long long> out{best_ord};
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace

ClassGroupStructure class_group_structure(const FieldDiscriminant& disc) {
    ClassGroupStructure s;
    s.representatives = enumerate_reduced_forms(disc);
    s.h = static_cast<long long>(s.representatives.size());
    const int n = static_cast<int>(s.h);
    std::vector<std::vector<int>> table(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            BinaryQuadraticForm c = compose(s.representatives[static_cast<size_t>(i)],
                                            s.representatives[static_cast<size_t>(j)], disc);
            int k = s.index_of(c);
            table[static_cast<size_t>(i)][static_cast<size_t>(j)] = k;
            table[static_cast<size_t>(j)][static_cast<size_t>(i)] = k;
        }
    const int id = s.index_of(principal_form(disc));
    if (id != s.principal_index())
        throw std::logic_error("class_group_structure: principal form is not first");
    s.genus_count = 0;
    for (int i = 0; i < n; ++i)
        if (table[static_cast<size_t>(i)][static_cast<size_t>(i)] == id) ++s.genus_count;
    s.elementary_divisors = invariant_factors(table, id);
    return s;
}

std::pair<bool, bool> corollary_predicates(const ClassGroupStructure& s) {
    bool elem2 = std::all_of(s.elementary_divisors.begin(), s.elementary_divisors.end(),
                             [](long long d) { return d == 2; });
    bool cyclic2 = s.elementary_divisors.size() <= 1 && (s.h & (s.h - 1)) == 0;
    return {elem2, cyclic2};
}

std::pair<int, long long> paper_cusp_count(long long D) {
    if (D <= 0 || !is_squarefree(D) || D == 1 || D == 3)
        throw std::invalid_argument("paper_cusp_count: D out of scope");
    int n = static_cast<int>(prime_divisors(D).size());
    long long N = (D % 4 == 3) ? (1LL << (n - 1)) : (1LL << n);
    return {n, N};
}

}  // namespace bianchi
