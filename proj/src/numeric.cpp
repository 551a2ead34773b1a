#include "bianchi/numeric.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace bianchi {

long long squarefree_part(long long n) {
    if (n == 0) throw std::invalid_argument("squarefree_part: zero input");
    long long sign = n < 0 ? -1 : 1;
    long long m = std::llabs(n);
    long long out = 1;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e & 1) out *= p;
    }
    return sign * out * m;
}

bool is_squarefree(long long n) {
    if (n == 0) return false;
    return squarefree_part(n) == n;
}

long long isqrt_ll(long long n) {
    if (n < 0) throw std::invalid_argument("isqrt_ll: negative input");
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<long long> prime_divisors(long long n) {
    long long m = std::llabs(n);
    std::vector<long long> out;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        out.push_back(p);
        while (m % p == 0) m /= p;
    }
    if (m > 1) out.push_back(m);
    return out;
}

std::vector<long long> divisors(long long n) {
    if (n <= 0) throw std::invalid_argument("divisors: nonpositive input");
    std::vector<long long> small, large;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

bool is_quadratic_residue(long long a, long long n) {
    if (n < 1) throw std::invalid_argument("is_quadratic_residue: modulus < 1");
    long long r = ((a % n) + n) % n;
    for (long long x = 0; x < n; ++x)
        if ((x * x) % n == r) return true;
    return false;
}

std::string rational_str(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

}  // namespace bianchi
