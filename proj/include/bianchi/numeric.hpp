#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace bianchi {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Square-free part of n, sign preserved. squarefree_part(-12) == -3.
long long squarefree_part(long long n);

bool is_squarefree(long long n);

// Floor of sqrt(n) for n >= 0.
long long isqrt_ll(long long n);

// Distinct prime divisors of |n|, ascending.
std::vector<long long> prime_divisors(long long n);

// All positive divisors of n > 0, ascending.
std::vector<long long> divisors(long long n);

// True iff x^2 = a (mod n) has a solution, by exhaustive search.
// n may be composite; n >= 1.
bool is_quadratic_residue(long long a, long long n);

// "p" when the denominator is 1, else "p/q".
std::string rational_str(const Rational& q);

}  // namespace bianchi
