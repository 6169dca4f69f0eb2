#pragma once

#include "stlat/valuation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stlat {

// Every derived parameter for a triple (n, q, ell).
struct Context {
    int n = 0;
    long long p = 0;
    int a = 0;
    long long q = 0;
    int ell = 0;
    int e = 0;
    int d = 0;
    long long floor_ne = 0;    // floor(n/e)
    int m = -1;                // largest i with ell^i <= floor(n/e); -1 if floor(n/e) == 0
    std::vector<int> x;        // base-ell digits of floor(n/e), x[0..m]
    std::vector<long long> s;  // s_0..s_m
    long long b = 0;           // nu_ell([G:B])
    int f = 0;                 // multiplicative order of ell mod p
    int N = 0;                 // working precision, ell-adic digits

    ValParams vp() const { return ValParams{ell, q, e, d}; }
    long long ell_pow(int i) const;
    std::string describe() const;
};

// Throws std::invalid_argument for n < 2, ell not prime, q not a prime power,
// ell dividing q, or a precision override below b + 2.
Context build_context(int n, long long q, int ell, std::optional<int> precision = std::nullopt);

}  // namespace stlat
