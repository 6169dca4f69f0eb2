#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace stlat {

using BigInt = boost::multiprecision::cpp_int;

// Largest k with ell^k | x. Throws std::domain_error for x == 0.
int nu(const BigInt& x, int ell);
int nu(long long x, int ell);

bool is_prime(long long x);

// (p, a) with q = p^a, or nullopt if q is not a prime power.
std::optional<std::pair<long long, int>> prime_power(long long q);

// Multiplicative order of x modulo m (gcd(x, m) must be 1, m >= 2).
int mult_order(long long x, long long m);

BigInt ipow(long long base, int exp);

// Base-`base` digits of x, least significant first. Empty for x == 0.
std::vector<int> digits(long long x, int base);

struct ValParams {
    int ell = 0;
    long long q = 0;
    int e = 0;
    int d = 0;
};

// Least i >= 2 with ell | (q^i - 1)/(q - 1). Requires ell prime, ell not dividing q.
int compute_e(int ell, long long q);
// nu_ell((q^e - 1)/(q - 1)).
int compute_d(int ell, long long q);
// Validated (ell, q) pair with e and d filled in. Throws std::invalid_argument.
ValParams make_val_params(int ell, long long q);

// w(a, b) = (q^a - 1)/(q^b - 1), exact. Throws std::invalid_argument unless b | a.
BigInt w(long long q, int a, int b);
inline BigInt w(long long q, int a) { return w(q, a, 1); }

// g(a) = nu(w(a)); h(a) = g(1) + ... + g(a). Direct big-integer evaluation.
int g_val(const ValParams& vp, int a);
int h_brute(const ValParams& vp, int a);

// Prefix table of h for repeated lookups. Not safe for concurrent mutation.
class HMemo {
public:
    explicit HMemo(ValParams vp) : vp_(vp), prefix_{0} {}
    int h(int a);
    const ValParams& params() const { return vp_; }

private:
    ValParams vp_;
    std::vector<int> prefix_;
};

// s_0 = d, s_{i+1} = ell*s_i + 1.
long long s_seq(const ValParams& vp, int i);

// h(a) from the digits of floor(a/e): sum_i y_i s_i.
long long h_fast(const ValParams& vp, long long a);

struct FindQResult {
    std::optional<long long> q;  // least qualifying prime, if any
    long long bound = 0;         // primes up to here were searched
};

// Least prime q <= bound with e(ell, q) == e and d(ell, q) >= s. Only the
// shapes (ell odd, e >= 2, e | ell - 1) and (ell == 2 == e) are accepted;
// anything else throws std::invalid_argument. Exhaustion is not an error.
FindQResult find_q(int ell, int e, int s, long long bound);

}  // namespace stlat
