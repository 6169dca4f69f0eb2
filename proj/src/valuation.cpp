#include "stlat/valuation.hpp"

#include <stdexcept>
#include <string>

namespace stlat {

int nu(const BigInt& x, int ell) {
    if (x == 0) throw std::domain_error("nu: valuation of 0 is infinite");
    if (ell < 2) throw std::invalid_argument("nu: ell must be >= 2");
    BigInt y = x < 0 ? BigInt(-x) : x;
    int k = 0;
    while (y % ell == 0) {
        y /= ell;
        ++k;
    }
    return k;
}

int nu(long long x, int ell) {
    if (x == 0) throw std::domain_error("nu: valuation of 0 is infinite");
    if (ell < 2) throw std::invalid_argument("nu: ell must be >= 2");
    if (x < 0) x = -x;
    int k = 0;
    while (x % ell == 0) {
        x /= ell;
        ++k;
    }
    return k;
}

bool is_prime(long long x) {
    if (x < 2) return false;
    for (long long t = 2; t * t <= x; ++t)
        if (x % t == 0) return false;
    return true;
}

std::optional<std::pair<long long, int>> prime_power(long long q) {
    if (q < 2) return std::nullopt;
    long long p = 0;
    for (long long t = 2; t * t <= q; ++t)
        if (q % t == 0) {
            p = t;
            break;
        }
    if (p == 0) return std::make_pair(q, 1);
    int a = 0;
    while (q % p == 0) {
        q /= p;
        ++a;
    }
    if (q != 1) return std::nullopt;
    return std::make_pair(p, a);
}

int mult_order(long long x, long long m) {
    if (m < 2) throw std::invalid_argument("mult_order: modulus must be >= 2");
    long long r = ((x % m) + m) % m;
    long long y = r;
    for (int k = 1; k <= m; ++k) {
        if (y == 1) return k;
        y = (y * r) % m;
    }
    throw std::invalid_argument("mult_order: element is not a unit");
}

BigInt ipow(long long base, int exp) {
    BigInt r = 1, b = base;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

std::vector<int> digits(long long x, int base) {
    std::vector<int> out;
    while (x > 0) {
        out.push_back(static_cast<int>(x % base));
        x /= base;
    }
    return out;
}

int compute_e(int ell, long long q) {
    if (!is_prime(ell)) throw std::invalid_argument("compute_e: ell must be prime");
    if (q % ell == 0) throw std::invalid_argument("compute_e: ell divides q");
    // 1 + q + ... + q^{i-1} mod ell
    long long qm = q % ell, sum = 1, pw = 1;
    for (int i = 2; i <= ell + 1; ++i) {
        pw = (pw * qm) % ell;
        sum = (sum + pw) % ell;
        if (sum == 0) return i;
    }
    throw std::logic_error("compute_e: no e found (unreachable for prime ell)");
}

int compute_d(int ell, long long q) { return nu(w(q, compute_e(ell, q)), ell); }

ValParams make_val_params(int ell, long long q) {
    if (!is_prime(ell)) throw std::invalid_argument("ell = " + std::to_string(ell) + " is not prime");
    if (!prime_power(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    if (q % ell == 0) throw std::invalid_argument("ell divides q");
    ValParams vp;
    vp.ell = ell;
    vp.q = q;
    vp.e = compute_e(ell, q);
    vp.d = nu(w(q, vp.e), ell);
    return vp;
}

BigInt w(long long q, int a, int b) {
    if (a < 1 || b < 1) throw std::invalid_argument("w: arguments must be positive");
    if (a % b != 0) throw std::invalid_argument("w: b must divide a");
    BigInt qb = ipow(q, b);
    // (q^a - 1)/(q^b - 1) = 1 + q^b + q^{2b} + ... + q^{a-b}
    BigInt r = 0, t = 1;
    for (int k = 0; k < a / b; ++k) {
        r += t;
        t *= qb;
    }
    return r;
}

int g_val(const ValParams& vp, int a) {
    if (a < 1) throw std::invalid_argument("g: a must be >= 1");
    return nu(w(vp.q, a), vp.ell);
}

int h_brute(const ValParams& vp, int a) {
    if (a < 1) throw std::invalid_argument("h: a must be >= 1");
    int total = 0;
    for (int j = 1; j <= a; ++j) total += g_val(vp, j);
    return total;
}

int HMemo::h(int a) {
    if (a < 1) throw std::invalid_argument("h: a must be >= 1");
    while (static_cast<int>(prefix_.size()) <= a) {
        int j = static_cast<int>(prefix_.size());
        prefix_.push_back(prefix_.back() + g_val(vp_, j));
    }
    return prefix_[a];
}

long long s_seq(const ValParams& vp, int i) {
    if (i < 0) throw std::invalid_argument("s_seq: index must be >= 0");
    long long s = vp.d;
    for (int k = 0; k < i; ++k) s = vp.ell * s + 1;
    return s;
}

long long h_fast(const ValParams& vp, long long a) {
    if (a < 1) throw std::invalid_argument("h_fast: a must be >= 1");
    std::vector<int> y = digits(a / vp.e, vp.ell);
    long long total = 0, s = vp.d;
    for (int yi : y) {
        total += yi * s;
        s = vp.ell * s + 1;
    }
    return total;
}

FindQResult find_q(int ell, int e, int s, long long bound) {
    if (!is_prime(ell)) throw std::invalid_argument("find_q: ell must be prime");
    if (s < 1) throw std::invalid_argument("find_q: s must be >= 1");
    bool odd_shape = ell % 2 == 1 && e >= 2 && (ell - 1) % e == 0;
    bool two_shape = ell == 2 && e == 2;
    if (!odd_shape && !two_shape)
        throw std::invalid_argument("find_q: need (ell odd, e >= 2, e | ell-1) or ell = e = 2");
    FindQResult res;
    res.bound = bound;
    for (long long q = 2; q <= bound; ++q) {
        if (q == ell || !is_prime(q)) continue;
        if (compute_e(ell, q) != e) continue;
        if (compute_d(ell, q) >= s) {
            res.q = q;
            return res;
        }
    }
    return res;
}

}  // namespace stlat
