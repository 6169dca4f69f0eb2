#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stlat {

// Polynomials over Z/mod, coefficients low degree first.
using Poly = std::vector<long long>;

namespace poly {
Poly trim(Poly a);
Poly add(const Poly& a, const Poly& b, long long mod);
Poly sub(const Poly& a, const Poly& b, long long mod);
Poly mul(const Poly& a, const Poly& b, long long mod);
Poly scale(const Poly& a, long long c, long long mod);
// Division by a monic divisor; returns {quotient, remainder}.
std::pair<Poly, Poly> divmod_monic(const Poly& a, const Poly& m, long long mod);
// Extended Euclid over a prime field: returns {g, s, t} with s*a + t*b = g monic.
struct Bezout {
    Poly g, s, t;
};
Bezout xgcd(const Poly& a, const Poly& b, long long p);
bool is_irreducible(const Poly& f, long long p);
// Monic polynomial of degree k whose coefficient vector (c_0..c_{k-1}) has
// base-p code `code` = sum c_i p^i.
Poly monic_from_code(long long code, int k, long long p);
}  // namespace poly

// F_{p^k} as F_p[x]/(modulus), elements encoded as sum c_i p^i with c the
// coefficient vector. Addition, multiplication, inverse and trace are
// table-driven; the size is capped at 1024.
class FiniteField {
public:
    using Elem = std::uint16_t;

    FiniteField() = default;
    FiniteField(long long p, Poly modulus);
    // Monic irreducible of degree k with the least base-p code.
    static FiniteField standard(long long p, int k);

    long long characteristic() const { return p_; }
    int degree() const { return k_; }
    int size() const { return size_; }
    const Poly& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const { return add_[a * size_ + b]; }
    Elem sub(Elem a, Elem b) const { return add_[a * size_ + neg_[b]]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * size_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem inv(Elem a) const;  // throws on 0
    Elem pow(Elem a, long long e) const;
    int trace(Elem a) const { return trace_[a]; }  // value in F_p as 0..p-1
    Elem from_int(long long v) const;               // image of an integer
    Elem from_coeffs(const std::vector<long long>& c) const;
    std::vector<long long> coeffs(Elem a) const;
    Elem primitive() const { return primitive_; }  // least generator of F^*
    int order(Elem a) const;                       // multiplicative order
    const Elem* mul_row(Elem c) const { return &mul_[c * size_]; }
    const Elem* add_row(Elem c) const { return &add_[c * size_]; }
    std::string to_string(Elem a) const;

private:
    long long p_ = 0;
    int k_ = 0;
    int size_ = 0;
    Poly modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_;
    std::vector<int> trace_;
    Elem primitive_ = 0;
};

}  // namespace stlat
