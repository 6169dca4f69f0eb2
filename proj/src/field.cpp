#include "stlat/field.hpp"

#include <stdexcept>

namespace stlat {

namespace poly {

static long long md(long long v, long long mod) {
    v %= mod;
    return v < 0 ? v + mod : v;
}

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly add(const Poly& a, const Poly& b, long long mod) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = md((i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0), mod);
    return trim(r);
}

Poly sub(const Poly& a, const Poly& b, long long mod) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = md((i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0), mod);
    return trim(r);
}

Poly mul(const Poly& a, const Poly& b, long long mod) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = md(r[i + j] + md(a[i] * b[j], mod), mod);
    return trim(r);
}

Poly scale(const Poly& a, long long c, long long mod) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = md(a[i] * md(c, mod), mod);
    return trim(r);
}

std::pair<Poly, Poly> divmod_monic(const Poly& a, const Poly& m, long long mod) {
    Poly mm = trim(m);
    if (mm.empty() || mm.back() != 1) throw std::invalid_argument("divmod_monic: divisor must be monic");
    Poly r = trim(a);
    for (auto& v : r) v = md(v, mod);
    r = trim(r);
    const std::size_t dm = mm.size() - 1;
    if (r.size() <= dm) return {{}, r};
    Poly q(r.size() - dm, 0);
    for (std::size_t i = r.size(); i-- > dm;) {
        long long c = r[i];
        if (c == 0) continue;
        q[i - dm] = c;
        for (std::size_t j = 0; j <= dm; ++j) r[i - dm + j] = md(r[i - dm + j] - c * mm[j], mod);
    }
    return {trim(q), trim(r)};
}

static long long inv_mod_prime(long long a, long long p) {
    a = md(a, p);
    if (a == 0) throw std::domain_error("inverse of 0 mod p");
    long long r = 1, b = a, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

static std::pair<Poly, Poly> divmod_field(const Poly& a, const Poly& b, long long p) {
    Poly bb = trim(b);
    if (bb.empty()) throw std::domain_error("division by zero polynomial");
    long long lc = inv_mod_prime(bb.back(), p);
    auto [q, r] = divmod_monic(a, scale(bb, lc, p), p);
    return {scale(q, lc, p), r};
}

Bezout xgcd(const Poly& a, const Poly& b, long long p) {
    Poly r0 = trim(a), r1 = trim(b), s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r] = divmod_field(r0, r1, p);
        Poly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.empty()) return {{}, s0, t0};
    long long lc = inv_mod_prime(r0.back(), p);
    return {scale(r0, lc, p), scale(s0, lc, p), scale(t0, lc, p)};
}

Poly monic_from_code(long long code, int k, long long p) {
    Poly f(k + 1, 0);
    for (int i = 0; i < k; ++i) {
        f[i] = code % p;
        code /= p;
    }
    f[k] = 1;
    return f;
}

bool is_irreducible(const Poly& f, long long p) {
    Poly ff = trim(f);
    int k = static_cast<int>(ff.size()) - 1;
    if (k < 1) return false;
    for (int dg = 1; 2 * dg <= k; ++dg) {
        long long count = 1;
        for (int i = 0; i < dg; ++i) count *= p;
        for (long long code = 0; code < count; ++code) {
            auto [q, r] = divmod_monic(ff, monic_from_code(code, dg, p), p);
            if (r.empty()) return false;
        }
    }
    return true;
}

}  // namespace poly

FiniteField::FiniteField(long long p, Poly modulus) : p_(p), modulus_(poly::trim(std::move(modulus))) {
    k_ = static_cast<int>(modulus_.size()) - 1;
    if (k_ < 1 || modulus_.back() != 1) throw std::invalid_argument("field modulus must be monic of degree >= 1");
    long long sz = 1;
    for (int i = 0; i < k_; ++i) sz *= p;
    if (sz > 1024) throw std::invalid_argument("field too large for table arithmetic (size > 1024)");
    size_ = static_cast<int>(sz);
    if (!poly::is_irreducible(modulus_, p)) throw std::invalid_argument("field modulus is not irreducible");

    std::vector<Poly> el(size_);
    for (int a = 0; a < size_; ++a) el[a] = poly::trim(coeffs(static_cast<Elem>(a)));
    add_.assign(static_cast<std::size_t>(size_) * size_, 0);
    mul_.assign(static_cast<std::size_t>(size_) * size_, 0);
    neg_.assign(size_, 0);
    inv_.assign(size_, 0);
    trace_.assign(size_, 0);
    for (int a = 0; a < size_; ++a) {
        neg_[a] = from_coeffs(poly::scale(el[a], p - 1, p));
        for (int b = 0; b < size_; ++b) {
            add_[a * size_ + b] = from_coeffs(poly::add(el[a], el[b], p));
            auto prod = poly::divmod_monic(poly::mul(el[a], el[b], p), modulus_, p).second;
            mul_[a * size_ + b] = from_coeffs(prod);
        }
    }
    for (int a = 1; a < size_; ++a)
        for (int b = 1; b < size_; ++b)
            if (mul_[a * size_ + b] == 1) {
                inv_[a] = static_cast<Elem>(b);
                break;
            }
    for (int a = 0; a < size_; ++a) {
        Elem t = 0, y = static_cast<Elem>(a);
        for (int i = 0; i < k_; ++i) {
            t = add(t, y);
            y = pow(y, p);
        }
        auto c = coeffs(t);
        for (int i = 1; i < k_; ++i)
            if (c[i] != 0) throw std::logic_error("trace left the prime field");
        trace_[a] = static_cast<int>(c[0]);
    }
    for (int a = 1; a < size_; ++a)
        if (order(static_cast<Elem>(a)) == size_ - 1) {
            primitive_ = static_cast<Elem>(a);
            break;
        }
}

FiniteField FiniteField::standard(long long p, int k) {
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
        Poly f = poly::monic_from_code(code, k, p);
        if (poly::is_irreducible(f, p)) return FiniteField(p, f);
    }
    throw std::logic_error("no irreducible polynomial found");
}

FiniteField::Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of 0 in a finite field");
    return inv_[a];
}

FiniteField::Elem FiniteField::pow(Elem a, long long e) const {
    Elem r = from_int(1), b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

FiniteField::Elem FiniteField::from_int(long long v) const {
    v %= p_;
    if (v < 0) v += p_;
    return static_cast<Elem>(v);
}

FiniteField::Elem FiniteField::from_coeffs(const std::vector<long long>& c) const {
    long long code = 0, pw = 1;
    for (int i = 0; i < k_; ++i) {
        long long ci = i < static_cast<int>(c.size()) ? c[i] % p_ : 0;
        if (ci < 0) ci += p_;
        code += ci * pw;
        pw *= p_;
    }
    for (std::size_t i = k_; i < c.size(); ++i)
        if (c[i] % p_ != 0) throw std::invalid_argument("from_coeffs: degree too large");
    return static_cast<Elem>(code);
}

std::vector<long long> FiniteField::coeffs(Elem a) const {
    std::vector<long long> c(k_);
    long long v = a;
    for (int i = 0; i < k_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return c;
}

int FiniteField::order(Elem a) const {
    if (a == 0) throw std::domain_error("order of 0");
    Elem y = a;
    for (int k = 1; k <= size_; ++k) {
        if (y == 1) return k;
        y = mul(y, a);
    }
    throw std::logic_error("element order not found");
}

std::string FiniteField::to_string(Elem a) const {
    if (k_ == 1) return std::to_string(a);
    auto c = coeffs(a);
    std::string s;
    for (int i = k_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
        if (i >= 1) s += "t";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

}  // namespace stlat
