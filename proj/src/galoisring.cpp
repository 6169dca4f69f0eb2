#include "stlat/galoisring.hpp"

#include "stlat/valuation.hpp"

#include <stdexcept>

namespace stlat {

std::string GRVal::to_string(int N) const {
    return at_least_N ? ">=" + std::to_string(N) : std::to_string(value);
}

GaloisRing::GaloisRing(int ell, int N, long long p) : ell_(ell), N_(N), p_(p) {
    if (!is_prime(ell) || !is_prime(p) || ell == p) throw std::invalid_argument("GaloisRing: need primes ell != p");
    if (N < 1) throw std::invalid_argument("GaloisRing: precision must be >= 1");
    f_ = mult_order(ell, p);
    if (f_ > kMaxResidueDegree) throw std::invalid_argument("GaloisRing: residue degree exceeds " + std::to_string(kMaxResidueDegree));
    std::uint64_t M = 1;
    for (int i = 0; i < N; ++i) {
        M *= static_cast<std::uint64_t>(ell);
        if (M >= (1ULL << 31)) throw std::invalid_argument("GaloisRing: ell^N must stay below 2^31");
    }
    M_ = M;
    const long long Ml = static_cast<long long>(M_);

    // least monic degree-f divisor of the p-th cyclotomic polynomial mod ell
    Poly cyclo(p, 1);
    long long count = 1;
    for (int i = 0; i < f_; ++i) {
        count *= ell;
        if (count > (1LL << 20)) throw std::invalid_argument("GaloisRing: residue field too large to search");
    }
    Poly g, h;
    for (long long code = 0; code < count; ++code) {
        Poly cand = poly::monic_from_code(code, f_, ell);
        auto [q, r] = poly::divmod_monic(cyclo, cand, ell);
        if (r.empty()) {
            g = cand;
            h = q;
            break;
        }
    }
    if (g.empty()) throw std::logic_error("GaloisRing: cyclotomic factor not found");

    // Hensel lift g*h = cyclo from mod ell to mod ell^N, one digit at a time.
    auto bez = poly::xgcd(g, h, ell);
    if (bez.g != Poly{1}) throw std::logic_error("GaloisRing: factors not coprime");
    Poly G = g, H = h;
    long long pk = 1;
    for (int k = 1; k < N; ++k) {
        pk *= ell;
        Poly diff = poly::sub(cyclo, poly::mul(G, H, Ml), Ml);
        Poly E(diff.size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            if (diff[i] % pk != 0) throw std::logic_error("GaloisRing: Hensel step lost divisibility");
            E[i] = (diff[i] / pk) % ell;
        }
        E = poly::trim(E);
        Poly dG = poly::divmod_monic(poly::mul(bez.t, E, ell), g, ell).second;
        auto [dH, rem] = poly::divmod_monic(poly::sub(E, poly::mul(dG, h, ell), ell), g, ell);
        if (!rem.empty()) throw std::logic_error("GaloisRing: Hensel correction not exact");
        G = poly::add(G, poly::scale(dG, pk, Ml), Ml);
        H = poly::add(H, poly::scale(dH, pk, Ml), Ml);
    }
    if (!poly::sub(cyclo, poly::mul(G, H, Ml), Ml).empty()) throw std::logic_error("GaloisRing: lift check failed");
    modulus_ = G;
    K_ = FiniteField(ell, g);

    if (f_ > 1) {
        zeta_ = GRElem{};
        zeta_.c[1] = 1;
    } else {
        long long r = 0;
        for (long long t = 2; t < ell && r == 0; ++t) {
            long long y = 1;
            for (long long i = 0; i < p; ++i) y = y * t % ell;
            if (y == 1) r = t;
        }
        if (r == 0) throw std::logic_error("GaloisRing: no primitive p-th root in F_ell");
        // Teichmueller lift: iterate x -> x^ell to the fixed point.
        GRElem x = from_int(r);
        for (int i = 0; i < N + 1; ++i) x = pow(x, ell);
        zeta_ = x;
    }
}

GRElem GaloisRing::from_int(long long v) const {
    GRElem r{};
    long long m = static_cast<long long>(M_);
    v %= m;
    if (v < 0) v += m;
    r.c[0] = static_cast<std::uint32_t>(v);
    return r;
}

GRElem GaloisRing::add(const GRElem& a, const GRElem& b) const {
    GRElem r{};
    for (int i = 0; i < f_; ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(a.c[i]) + b.c[i];
        r.c[i] = static_cast<std::uint32_t>(s >= M_ ? s - M_ : s);
    }
    return r;
}

GRElem GaloisRing::sub(const GRElem& a, const GRElem& b) const {
    GRElem r{};
    for (int i = 0; i < f_; ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(a.c[i]) + M_ - b.c[i];
        r.c[i] = static_cast<std::uint32_t>(s >= M_ ? s - M_ : s);
    }
    return r;
}

GRElem GaloisRing::neg(const GRElem& a) const { return sub(GRElem{}, a); }

GRElem GaloisRing::mul(const GRElem& a, const GRElem& b) const {
    std::uint64_t t[2 * kMaxResidueDegree] = {};
    for (int i = 0; i < f_; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < f_; ++j) t[i + j] = (t[i + j] + static_cast<std::uint64_t>(a.c[i]) * b.c[j]) % M_;
    }
    for (int i = 2 * f_ - 2; i >= f_; --i) {
        std::uint64_t c = t[i];
        if (c == 0) continue;
        t[i] = 0;
        for (int j = 0; j < f_; ++j) {
            std::uint64_t mj = static_cast<std::uint64_t>(modulus_[j]);
            t[i - f_ + j] = (t[i - f_ + j] + M_ - (c * mj) % M_) % M_;
        }
    }
    GRElem r{};
    for (int i = 0; i < f_; ++i) r.c[i] = static_cast<std::uint32_t>(t[i]);
    return r;
}

GRElem GaloisRing::mul_int(const GRElem& a, long long k) const { return mul(a, from_int(k)); }

GRElem GaloisRing::pow(const GRElem& a, long long e) const {
    if (e < 0) return pow(unit_inverse(a), -e);
    GRElem r = one(), b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

GRVal GaloisRing::val(const GRElem& a) const {
    int best = N_;
    for (int i = 0; i < f_; ++i) {
        std::uint32_t v = a.c[i];
        if (v == 0) continue;
        int k = 0;
        while (v % ell_ == 0) {
            v /= ell_;
            ++k;
        }
        best = std::min(best, k);
    }
    if (best >= N_) return GRVal{N_, true};
    return GRVal{best, false};
}

GRElem GaloisRing::unit_inverse(const GRElem& a) const {
    GRVal v = val(a);
    if (v.at_least_N || v.value != 0) throw std::domain_error("unit_inverse: element is not a unit");
    FiniteField::Elem ki = K_.inv(to_K(a));
    auto kc = K_.coeffs(ki);
    GRElem y{};
    for (int i = 0; i < f_; ++i) y.c[i] = static_cast<std::uint32_t>(kc[i]);
    const GRElem two = from_int(2);
    for (int prec = 1; prec < N_; prec *= 2) y = mul(y, sub(two, mul(a, y)));
    if (mul(a, y) != one()) throw std::logic_error("unit_inverse: Newton iteration failed");
    return y;
}

GRElem GaloisRing::div_ell_pow(const GRElem& a, int k) const {
    std::uint64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= static_cast<std::uint64_t>(ell_);
    GRElem r{};
    for (int i = 0; i < f_; ++i) {
        if (a.c[i] % pk != 0) throw std::domain_error("div_ell_pow: element not divisible");
        r.c[i] = static_cast<std::uint32_t>(a.c[i] / pk);
    }
    return r;
}

FiniteField::Elem GaloisRing::to_K(const GRElem& a) const {
    std::vector<long long> c(f_);
    for (int i = 0; i < f_; ++i) c[i] = a.c[i] % ell_;
    return K_.from_coeffs(c);
}

std::string GaloisRing::to_string(const GRElem& a) const {
    std::string s = "(";
    for (int i = 0; i < f_; ++i) {
        if (i) s += ",";
        s += std::to_string(a.c[i]);
    }
    return s + ")";
}

}  // namespace stlat
