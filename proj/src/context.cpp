#include "stlat/context.hpp"

#include <sstream>
#include <stdexcept>

namespace stlat {

long long Context::ell_pow(int i) const {
    long long r = 1;
    for (int k = 0; k < i; ++k) r *= ell;
    return r;
}

std::string Context::describe() const {
    std::ostringstream os;
    os << "n=" << n << " q=" << q << " ell=" << ell << " (e=" << e << ", d=" << d << ", m=" << m
       << ", b=" << b << ", f=" << f << ", N=" << N << ")";
    return os.str();
}

Context build_context(int n, long long q, int ell, std::optional<int> precision) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (!is_prime(ell)) throw std::invalid_argument("ell = " + std::to_string(ell) + " is not prime");
    auto pp = prime_power(q);
    if (!pp) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    if (pp->first == ell) throw std::invalid_argument("ell must differ from the characteristic p of F_q");

    Context c;
    c.n = n;
    c.q = q;
    c.p = pp->first;
    c.a = pp->second;
    c.ell = ell;
    ValParams vp = make_val_params(ell, q);
    c.e = vp.e;
    c.d = vp.d;
    c.floor_ne = n / c.e;
    c.x = digits(c.floor_ne, ell);
    c.m = static_cast<int>(c.x.size()) - 1;
    for (int i = 0; i <= c.m; ++i) c.s.push_back(s_seq(vp, i));
    c.b = 0;
    for (int i = 0; i <= c.m; ++i) c.b += c.s[i] * c.x[i];
    c.f = mult_order(ell, c.p);
    int minN = static_cast<int>(c.b) + 2;
    if (precision) {
        if (*precision < minN)
            throw std::invalid_argument("precision must be >= b + 2 = " + std::to_string(minN));
        c.N = *precision;
    } else {
        c.N = minN;
    }
    return c;
}

}  // namespace stlat
