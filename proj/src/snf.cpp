#include "stlat/snf.hpp"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

namespace stlat {

std::uint32_t mod_unit_inverse(std::uint64_t u, std::uint64_t M) {
    long long r0 = static_cast<long long>(M), r1 = static_cast<long long>(u % M), t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long qt = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
    }
    if (r0 != 1) throw std::domain_error("mod_unit_inverse: not a unit");
    long long m = static_cast<long long>(M);
    return static_cast<std::uint32_t>(((t0 % m) + m) % m);
}

ModMatrix mod_mul(const ModMatrix& x, const ModMatrix& y, std::uint64_t M) {
    const std::size_t n = x.dim;
    ModMatrix r(n);
    std::vector<std::uint64_t> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < n; ++k) {
            std::uint64_t c = x.at(i, k);
            if (c == 0) continue;
            const std::uint32_t* row = &y.a[k * n];
            for (std::size_t j = 0; j < n; ++j) acc[j] = (acc[j] + c * row[j]) % M;
        }
        for (std::size_t j = 0; j < n; ++j) r.at(i, j) = static_cast<std::uint32_t>(acc[j]);
    }
    return r;
}

namespace {

template <bool Pow2>
struct Modder {
    std::uint64_t M;
    std::uint64_t operator()(std::uint64_t v) const {
        if constexpr (Pow2) return v & (M - 1);
        else return v % M;
    }
};

template <bool Pow2>
SnfResult snf_impl(const ModMatrix& A0, int ell, int N, const SnfOptions& opt) {
    const std::size_t n = A0.dim;
    std::uint64_t M = 1;
    for (int i = 0; i < N; ++i) M *= static_cast<std::uint64_t>(ell);
    const Modder<Pow2> md{M};
    auto val = [&](std::uint32_t v) {
        int k = 0;
        while (v % static_cast<std::uint32_t>(ell) == 0) {
            v /= static_cast<std::uint32_t>(ell);
            ++k;
        }
        return k;
    };

    ModMatrix A = A0;
    SnfResult res;
    auto ident = [&]() {
        ModMatrix I(n);
        for (std::size_t i = 0; i < n; ++i) I.at(i, i) = 1;
        return I;
    };
    // Tt holds T transposed so column operations on T are contiguous.
    ModMatrix S, Tt, Tinv;
    if (opt.track_S) S = ident();
    if (opt.track_T) Tt = ident();
    if (opt.track_Tinv) Tinv = ident();

    auto swap_rows = [&](ModMatrix& m, std::size_t i, std::size_t j) {
        if (i == j || m.dim == 0) return;
        for (std::size_t c = 0; c < n; ++c) std::swap(m.at(i, c), m.at(j, c));
    };
    // row_i -= f * row_k over columns [from, n)
    auto row_sub = [&](ModMatrix& m, std::size_t i, std::size_t k, std::uint64_t f, std::size_t from) {
        std::uint32_t* ri = &m.a[i * n];
        const std::uint32_t* rk = &m.a[k * n];
        const std::uint64_t nf = M - f;
        for (std::size_t c = from; c < n; ++c)
            if (rk[c]) ri[c] = static_cast<std::uint32_t>(md(ri[c] + md(nf * rk[c])));
    };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pi = n, pj = n;
        int best = N;
        for (std::size_t i = k; i < n && best > 0; ++i)
            for (std::size_t j = k; j < n; ++j) {
                std::uint32_t v = A.at(i, j);
                if (v == 0) continue;
                int vv = val(v);
                if (vv < best) {
                    best = vv;
                    pi = i;
                    pj = j;
                    if (vv == 0) break;
                }
            }
        if (pi == n)
            throw PrecisionError("snf: pivot valuation >= precision " + std::to_string(N) + " at step " +
                                 std::to_string(k) + "; raise the precision");
        swap_rows(A, k, pi);
        if (opt.track_S) swap_rows(S, k, pi);
        if (pj != k) {
            for (std::size_t r = 0; r < n; ++r) std::swap(A.at(r, k), A.at(r, pj));
            if (opt.track_T) swap_rows(Tt, k, pj);
            if (opt.track_Tinv) swap_rows(Tinv, k, pj);
        }
        std::uint64_t pk = 1;
        for (int i = 0; i < best; ++i) pk *= static_cast<std::uint64_t>(ell);
        const std::uint64_t uinv = mod_unit_inverse(A.at(k, k) / pk, M);

        for (std::size_t i = k + 1; i < n; ++i) {
            std::uint32_t v = A.at(i, k);
            if (v == 0) continue;
            std::uint64_t f = md((v / pk) * uinv);
            row_sub(A, i, k, f, k);
            if (opt.track_S) row_sub(S, i, k, f, 0);
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            std::uint32_t v = A.at(k, j);
            if (v == 0) continue;
            std::uint64_t f = md((v / pk) * uinv);
            A.at(k, j) = 0;
            // T <- T E with E = I - f e_k e_j^T; T^{-1} <- (I + f e_k e_j^T) T^{-1}
            if (opt.track_T) row_sub(Tt, j, k, f, 0);
            if (opt.track_Tinv) row_sub(Tinv, k, j, M - f, 0);
        }
        res.exponents.push_back(best);
    }
    if (opt.track_T) {
        res.T = ModMatrix(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) res.T.at(i, j) = Tt.at(j, i);
    }
    res.S = std::move(S);
    res.Tinv = std::move(Tinv);
    return res;
}

}  // namespace

SnfResult snf_chain(const ModMatrix& A, int ell, int N, const SnfOptions& opt) {
    std::uint64_t M = 1;
    for (int i = 0; i < N; ++i) {
        M *= static_cast<std::uint64_t>(ell);
        if (M >= (1ULL << 31)) throw std::invalid_argument("snf_chain: ell^N must stay below 2^31");
    }
    return ell == 2 ? snf_impl<true>(A, ell, N, opt) : snf_impl<false>(A, ell, N, opt);
}

}  // namespace stlat
