#pragma once

#include "stlat/context.hpp"
#include "stlat/field.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace stlat {

inline constexpr int kMaxResidueDegree = 16;

struct GRElem {
    std::array<std::uint32_t, kMaxResidueDegree> c{};
    bool operator==(const GRElem&) const = default;
};

// ell-adic valuation, or the "at least N" token when every digit below N vanishes.
struct GRVal {
    int value = 0;
    bool at_least_N = false;
    bool operator==(const GRVal&) const = default;
    std::string to_string(int N) const;
};

// GR(ell^N, f) = (Z/ell^N)[x]/(M(x)), where M is the Hensel lift of the
// least monic degree-f factor of the p-th cyclotomic polynomial mod ell.
// The residue field K = F_ell[x]/(M mod ell) is exposed for mod-ell work.
class GaloisRing {
public:
    GaloisRing(int ell, int N, long long p);
    explicit GaloisRing(const Context& ctx) : GaloisRing(ctx.ell, ctx.N, ctx.p) {}

    int ell() const { return ell_; }
    int precision() const { return N_; }
    int degree() const { return f_; }
    long long p() const { return p_; }
    std::uint64_t modulus_int() const { return M_; }  // ell^N
    const Poly& modulus() const { return modulus_; }  // monic, coefficients mod ell^N
    const FiniteField& residue_field() const { return K_; }

    GRElem zero() const { return GRElem{}; }
    GRElem one() const { return from_int(1); }
    GRElem from_int(long long v) const;
    GRElem add(const GRElem& a, const GRElem& b) const;
    GRElem sub(const GRElem& a, const GRElem& b) const;
    GRElem neg(const GRElem& a) const;
    GRElem mul(const GRElem& a, const GRElem& b) const;
    GRElem mul_int(const GRElem& a, long long k) const;
    GRElem pow(const GRElem& a, long long e) const;
    GRElem unit_inverse(const GRElem& a) const;  // throws std::domain_error on a non-unit
    GRVal val(const GRElem& a) const;
    bool is_zero(const GRElem& a) const { return a == GRElem{}; }
    // a / ell^k for a with val(a) >= k; the result is exact modulo ell^{N-k}.
    GRElem div_ell_pow(const GRElem& a, int k) const;
    GRElem zeta_p() const { return zeta_; }
    FiniteField::Elem to_K(const GRElem& a) const;
    std::string to_string(const GRElem& a) const;

private:
    int ell_, N_, f_;
    long long p_;
    std::uint64_t M_;
    Poly modulus_;
    FiniteField K_;
    GRElem zeta_;
};

}  // namespace stlat
