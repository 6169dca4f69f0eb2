#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stlat {

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Square matrix over Z/ell^N, row-major.
struct ModMatrix {
    std::size_t dim = 0;
    std::vector<std::uint32_t> a;

    ModMatrix() = default;
    explicit ModMatrix(std::size_t d) : dim(d), a(d * d, 0) {}
    std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
};

struct SnfResult {
    std::vector<int> exponents;  // e_1 <= ... <= e_dim
    ModMatrix S, T, Tinv;        // empty unless requested; S*A*T = diag(ell^{e_i} * unit)
};

struct SnfOptions {
    bool track_S = false;
    bool track_T = true;
    bool track_Tinv = false;
};

// Smith form over the chain ring Z/ell^N. The pivot is always an entry of
// least valuation, least in row-major order among those. Throws
// PrecisionError when a pivot would have valuation >= N.
SnfResult snf_chain(const ModMatrix& A, int ell, int N, const SnfOptions& opt = {});

std::uint32_t mod_unit_inverse(std::uint64_t u, std::uint64_t M);
ModMatrix mod_mul(const ModMatrix& x, const ModMatrix& y, std::uint64_t M);

}  // namespace stlat
