#pragma once

#include "stlat/field.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stlat {

using Fq = FiniteField::Elem;

// Square matrix over F_q, row-major element codes.
struct FqMatrix {
    int n = 0;
    std::vector<Fq> a;

    FqMatrix() = default;
    explicit FqMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}
    Fq& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    Fq at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    bool operator==(const FqMatrix&) const = default;
};

// Permutations of {0..n-1}; p[j] is the image of j. The permutation matrix
// has a 1 at (p[j], j).
using Perm = std::vector<int>;
using Root = std::pair<int, int>;  // (i, j) with i < j

Perm perm_identity(int n);
Perm perm_compose(const Perm& a, const Perm& b);  // a after b
Perm perm_inverse(const Perm& a);
int perm_sign(const Perm& a);
Perm longest_perm(int n);  // i -> n-1-i
std::vector<Perm> all_perms(int n);  // lexicographic order
std::vector<Root> positive_roots(int n);  // lexicographic order
// I(s) = {(i,j): i<j, s(i)>s(j)}, lexicographic order.
std::vector<Root> inversions(const Perm& s);
std::string perm_to_string(const Perm& s);  // one-line notation, 1-based

// Root positions of U_s^+ (roots outside I(s)) and U_s^- (roots in I(s)).
struct USigmaRoots {
    std::vector<Root> plus, minus;
};
USigmaRoots u_sigma_subgroups(const Perm& s);

struct BruhatResult {
    FqMatrix u;
    Perm sigma;
    FqMatrix b;
};

class SingularMatrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class GLn {
public:
    GLn(int n, long long q);

    int n() const { return n_; }
    long long q() const { return q_; }
    long long p() const { return F_.characteristic(); }
    const FiniteField& field() const { return F_; }

    FqMatrix identity() const;
    FqMatrix mul(const FqMatrix& x, const FqMatrix& y) const;
    FqMatrix inverse(const FqMatrix& x) const;  // throws SingularMatrix
    bool invertible(const FqMatrix& x) const;
    bool is_upper_triangular(const FqMatrix& x) const;
    bool is_upper_unitriangular(const FqMatrix& x) const;
    FqMatrix perm_matrix(const Perm& s) const;
    FqMatrix root_element(int i, int j, Fq c) const;  // I + c E_ij
    FqMatrix diagonal(const std::vector<Fq>& h) const;
    // Unipotent matrix with entries `vals` at `roots`, multiplied in list order.
    FqMatrix root_product(const std::vector<Root>& roots, const std::vector<Fq>& vals) const;
    std::vector<FqMatrix> enumerate_roots(const std::vector<Root>& roots) const;

    // g = u * sigma * b with u in U^-_{sigma^{-1}} and b in B.
    BruhatResult bruhat(const FqMatrix& g) const;
    // Only the (sigma, u entries on I(sigma^{-1})) part of the normal form.
    std::pair<Perm, std::vector<Fq>> bruhat_cell(const FqMatrix& g) const;

    std::string to_string(const FqMatrix& x) const;

private:
    int n_;
    long long q_;
    FiniteField F_;
};

// [G:B] = prod_{j=1..n} (q^j - 1)/(q - 1), saturating at UINT64_MAX.
std::uint64_t flag_count(int n, long long q);

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t size) : std::runtime_error(what), size_(size) {}
    std::uint64_t size() const { return size_; }

private:
    std::uint64_t size_;
};

inline constexpr std::uint64_t kDefaultCosetBudget = 200000;

// Canonical representatives u*sigma*B of G/B, ordered by sigma (lexicographic)
// and then by the u entries on I(sigma^{-1}) read as base-q digits, first root
// most significant.
class CosetTable {
public:
    CosetTable(const GLn& G, std::uint64_t budget = kDefaultCosetBudget);

    const GLn& group() const { return G_; }
    std::size_t size() const { return size_; }
    const std::vector<Perm>& perms() const { return perms_; }
    int perm_index(const Perm& s) const;
    const std::vector<Root>& cell_roots(int perm_idx) const { return cell_roots_[perm_idx]; }
    std::size_t cell_offset(int perm_idx) const { return offset_[perm_idx]; }
    std::size_t cell_size(int perm_idx) const { return offset_[perm_idx + 1] - offset_[perm_idx]; }
    int perm_of(std::size_t idx) const;
    std::size_t index_of_cell(int perm_idx, const std::vector<Fq>& u_entries) const;
    FqMatrix representative(std::size_t idx) const;
    std::size_t index_of(const FqMatrix& g) const;  // coset gB
    std::size_t act(const FqMatrix& g, std::size_t idx) const;

    // Precomputed permutation of the cosets for each generator.
    void set_generators(const std::vector<FqMatrix>& gens);
    const std::vector<FqMatrix>& generators() const { return gens_; }
    std::size_t act_generator(std::size_t k, std::size_t idx) const { return gen_maps_[k][idx]; }
    bool generators_transitive() const;

private:
    const GLn& G_;
    std::size_t size_ = 0;
    std::vector<Perm> perms_;
    std::vector<std::vector<Root>> cell_roots_;
    std::vector<std::size_t> offset_;
    std::vector<FqMatrix> gens_;
    std::vector<std::vector<std::uint32_t>> gen_maps_;
};

// Fundamental transpositions, t_{i,i+1}(theta) for a generator theta of F_q^*,
// and diag(theta,1,...,1) when theta != 1.
std::vector<FqMatrix> generators(const GLn& G);
// Order of the subgroup generated by gens, by breadth-first closure; 0 when
// the closure exceeds `cap` elements.
std::uint64_t closure_order(const GLn& G, const std::vector<FqMatrix>& gens, std::uint64_t cap);
// |GL_n(q)|, saturating.
std::uint64_t gl_order(int n, long long q);

}  // namespace stlat
