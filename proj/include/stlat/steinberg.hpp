#pragma once

#include "stlat/context.hpp"
#include "stlat/galoisring.hpp"
#include "stlat/glgroup.hpp"
#include "stlat/parabolic.hpp"
#include "stlat/snf.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stlat {

// Vector over the residue field K, entries are element codes (|K| <= 256).
using KVec = std::vector<std::uint8_t>;

// lambda(u) = zeta^{Tr(sum_i c_i u_{i,i+1})}.
struct Character {
    std::vector<Fq> c;  // length n-1
    bool operator==(const Character&) const = default;
    auto operator<=>(const Character&) const = default;
};

std::vector<Character> all_characters(const GLn& G);  // first coordinate most significant
Composition parabolic_of(const Character& lam);       // P(lambda) from J(lambda)
// The 0/1 representative of the H-orbit attached to P.
Character canonical_character(const Composition& P);
std::string character_to_string(const GLn& G, const Character& lam);

// Integer matrix acting on column vectors; cols[j] lists (row, coefficient).
struct SparseIntMatrix {
    std::size_t dim = 0;
    std::vector<std::vector<std::pair<std::uint32_t, int>>> cols;
};

struct GramData {
    ModMatrix A;                 // f(u e, v e) mod ell^N in the {u e} basis
    std::vector<int> exponents;  // ascending
    ModMatrix T, Tinv;           // S A T = D; Tinv empty unless requested
};

struct FiltrationDims {
    int c;
    std::size_t dim_L;  // dim L(c)
    std::size_t dim_M;  // dim M(c) = dim L(c)/L(c+1)
};

// The lattice I = RG e inside the span of the coset symbols gB, with
// e = sum_sigma sg(sigma) sigma B. Vectors are dense over the coset table
// ("coset coordinates") or over U ("u-coordinates", the basis {u e}).
class Steinberg {
public:
    using LatticeVector = std::vector<GRElem>;

    explicit Steinberg(const Context& ctx, std::uint64_t coset_budget = kDefaultCosetBudget);

    const Context& context() const { return ctx_; }
    const GLn& group() const { return *G_; }
    const CosetTable& cosets() const { return *T_; }
    const GaloisRing& ring() const { return *R_; }
    const FiniteField& K() const { return R_->residue_field(); }

    // U, indexed by its entries on the positive roots (first root most significant).
    std::size_t u_size() const { return U_.size(); }
    const FqMatrix& u_element(std::size_t k) const { return U_[k]; }
    std::size_t u_index(const FqMatrix& u) const;
    std::size_t u_mul(std::size_t a, std::size_t b) const;
    std::size_t u_inv(std::size_t a) const;

    LatticeVector zero_vector() const { return LatticeVector(T_->size()); }
    LatticeVector e_hat() const;
    std::vector<LatticeVector> basis_I() const;  // {u e} in U order
    // The {u e} are independent: on the top Bruhat cell u e is sg(s0) at u s0 B.
    bool basis_independent() const;
    LatticeVector translate(const FqMatrix& g, const LatticeVector& x) const;
    std::vector<GRElem> to_u_coords(const LatticeVector& x) const;
    LatticeVector from_u_coords(const std::vector<GRElem>& y) const;

    int char_exponent(const Character& lam, const FqMatrix& u) const;  // t with lambda(u) = zeta^t
    GRElem char_value(const Character& lam, std::size_t u) const;
    LatticeVector E_lambda(const Character& lam) const;         // closed form over Bruhat cells
    LatticeVector E_lambda_direct(const Character& lam) const;  // sum_u lambda(u) u e
    std::vector<GRElem> E_lambda_u(const Character& lam) const;  // u-coordinates (lambda(u))_u
    KVec F_lambda(const Character& lam) const;                  // reduction mod ell
    GRElem form_f(const LatticeVector& x, const LatticeVector& y) const;
    // f in u-coordinates through the Gram matrix.
    GRElem form_u(const std::vector<GRElem>& x, const std::vector<GRElem>& y) const;

    // Action of g on I in u-coordinates (integer entries).
    SparseIntMatrix action_on_I(const FqMatrix& g) const;
    const std::vector<SparseIntMatrix>& generator_actions() const;
    std::vector<GRElem> apply(const SparseIntMatrix& m, const std::vector<GRElem>& y) const;
    std::vector<GRElem> apply_u(std::size_t u, const std::vector<GRElem>& y) const;  // regular action

    // [G:P] mod ell^N.
    GRElem index_GP(const Composition& P) const;

    const GramData& gram(bool with_inverse_transform = false) const;
    std::vector<FiltrationDims> filtration_dims() const;  // c = 0..b+1
    // Reductions of the columns i of T with e_i >= c; a basis of L(c).
    std::vector<KVec> L_basis(int c) const;
    // Basis ell^{max(c-e_i,0)} T_i of I(c), as columns mod ell^N.
    std::vector<std::vector<std::uint32_t>> I_basis(int c) const;

private:
    const std::vector<std::vector<std::uint32_t>>& u_sigma_cosets() const;

    Context ctx_;
    std::unique_ptr<GLn> G_;
    std::unique_ptr<CosetTable> T_;
    std::unique_ptr<GaloisRing> R_;
    std::vector<FqMatrix> U_;
    std::vector<Root> roots_;
    std::vector<int> perm_sign_;
    int s0_idx_ = 0;
    std::vector<GRElem> zeta_pow_;
    std::vector<FiniteField::Elem> zeta_pow_K_;
    mutable std::vector<std::vector<std::uint32_t>> u_sigma_;  // coset of u*sigma
    mutable std::vector<std::uint32_t> umul_;
    mutable std::vector<SparseIntMatrix> gen_actions_;
    mutable std::optional<GramData> gram_;
    mutable bool gram_has_inverse_ = false;
};

// Reported checks on the lattice, each over all characters unless noted.
struct LatticeCheck {
    std::string name;
    bool pass = true;
    bool skipped = false;
    std::size_t cases = 0;
    std::string detail;
};

// f(E_lambda, u e) = lambda(u) [G:P(lambda)] and f(E_lambda, E_{lambda^{-1}}) = |U| [G:P(lambda)].
LatticeCheck check_form_on_eigenvectors(const Steinberg& S);
// Closed-form E_lambda equals sum_u lambda(u) u e.
LatticeCheck check_E_closed_form(const Steinberg& S);
// u E_lambda = lambda(u)^{-1} E_lambda.
LatticeCheck check_U_eigen(const Steinberg& S);
// h E_lambda = E_{h lambda} for h = diag with theta in one slot.
LatticeCheck check_diagonal_twist(const Steinberg& S);
// Whenever X = (sum over U^-_{s^{-1}}) s E_lambda is a U-eigenvector with
// character mu^{-1}, X = sg(s) E_mu.
LatticeCheck check_cell_sum_eigen(const Steinberg& S);
// Gram symmetric and invariant under the generators.
LatticeCheck check_gram_invariance(const Steinberg& S);

}  // namespace stlat
