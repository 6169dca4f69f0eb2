#pragma once

#include "stlat/steinberg.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace stlat {

// y += c * x over K, starting at coordinate `from`.
void k_axpy(const FiniteField& K, KVec& y, FiniteField::Elem c, const KVec& x, std::size_t from = 0);
bool k_is_zero(const KVec& v);

// Subspace of K^dim in semi-echelon form: each row has a unit pivot and zeros
// at the pivots of earlier rows and before its own pivot.
class Subspace {
public:
    Subspace(const FiniteField& K, std::size_t ambient) : K_(&K), ambient_(ambient) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return ambient_; }
    const std::vector<KVec>& rows() const { return rows_; }
    const FiniteField& field() const { return *K_; }

    KVec reduce(KVec v) const;
    bool contains(const KVec& v) const { return k_is_zero(reduce(v)); }
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& other) const { return dim() == other.dim() && contains(other); }
    // Adds v if it is outside the span; returns the reduced row added, or nullopt.
    std::optional<std::size_t> add(const KVec& v);
    Subspace sum(const Subspace& other) const;
    // Reduced row echelon form, a canonical basis.
    std::vector<KVec> rref() const;

private:
    const FiniteField* K_;
    std::size_t ambient_;
    std::vector<KVec> rows_;
    std::vector<std::size_t> pivots_;
};

// Sparse matrix over K acting on columns; cols[j] lists (row, coefficient code).
struct SparseKMatrix {
    std::size_t dim = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> cols;
};

SparseKMatrix reduce_mod_ell(const SparseIntMatrix& m, const FiniteField& K);

// A KG-module given by generator matrices, together with one U-eigenvector
// per linear character of U. Every U-eigenline of the module is one of them.
class KModule {
public:
    KModule(const FiniteField& K, std::size_t dim, std::vector<SparseKMatrix> gens, std::vector<Character> chars,
            std::vector<KVec> eigen);

    const FiniteField& field() const { return *K_; }
    std::size_t dim() const { return dim_; }
    const std::vector<SparseKMatrix>& generators() const { return gens_; }
    const std::vector<Character>& characters() const { return chars_; }
    const KVec& eigenvector_of(std::size_t k) const { return eigen_[k]; }

    KVec apply(const SparseKMatrix& g, const KVec& v) const;
    Subspace zero() const { return Subspace(*K_, dim_); }
    Subspace whole() const;
    Subspace span(const std::vector<KVec>& vs) const;
    // Least generator-stable subspace containing seeds and base (base must be stable).
    Subspace spin(const std::vector<KVec>& seeds, const Subspace* base = nullptr) const;
    bool is_submodule(const Subspace& W) const;

    // The eigenline for character k in the section top/bottom, if present:
    // with U acting semisimply it is present iff the ambient eigenvector lies
    // in top and not in bottom.
    std::optional<KVec> eigenvector(const Subspace& top, const Subspace& bottom, std::size_t k) const;
    std::vector<std::size_t> present(const Subspace& top, const Subspace& bottom) const;

    // Generic spin-based tests on a section top/bottom.
    bool is_irreducible(const Subspace& top, const Subspace& bottom) const;

private:
    const FiniteField* K_;
    std::size_t dim_;
    std::vector<SparseKMatrix> gens_;
    std::vector<Character> chars_;
    std::vector<KVec> eigen_;
};

// Submodules of a section W/W' correspond to down-sets of the reachability
// preorder on the eigen-characters present (mu -> nu when the eigenvector of
// nu lies in the submodule generated by that of mu, modulo W'). This is the
// structure behind soc, rad, composition length and the commutant.
class ReducedLattice;

class SectionLattice {
public:
    // Spins every present eigenvector modulo bottom, on up to `threads` workers.
    SectionLattice(const KModule& M, const Subspace& top, const Subspace& bottom, unsigned threads = 1);
    SectionLattice(SectionLattice&&) = default;

    const KModule& module() const { return *M_; }
    const Subspace& top() const { return top_; }
    const Subspace& bottom() const { return bottom_; }
    std::size_t dim() const { return top_.dim() - bottom_.dim(); }
    const std::vector<std::size_t>& chars() const { return chars_; }  // present character indices
    // a, b index chars(): the eigenvector of b lies in the submodule generated by that of a.
    bool reaches(std::size_t a, std::size_t b) const { return reach_[a][b]; }
    Subspace generated(std::size_t a) const;  // spin of chars()[a] plus bottom

    // Strongly connected classes = composition factors, listed bottom-up.
    const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
    std::size_t composition_length() const { return classes_.size(); }
    std::vector<std::size_t> factor_dims() const;  // aligned with classes()
    bool class_reaches(std::size_t A, std::size_t B) const;

    // Submodule generated by the eigenvectors of the given chars() positions, plus bottom.
    Subspace submodule_of(const std::vector<std::size_t>& positions) const;
    std::vector<std::size_t> socle_classes() const;  // classes reaching no other class
    std::vector<std::size_t> top_classes() const;    // classes no other class reaches
    Subspace soc() const;
    Subspace rad() const;
    bool irreducible() const { return classes_.size() == 1; }
    bool uniserial() const;
    bool completely_reducible() const;
    std::size_t commutant_dim() const;  // weakly connected components of the class graph

private:
    friend SectionLattice section_of(const ReducedLattice& RL, const Subspace& top, const Subspace& bottom);
    SectionLattice(const KModule& M, const Subspace& top, const Subspace& bottom, std::vector<std::size_t> chars,
                   std::vector<std::vector<bool>> reach);
    void finalize();

    const KModule* M_;
    Subspace top_, bottom_;
    std::vector<std::size_t> chars_;
    std::vector<std::vector<bool>> reach_;
    std::vector<std::vector<std::size_t>> classes_;
    std::vector<int> class_of_;
};

// Dimension of the commutant by solving X g = g X directly (small dims only).
std::size_t commutant_dim_dense(const KModule& M, const Subspace& top, const Subspace& bottom);

// ------------------------------------------------------------ Steinberg data

// L = I/ell I as a KG-module with the reductions F_mu as eigenvectors, and
// the filtration L(c).
class ReducedLattice {
public:
    explicit ReducedLattice(const Steinberg& S, unsigned threads = 1);

    const Steinberg& lattice() const { return *S_; }
    const KModule& module() const { return *M_; }
    const Subspace& L(int c) const;  // c clamped to [0, b+1]
    std::size_t char_index(const Character& lam) const;
    // The whole-module lattice, built on first use.
    const SectionLattice& whole() const;
    // Character indices present in L(c).
    const std::set<std::size_t>& level_chars(int c) const;
    // N(P) inside M(c) with c = theta(P), as a subspace of L containing L(c+1).
    Subspace N_of(const Composition& P) const;

private:
    const Steinberg* S_;
    std::unique_ptr<KModule> M_;
    std::vector<Subspace> Lc_;
    std::vector<std::set<std::size_t>> level_;
    unsigned threads_;
    mutable std::unique_ptr<SectionLattice> whole_;
};

// Lattice of a section W/W' between submodules of L, read off the
// whole-module reachability without further spinning.
SectionLattice section_of(const ReducedLattice& RL, const Subspace& top, const Subspace& bottom);

enum class CheckStatus { Pass, Fail, Skipped, Reported };
std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    std::string detail;
};

struct FactorInfo {
    std::size_t dim = 0;
    std::vector<std::string> characters;
    int level = -1;  // c with the factor inside M(c)
};

struct StructureReport {
    Context ctx;
    std::size_t cosets = 0;
    std::size_t dim_L = 0;
    std::vector<int> exponents;
    std::vector<FiltrationDims> dims;
    std::vector<long long> pvalues;
    long long V = 0;
    long long star_count = 0;
    std::optional<std::size_t> composition_length;
    std::vector<FactorInfo> factors;
    std::vector<CheckResult> checks;
    bool all_pass() const;
    const CheckResult* find(const std::string& name) const;
};

struct VerifyOptions {
    std::uint64_t coset_budget = 10000;
    std::size_t dim_budget = 1024;
    std::set<std::string> checks;  // empty = all
    bool lattice_checks = true;
    unsigned threads = 1;
};

// Names of every check verify_structure knows about.
const std::vector<std::string>& structure_check_names();
// Throws BudgetExceeded when [G:B] or dim L exceeds the budget.
StructureReport verify_structure(const Context& ctx, const VerifyOptions& opt = {});

struct TcFactor {
    std::size_t dim = 0;
    std::vector<std::size_t> chars;  // character indices
    bool operator==(const TcFactor&) const = default;
    auto operator<=>(const TcFactor&) const = default;
};

struct TcReport {
    int c = 0;
    std::size_t dim = 0;
    bool embedded_Lc1 = false;       // span of b_i with e_i > c is a submodule with the characters of L(c+1)
    std::size_t embedded_dim = 0;
    std::size_t quotient_dim = 0;    // dim T^c minus the embedded copy
    bool ell_c_image_is_M0 = false;  // image of ell^c I is a submodule matching M(0)
    std::vector<TcFactor> socle;
    bool socle_irreducible = false;
    bool socle_has_M0 = false;
    bool socle_has_Lb = false;
    std::vector<TcFactor> factors;  // sorted
    bool eigen_generated = false;   // T^c is generated by the images of ell^i E_lambda
};

// T^c = I(c)/ell I(c) built from the Smith data; 0 <= c <= b.
TcReport tc_probe(const Steinberg& S, const ReducedLattice& RL, int c);

}  // namespace stlat
