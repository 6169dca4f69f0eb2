#pragma once

#include "stlat/context.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stlat {

// Ordered list of block sizes of a standard parabolic subgroup.
struct Composition {
    std::vector<int> parts;

    int n() const;
    // J as a mask over the fundamental transpositions: J[i] is (i+1, i+2).
    std::vector<bool> to_J() const;
    static Composition from_J(const std::vector<bool>& J);
    static Composition all_ones(int n);
    static Composition whole(int n);
    std::string to_string() const;  // "(2,1,2)"
    bool operator==(const Composition&) const = default;
};

// Parts sorted descending in exponent notation, e.g. "42^21^2".
std::string partition_string(const Composition& P);
Composition parse_partition_string(const std::string& s);

// All 2^{n-1} compositions of n, in order of the J mask.
std::vector<Composition> all_compositions(int n);

// y[0] is y_{-1}; y[1 + i] is y_i for 0 <= i <= m.
struct DeltaVector {
    std::vector<long long> y;
    bool operator==(const DeltaVector&) const = default;
};

// z[i] is z_i for 0 <= i <= m.
struct StarLabel {
    std::vector<long long> z;
    bool operator==(const StarLabel&) const = default;
    auto operator<=>(const StarLabel&) const = default;
    std::string to_string() const;  // "[1,0,2]"
};

DeltaVector delta(const Context& ctx, long long a);
DeltaVector delta_sum(const Context& ctx, const Composition& P);

long long star_z_minus1(const Context& ctx, const StarLabel& z);
bool star_valid(const Context& ctx, const StarLabel& z);
StarLabel star_of(const Context& ctx, const Composition& P);
// Canonical descending composition (e ell^m)^{z_m} ... e^{z_0} 1^{z_{-1}}.
Composition star_composition(const Context& ctx, const StarLabel& z);

long long phi(const Context& ctx, const Composition& P);
long long phi_star(const Context& ctx, const StarLabel& z);
long long theta(const Context& ctx, const Composition& P);
long long theta_star(const Context& ctx, const StarLabel& z);
BigInt index_PB(const Context& ctx, const Composition& P);
BigInt index_GB(const Context& ctx);

// Members of P*, sorted by theta then by descending composition.
std::vector<StarLabel> enumerate_star(const Context& ctx);
// |P*| through the digit-by-digit recursion.
long long count_star(const Context& ctx);
std::vector<StarLabel> star_classes(const Context& ctx, long long c);

struct FormulaCheck {
    std::string name;
    bool applicable = false;
    long long predicted = 0;
    bool holds = false;
};

struct VCountReport {
    long long V = 0;
    long long A = 0, Z = 0, C = 0, X = 0;
    std::optional<long long> Y;
    std::vector<long long> pvalues;     // theta values, ascending
    std::vector<long long> phi_values;  // phi values, ascending
    std::vector<FormulaCheck> checks;
    bool all_hold() const;
};

VCountReport v_count(const Context& ctx);

// Backtracking: can the parts of Q be grouped into blocks whose sums are a
// rearrangement of the parts of P?
bool refines_up_to_equiv(const Composition& Q, const Composition& P);

struct InjectivityVerdict {
    bool injective = false;            // brute force over P*
    bool predicted = false;            // digit criterion on floor(n/e), d, ell
    std::string rule;                  // which criterion branch applied
    std::optional<std::pair<StarLabel, StarLabel>> witness;
    std::string witness_kind;          // "split-first-digit", "carry-two-digits", "square-plus-one", "search"
};

InjectivityVerdict injectivity_verdict(const Context& ctx);

// Hypotheses under which theta is injective on P* (and the filtration is a
// composition series).
bool composition_series_conditions(const Context& ctx);

// Closed forms for |P*| (= V) when m <= 2 in the supported digit shapes and
// the conditions above hold.
std::optional<long long> star_count_closed_form(const Context& ctx);

struct ChainStep {
    StarLabel label;
    long long phi = 0;
    int stage = 1;  // 1: digit-carrying rewrite, 2: descent below d*floor(n/e)
};

// Labels from star_of(G) with phi dropping by exactly one per step.
std::vector<ChainStep> descent_chain(const Context& ctx);

}  // namespace stlat
