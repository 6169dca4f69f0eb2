#include "stlat/parabolic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stlat {

int Composition::n() const {
    int t = 0;
    for (int a : parts) t += a;
    return t;
}

std::vector<bool> Composition::to_J() const {
    std::vector<bool> J;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        for (int i = 1; i < parts[k]; ++i) J.push_back(true);
        if (k + 1 < parts.size()) J.push_back(false);
    }
    return J;
}

Composition Composition::from_J(const std::vector<bool>& J) {
    Composition P;
    int run = 1;
    for (bool in : J) {
        if (in) {
            ++run;
        } else {
            P.parts.push_back(run);
            run = 1;
        }
    }
    P.parts.push_back(run);
    return P;
}

Composition Composition::all_ones(int n) { return Composition{std::vector<int>(n, 1)}; }
Composition Composition::whole(int n) { return Composition{{n}}; }

std::string Composition::to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(parts[k]);
    }
    return s + ")";
}

static std::string braced(int v) {
    return v < 10 ? std::to_string(v) : "{" + std::to_string(v) + "}";
}

std::string partition_string(const Composition& P) {
    std::vector<int> parts = P.parts;
    std::sort(parts.begin(), parts.end(), std::greater<>());
    std::string s;
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        s += braced(parts[i]);
        if (j - i > 1) s += "^" + braced(static_cast<int>(j - i));
        i = j;
    }
    return s;
}

Composition parse_partition_string(const std::string& s) {
    std::size_t pos = 0;
    auto number = [&]() -> int {
        if (pos >= s.size()) throw std::invalid_argument("partition string truncated: " + s);
        if (s[pos] == '{') {
            std::size_t close = s.find('}', pos);
            if (close == std::string::npos) throw std::invalid_argument("unbalanced brace: " + s);
            int v = std::stoi(s.substr(pos + 1, close - pos - 1));
            pos = close + 1;
            return v;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[pos])))
            throw std::invalid_argument("bad partition string: " + s);
        return s[pos++] - '0';
    };
    Composition P;
    while (pos < s.size()) {
        int part = number();
        int mult = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            mult = number();
        }
        if (part < 1 || mult < 1) throw std::invalid_argument("bad partition string: " + s);
        for (int k = 0; k < mult; ++k) P.parts.push_back(part);
    }
    return P;
}

std::vector<Composition> all_compositions(int n) {
    std::vector<Composition> out;
    if (n < 1) return out;
    const unsigned long long count = 1ULL << (n - 1);
    for (unsigned long long mask = 0; mask < count; ++mask) {
        std::vector<bool> J(n - 1);
        for (int i = 0; i < n - 1; ++i) J[i] = (mask >> i) & 1ULL;
        out.push_back(Composition::from_J(J));
    }
    return out;
}

std::string StarLabel::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(z[i]);
    }
    return s + "]";
}

DeltaVector delta(const Context& ctx, long long a) {
    if (a < 1 || a > ctx.n) throw std::out_of_range("delta: a must lie in [1, n]");
    DeltaVector dv;
    dv.y.assign(ctx.m + 2, 0);
    dv.y[0] = a % ctx.e;
    std::vector<int> dg = digits(a / ctx.e, ctx.ell);
    for (std::size_t i = 0; i < dg.size(); ++i) dv.y[1 + i] = dg[i];
    return dv;
}

DeltaVector delta_sum(const Context& ctx, const Composition& P) {
    if (P.n() != ctx.n) throw std::invalid_argument("delta_sum: composition is not of n");
    DeltaVector total;
    total.y.assign(ctx.m + 2, 0);
    for (int a : P.parts) {
        DeltaVector d = delta(ctx, a);
        for (std::size_t i = 0; i < total.y.size(); ++i) total.y[i] += d.y[i];
    }
    return total;
}

long long star_z_minus1(const Context& ctx, const StarLabel& z) {
    long long used = 0, pw = 1;
    for (std::size_t i = 0; i < z.z.size(); ++i) {
        used += z.z[i] * pw;
        pw *= ctx.ell;
    }
    return ctx.n - ctx.e * used;
}

bool star_valid(const Context& ctx, const StarLabel& z) {
    if (static_cast<int>(z.z.size()) != ctx.m + 1) return false;
    for (long long v : z.z)
        if (v < 0) return false;
    return star_z_minus1(ctx, z) >= 0;
}

StarLabel star_of(const Context& ctx, const Composition& P) {
    DeltaVector dv = delta_sum(ctx, P);
    return StarLabel{std::vector<long long>(dv.y.begin() + 1, dv.y.end())};
}

Composition star_composition(const Context& ctx, const StarLabel& z) {
    if (!star_valid(ctx, z)) throw std::invalid_argument("star label " + z.to_string() + " is not in P*");
    Composition P;
    for (int i = ctx.m; i >= 0; --i) {
        int part = static_cast<int>(ctx.e * ctx.ell_pow(i));
        for (long long k = 0; k < z.z[i]; ++k) P.parts.push_back(part);
    }
    for (long long k = 0; k < star_z_minus1(ctx, z); ++k) P.parts.push_back(1);
    return P;
}

long long phi(const Context& ctx, const Composition& P) {
    if (P.n() != ctx.n) throw std::invalid_argument("phi: composition is not of n");
    ValParams vp = ctx.vp();
    long long total = 0;
    for (int a : P.parts) total += h_fast(vp, a);
    return total;
}

long long phi_star(const Context& ctx, const StarLabel& z) {
    long long total = 0;
    for (std::size_t i = 0; i < z.z.size(); ++i) total += ctx.s[i] * z.z[i];
    return total;
}

long long theta(const Context& ctx, const Composition& P) { return ctx.b - phi(ctx, P); }
long long theta_star(const Context& ctx, const StarLabel& z) { return ctx.b - phi_star(ctx, z); }

BigInt index_PB(const Context& ctx, const Composition& P) {
    BigInt r = 1;
    for (int a : P.parts)
        for (int j = 1; j <= a; ++j) r *= w(ctx.q, j);
    return r;
}

BigInt index_GB(const Context& ctx) { return index_PB(ctx, Composition::whole(ctx.n)); }

std::vector<StarLabel> enumerate_star(const Context& ctx) {
    std::vector<StarLabel> out;
    StarLabel cur;
    cur.z.assign(ctx.m + 1, 0);
    std::function<void(int, long long)> rec = [&](int i, long long remaining) {
        if (i < 0) {
            out.push_back(cur);
            return;
        }
        long long part = ctx.e * ctx.ell_pow(i);
        for (long long j = 0; j * part <= remaining; ++j) {
            cur.z[i] = j;
            rec(i - 1, remaining - j * part);
        }
        cur.z[i] = 0;
    };
    rec(ctx.m, ctx.n);
    std::sort(out.begin(), out.end(), [&](const StarLabel& u, const StarLabel& v) {
        long long tu = theta_star(ctx, u), tv = theta_star(ctx, v);
        if (tu != tv) return tu < tv;
        return star_composition(ctx, u).parts > star_composition(ctx, v).parts;
    });
    return out;
}

long long count_star(const Context& ctx) {
    std::map<std::pair<int, long long>, long long> memo;
    std::function<long long(int, long long)> lam = [&](int i, long long n) -> long long {
        if (i < 0) return 1;
        auto key = std::make_pair(i, n);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        long long part = ctx.e * ctx.ell_pow(i), total = 0;
        for (long long j = 0; j <= n / part; ++j) total += lam(i - 1, n - part * j);
        memo[key] = total;
        return total;
    };
    return lam(ctx.m, ctx.n);
}

std::vector<StarLabel> star_classes(const Context& ctx, long long c) {
    std::vector<StarLabel> out;
    for (auto& z : enumerate_star(ctx))
        if (theta_star(ctx, z) == c) out.push_back(z);
    return out;
}

bool VCountReport::all_hold() const {
    for (auto& c : checks)
        if (c.applicable && !c.holds) return false;
    return true;
}

VCountReport v_count(const Context& ctx) {
    VCountReport r;
    std::set<long long> th, ph;
    for (auto& z : enumerate_star(ctx)) {
        ph.insert(phi_star(ctx, z));
        th.insert(theta_star(ctx, z));
    }
    r.pvalues.assign(th.begin(), th.end());
    r.phi_values.assign(ph.begin(), ph.end());
    r.V = static_cast<long long>(r.pvalues.size());

    const long long ell = ctx.ell, d = ctx.d, F = ctx.floor_ne;
    auto add = [&](std::string name, bool applicable, long long predicted, bool holds) {
        r.checks.push_back(FormulaCheck{std::move(name), applicable, predicted, applicable && holds});
    };
    auto count_below = [&](long long bound) {
        long long k = 0;
        for (long long v : r.phi_values)
            if (v < bound) ++k;
        return k;
    };
    if (ctx.m < 0) {
        r.A = r.Z = r.C = 1;
        add("V=1 (floor(n/e)=0)", true, 1, r.V == 1);
        return r;
    }
    // repunit(i) = 1 + ell + ... + ell^{i-1}
    auto repunit = [&](int i) {
        long long t = 0, pw = 1;
        for (int k = 0; k < i; ++k) {
            t += pw;
            pw *= ell;
        }
        return t;
    };
    r.A = 1;
    r.Z = 1;
    r.C = 1;
    for (int i = 0; i <= ctx.m; ++i) {
        r.A += ctx.x[i] * repunit(i + 1);
        r.Z += ctx.x[i] * ctx.s[i];
        if (i >= 1) r.C += ctx.x[i] * repunit(i);
    }
    r.X = count_below(d * F);
    add("V=C+X", true, r.C + r.X, r.V == r.C + r.X);
    add("X>=floor(n/e)", true, F, r.X >= F);
    add("A<=V<=Z", true, r.V, r.A <= r.V && r.V <= r.Z);
    if (F >= d * ell) {
        r.Y = count_below(d * d * ell);
        add("V=Z-d^2*ell+Y", true, r.Z - d * d * ell + *r.Y, r.V == r.Z - d * d * ell + *r.Y);
        add("Y>=ell*d(d+1)/2", true, ell * d * (d + 1) / 2, *r.Y >= ell * d * (d + 1) / 2);
        bool small_d = d <= ell;
        long long pred = r.Z - ell * d * (d - 1) / 2;
        add("V=Z-ell*d(d-1)/2", small_d, pred, r.V == pred);
    } else {
        add("V=Z-d^2*ell+Y", false, 0, false);
        add("Y>=ell*d(d+1)/2", false, 0, false);
        add("V=Z-ell*d(d-1)/2", false, 0, false);
    }
    bool all_values = static_cast<long long>(r.pvalues.size()) == ctx.b + 1;
    add("V=b+1 (d=1)", d == 1, ctx.b + 1, r.V == ctx.b + 1 && all_values);
    return r;
}

bool refines_up_to_equiv(const Composition& Q, const Composition& P) {
    if (Q.n() != P.n()) return false;
    std::vector<int> items = Q.parts, caps = P.parts;
    std::sort(items.begin(), items.end(), std::greater<>());
    std::sort(caps.begin(), caps.end(), std::greater<>());
    std::set<std::pair<std::size_t, std::vector<int>>> failed;
    std::function<bool(std::size_t)> place = [&](std::size_t k) -> bool {
        if (k == items.size()) return true;
        std::vector<int> key = caps;
        std::sort(key.begin(), key.end());
        if (failed.count({k, key})) return false;
        for (std::size_t j = 0; j < caps.size(); ++j) {
            if (caps[j] < items[k]) continue;
            bool seen = false;
            for (std::size_t t = 0; t < j; ++t)
                if (caps[t] == caps[j]) seen = true;
            if (seen) continue;
            caps[j] -= items[k];
            bool ok = place(k + 1);
            caps[j] += items[k];
            if (ok) return true;
        }
        failed.insert({k, key});
        return false;
    };
    return place(0);
}

bool composition_series_conditions(const Context& ctx) {
    const long long ell = ctx.ell, d = ctx.d, F = ctx.floor_ne;
    if (d <= ell) return F <= d * ell;
    if (d == ell + 1) return F <= ell * ell;
    return F < ell * ell + ell;
}

InjectivityVerdict injectivity_verdict(const Context& ctx) {
    InjectivityVerdict v;
    const long long ell = ctx.ell, d = ctx.d, F = ctx.floor_ne;
    if (d <= ell)
        v.rule = "d<=ell: injective iff floor(n/e)<=d*ell";
    else if (d == ell + 1)
        v.rule = "d=ell+1: injective iff floor(n/e)<=ell^2";
    else
        v.rule = "d>ell+1: injective iff floor(n/e)<ell^2+ell";
    v.predicted = composition_series_conditions(ctx);

    std::map<long long, StarLabel> first;
    std::optional<std::pair<StarLabel, StarLabel>> found;
    for (auto& z : enumerate_star(ctx)) {
        long long ph = phi_star(ctx, z);
        auto [it, inserted] = first.emplace(ph, z);
        if (!inserted && !found) found = std::make_pair(it->second, z);
    }
    v.injective = !found.has_value();
    if (v.injective) return v;

    auto label = [&](std::vector<std::pair<int, long long>> entries) {
        StarLabel z;
        z.z.assign(ctx.m + 1, 0);
        for (auto [i, val] : entries) {
            if (i > ctx.m) return std::optional<StarLabel>{};
            z.z[i] = val;
        }
        return std::optional<StarLabel>{z};
    };
    auto try_pair = [&](std::optional<StarLabel> P, std::optional<StarLabel> Q, const char* kind) {
        if (v.witness || !P || !Q) return;
        if (!star_valid(ctx, *P) || !star_valid(ctx, *Q)) return;
        if (phi_star(ctx, *P) != phi_star(ctx, *Q)) return;
        v.witness = std::make_pair(*P, *Q);
        v.witness_kind = kind;
    };
    if (F >= d * ell + 1) try_pair(label({{0, d * ell + 1}}), label({{1, d}}), "split-first-digit");
    if (F >= ell * ell + ell) try_pair(label({{0, ell}, {2, 1}}), label({{1, ell + 1}}), "carry-two-digits");
    if (d == ell + 1 && F >= ell * ell + 1)
        try_pair(label({{0, ell * ell + 1}}), label({{2, 1}}), "square-plus-one");
    if (!v.witness) {
        v.witness = found;
        v.witness_kind = "search";
    }
    return v;
}

std::optional<long long> star_count_closed_form(const Context& ctx) {
    if (ctx.m < 0 || !composition_series_conditions(ctx)) return std::nullopt;
    const long long ell = ctx.ell;
    if (ctx.m == 0) return ctx.floor_ne + 1;
    if (ctx.m == 1) {
        long long x1 = ctx.x[1], x0 = ctx.x[0];
        long long num = (x1 + 1) * (x1 * ell + 2 * x0 + 2);
        if (num % 2 != 0) return std::nullopt;
        return num / 2;
    }
    if (ctx.m == 2 && ctx.x[2] == 1 && ctx.x[1] == 0) {
        long long x0 = ctx.x[0];
        return (ell * ell * ell + ell * ell) / 2 + (x0 + 1) * (ell + 2);
    }
    return std::nullopt;
}

std::vector<ChainStep> descent_chain(const Context& ctx) {
    std::vector<ChainStep> chain;
    StarLabel cur;
    for (int xi : ctx.x) cur.z.push_back(xi);
    chain.push_back({cur, phi_star(ctx, cur), 1});
    if (ctx.m < 0) return chain;
    for (;;) {
        int top = -1;
        for (int i = ctx.m; i >= 1; --i)
            if (cur.z[i] != 0) {
                top = i;
                break;
            }
        if (top < 0) break;
        cur.z[top] -= 1;
        cur.z[top - 1] += ctx.ell;
        chain.push_back({cur, phi_star(ctx, cur), 1});
    }
    const long long ell = ctx.ell, d = ctx.d, F = ctx.floor_ne;
    if (ctx.m >= 1 && F >= d * ell) {
        for (long long a = F; a > d * ell; --a) {
            // [a,0,...] shares its phi with [a-(d ell+1), d, 0, ...]; walk that one down.
            for (long long k = 1; k <= d; ++k) {
                StarLabel z;
                z.z.assign(ctx.m + 1, 0);
                z.z[0] = a - d * ell - 1 + ell * k;
                z.z[1] = d - k;
                chain.push_back({z, phi_star(ctx, z), 2});
            }
        }
    }
    return chain;
}

}  // namespace stlat
