#include "hfslice/surgery.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "hfslice/f2.hpp"
#include "hfslice/models.hpp"
#include "hfslice/refilter.hpp"

namespace hfs {

QuotientComplex quotient_complex(const Complex& C, int m, QuotientMode mode) { return {C, m, mode, C.tag}; }

int survival_bound(const Generator& g, int m, QuotientMode mode) {
    // U^p g sits at (i-p, j-p); it is killed when i-p < 0 and/or j-p < m
    return mode == QuotientMode::Intersection ? std::max(g.i, g.j - m) : std::min(g.i, g.j - m);
}

bool survives(const QuotientComplex& Q, int gen, int p) {
    return p <= survival_bound(Q.base.gens[gen], Q.m, Q.mode);
}

namespace {

std::optional<int> d_window(const QuotientComplex& Q, int T) {
    const Complex& C = Q.base;
    const int n = static_cast<int>(C.gens.size());
    std::vector<int> ps(n);
    for (int h = 0; h < n; ++h) ps[h] = survival_bound(C.gens[h], Q.m, Q.mode);
    std::vector<std::vector<std::pair<int, int>>> out(n);
    for (auto& a : C.arrows) out[a.from].push_back({a.to, a.upow});

    const int s = T / 2;
    int gmin = std::numeric_limits<int>::max(), gmax = std::numeric_limits<int>::min();
    for (int h = 0; h < n; ++h) {
        gmin = std::min(gmin, C.gens[h].gr - 2 * ps[h]);
        gmax = std::max(gmax, C.gens[h].gr - 2 * (ps[h] - T));
    }

    // members of the grading-g slice of the window, with their U-power
    struct Slice {
        std::vector<int> gen;
        std::vector<int> pow;
        std::vector<int> pos;  // by generator, -1 if absent
    };
    auto slice = [&](int g) {
        Slice S;
        S.pos.assign(n, -1);
        for (int h = 0; h < n; ++h) {
            int d = C.gens[h].gr - g;
            if (d % 2 != 0) continue;
            int p = d / 2;
            if (p > ps[h] || p < ps[h] - T) continue;
            S.pos[h] = static_cast<int>(S.gen.size());
            S.gen.push_back(h);
            S.pow.push_back(p);
        }
        return S;
    };
    auto boundary = [&](const Slice& from, const Slice& to) {
        std::vector<f2::Vec> img;
        for (std::size_t r = 0; r < from.gen.size(); ++r) {
            f2::Vec v(to.gen.size());
            for (auto& [h2, q] : out[from.gen[r]]) {
                int p2 = from.pow[r] + q;
                if (p2 > ps[h2]) continue;  // dies in the quotient
                v.flip(to.pos[h2]);         // present: the window is a subcomplex
            }
            img.push_back(v);
        }
        return img;
    };

    for (int g = gmin; g + 2 * s <= gmax; ++g) {
        Slice top = slice(g + 2 * s), below = slice(g + 2 * s - 1);
        Slice here = slice(g), above = slice(g + 1);
        if (top.gen.empty() || here.gen.empty()) continue;
        auto Z = f2::kernel(boundary(top, below), below.gen.size());
        if (Z.empty()) continue;
        f2::Echelon B(here.gen.size());
        for (auto& v : boundary(above, here)) B.insert(v);
        for (auto& z : Z) {
            f2::Vec w(here.gen.size());
            for (auto r = z.find_first(); r != f2::Vec::npos; r = z.find_next(r)) {
                int h = top.gen[r];
                if (top.pow[r] + s > ps[h]) continue;
                w.flip(here.pos[h]);
            }
            if (!B.contains(w)) return g;
        }
    }
    return std::nullopt;
}

}  // namespace

DResult d_relative(const QuotientComplex& Q, int window) {
    if (Q.base.empty() || homology_rank(Q.base) != 1)
        throw std::invalid_argument("d_relative needs a knot-like base complex (homology rank 1)");
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (auto& g : Q.base.gens) {
        lo = std::min(lo, g.gr);
        hi = std::max(hi, g.gr);
    }
    int T = window > 0 ? window : 2 * (static_cast<int>(Q.base.size()) + (hi - lo));
    for (int attempt = 0; attempt <= 2; ++attempt, T *= 2) {
        auto a = d_window(Q, T), b = d_window(Q, T + 2);
        if (a && b && *a == *b) return {*a, Q.tag, T};
    }
    throw ConsistencyError("d_relative: window did not stabilise after two doublings");
}

SpincSchedule spinc_schedule(int N, int k, int reach) {
    if (N < 1) throw std::invalid_argument("spinc_schedule needs N >= 1");
    const long P = long(N) * N + 1;
    if (k < 0 || k >= P) throw std::invalid_argument("spinc_schedule needs 0 <= k <= N^2");
    SpincSchedule S{N, k, {}};
    // the term with shift near 0 has j close to kN/P
    const long jc = long(k) * N / P;
    for (long j = jc - reach; j <= jc + reach; ++j)
        for (int l = 0; l < N; ++l) {
            ScheduleTerm t;
            t.l = l;
            t.j = j;
            t.index = l + (j * P + long(l - k) * N) * N;
            t.shift = long(k - l) * N - j * P;
            S.terms.push_back(t);
        }
    std::sort(S.terms.begin(), S.terms.end(), [](auto& a, auto& b) { return a.index < b.index; });
    return S;
}

bool schedule_shifts_ok(const SpincSchedule& S) {
    const long P = long(S.N) * S.N + 1;
    for (std::size_t r = 0; r < S.terms.size(); ++r) {
        auto& t = S.terms[r];
        if (((t.index - S.k) % P + P) % P != 0) return false;
        if (((t.index - t.l) % S.N + S.N) % S.N != 0) return false;
        if (r == 0) continue;
        auto& u = S.terms[r - 1];
        long drop = u.shift - t.shift;
        long want = (u.l == S.N - 1 && t.l == 0) ? S.N + 1 : S.N;
        if (S.N == 1) want = 2;  // every step wraps
        if (drop != want) return false;
    }
    return true;
}

Band band_of(const Complex& C) {
    if (C.empty()) throw std::invalid_argument("band of an empty complex");
    Band b{std::numeric_limits<int>::max(), std::numeric_limits<int>::min()};
    for (auto& g : C.gens) {
        b.lo = std::min(b.lo, g.i - g.j);
        b.hi = std::max(b.hi, g.i - g.j);
    }
    return b;
}

ScheduleTerm collapse_analysis(const std::map<int, Band>& bands, const SpincSchedule& S) {
    for (int l = 0; l < S.N; ++l) {
        auto it = bands.find(l);
        if (it == bands.end()) throw std::invalid_argument("collapse_analysis: no band for l=" + std::to_string(l));
        int w = it->second.hi - it->second.lo + 1;
        if (w > S.N)
            throw std::invalid_argument("collapse hypothesis violated: width " + std::to_string(w) + " > N=" +
                                        std::to_string(S.N) + " at l=" + std::to_string(l));
    }
    std::optional<std::size_t> surv;
    for (std::size_t r = 0; r < S.terms.size(); ++r) {
        auto& b = bands.at(S.terms[r].l);
        if (b.hi - S.terms[r].shift >= 0) {
            surv = r;
            break;
        }
    }
    if (!surv || *surv == 0 || *surv + 1 == S.terms.size())
        throw ConsistencyError("collapse_analysis: surviving term not bracketed by the enumerated schedule");
    for (std::size_t r = *surv + 1; r < S.terms.size(); ++r) {
        auto& b = bands.at(S.terms[r].l);
        if (b.lo - S.terms[r].shift < 0)
            throw ConsistencyError("collapse_analysis: two bands meet the origin diagonal (terms " +
                                   std::to_string(*surv) + " and " + std::to_string(r) + ")");
    }
    return S.terms[*surv];
}

ScheduleTerm collapse_analysis(const std::map<int, int>& widths, const SpincSchedule& S) {
    std::map<int, Band> bands;
    for (auto& [l, w] : widths) bands[l] = {0, w - 1};
    return collapse_analysis(bands, S);
}

SurgeryChain unknot_chain() { return {"U", unknot_model(), unknot_model(), 0}; }

SurgeryChain doubled_chain(int k, ChainPolicy policy) {
    if (k < 0) throw std::invalid_argument("doubled_chain needs k >= 0");
    if (k == 0) return unknot_chain();
    if (policy == ChainPolicy::Auto) policy = k <= 1 ? ChainPolicy::Literal : ChainPolicy::Essential;
    SurgeryChain c;
    c.name = std::to_string(2 * k) + "*D";
    if (policy == ChainPolicy::Literal) {
        c.mirror = build_model("m(" + c.name + ")", ModelPolicy::DropAcyclic);
        c.positive = build_model(c.name, ModelPolicy::DropAcyclic);
    } else {
        c.mirror = dualize(torus_model(2 * k));
        c.positive = torus_model(2 * k);
    }
    c.genus = genus_bound(c.mirror);
    return c;
}

LabelResult pipeline_label(const SurgeryChain& chain, int n, int t) {
    const int N = 2 * n;
    const long P = long(N) * N + 1;
    const int k = static_cast<int>(((t % P) + P) % P);
    auto S = spinc_schedule(N, k);

    std::map<int, Band> bands;
    std::map<int, Complex> factor;
    Band pb = band_of(chain.positive);
    for (int l = 0; l < N; ++l) {
        int base = l <= n ? l : l - N;
        int ext = l <= n ? 0 : 1;
        Complex M = extend_spinc(refilter(chain.mirror, N, base, chain.genus), ext);
        Band b = band_of(M);
        bands[l] = {b.lo + pb.lo, b.hi + pb.hi};
        factor.emplace(l, std::move(M));
    }
    LabelResult r;
    r.t = k;
    r.survivor = collapse_analysis(bands, S);
    r.l_base = r.survivor.l <= n ? r.survivor.l : r.survivor.l - N;
    r.extend = r.survivor.l <= n ? 0 : 1;
    Complex C = tensor(factor.at(r.survivor.l), chain.positive);
    C.tag.add(Atom::eps2(N, k), 1);
    r.top = d_relative(quotient_complex(C, static_cast<int>(-r.survivor.shift), QuotientMode::Intersection));
    return r;
}

DResult base_level(const SurgeryChain& chain, int n) {
    Complex C = chain.mirror;
    C.tag.add(Atom::base("S3_{" + std::to_string(-2 * n) + "}"), 1);
    return d_relative(quotient_complex(C, -n, QuotientMode::Union));
}

DDiffReport branched_cover_report(int n, int k, ChainPolicy policy) {
    if (n < 2) throw std::invalid_argument("n >= 2 required");
    if (k < 0 || 2 * k >= n) throw std::invalid_argument("0 <= k < n/2 required (n=" + std::to_string(n) + ", k=" +
                                                         std::to_string(k) + ")");
    auto D = doubled_chain(k, policy);
    auto U = unknot_chain();
    DDiffReport r;
    r.n = n;
    r.k = k;
    r.d_chain = pipeline_label(D, n, n);
    r.u_chain = pipeline_label(U, n, n);
    r.d_base = base_level(D, n);
    r.u_base = base_level(U, n);
    if (!(r.d_chain.top.tag == r.u_chain.top.tag))
        throw ConsistencyError("shift tags differ between chains: " + r.d_chain.top.tag.str() + " vs " +
                               r.u_chain.top.tag.str());
    if (!(r.d_base.tag == r.u_base.tag)) throw ConsistencyError("base-level shift tags differ");
    r.diff = (r.d_chain.top.d - r.u_chain.top.d) + (r.d_base.d - r.u_base.d);
    return r;
}

int branched_cover_d_diff(int n, int k, ChainPolicy policy) { return branched_cover_report(n, k, policy).diff; }

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace hfs
