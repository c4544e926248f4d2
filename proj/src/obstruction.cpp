#include <algorithm>
#include <set>

#include "hfslice/obstruction.hpp"

namespace hfs {

namespace {

long mulmod_l(long a, long b, long m) { return static_cast<long>((__int128)a * b % m); }

}  // namespace

std::vector<Metabolizer> order_n_subgroups(long N) {
    if (N < 2) throw std::invalid_argument("subgroups need N >= 2");
    std::vector<Metabolizer> out;
    for (long a = 1; a <= N; ++a) {
        if (N % a) continue;
        long d = N / a;
        for (long b = 0; b < d; ++b)
            if (((N / a) * b) % d == 0) out.push_back({N, a % N, b, d % N == 0 ? N : d});
    }
    return out;
}

bool self_annihilating(const Metabolizer& M, const LinkingForm& f) {
    const long N = M.N;
    const long g[2][2] = {{M.a % N, M.b % N}, {0, M.d % N}};
    for (auto& x : g)
        for (auto& y : g) {
            long dot = (mulmod_l(x[0], y[0], N) + mulmod_l(x[1], y[1], N)) % N;
            if (mulmod_l(f.alpha % N, dot, N) != 0) return false;
        }
    return true;
}

std::vector<Metabolizer> brute_force_metabolizers(const LinkingForm& f) {
    if (std::gcd(f.alpha, f.N) != 1) throw std::invalid_argument("linking form needs gcd(alpha, N) = 1");
    std::vector<Metabolizer> out;
    for (auto& M : order_n_subgroups(f.N))
        if (self_annihilating(M, f)) out.push_back(M);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Metabolizer> metabolizers(long N) {
    if (!square_free(static_cast<u64>(N)))
        throw std::invalid_argument("metabolizer classification needs square-free N (got " + std::to_string(N) + ")");
    std::vector<Metabolizer> out;
    for (u64 b : sqrt_minus_one(static_cast<u64>(N))) out.push_back({N, 1, static_cast<long>(b), N});
    std::sort(out.begin(), out.end());
    return out;
}

bool metabolizer_obstruction(const std::vector<Rational>& dA, const std::vector<Rational>& dB, long N) {
    if (static_cast<long>(dA.size()) != N || static_cast<long>(dB.size()) != N)
        throw std::invalid_argument("metabolizer_obstruction needs calibrated vectors indexed by Z_N");
    std::vector<Metabolizer> ms =
        square_free(static_cast<u64>(N)) ? metabolizers(N) : brute_force_metabolizers({N, 1});
    for (auto& M : ms) {
        std::set<std::pair<long, long>> elems;
        for (long x = 0; x < N; ++x)
            for (long y = 0; y < N; ++y)
                elems.insert({mulmod_l(x, M.a, N), (mulmod_l(x, M.b, N) + mulmod_l(y, M.d, N)) % N});
        bool vanishes = true;
        for (auto& [z1, z2] : elems)
            if (dA[z1] + dB[z2] != Rational(0)) {
                vanishes = false;
                break;
            }
        if (vanishes) return false;
    }
    return true;
}

ObstructionReport choose_kn(const Calibration& cal) {
    auto s = admissible(static_cast<u64>(cal.n));
    if (!s.admissible)
        throw std::invalid_argument("n=" + std::to_string(cal.n) + " is not admissible (4n^2+1=" +
                                    std::to_string(s.value) + ")");
    ObstructionReport r;
    r.n = cal.n;
    r.value = s.value;
    r.factors = s.factors;
    r.metabolizer_roots = s.roots_b;
    r.roots_b = sqrt_one(s.value);
    r.alpha = cal.alpha;
    const long P = cal.P;
    std::set<Rational> S;
    for (long a : cal.alphas)
        for (u64 b : r.roots_b) {
            Rational v = cal.lens[mulmod_l(static_cast<long>(b), a, P)] - cal.lens[a];
            S.insert(v);
            S.insert(-v);  // the other orientation of the lens space
        }
    r.excluded.assign(S.begin(), S.end());
    for (int k = 0; 2 * k < cal.n; ++k)
        if (!S.count(Rational(-2 * k))) {
            r.k_n = k;
            break;
        }
    r.note = "labels: pipeline s_n mapped to c1-label " + std::to_string(cal.alpha) +
             " (Hopf-link relations, conjugation centered by a T(2,3) probe); S_b taken over both orientations of L(" +
             std::to_string(P) + "," + std::to_string(2 * cal.n) + ")";
    if (cal.alphas.size() > 1) r.note += "; " + std::to_string(cal.alphas.size()) + " consistent centers, S_b is their union";
    if (!r.k_n) r.note += "; no k in [0, n/2) avoids S_b";
    return r;
}

ObstructionReport choose_kn(int n, int jobs) {
    auto s = admissible(static_cast<u64>(n));
    if (!s.admissible)
        throw std::invalid_argument("n=" + std::to_string(n) + " is not admissible (4n^2+1=" +
                                    std::to_string(s.value) + ")");
    return choose_kn(calibrate_shifts(n, jobs));
}

bool obstruct_slice(int n, int k, const ObstructionReport& report) {
    int diff = branched_cover_d_diff(n, k);
    if (diff != -2 * k)
        throw ConsistencyError("d-difference " + std::to_string(diff) + " != -2k for (n,k)=(" + std::to_string(n) +
                               "," + std::to_string(k) + ")");
    return std::find(report.excluded.begin(), report.excluded.end(), Rational(diff)) == report.excluded.end();
}

bool obstruct_slice(int n, int k) { return obstruct_slice(n, k, choose_kn(n)); }

nlohmann::json to_json(const SieveResult& r) {
    auto f = nlohmann::json::array();
    for (auto& [p, e] : r.factors) f.push_back({{"p", p}, {"e", e}});
    return {{"n", r.n}, {"value", r.value}, {"factors", f}, {"admissible", r.admissible}, {"roots_b", r.roots_b}};
}

nlohmann::json to_json(const ObstructionReport& r) {
    auto f = nlohmann::json::array();
    for (auto& [p, e] : r.factors) f.push_back({{"p", p}, {"e", e}});
    auto S = nlohmann::json::array();
    for (auto& v : r.excluded) S.push_back(to_string(v));
    nlohmann::json j = {{"n", r.n},        {"value", r.value}, {"factors", f},   {"roots_b", r.roots_b},
                        {"metabolizer_roots", r.metabolizer_roots}, {"alpha", r.alpha}, {"S_b", S},         {"note", r.note}};
    j["k_n"] = r.k_n ? nlohmann::json(*r.k_n) : nlohmann::json("none");
    return j;
}

}  // namespace hfs
