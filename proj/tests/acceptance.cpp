// Acceptance run: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "hfslice/models.hpp"
#include "hfslice/obstruction.hpp"
#include "hfslice/refilter.hpp"
#include "hfslice/surgery.hpp"
#include "oracles.hpp"
#include "props.hpp"

using namespace hfs;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
};

int failures = 0;

void criterion(int id, const char* what, double budget_s, const std::function<void(Verdict&)>& body) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.ok = false;
        v.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && s > budget_s) v.require(false, "took " + std::to_string(s) + " s, budget " + std::to_string(budget_s) + " s");
    std::printf("[%s] criterion %d %s (%.2f s)%s%s\n", v.ok ? "PASS" : "FAIL", id, what, s, v.ok ? "" : ": ",
                v.detail.c_str());
    std::fflush(stdout);
    if (!v.ok) ++failures;
}

std::string str(const std::map<int, int>& m) {
    std::ostringstream os;
    for (auto& [g, r] : m) os << r << "@" << g << " ";
    return os.str();
}

int expected_delta(int k, int m) {
    if (k == 0) return m < 0 ? 0 : -1;
    return (m < -2 * k || (m % 2 != 0 && m < 2 * k)) ? 0 : -1;
}

}  // namespace

int main() {
    criterion(1, "doubled trefoil: slice ranks, homology rank, width", 1.0, [](Verdict& v) {
        Complex D = whitehead_double_model();
        v.require(validate(D).ok, "model invalid");
        const std::map<int, std::map<int, int>> want{
            {1, {{-1, 2}, {0, 2}}}, {0, {{-2, 4}, {-1, 3}}}, {-1, {{-3, 2}, {-2, 2}}}};
        for (auto& [j, ranks] : want) {
            auto got = slice_homology(D, j);
            v.require(got == ranks, "j=" + std::to_string(j) + " gave " + str(got));
            v.require(oracle::slice(D, j) == ranks, "oracle disagrees at j=" + std::to_string(j));
        }
        v.require(homology_rank(D) == 1, "homology rank " + std::to_string(homology_rank(D)));
        v.require(width(D) == 3, "width " + std::to_string(width(D)));
    });

    criterion(2, "tensor powers of T(2,3) split as staircase plus acyclic, k = 1..5", 10.0, [](Verdict& v) {
        long pow3 = 1;
        for (int k = 1; k <= 5; ++k) {
            pow3 *= 3;
            auto s = split_staircase(k);
            std::string at = " at k=" + std::to_string(k);
            v.require(canonical_form(s.staircase) == canonical_form(torus_model(k)), "staircase differs" + at);
            v.require(static_cast<long>(s.acyclic.size()) == pow3 - (2 * k + 1),
                      "acyclic rank " + std::to_string(s.acyclic.size()) + at);
            v.require(s.acyclic.empty() || is_acyclic(s.acyclic), "complement not acyclic" + at);
            v.require(validate(s.acyclic).ok, "complement invalid" + at);
        }
    });

    criterion(3, "refiltering at N = 8: width <= 2 and essential placement for U, m(2D), m(4D)", 0, [](Verdict& v) {
        const int N = 8;
        for (int k = 0; k <= 2; ++k) {
            Complex C = k == 0 ? unknot_model()
                               : build_model("m(" + std::to_string(2 * k) + "*D)",
                                             k == 2 ? ModelPolicy::DropAcyclic : ModelPolicy::Literal);
            for (int m = base_range_lo(N); m <= base_range_hi(N); ++m) {
                std::string at = " (k=" + std::to_string(k) + ", m=" + std::to_string(m) + ")";
                Complex R = refilter(C, N, m);
                v.require(width(R) <= 2, "width " + std::to_string(width(R)) + at);
                v.require(validate(R).ok, "invalid output" + at);
                Complex Rn = normalize(reduce(R));
                int d = expected_delta(k, m);
                auto e = essential_position(Rn);
                v.require(e.i == 0 && e.j == d,
                          "essential at (" + std::to_string(e.i) + "," + std::to_string(e.j) + "), want (0," +
                              std::to_string(d) + ")" + at);
                bool placed = oracle::carries(Rn, 0, d) && !oracle::carries(Rn, -1, 1000) &&
                              !oracle::carries(Rn, 0, d - 1);
                v.require(placed, "oracle placement disagrees" + at);
            }
        }
    });

    criterion(4, "branched-cover d-differences equal -2k", 60.0, [](Verdict& v) {
        for (auto [n, k] : {std::pair{2, 0}, {3, 1}, {4, 1}, {6, 2}, {10, 4}}) {
            int d = branched_cover_d_diff(n, k);
            v.require(d == -2 * k, "(n,k)=(" + std::to_string(n) + "," + std::to_string(k) + ") gave " + std::to_string(d));
        }
    });

    criterion(5, "calibrated unknot chain matches lens-space d-invariants, conjugation symmetric", 0, [](Verdict& v) {
        for (int n = 2; n <= 4; ++n) {
            std::string at = " at n=" + std::to_string(n);
            auto c = calibrate_shifts(n, 4);
            const long P = c.P;
            v.require(P == 4L * n * n + 1, "modulus" + at);
            v.require(c.centers.size() == 1, std::to_string(c.centers.size()) + " conjugation centers" + at);
            std::vector<char> hit(P, 0);
            for (long t = 0; t < P; ++t) hit[c.sigma[t]] = 1;
            v.require(std::all_of(hit.begin(), hit.end(), [](char h) { return h; }), "label map not bijective" + at);
            auto lens = lens_by_label(P, 2 * n);
            std::vector<Rational> pipe(P), oracle_sorted(lens), pipe_sorted;
            for (long t = 0; t < P; ++t) {
                pipe[t] = Rational(c.d_rel[t]) + c.eps[t];
                v.require(pipe[t] == lens[c.sigma[t]], "label " + std::to_string(t) + " mismatch" + at);
            }
            pipe_sorted = pipe;
            std::sort(pipe_sorted.begin(), pipe_sorted.end());
            std::sort(oracle_sorted.begin(), oracle_sorted.end());
            v.require(pipe_sorted == oracle_sorted, "multisets differ" + at);
            for (long t = 0; t < P; ++t) {
                long u = ((c.centers[0] - t) % P + P) % P;
                v.require(pipe[t] == pipe[u], "conjugation symmetry fails at label " + std::to_string(t) + at);
            }
            for (long z = 0; z < P; ++z) v.require(lens[z] == lens[(P - z) % P], "lens values asymmetric" + at);
            auto rec = lens_d_recursive(P, 2 * n);
            for (long i = 0; i < P; ++i) v.require(lens[lens_label(P, 2 * n, i)] == rec[i], "recursion indexing" + at);
        }
    });

    criterion(6, "metabolizers: brute force equals (1,b), b^2 = -1, square-free N <= 100, all units", 0, [](Verdict& v) {
        int forms = 0;
        for (long N = 2; N <= 100; ++N) {
            if (!square_free(static_cast<u64>(N))) continue;
            auto cls = metabolizers(N);
            for (long a = 1; a < N; ++a) {
                if (std::gcd(a, N) != 1) continue;
                ++forms;
                auto bf = brute_force_metabolizers({N, a});
                v.require(bf == cls, "N=" + std::to_string(N) + " alpha=" + std::to_string(a) + ": " +
                                         std::to_string(bf.size()) + " vs " + std::to_string(cls.size()));
            }
        }
        v.require(forms > 0, "no forms checked");
    });

    criterion(7, "sieve family: pairwise coprime admissible, starts at n = 2; n = 9 rejected", 0, [](Verdict& v) {
        auto fam = sieve_family(3);
        v.require(fam.members.size() == 3, "family has " + std::to_string(fam.members.size()) + " members");
        v.require(!fam.members.empty() && fam.members[0].n == 2 && fam.members[0].value == 17, "first member");
        for (std::size_t a = 0; a < fam.members.size(); ++a) {
            v.require(fam.members[a].admissible, "member " + std::to_string(a) + " inadmissible");
            for (std::size_t b = a + 1; b < fam.members.size(); ++b)
                v.require(std::gcd(fam.members[a].value, fam.members[b].value) == 1, "values not coprime");
        }
        auto nine = admissible(9);
        v.require(!nine.admissible, "n=9 admitted");
        v.require(nine.value == 325 && nine.factors == std::vector<std::pair<u64, int>>{{5, 2}, {13, 1}},
                  "325 factored wrongly");
    });

    criterion(8, "obstruction witness at n = 10", 0, [](Verdict& v) {
        auto r = choose_kn(10, 4);
        v.require(r.excluded.size() <= 4, "|S_b| = " + std::to_string(r.excluded.size()));
        v.require(r.k_n.has_value(), "no k_10");
        if (!r.k_n) return;
        v.require(*r.k_n >= 0 && *r.k_n < 5, "k_10 = " + std::to_string(*r.k_n));
        v.require(obstruct_slice(10, *r.k_n, r), "obstruct_slice(10, k_10) is false");
    });

    criterion(9, "property suites: d^2 fuzz, reduce, acyclic-summand d (200 cases), width additivity", 0, [](Verdict& v) {
        auto a = props::d_squared_fuzz(300, 11);
        v.require(a.ok, "d^2 fuzz: " + a.detail);
        auto b = props::reduce_properties(200, 23);
        v.require(b.ok, "reduce: " + b.detail);
        auto c = props::acyclic_summand_d(200, 37);
        v.require(c.ok && c.cases == 200, "acyclic summand: " + c.detail);
        auto d = props::width_additivity(5);
        v.require(d.ok, "width: " + d.detail);
    });

    return failures == 0 ? 0 : 1;
}
