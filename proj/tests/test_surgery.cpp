#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "hfslice/models.hpp"
#include "hfslice/refilter.hpp"
#include "hfslice/surgery.hpp"
#include "oracles.hpp"

using namespace hfs;

namespace {

std::vector<Rational> sorted(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    return v;
}

long inverse_mod(long a, long p) {
    for (long x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    return 0;
}

}  // namespace

TEST_CASE("quotient survival") {
    Complex U = unknot_model();
    auto Q = quotient_complex(U, 0, QuotientMode::Intersection);
    // U^p x0 sits at (-p,-p): killed only when both coordinates are negative
    for (int p = -3; p <= 3; ++p) CHECK(survives(Q, 0, p) == (-p >= 0 || -p >= 0));

    Complex T = torus_model(1);
    auto Qu = quotient_complex(T, 0, QuotientMode::Union);
    for (int g = 0; g < 3; ++g)
        for (int p = -3; p <= 3; ++p) CHECK(survives(Qu, g, p) == (T.gens[g].i - p >= 0 && T.gens[g].j - p >= 0));

    Complex S = shift(torus_model(2), 0, -1, 0);
    auto Qs = quotient_complex(S, 0, QuotientMode::Intersection);
    for (int g = 0; g < static_cast<int>(S.size()); ++g) {
        if (S.gens[g].gr != 0) continue;
        // U^1 of each grading-0 generator: grading -2, on i + j = -1
        auto& x = S.gens[g];
        CHECK(x.i - 1 + x.j - 1 == -1);
        CHECK(survives(Qs, g, 1));
    }
}

TEST_CASE("d_relative examples") {
    CHECK(d_relative(quotient_complex(unknot_model(), 0, QuotientMode::Intersection)).d == 0);
    Complex T = torus_model(1);
    CHECK(oracle::d_invariant(T, 0, true) == -2);
    CHECK(d_relative(quotient_complex(T, 0, QuotientMode::Intersection)).d == -2);
    Complex S = shift(torus_model(2), 0, -1, 0);
    CHECK(oracle::d_invariant(S, 0, true) == -2);
    CHECK(d_relative(quotient_complex(S, 0, QuotientMode::Intersection)).d == -2);

    for (const char* e : {"T(2,5)", "m(T(2,7))", "D", "m(D)", "D#T(2,3)"}) {
        Complex C = build_model(e);
        for (int m = -3; m <= 3; ++m)
            for (auto mode : {QuotientMode::Intersection, QuotientMode::Union}) {
                CAPTURE(e);
                CAPTURE(m);
                auto Q = quotient_complex(C, m, mode);
                auto r = d_relative(Q);
                CHECK(oracle::d_invariant(C, m, mode == QuotientMode::Intersection) == r.d);
                CHECK(d_relative(Q, r.window + 2).d == r.d);
            }
    }

    Complex A;
    A.add_gen("a", 1, 0, 0);
    A.add_gen("b", 0, 0, 0);
    A.add_arrow(0, 1, 0);
    CHECK_THROWS_AS(d_relative(quotient_complex(A, 0, QuotientMode::Union)), std::invalid_argument);

    Complex tagged = shift(unknot_model(), 0, 0, ShiftTag(Atom::eps2(4, 1)));
    CHECK(d_relative(quotient_complex(tagged, 0, QuotientMode::Intersection)).tag == ShiftTag(Atom::eps2(4, 1)));
}

TEST_CASE("spin^c schedule") {
    auto S = spinc_schedule(2, 0);
    REQUIRE(S.terms.size() >= 4);
    for (std::size_t r = 1; r < S.terms.size(); ++r) {
        long drop = S.terms[r - 1].shift - S.terms[r].shift;
        CHECK(drop == (S.terms[r].l == 0 ? 3 : 2));
    }
    for (int N = 1; N <= 12; ++N) {
        const long P = long(N) * N + 1;
        for (int k = 0; k < P; ++k) {
            auto s = spinc_schedule(N, k);
            CHECK(schedule_shifts_ok(s));
            for (auto& t : s.terms) {
                CHECK(((t.index - k) % P + P) % P == 0);
                CHECK(((t.index - t.l) % N + N) % N == 0);
            }
        }
    }
    CHECK_THROWS_AS(spinc_schedule(3, 10), std::invalid_argument);
    CHECK_THROWS_AS(spinc_schedule(0, 0), std::invalid_argument);
}

TEST_CASE("collapse analysis") {
    auto S = spinc_schedule(2, 0);
    std::map<int, int> ones{{0, 1}, {1, 1}};
    auto t = collapse_analysis(ones, S);
    int hits = 0;
    for (auto& u : S.terms)
        if (u.shift == 0) ++hits;
    CHECK(hits == 1);
    CHECK(t.shift == 0);

    for (int N = 4; N <= 12; N += 2)
        for (int k = 0; k <= N * N; ++k) {
            std::map<int, int> twos;
            for (int l = 0; l < N; ++l) twos[l] = 2;
            CHECK_NOTHROW(collapse_analysis(twos, spinc_schedule(N, k)));
        }

    std::map<int, int> wide{{0, 1}, {1, 3}};
    CHECK_THROWS_WITH_AS(collapse_analysis(wide, S), doctest::Contains("hypothesis"), std::invalid_argument);
    std::map<int, int> missing{{0, 1}};
    CHECK_THROWS_AS(collapse_analysis(missing, S), std::invalid_argument);
}

TEST_CASE("branched cover d differences") {
    CHECK(branched_cover_d_diff(4, 0) == 0);
    CHECK(branched_cover_d_diff(4, 1) == -2);
    CHECK(branched_cover_d_diff(3, 1) == -2);
    CHECK(branched_cover_d_diff(5, 2) == -4);
    CHECK(branched_cover_d_diff(4, 1, ChainPolicy::Essential) == -2);
    CHECK_THROWS_AS(branched_cover_d_diff(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(branched_cover_d_diff(4, -1), std::invalid_argument);
    auto r = branched_cover_report(4, 1);
    CHECK(r.d_chain.top.tag == r.u_chain.top.tag);
    CHECK(r.diff == r.d_chain.top.d - r.u_chain.top.d - (r.d_base.d - r.u_base.d));
}

TEST_CASE("lens space oracle") {
    CHECK(sorted(lens_d_recursive(2, 1)) == std::vector<Rational>{Rational(-1, 4), Rational(1, 4)});
    CHECK(sorted(lens_d_recursive(5, 2)) ==
          std::vector<Rational>{Rational(-2, 5), Rational(-2, 5), Rational(0), Rational(2, 5), Rational(2, 5)});
    for (long p = 2; p <= 15; ++p) {
        auto d = lens_d_recursive(p, 1);
        for (long i = 0; i < p; ++i) CHECK(d[i] == Rational(-1, 4) + Rational((2 * i - p) * (2 * i - p), 4 * p));
    }
    for (long p = 3; p <= 40; p += 2)
        for (long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto v = sorted(lens_d_recursive(p, q));
            CHECK(v == sorted(lens_d_recursive(p, inverse_mod(q, p))));
            auto byz = lens_by_label(p, q);
            for (long z = 0; z < p; ++z) CHECK(byz[z] == byz[(p - z) % p]);
        }
    CHECK_THROWS_AS(lens_d_recursive(6, 4), std::invalid_argument);
    CHECK_THROWS_AS(lens_by_label(6, 1), std::invalid_argument);
}

TEST_CASE("calibration") {
    for (int n = 2; n <= 3; ++n) {
        CAPTURE(n);
        auto c = calibrate_shifts(n, 4);
        const long P = 4L * n * n + 1;
        CHECK(c.P == P);
        CHECK(c.lens.size() == static_cast<std::size_t>(P));
        REQUIRE(c.centers.size() == 1);
        CHECK(c.centers[0] == ((-(4L * n + 1)) % P + P) % P);
        CHECK(c.alpha == ((2L * n - 3) % P + P) % P);

        std::vector<long> seen(c.sigma);
        std::sort(seen.begin(), seen.end());
        for (long z = 0; z < P; ++z) CHECK(seen[z] == z);

        std::vector<Rational> pipe;
        for (long t = 0; t < P; ++t) pipe.push_back(Rational(c.d_rel[t]) + c.eps[t]);
        CHECK(sorted(pipe) == sorted(c.lens));
    }
}

// The center comes from a T(2,3) probe; a second knot must single out the same one.
TEST_CASE("calibration center is knot independent") {
    for (int n : {3, 4}) {
        CAPTURE(n);
        auto c = calibrate_shifts(n, 4);
        const long P = c.P;
        auto K = doubled_chain(1);
        auto U = unknot_chain();
        std::map<int, int> base_gap;
        for (int m = base_range_lo(2 * n); m <= base_range_hi(2 * n); ++m)
            base_gap[m] = d_relative(quotient_complex(K.mirror, m, QuotientMode::Union)).d -
                          d_relative(quotient_complex(U.mirror, m, QuotientMode::Union)).d;
        std::vector<int> gap(P);
        std::vector<char> same(P);
        for (long t = 0; t < P; ++t) {
            auto a = pipeline_label(K, n, static_cast<int>(t));
            auto b = pipeline_label(U, n, static_cast<int>(t));
            same[t] = a.top.tag == b.top.tag && a.l_base == b.l_base;
            gap[t] = a.top.d - b.top.d + base_gap.at(a.l_base);
        }
        std::vector<long> centers;
        int compared = 0;
        for (long ctr = 0; ctr < P; ++ctr) {
            bool ok = true;
            for (long t = 0; t < P && ok; ++t) {
                long u = ((ctr - t) % P + P) % P;
                if (!same[t] || !same[u]) continue;
                if (ctr == c.centers[0]) ++compared;
                ok = gap[t] == gap[u];
            }
            if (ok) centers.push_back(ctr);
        }
        CHECK(centers == c.centers);
        CHECK(compared > 0);
        CHECK(gap[n] == -2);
    }
}
