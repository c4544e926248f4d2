#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

#include "hfslice/models.hpp"
#include "hfslice/refilter.hpp"
#include "hfslice/surgery.hpp"

namespace hfs {

std::vector<Rational> lens_d_recursive(long p, long q) {
    if (p < 1 || q < 0 || (p > 1 && q < 1) || q >= std::max(p, 2L))
        throw std::invalid_argument("lens_d_recursive needs p > q > 0");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("lens_d_recursive needs gcd(p,q) = 1");
    if (p == 1) return {Rational(0)};
    auto inner = lens_d_recursive(q, p % q);
    std::vector<Rational> d(p);
    for (long i = 0; i < p; ++i) {
        long x = 2 * i + 1 - p - q;
        d[i] = Rational(-1, 4) + Rational(x * x, 4 * p * q) - inner[i % q];
    }
    return d;
}

long lens_label(long p, long q, long i) { return (((2 * i + 1 - q) % p) + p) % p; }

std::vector<Rational> lens_by_label(long p, long q) {
    if (p % 2 == 0) throw std::invalid_argument("c1 labels are a bijection only for odd p");
    auto d = lens_d_recursive(p, q);
    std::vector<Rational> out(p);
    for (long i = 0; i < p; ++i) out[lens_label(p, q, i)] = d[i];
    return out;
}

namespace {

template <class F>
void parallel_labels(long P, int jobs, F&& body) {
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(jobs);
    for (int w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            try {
                for (long t = w; t < P; t += jobs) body(t);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<long> conjugation_centers(int n, int jobs) {
    if (n < 2) throw std::invalid_argument("conjugation_centers needs n >= 2");
    const long P = 4L * n * n + 1;
    SurgeryChain probe{"T(2,3)", dualize(torus_model(1)), torus_model(1), 1};
    auto U = unknot_chain();

    std::map<int, int> base_gap;  // Y-level d of probe minus unknot, by refilter label
    for (int m = base_range_lo(2 * n); m <= base_range_hi(2 * n); ++m)
        base_gap[m] = d_relative(quotient_complex(probe.mirror, m, QuotientMode::Union)).d -
                      d_relative(quotient_complex(U.mirror, m, QuotientMode::Union)).d;

    std::vector<int> gap(P);
    std::vector<char> matched(P);
    parallel_labels(P, jobs, [&](long t) {
        auto a = pipeline_label(probe, n, static_cast<int>(t));
        auto b = pipeline_label(U, n, static_cast<int>(t));
        matched[t] = a.top.tag == b.top.tag && a.l_base == b.l_base;
        gap[t] = a.top.d - b.top.d + base_gap.at(a.l_base);
    });

    std::vector<long> out;
    for (long c = 0; c < P; ++c) {
        bool ok = true;
        for (long t = 0; t < P && ok; ++t) {
            long u = ((c - t) % P + P) % P;
            if (matched[t] && matched[u] && gap[t] != gap[u]) ok = false;
        }
        if (ok) out.push_back(c);
    }
    if (out.empty()) throw ConsistencyError("no conjugation center makes the probe d-vector symmetric");
    return out;
}

long c1_label(int n, long center, long t) {
    const long P = 4L * n * n + 1;
    // Hopf relations: mu2 = 2n mu1, and one step in t moves c1 by 2 mu2
    long v = (2 * n * ((2 * t - center) % P)) % P;
    return (v + P) % P;
}

Calibration calibrate_shifts(int n, int jobs) {
    if (n < 2) throw std::invalid_argument("calibrate_shifts needs n >= 2");
    Calibration c;
    c.n = n;
    c.P = 4L * n * n + 1;
    c.lens = lens_by_label(c.P, 2 * n);
    for (long z = 0; z < c.P; ++z)
        if (c.lens[z] != c.lens[(c.P - z) % c.P])
            throw ConsistencyError("lens values not conjugation symmetric at label " + std::to_string(z));

    c.centers = conjugation_centers(n, jobs);
    c.sigma.resize(c.P);
    for (long t = 0; t < c.P; ++t) c.sigma[t] = c1_label(n, c.centers[0], t);
    for (long ctr : c.centers) c.alphas.push_back(c1_label(n, ctr, n));
    c.alpha = c.alphas[0];

    c.d_rel.assign(c.P, 0);
    auto chain = unknot_chain();
    parallel_labels(c.P, jobs, [&](long t) { c.d_rel[t] = pipeline_label(chain, n, static_cast<int>(t)).top.d; });

    c.eps.resize(c.P);
    for (long t = 0; t < c.P; ++t) c.eps[t] = c.lens[c.sigma[t]] - c.d_rel[t];
    return c;
}

}  // namespace hfs
