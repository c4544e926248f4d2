#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "hfslice/complex.hpp"

namespace hfs {

using Rational = boost::rational<long long>;

enum class QuotientMode { Intersection, Union };

// (base (x) F[U,U^-1]) modulo translates in {i<0 and j<m} (Intersection) or {i<0 or j<m} (Union).
struct QuotientComplex {
    Complex base;
    int m = 0;
    QuotientMode mode = QuotientMode::Intersection;
    ShiftTag tag;
};

QuotientComplex quotient_complex(const Complex& C, int m, QuotientMode mode);
// Largest p such that U^p g survives in the quotient.
int survival_bound(const Generator& g, int m, QuotientMode mode);
bool survives(const QuotientComplex& Q, int gen, int p);

struct DResult {
    int d = 0;
    ShiftTag tag;
    int window = 0;
};

// window <= 0 selects the default 2*(#generators + grading span).
DResult d_relative(const QuotientComplex& Q, int window = 0);

struct ScheduleTerm {
    int l = 0;
    long j = 0;
    long index = 0;  // l + [j(N^2+1) + (l-k)N]N
    long shift = 0;  // j-filtration shift of the A-term
};

struct SpincSchedule {
    int N = 0;
    int k = 0;
    std::vector<ScheduleTerm> terms;  // increasing index
};

// Terms with j within reach of floor(kN/(N^2+1)).
SpincSchedule spinc_schedule(int N, int k, int reach = 2);
bool schedule_shifts_ok(const SpincSchedule& S);

struct Band {
    int lo = 0;  // i - j range
    int hi = 0;
};

Band band_of(const Complex& C);
ScheduleTerm collapse_analysis(const std::map<int, Band>& bands, const SpincSchedule& S);
ScheduleTerm collapse_analysis(const std::map<int, int>& widths, const SpincSchedule& S);

enum class ChainPolicy { Auto, Literal, Essential };

// The two knots of the surgery chain: K1 (mirror side, surgered at -N) and K2' (tied on the meridian).
struct SurgeryChain {
    std::string name;
    Complex mirror;
    Complex positive;
    int genus = 0;
};

SurgeryChain unknot_chain();
SurgeryChain doubled_chain(int k, ChainPolicy policy = ChainPolicy::Auto);

struct LabelResult {
    int t = 0;
    ScheduleTerm survivor;
    int l_base = 0;  // refiltering label in the base range
    int extend = 0;  // extend_spinc amount
    DResult top;
};

// d of CF+ of the surgered manifold at pipeline label t, relative to its tag.
LabelResult pipeline_label(const SurgeryChain& chain, int n, int t);
// Y-level term: union quotient of the mirror model at -n.
DResult base_level(const SurgeryChain& chain, int n);

struct DDiffReport {
    int n = 0;
    int k = 0;
    LabelResult d_chain;
    LabelResult u_chain;
    DResult d_base;
    DResult u_base;
    int diff = 0;
};

DDiffReport branched_cover_report(int n, int k, ChainPolicy policy = ChainPolicy::Auto);
int branched_cover_d_diff(int n, int k, ChainPolicy policy = ChainPolicy::Auto);

// d(L(p,q), i) for 0 <= i < p.
std::vector<Rational> lens_d_recursive(long p, long q);
// c1-label of index i: 2i + 1 - q mod p (p odd).
long lens_label(long p, long q, long i);
// Values indexed by c1-label z in Z_p (p odd).
std::vector<Rational> lens_by_label(long p, long q);

struct Calibration {
    int n = 0;
    long P = 0;
    std::vector<long> centers;      // c with conjugation t -> c - t on pipeline labels
    std::vector<long> sigma;        // pipeline label t -> c1-label, for centers[0]
    std::vector<int> d_rel;         // unknot chain, per t
    std::vector<Rational> eps;      // resolved shift per t
    std::vector<Rational> lens;     // by c1-label
    long alpha = 0;                 // c1-label of the pipeline's s_n, for centers[0]
    std::vector<long> alphas;       // one per center
};

// Conjugation centers found from a T(2,3) probe chain: the knot-dependent part of d
// (probe minus unknot, on labels whose shift tags agree) must satisfy d(s) = d(conj s).
std::vector<long> conjugation_centers(int n, int jobs = 1);
// c1-label of pipeline label t when conjugation is t -> c - t.
long c1_label(int n, long center, long t);
Calibration calibrate_shifts(int n, int jobs = 1);

std::string to_string(const Rational& r);

}  // namespace hfs
