#include "hfslice/refilter.hpp"

#include <algorithm>
#include <set>

#include "hfslice/f2.hpp"

namespace hfs {

int genus_bound(const Complex& C) { return (width(reduce(C)) - 1) / 2; }

int base_range_lo(int N) {
    int a = -N + 1;  // ceil(a/2)
    return a >= 0 ? (a + 1) / 2 : -((-a) / 2);
}

int base_range_hi(int N) { return N >= 0 ? N / 2 : -((-N + 1) / 2); }

std::pair<int, int> refilter_level(int i, int j, int m) {
    if (j > i + m) return {i, i};
    return {j - m, j - m - 1};
}

Complex refilter(const Complex& C, int N, int m, int genus) {
    if (N < 2) throw std::invalid_argument("refilter needs N >= 2");
    if (genus < 0) genus = genus_bound(C);
    if (N < 2 * genus)
        throw std::invalid_argument("hypothesis N >= 2g violated (N=" + std::to_string(N) +
                                    ", g=" + std::to_string(genus) + ")");
    int lo = base_range_lo(N), hi = base_range_hi(N);
    if (m < lo || m > hi)
        throw std::invalid_argument("m=" + std::to_string(m) + " outside the base range [" + std::to_string(lo) +
                                    "," + std::to_string(hi) + "] for N=" + std::to_string(N) +
                                    "; reach other labels with extend_spinc (--extend)");
    Complex R = C;
    for (auto& g : R.gens) std::tie(g.i, g.j) = refilter_level(g.i, g.j, m);
    R.tag.add(Atom::eps1(N, m), 1);
    R.label = "refilter(" + C.label + ", N=" + std::to_string(N) + ", m=" + std::to_string(m) + ")";
    return R;
}

Complex extend_spinc(const Complex& C, int t) {
    Complex R = C;
    for (auto& g : R.gens) g.j -= t;
    return R;
}

namespace {

int parity(int g) { return ((g % 2) + 2) % 2; }

}  // namespace

EssentialPosition essential_position(const Complex& C) {
    if (homology_rank(C) != 1)
        throw std::invalid_argument("essential position needs homology rank 1 (got " +
                                    std::to_string(homology_rank(C)) + ")");
    const int n = static_cast<int>(C.gens.size());
    std::vector<int> slot(n);
    std::vector<int> cnt(2, 0);
    for (int k = 0; k < n; ++k) slot[k] = cnt[parity(C.gens[k].gr)]++;

    // boundaries landing in parity p, and the differential leaving parity p
    auto boundary_space = [&](int p) {
        std::vector<f2::Vec> img(cnt[1 - p], f2::Vec(cnt[p]));
        for (auto& a : C.arrows)
            if (parity(C.gens[a.from].gr) == 1 - p) img[slot[a.from]].flip(slot[a.to]);
        f2::Echelon B(cnt[p]);
        for (auto& v : img) B.insert(v);
        return B;
    };
    auto images_from = [&](int p) {
        std::vector<f2::Vec> img(cnt[p], f2::Vec(cnt[1 - p]));
        for (auto& a : C.arrows)
            if (parity(C.gens[a.from].gr) == p) img[slot[a.from]].flip(slot[a.to]);
        return img;
    };

    int p = -1;
    for (int q = 0; q < 2 && p < 0; ++q) {
        auto B = boundary_space(q);
        auto ker = f2::kernel(images_from(q), cnt[1 - q]);
        if (ker.size() > B.rank()) p = q;
    }
    if (p < 0) throw std::logic_error("essential_position: no parity carries homology");

    auto B = boundary_space(p);
    auto img = images_from(p);
    std::vector<int> members;  // indices of parity-p generators, by slot
    members.resize(cnt[p]);
    for (int k = 0; k < n; ++k)
        if (parity(C.gens[k].gr) == p) members[slot[k]] = k;

    // level of the translate with grading p
    auto level = [&](int k, bool use_i) {
        auto& g = C.gens[k];
        int shiftU = (g.gr - p) / 2;
        return (use_i ? g.i : g.j) - shiftU;
    };
    auto least = [&](bool use_i) {
        std::set<int> levels;
        for (int k : members) levels.insert(level(k, use_i));
        for (int t : levels) {
            std::vector<f2::Vec> sub;
            std::vector<int> which;
            for (int s = 0; s < cnt[p]; ++s)
                if (level(members[s], use_i) <= t) {
                    sub.push_back(img[s]);
                    which.push_back(s);
                }
            for (auto& kv : f2::kernel(sub, cnt[1 - p])) {
                f2::Vec z(cnt[p]);
                for (auto r = kv.find_first(); r != f2::Vec::npos; r = kv.find_next(r)) z.set(which[r]);
                if (!B.contains(z)) return t;
            }
        }
        throw std::logic_error("essential_position: class not carried by any sublevel");
    };
    return {p, least(true), least(false)};
}

Complex normalize(const Complex& C) {
    auto e = essential_position(C);
    return shift(C, -e.i, -e.i, 0);
}

}  // namespace hfs
