#include <algorithm>
#include <deque>

#include "hfslice/complex.hpp"
#include "hfslice/f2.hpp"

namespace hfs {

// Each grading of C (x) F[U,U^-1] is spanned by one translate of every generator of
// matching parity, and the differential there is the U=1 matrix restricted to that
// parity. Summing both parities gives rank = n - 2 rank(d|U=1).
int homology_rank(const Complex& C) {
    const std::size_t n = C.gens.size();
    if (n == 0) return 0;
    std::vector<f2::Vec> rows(n, f2::Vec(n));
    for (auto& a : C.arrows) rows[a.from].flip(a.to);
    return static_cast<int>(n) - 2 * static_cast<int>(f2::rank(rows));
}

bool is_acyclic(const Complex& C) { return homology_rank(C) == 0; }

std::map<int, int> slice_homology(const Complex& C, int j0) {
    Complex R = rebase(C);
    std::vector<int> sl;
    std::vector<int> pos(R.gens.size(), -1);
    for (std::size_t k = 0; k < R.gens.size(); ++k)
        if (R.gens[k].j == j0) {
            pos[k] = static_cast<int>(sl.size());
            sl.push_back(static_cast<int>(k));
        }
    std::map<int, std::vector<int>> by_gr;
    for (int k : sl) by_gr[R.gens[k].gr].push_back(k);

    // differential of the slice: only entries that stay at i = 0 and j = j0
    std::map<int, std::vector<int>> targets;
    for (auto& a : R.arrows)
        if (pos[a.from] >= 0 && pos[a.to] >= 0 && a.upow == 0) targets[a.from].push_back(a.to);

    auto rank_from = [&](int g) -> int {
        auto it = by_gr.find(g);
        auto jt = by_gr.find(g - 1);
        if (it == by_gr.end() || jt == by_gr.end()) return 0;
        std::map<int, int> col;
        for (std::size_t r = 0; r < jt->second.size(); ++r) col[jt->second[r]] = static_cast<int>(r);
        std::vector<f2::Vec> rows;
        for (int x : it->second) {
            f2::Vec v(jt->second.size());
            for (int y : targets[x]) v.flip(col.at(y));
            rows.push_back(v);
        }
        return static_cast<int>(f2::rank(rows));
    };

    std::map<int, int> out;
    for (auto& [g, v] : by_gr) {
        int h = static_cast<int>(v.size()) - rank_from(g) - rank_from(g + 1);
        if (h) out[g] = h;
    }
    return out;
}

std::vector<std::vector<int>> components(const Complex& C) {
    const int n = static_cast<int>(C.gens.size());
    std::vector<std::vector<int>> adj(n);
    for (auto& a : C.arrows) {
        adj[a.from].push_back(a.to);
        adj[a.to].push_back(a.from);
    }
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> cur{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t h = 0; h < cur.size(); ++h)
            for (int w : adj[cur[h]])
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    cur.push_back(w);
                }
        std::sort(cur.begin(), cur.end());
        out.push_back(std::move(cur));
    }
    return out;
}

std::vector<Complex> split_components(const Complex& C) {
    std::vector<Complex> out;
    for (auto& c : components(C)) out.push_back(subcomplex(C, c));
    return out;
}

Complex drop_acyclic_components(const Complex& C) {
    std::vector<int> keep;
    for (auto& c : components(C))
        if (!is_acyclic(subcomplex(C, c))) keep.insert(keep.end(), c.begin(), c.end());
    std::sort(keep.begin(), keep.end());
    return subcomplex(C, keep);
}

}  // namespace hfs
