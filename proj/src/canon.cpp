#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "hfslice/complex.hpp"

namespace hfs {

namespace {

using Key = std::vector<long>;

struct Graph {
    std::vector<std::pair<int, int>> gj;  // (gr, j) on the i = 0 lift
    std::vector<std::vector<std::pair<int, int>>> out, in;
};

// Replaces colors by the rank of (color, neighbourhood signature) until stable.
std::vector<int> refine(const Graph& G, std::vector<int> color) {
    const int n = static_cast<int>(color.size());
    int classes = -1;
    while (true) {
        std::vector<std::vector<long>> sig(n);
        for (int v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.push_back(color[v]);
            std::vector<long> o, i;
            for (auto& [w, q] : G.out[v]) o.push_back(long(color[w]) * 4096 + q);
            for (auto& [w, q] : G.in[v]) i.push_back(long(color[w]) * 4096 + q);
            std::sort(o.begin(), o.end());
            std::sort(i.begin(), i.end());
            s.push_back(static_cast<long>(o.size()));
            s.insert(s.end(), o.begin(), o.end());
            s.push_back(-1);
            s.insert(s.end(), i.begin(), i.end());
        }
        std::vector<std::vector<long>> uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (int v = 0; v < n; ++v)
            color[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
        if (static_cast<int>(uniq.size()) == classes) break;
        classes = static_cast<int>(uniq.size());
    }
    return color;
}

Key key_of(const Graph& G, const std::vector<int>& color, std::vector<int>& order) {
    const int n = static_cast<int>(color.size());
    order.assign(n, 0);
    for (int v = 0; v < n; ++v) order[color[v]] = v;
    Key k;
    for (int p = 0; p < n; ++p) {
        k.push_back(G.gj[order[p]].first);
        k.push_back(G.gj[order[p]].second);
    }
    std::vector<std::array<long, 3>> arr;
    for (int v = 0; v < n; ++v)
        for (auto& [w, q] : G.out[v]) arr.push_back({color[v], color[w], q});
    std::sort(arr.begin(), arr.end());
    for (auto& a : arr) k.insert(k.end(), a.begin(), a.end());
    return k;
}

void search(const Graph& G, std::vector<int> color, Key& best, std::vector<int>& best_order, long& budget) {
    if (--budget < 0) throw std::runtime_error("canonical_form: search budget exhausted");
    color = refine(G, std::move(color));
    const int n = static_cast<int>(color.size());
    std::vector<int> cnt(n, 0);
    for (int c : color) ++cnt[c];
    int cell = -1;
    for (int c = 0; c < n; ++c)
        if (cnt[c] > 1) {
            cell = c;
            break;
        }
    if (cell < 0) {
        std::vector<int> order;
        Key k = key_of(G, color, order);
        if (best.empty() || k < best) {
            best = std::move(k);
            best_order = std::move(order);
        }
        return;
    }
    for (int v = 0; v < n; ++v) {
        if (color[v] != cell) continue;
        std::vector<int> c2(n);
        for (int u = 0; u < n; ++u) c2[u] = 2 * color[u] + ((color[u] == cell && u != v) ? 1 : 0);
        search(G, c2, best, best_order, budget);
    }
}

// Canonical ordering of one connected piece.
std::pair<Key, std::vector<int>> canon_piece(const Complex& R, const std::vector<int>& piece) {
    const int n = static_cast<int>(piece.size());
    std::vector<int> pos(R.gens.size(), -1);
    for (int k = 0; k < n; ++k) pos[piece[k]] = k;
    Graph G;
    G.out.resize(n);
    G.in.resize(n);
    for (int v : piece) G.gj.push_back({R.gens[v].gr, R.gens[v].j});
    for (auto& a : R.arrows)
        if (pos[a.from] >= 0) {
            G.out[pos[a.from]].push_back({pos[a.to], a.upow});
            G.in[pos[a.to]].push_back({pos[a.from], a.upow});
        }
    std::vector<std::pair<int, int>> u = G.gj;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    std::vector<int> color(n);
    for (int v = 0; v < n; ++v) color[v] = static_cast<int>(std::lower_bound(u.begin(), u.end(), G.gj[v]) - u.begin());
    Key best;
    std::vector<int> order;
    long budget = 200000;
    search(G, color, best, order, budget);
    for (auto& o : order) o = piece[o];
    return {best, order};
}

}  // namespace

// Canonical representative: generators moved to their i = 0 lifts (so U-translates of a
// generator are identified), connected pieces canonized separately and sorted.
Complex canonical_complex(const Complex& C) {
    Complex R = rebase(C);
    R.normalize_arrows();
    std::vector<std::pair<Key, std::vector<int>>> pieces;
    for (auto& c : components(R)) pieces.push_back(canon_piece(R, c));
    std::sort(pieces.begin(), pieces.end());
    std::vector<int> order;
    for (auto& p : pieces) order.insert(order.end(), p.second.begin(), p.second.end());

    std::vector<int> pos(R.gens.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
    Complex K;
    K.tag = C.tag;
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto& g = R.gens[order[k]];
        K.add_gen("g" + std::to_string(k), g.gr, g.i, g.j);
    }
    for (auto& a : R.arrows) K.add_arrow(pos[a.from], pos[a.to], a.upow);
    K.normalize_arrows();
    return K;
}

std::string canonical_form(const Complex& C) { return to_json(canonical_complex(C)).dump(); }

}  // namespace hfs
