#include <algorithm>
#include <numeric>

#include "hfslice/complex.hpp"
#include "hfslice/f2.hpp"

namespace hfs {

Complex reduce(const Complex& C) {
    // Work on i = 0 lifts: an arrow preserves both filtrations exactly when it has
    // U-power 0 and joins generators of equal j there.
    Complex R = rebase(C);
    R.normalize_arrows();
    const int n = static_cast<int>(R.gens.size());
    std::vector<std::map<int, int>> out(n);
    std::vector<std::set<int>> in(n);
    for (auto& a : R.arrows) {
        out[a.from][a.to] = a.upow;
        in[a.to].insert(a.from);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        auto& gx = C.gens[x];
        auto& gy = C.gens[y];
        return std::tie(gx.gr, gx.i, gx.j, gx.id) < std::tie(gy.gr, gy.i, gy.j, gy.id);
    });
    std::vector<int> rank(n);
    for (int k = 0; k < n; ++k) rank[order[k]] = k;

    std::vector<char> alive(n, 1);
    auto toggle = [&](int x, int y, int q) {
        auto it = out[x].find(y);
        if (it != out[x].end()) {
            out[x].erase(it);
            in[y].erase(x);
        } else {
            out[x][y] = q;
            in[y].insert(x);
        }
    };
    auto drop = [&](int v) {
        for (auto& [w, q] : out[v]) in[w].erase(v);
        for (int u : in[v]) out[u].erase(v);
        out[v].clear();
        in[v].clear();
        alive[v] = 0;
    };

    for (bool changed = true; changed;) {
        changed = false;
        for (int a : order) {
            if (!alive[a]) continue;
            int b = -1;
            for (auto& [w, q] : out[a])
                if (q == 0 && R.gens[w].j == R.gens[a].j && (b < 0 || rank[w] < rank[b])) b = w;
            if (b < 0) continue;
            std::vector<std::pair<int, int>> xs, ys;
            for (int x : in[b])
                if (x != a) xs.push_back({x, out[x].at(b)});
            for (auto& [y, s] : out[a])
                if (y != b) ys.push_back({y, s});
            for (auto& [x, r] : xs)
                for (auto& [y, s] : ys) toggle(x, y, r + s);
            drop(a);
            drop(b);
            changed = true;
            break;
        }
    }

    std::vector<int> keep;
    for (int k = 0; k < n; ++k)
        if (alive[k]) keep.push_back(k);
    std::vector<int> pos(n, -1);
    for (std::size_t k = 0; k < keep.size(); ++k) pos[keep[k]] = static_cast<int>(k);

    Complex S;
    S.label = C.label;
    S.tag = C.tag;
    std::vector<Arrow> rebased;
    for (int k : keep)
        for (auto& [w, q] : out[k]) rebased.push_back({pos[k], pos[w], q});

    // Prefer the caller's lifts when every surviving arrow still has a U-power >= 0 there.
    bool original = true;
    for (auto& a : rebased)
        if (a.upow - C.gens[keep[a.from]].i + C.gens[keep[a.to]].i < 0) original = false;
    for (int k : keep) S.gens.push_back(original ? C.gens[k] : R.gens[k]);
    for (auto a : rebased) {
        if (original) a.upow += C.gens[keep[a.to]].i - C.gens[keep[a.from]].i;
        S.arrows.push_back(a);
    }
    S.normalize_arrows();
    return S;
}

namespace {

// U=1 matrix: column from -> targets. Exponents are recovered from gradings.
std::vector<f2::Vec> matrix_of(const Complex& C) {
    const std::size_t n = C.gens.size();
    std::vector<f2::Vec> cols(n, f2::Vec(n));
    for (auto& a : C.arrows) cols[a.from].flip(a.to);
    return cols;
}

Complex from_matrix(const Complex& C, const std::vector<f2::Vec>& cols) {
    Complex D;
    D.label = C.label;
    D.tag = C.tag;
    D.gens = C.gens;
    for (std::size_t f = 0; f < cols.size(); ++f)
        for (auto t = cols[f].find_first(); t != f2::Vec::npos; t = cols[f].find_next(t))
            D.add_arrow(static_cast<int>(f), static_cast<int>(t));
    D.normalize_arrows();
    return D;
}

// cols: column-major n x n; returns P^-1 D P with P given as sparse columns.
std::vector<f2::Vec> conjugate(const std::vector<f2::Vec>& Dcols, const std::vector<f2::Vec>& P,
                               const std::vector<f2::Vec>& Pinv) {
    const std::size_t n = Dcols.size();
    auto apply = [&](const std::vector<f2::Vec>& M, const f2::Vec& v) {
        f2::Vec r(n);
        for (auto k = v.find_first(); k != f2::Vec::npos; k = v.find_next(k)) r ^= M[k];
        return r;
    };
    std::vector<f2::Vec> out(n);
    for (std::size_t c = 0; c < n; ++c) out[c] = apply(Pinv, apply(Dcols, P[c]));
    return out;
}

std::vector<std::vector<int>> invert(const std::vector<std::vector<int>>& M) {
    const std::size_t k = M.size();
    std::vector<std::vector<int>> A = M, I(k, std::vector<int>(k, 0));
    for (std::size_t r = 0; r < k; ++r) {
        if (A[r].size() != k) throw std::invalid_argument("basis change matrix must be square");
        I[r][r] = 1;
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && !(A[p][c] & 1)) ++p;
        if (p == k) throw std::invalid_argument("basis change matrix is singular over F2");
        std::swap(A[p], A[c]);
        std::swap(I[p], I[c]);
        for (std::size_t r = 0; r < k; ++r)
            if (r != c && (A[r][c] & 1))
                for (std::size_t q = 0; q < k; ++q) {
                    A[r][q] ^= A[c][q] & 1;
                    I[r][q] ^= I[c][q] & 1;
                }
    }
    return I;
}

}  // namespace

Complex filtered_basis_change(const Complex& C, const std::vector<int>& idx, const std::vector<std::vector<int>>& M) {
    const std::size_t n = C.gens.size();
    for (int k : idx) {
        auto& g = C.gens[k];
        auto& h = C.gens[idx.front()];
        if (g.gr != h.gr || g.i != h.i || g.j != h.j)
            throw std::invalid_argument("basis change block mixes (gr,i,j) levels");
    }
    auto Minv = invert(M);
    std::vector<f2::Vec> P(n, f2::Vec(n)), Pinv(n, f2::Vec(n));
    for (std::size_t c = 0; c < n; ++c) {
        P[c].set(c);
        Pinv[c].set(c);
    }
    // new basis vector k = sum_r M[k][r] old[idx[r]]
    for (std::size_t k = 0; k < idx.size(); ++k) {
        P[idx[k]].reset();
        Pinv[idx[k]].reset();
        for (std::size_t r = 0; r < idx.size(); ++r) {
            if (M[k][r] & 1) P[idx[k]].set(idx[r]);
            if (Minv[k][r] & 1) Pinv[idx[k]].set(idx[r]);
        }
    }
    return from_matrix(C, conjugate(matrix_of(C), P, Pinv));
}

Complex substitute(const Complex& C, int y, int x, int q) {
    auto& gy = C.gens[y];
    auto& gx = C.gens[x];
    if (x == y || gx.gr - 2 * q != gy.gr || gx.i - q > gy.i || gx.j - q > gy.j)
        throw std::invalid_argument("substitution " + gy.id + " + U^" + std::to_string(q) + " " + gx.id +
                                    " is not a filtered homogeneous basis change");
    const std::size_t n = C.gens.size();
    std::vector<f2::Vec> P(n, f2::Vec(n));
    for (std::size_t c = 0; c < n; ++c) P[c].set(c);
    P[y].set(x);  // its own inverse over F2
    return from_matrix(C, conjugate(matrix_of(C), P, P));
}

}  // namespace hfs
