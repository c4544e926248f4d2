#include "hfslice/complex.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace hfs {

int Complex::add_gen(std::string id, int gr, int i, int j) {
    gens.push_back({std::move(id), gr, i, j});
    return static_cast<int>(gens.size()) - 1;
}

void Complex::add_arrow(int from, int to, int upow) { arrows.push_back({from, to, upow}); }

void Complex::add_arrow(int from, int to) {
    int d = gens[to].gr - gens[from].gr + 1;
    if (d % 2 != 0 || d < 0)
        throw std::invalid_argument("no U-power makes " + gens[from].id + " -> " + gens[to].id +
                                    " lower grading by one");
    arrows.push_back({from, to, d / 2});
}

void Complex::add_arrow(const std::string& from, const std::string& to, int upow) {
    int a = index_of(from), b = index_of(to);
    if (a < 0 || b < 0) throw std::invalid_argument("unknown generator in arrow " + from + " -> " + to);
    add_arrow(a, b, upow);
}

int Complex::index_of(const std::string& id) const {
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (gens[k].id == id) return static_cast<int>(k);
    return -1;
}

void Complex::normalize_arrows() {
    std::sort(arrows.begin(), arrows.end());
    std::vector<Arrow> out;
    for (std::size_t k = 0; k < arrows.size();) {
        std::size_t e = k;
        while (e < arrows.size() && arrows[e] == arrows[k]) ++e;
        if ((e - k) % 2 == 1) out.push_back(arrows[k]);
        k = e;
    }
    arrows.swap(out);
}

namespace {

std::string arrow_str(const Complex& C, const Arrow& a) {
    return C.gens[a.from].id + " -> U^" + std::to_string(a.upow) + " " + C.gens[a.to].id;
}

struct TripleHash {
    std::size_t operator()(const std::tuple<int, int, int>& t) const {
        auto [a, b, c] = t;
        return (std::size_t(a) * 1000003u) ^ (std::size_t(b) * 9176u) ^ std::size_t(c);
    }
};

}  // namespace

ValidationReport validate(const Complex& C) {
    ValidationReport rep;
    auto fail = [&](std::string s) {
        rep.ok = false;
        rep.issues.push_back(std::move(s));
    };
    std::unordered_set<std::string> seen;
    for (auto& g : C.gens)
        if (!seen.insert(g.id).second) fail("duplicate generator id " + g.id);

    const int n = static_cast<int>(C.gens.size());
    bool indices_ok = true;
    for (auto& a : C.arrows) {
        if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n) {
            fail("arrow references a missing generator");
            indices_ok = false;
            continue;
        }
        if (a.upow < 0) fail("negative U-power on " + arrow_str(C, a));
        auto& s = C.gens[a.from];
        auto& t = C.gens[a.to];
        if (t.gr - 2 * a.upow != s.gr - 1)
            fail("grading mismatch on " + arrow_str(C, a) + ": " + std::to_string(t.gr - 2 * a.upow) +
                 " != " + std::to_string(s.gr - 1));
        if (t.i - a.upow > s.i)
            fail("filtration increase on " + arrow_str(C, a) + ": filt_i " + std::to_string(t.i - a.upow) +
                 " > " + std::to_string(s.i));
        if (t.j - a.upow > s.j)
            fail("filtration increase on " + arrow_str(C, a) + ": filt_j " + std::to_string(t.j - a.upow) +
                 " > " + std::to_string(s.j));
    }
    if (!indices_ok) return rep;

    std::vector<std::vector<const Arrow*>> out(n);
    for (auto& a : C.arrows) out[a.from].push_back(&a);
    for (int x = 0; x < n; ++x) {
        std::unordered_map<std::tuple<int, int, int>, int, TripleHash> cnt;
        for (auto* a : out[x])
            for (auto* b : out[a->to]) cnt[{b->to, a->upow + b->upow, a->to}] ^= 1;
        // collapse over the middle generator
        std::map<std::pair<int, int>, std::pair<int, int>> total;
        for (auto& [k, v] : cnt) {
            if (!v) continue;
            auto [z, p, mid] = k;
            auto& t = total[{z, p}];
            t.first ^= 1;
            t.second = mid;
        }
        for (auto& [k, v] : total)
            if (v.first)
                fail("d^2 != 0: " + C.gens[x].id + " -> U^" + std::to_string(k.second) + " " + C.gens[k.first].id +
                     " (via " + C.gens[v.second].id + ")");
    }
    return rep;
}

void require_valid(const Complex& C) {
    auto r = validate(C);
    if (!r.ok) throw std::invalid_argument("invalid complex '" + C.label + "': " + r.issues.front());
}

Complex tensor(const Complex& A, const Complex& B) {
    Complex C;
    C.label = A.label + " # " + B.label;
    C.tag = A.tag + B.tag;
    const int nb = static_cast<int>(B.gens.size());
    C.gens.reserve(A.gens.size() * B.gens.size());
    for (auto& a : A.gens)
        for (auto& b : B.gens) C.add_gen(a.id + "|" + b.id, a.gr + b.gr, a.i + b.i, a.j + b.j);
    for (auto& e : A.arrows)
        for (int b = 0; b < nb; ++b) C.add_arrow(e.from * nb + b, e.to * nb + b, e.upow);
    for (int a = 0; a < static_cast<int>(A.gens.size()); ++a)
        for (auto& e : B.arrows) C.add_arrow(a * nb + e.from, a * nb + e.to, e.upow);
    return C;
}

Complex dualize(const Complex& C) {
    Complex D;
    D.label = "dual(" + C.label + ")";
    D.tag = -C.tag;
    for (auto& g : C.gens) {
        std::string id = (!g.id.empty() && g.id[0] == '~') ? g.id.substr(1) : "~" + g.id;
        D.add_gen(id, -g.gr, -g.i, -g.j);
    }
    for (auto& a : C.arrows) D.add_arrow(a.to, a.from, a.upow);
    D.normalize_arrows();
    return D;
}

Complex shift(const Complex& C, int di, int dj, int dg) {
    Complex D = C;
    for (auto& g : D.gens) {
        g.i += di;
        g.j += dj;
        g.gr += dg;
    }
    return D;
}

Complex shift(const Complex& C, int di, int dj, const ShiftTag& dg) {
    Complex D = shift(C, di, dj, 0);
    D.tag += dg;
    return D;
}

Complex direct_sum(const Complex& A, const Complex& B) {
    Complex C = A;
    C.label = A.label + " + " + B.label;
    int off = static_cast<int>(A.gens.size());
    for (auto& g : B.gens) C.gens.push_back(g);
    for (auto& a : B.arrows) C.add_arrow(a.from + off, a.to + off, a.upow);
    return C;
}

Complex subcomplex(const Complex& C, const std::vector<int>& idx) {
    Complex S;
    S.label = C.label;
    S.tag = C.tag;
    std::vector<int> pos(C.gens.size(), -1);
    for (int k : idx) {
        pos[k] = static_cast<int>(S.gens.size());
        S.gens.push_back(C.gens[k]);
    }
    for (auto& a : C.arrows)
        if (pos[a.from] >= 0 && pos[a.to] >= 0) S.add_arrow(pos[a.from], pos[a.to], a.upow);
    return S;
}

Complex subcomplex(const Complex& C, const std::vector<std::string>& ids) {
    std::vector<int> idx;
    for (auto& id : ids) {
        int k = C.index_of(id);
        if (k < 0) throw std::invalid_argument("no generator " + id);
        idx.push_back(k);
    }
    return subcomplex(C, idx);
}

int width(const Complex& C) {
    if (C.gens.empty()) throw std::invalid_argument("width of an empty complex");
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (auto& g : C.gens) {
        lo = std::min(lo, g.i - g.j);
        hi = std::max(hi, g.i - g.j);
    }
    return hi - lo + 1;
}

Complex rebase(const Complex& C) {
    Complex R = C;
    for (auto& g : R.gens) {
        g.gr -= 2 * g.i;
        g.j -= g.i;
        g.i = 0;
    }
    for (auto& a : R.arrows) a.upow += C.gens[a.from].i - C.gens[a.to].i;
    return R;
}

nlohmann::json to_json(const Complex& C) {
    nlohmann::json j;
    j["label"] = C.label;
    j["shift_tag"] = to_json(C.tag);
    auto gens = nlohmann::json::array();
    for (auto& g : C.gens) gens.push_back({{"id", g.id}, {"gr", g.gr}, {"i", g.i}, {"j", g.j}});
    j["generators"] = gens;
    auto diff = nlohmann::json::array();
    for (auto& a : C.arrows)
        diff.push_back({{"from", C.gens[a.from].id}, {"to", C.gens[a.to].id}, {"upow", a.upow}});
    j["differential"] = diff;
    return j;
}

Complex complex_from_json(const nlohmann::json& j) {
    try {
        Complex C;
        C.label = j.value("label", std::string());
        if (j.contains("shift_tag")) C.tag = tag_from_json(j.at("shift_tag"));
        std::unordered_map<std::string, int> pos;
        for (auto& g : j.at("generators")) {
            auto id = g.at("id").get<std::string>();
            if (pos.count(id)) throw std::invalid_argument("duplicate generator id " + id);
            pos[id] = C.add_gen(id, g.at("gr").get<int>(), g.at("i").get<int>(), g.at("j").get<int>());
        }
        for (auto& a : j.at("differential")) {
            auto f = a.at("from").get<std::string>(), t = a.at("to").get<std::string>();
            if (!pos.count(f) || !pos.count(t))
                throw std::invalid_argument("differential references unknown generator " + (pos.count(f) ? t : f));
            C.add_arrow(pos[f], pos[t], a.at("upow").get<int>());
        }
        return C;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed complex JSON: ") + e.what());
    }
}

}  // namespace hfs
