#include "hfslice/models.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

namespace hfs {

Complex unknot_model() {
    Complex C;
    C.label = "U";
    C.add_gen("x0", 0, 0, 0);
    return C;
}

Complex torus_model(int k) {
    if (k < 1) throw std::invalid_argument("torus_model needs k >= 1");
    Complex C;
    C.label = "T(2," + std::to_string(2 * k + 1) + ")";
    for (int i = 0; i <= k; ++i) C.add_gen("x" + std::to_string(i), 0, i, k - i);
    for (int i = 1; i <= k; ++i) {
        int y = C.add_gen("y" + std::to_string(i), 1, i, k + 1 - i);
        C.add_arrow(y, i - 1, 0);
        C.add_arrow(y, i, 0);
    }
    return C;
}

Complex whitehead_double_model() {
    Complex C;
    C.label = "D";
    struct G {
        const char* id;
        int gr, i, j;
    };
    const G gens[] = {
        {"u1", -1, 0, 1}, {"u2", -1, 0, 1}, {"x1", 0, 0, 1},  {"x2", 0, 0, 1},  {"v1", -2, 0, 0},
        {"v2", -2, 0, 0}, {"v3", -2, 0, 0}, {"v4", -2, 0, 0}, {"y1", -1, 0, 0}, {"y2", -1, 0, 0},
        {"y3", -1, 0, 0}, {"w1", -3, 0, -1}, {"w2", -3, 0, -1}, {"z1", -2, 0, -1}, {"z2", -2, 0, -1},
    };
    for (auto& g : gens) C.add_gen(g.id, g.gr, g.i, g.j);
    const struct {
        const char *from, *to;
        int upow;
    } arrows[] = {
        {"x2", "y1", 0}, {"y2", "x1", 1}, {"y2", "z1", 0}, {"y3", "x2", 1}, {"y3", "z2", 0},
        {"z2", "y1", 1}, {"u1", "v1", 0}, {"u2", "v2", 0}, {"v3", "u1", 1}, {"v3", "w1", 0},
        {"v4", "u2", 1}, {"v4", "w2", 0}, {"w1", "v1", 1}, {"w2", "v2", 1},
    };
    for (auto& a : arrows) C.add_arrow(a.from, a.to, a.upow);
    return C;
}

std::string KnotExpr::text() const {
    switch (kind) {
    case Unknot: return "U";
    case Double: return "D";
    case Torus: return "T(2," + std::to_string(param) + ")";
    case Mirror: return "m(" + kids[0]->text() + ")";
    case Sum: return kids[0]->text() + "#" + kids[1]->text();
    case Repeat: {
        auto inner = kids[0]->text();
        if (kids[0]->kind == Sum) inner = "(" + inner + ")";
        return std::to_string(param) + "*" + inner;
    }
    }
    return "?";
}

namespace {

KnotPtr make(KnotExpr::Kind k, int p = 0, std::vector<KnotPtr> kids = {}) {
    auto e = std::make_shared<KnotExpr>();
    e->kind = k;
    e->param = p;
    e->kids = std::move(kids);
    return e;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    KnotPtr run() {
        auto e = expr();
        skip();
        if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    std::size_t p_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("knot expression '" + s_ + "' at " + std::to_string(p_) + ": " + why);
    }
    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool eat(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    int integer() {
        skip();
        std::size_t b = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (b == p_) fail("expected an integer");
        if (p_ - b > 6) fail("integer too large");
        return std::stoi(s_.substr(b, p_ - b));
    }

    KnotPtr expr() {
        auto e = term();
        while (eat('#')) e = make(KnotExpr::Sum, 0, {e, term()});
        return e;
    }

    KnotPtr term() {
        skip();
        if (p_ >= s_.size()) fail("unexpected end");
        char c = s_[p_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            int k = integer();
            if (k < 1) fail("repeat count must be >= 1");
            expect('*');
            return make(KnotExpr::Repeat, k, {term()});
        }
        if (c == '(') {
            ++p_;
            auto e = expr();
            expect(')');
            return e;
        }
        ++p_;
        switch (c) {
        case 'U': return make(KnotExpr::Unknot);
        case 'D': return make(KnotExpr::Double);
        case 'm': {
            expect('(');
            auto e = expr();
            expect(')');
            return make(KnotExpr::Mirror, 0, {e});
        }
        case 'T': {
            expect('(');
            if (integer() != 2) fail("only T(2,q) torus knots are supported");
            expect(',');
            int q = integer();
            if (q < 3 || q % 2 == 0) fail("T(2,q) needs odd q >= 3");
            expect(')');
            return make(KnotExpr::Torus, q);
        }
        default: --p_; fail("unknown symbol '" + std::string(1, c) + "'");
        }
    }
};

KnotPtr push_mirror(const KnotPtr& e, bool mirrored) {
    switch (e->kind) {
    case KnotExpr::Mirror: return push_mirror(e->kids[0], !mirrored);
    case KnotExpr::Sum: return make(KnotExpr::Sum, 0, {push_mirror(e->kids[0], mirrored), push_mirror(e->kids[1], mirrored)});
    case KnotExpr::Repeat: return make(KnotExpr::Repeat, e->param, {push_mirror(e->kids[0], mirrored)});
    default: return mirrored ? make(KnotExpr::Mirror, 0, {e}) : e;
    }
}

Complex eval(const KnotPtr& e, ModelPolicy policy) {
    auto tidy = [&](Complex C) { return policy == ModelPolicy::DropAcyclic ? drop_acyclic_components(C) : C; };
    switch (e->kind) {
    case KnotExpr::Unknot: return unknot_model();
    case KnotExpr::Torus: return torus_model((e->param - 1) / 2);
    case KnotExpr::Double: return tidy(whitehead_double_model());
    case KnotExpr::Mirror: return dualize(eval(e->kids[0], policy));
    case KnotExpr::Sum: return tidy(tensor(eval(e->kids[0], policy), eval(e->kids[1], policy)));
    case KnotExpr::Repeat: {
        Complex one = eval(e->kids[0], policy);
        Complex acc = one;
        for (int r = 1; r < e->param; ++r) acc = tidy(tensor(acc, one));
        return acc;
    }
    }
    throw std::logic_error("bad knot expression");
}

}  // namespace

KnotPtr parse_knot(const std::string& s) { return Parser(s).run(); }

KnotPtr normalize_mirrors(const KnotPtr& e) { return push_mirror(e, false); }

Complex build_model(const KnotPtr& e, ModelPolicy policy) {
    Complex C = eval(normalize_mirrors(e), policy);
    C.label = e->text();
    return C;
}

Complex build_model(const std::string& text, ModelPolicy policy) { return build_model(parse_knot(text), policy); }

StaircaseSplit staircase_step(const Complex& S, int K) {
    Complex T = torus_model(1);  // x0 = [z,0,1], x1 = [z,1,0], y1 = [w,1,1]
    Complex P = tensor(S, T);
    auto at = [&](const std::string& a, const std::string& b) {
        int k = P.index_of(a + "|" + b);
        if (k < 0) throw std::logic_error("staircase_step: missing " + a + "|" + b);
        return k;
    };
    auto X = [](int i) { return "x" + std::to_string(i); };
    auto Y = [](int i) { return "y" + std::to_string(i); };
    const std::string z0 = "x0", z1 = "x1", w = "y1";

    std::map<int, std::string> rename;
    // grading 1 blocks at filtration (i+1, K-i+1): x_i(w), y_{i+1}(z0), y_i(z1)
    for (int i = 0; i <= K; ++i) {
        std::vector<int> idx{at(X(i), w)};
        bool has_next = i < K, has_prev = i > 0;
        if (has_next) idx.push_back(at(Y(i + 1), z0));
        if (has_prev) idx.push_back(at(Y(i), z1));
        std::vector<std::vector<int>> M;
        if (has_next && has_prev) {
            M = {{1, 1, 0}, {0, 1, 0}, {1, 0, 1}};
            rename[idx[0]] = "a" + std::to_string(i);
            rename[idx[2]] = "c" + std::to_string(i);
        } else if (has_next) {
            M = {{1, 1}, {0, 1}};
            rename[idx[0]] = "a" + std::to_string(i);
        } else if (has_prev) {
            M = {{1, 0}, {1, 1}};
            rename[idx[1]] = "c" + std::to_string(i);
        } else {
            continue;
        }
        P = filtered_basis_change(P, idx, M);
    }
    // grading 0 blocks at filtration (i+1, K-i): x_i(z1), x_{i+1}(z0)
    for (int i = 0; i < K; ++i) {
        std::vector<int> idx{at(X(i), z1), at(X(i + 1), z0)};
        P = filtered_basis_change(P, idx, {{1, 1}, {0, 1}});
        rename[idx[0]] = "b" + std::to_string(i);
    }
    for (int i = 1; i <= K; ++i) rename[at(Y(i), w)] = "w" + std::to_string(i);

    std::vector<std::pair<int, std::string>> stair;
    for (int i = 0; i <= K; ++i) stair.push_back({at(X(i), z0), X(i)});
    stair.push_back({at(X(K), z1), X(K + 1)});
    for (int i = 1; i <= K; ++i) stair.push_back({at(Y(i), z0), Y(i)});
    stair.push_back({at(X(K), w), Y(K + 1)});

    std::vector<char> in_stair(P.gens.size(), 0);
    std::vector<int> sidx, aidx;
    for (auto& [k, name] : stair) {
        in_stair[k] = 1;
        sidx.push_back(k);
    }
    for (auto& a : P.arrows)
        if (in_stair[a.from] != in_stair[a.to])
            throw ConsistencyError("staircase_step: basis change left an arrow between summands at K=" +
                                   std::to_string(K));
    for (std::size_t k = 0; k < P.gens.size(); ++k)
        if (!in_stair[k]) aidx.push_back(static_cast<int>(k));

    StaircaseSplit out;
    out.staircase = subcomplex(P, sidx);
    for (std::size_t r = 0; r < stair.size(); ++r) out.staircase.gens[r].id = stair[r].second;
    out.staircase.label = "T(2," + std::to_string(2 * K + 3) + ")";
    out.acyclic = subcomplex(P, aidx);
    for (std::size_t r = 0; r < aidx.size(); ++r)
        out.acyclic.gens[r].id = "s" + std::to_string(K) + "." + rename.at(aidx[r]);
    out.acyclic.label = "acyclic";
    return out;
}

StaircaseSplit split_staircase(int k) {
    if (k < 1) throw std::invalid_argument("split_staircase needs k >= 1");
    StaircaseSplit acc{torus_model(1), Complex{}};
    acc.acyclic.label = "acyclic";
    for (int K = 1; K < k; ++K) {
        auto step = staircase_step(acc.staircase, K);
        Complex carried = tensor(acc.acyclic, torus_model(1));
        carried.label = "acyclic";
        acc.staircase = step.staircase;
        acc.acyclic = direct_sum(carried, step.acyclic);
        acc.acyclic.label = "acyclic";
    }
    return acc;
}

}  // namespace hfs
