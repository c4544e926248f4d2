#include "hfslice/tag.hpp"

#include <stdexcept>

namespace hfs {

std::string Atom::str() const {
    switch (kind) {
    case Eps1: return "eps1(" + std::to_string(N) + "," + std::to_string(m) + ")";
    case Eps2: return "eps2(" + std::to_string(N) + "," + std::to_string(m) + ")";
    default: return "base(" + label + ")";
    }
}

void ShiftTag::add(const Atom& a, long coef) {
    if (coef == 0) return;
    auto it = atoms_.find(a);
    if (it == atoms_.end()) {
        atoms_.emplace(a, coef);
        return;
    }
    it->second += coef;
    if (it->second == 0) atoms_.erase(it);
}

ShiftTag ShiftTag::operator+(const ShiftTag& o) const {
    ShiftTag r = *this;
    r.konst_ += o.konst_;
    for (auto& [a, c] : o.atoms_) r.add(a, c);
    return r;
}

ShiftTag ShiftTag::operator-() const {
    ShiftTag r;
    r.konst_ = -konst_;
    for (auto& [a, c] : atoms_) r.atoms_.emplace(a, -c);
    return r;
}

ShiftTag ShiftTag::operator-(const ShiftTag& o) const { return *this + (-o); }

std::string ShiftTag::str() const {
    std::string s = std::to_string(konst_);
    for (auto& [a, c] : atoms_) {
        s += c < 0 ? " - " : " + ";
        long ac = c < 0 ? -c : c;
        if (ac != 1) s += std::to_string(ac) + "*";
        s += a.str();
    }
    return s;
}

nlohmann::json to_json(const ShiftTag& t) {
    auto out = nlohmann::json::array();
    if (t.known() != 0) out.push_back({{"atom", "const"}, {"coef", t.known()}});
    for (auto& [a, c] : t.atoms()) {
        nlohmann::json e;
        switch (a.kind) {
        case Atom::Eps1: e = {{"atom", "eps1"}, {"N", a.N}, {"m", a.m}}; break;
        case Atom::Eps2: e = {{"atom", "eps2"}, {"N", a.N}, {"m", a.m}}; break;
        case Atom::Base: e = {{"atom", "base"}, {"label", a.label}}; break;
        }
        e["coef"] = c;
        out.push_back(e);
    }
    return out;
}

ShiftTag tag_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("shift_tag must be an array");
    ShiftTag t;
    for (auto& e : j) {
        std::string kind = e.at("atom").get<std::string>();
        long coef = e.value("coef", 1L);
        if (kind == "const")
            t += ShiftTag(coef);
        else if (kind == "eps1")
            t.add(Atom::eps1(e.at("N").get<int>(), e.at("m").get<int>()), coef);
        else if (kind == "eps2")
            t.add(Atom::eps2(e.at("N").get<int>(), e.at("m").get<int>()), coef);
        else if (kind == "base")
            t.add(Atom::base(e.at("label").get<std::string>()), coef);
        else
            throw std::invalid_argument("unknown shift atom '" + kind + "'");
    }
    return t;
}

}  // namespace hfs
