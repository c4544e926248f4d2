#include <algorithm>
#include <map>
#include <sstream>

#include "hfslice/complex.hpp"

namespace hfs {

std::string text_diagram(const Complex& C) {
    std::ostringstream os;
    os << (C.label.empty() ? "complex" : C.label) << ": " << C.size() << " generators, " << C.arrows.size()
       << " arrows";
    if (!C.tag.is_zero()) os << ", grading shift " << C.tag.str();
    os << "\n";
    if (C.empty()) return os.str();

    std::map<std::pair<int, int>, std::string> cell;  // (j, i)
    int ilo = C.gens[0].i, ihi = ilo, jlo = C.gens[0].j, jhi = jlo;
    for (auto& g : C.gens) {
        auto& s = cell[{g.j, g.i}];
        if (!s.empty()) s += ",";
        s += g.id + "^" + std::to_string(g.gr);
        ilo = std::min(ilo, g.i);
        ihi = std::max(ihi, g.i);
        jlo = std::min(jlo, g.j);
        jhi = std::max(jhi, g.j);
    }
    std::size_t w = 3;
    for (auto& [k, s] : cell) w = std::max(w, s.size());
    auto pad = [&](const std::string& s) { return s + std::string(w - s.size(), ' '); };

    os << " j\\i";
    for (int i = ilo; i <= ihi; ++i) os << "| " << pad(std::to_string(i)) << " ";
    os << "\n";
    for (int j = jhi; j >= jlo; --j) {
        std::string lab = std::to_string(j);
        os << std::string(5 - std::min<std::size_t>(5, lab.size()), ' ') << lab;
        for (int i = ilo; i <= ihi; ++i) {
            auto it = cell.find({j, i});
            os << "| " << pad(it == cell.end() ? "." : it->second) << " ";
        }
        os << "\n";
    }
    for (auto& a : C.arrows) {
        os << "  " << C.gens[a.from].id << " -> ";
        if (a.upow) os << "U^" << a.upow << " ";
        os << C.gens[a.to].id << "\n";
    }
    return os.str();
}

}  // namespace hfs
