#pragma once

#include <map>
#include <string>
#include <tuple>

#include "json.hpp"

namespace hfs {

// Symbolic grading shift: known integer part plus integer combination of atoms.
struct Atom {
    enum Kind { Eps1, Eps2, Base };
    Kind kind = Base;
    int N = 0;
    int m = 0;
    std::string label;

    auto key() const { return std::tie(kind, N, m, label); }
    bool operator<(const Atom& o) const { return key() < o.key(); }
    bool operator==(const Atom& o) const { return key() == o.key(); }

    static Atom eps1(int N, int m) { return {Eps1, N, m, {}}; }
    static Atom eps2(int N, int m) { return {Eps2, N, m, {}}; }
    static Atom base(std::string l) { return {Base, 0, 0, std::move(l)}; }

    std::string str() const;
};

class ShiftTag {
public:
    ShiftTag() = default;
    explicit ShiftTag(long c) : konst_(c) {}
    ShiftTag(const Atom& a, long coef = 1) { add(a, coef); }

    void add(const Atom& a, long coef);
    long known() const { return konst_; }
    const std::map<Atom, long>& atoms() const { return atoms_; }
    bool is_zero() const { return konst_ == 0 && atoms_.empty(); }
    bool symbolic() const { return !atoms_.empty(); }

    ShiftTag operator+(const ShiftTag& o) const;
    ShiftTag operator-(const ShiftTag& o) const;
    ShiftTag operator-() const;
    ShiftTag& operator+=(const ShiftTag& o) { return *this = *this + o; }
    bool operator==(const ShiftTag& o) const { return konst_ == o.konst_ && atoms_ == o.atoms_; }

    std::string str() const;

private:
    long konst_ = 0;
    std::map<Atom, long> atoms_;
};

nlohmann::json to_json(const ShiftTag& t);
ShiftTag tag_from_json(const nlohmann::json& j);

}  // namespace hfs
