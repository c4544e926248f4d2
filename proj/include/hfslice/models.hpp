#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hfslice/complex.hpp"

namespace hfs {

Complex unknot_model();
// Staircase of T(2,2k+1): x_0..x_k at grading 0, y_1..y_k at grading 1.
Complex torus_model(int k);
// 15-generator model of the positive Whitehead double of the right-handed trefoil.
Complex whitehead_double_model();

struct KnotExpr {
    enum Kind { Unknot, Torus, Double, Mirror, Sum, Repeat };
    Kind kind = Unknot;
    int param = 0;  // q for Torus, count for Repeat
    std::vector<std::shared_ptr<const KnotExpr>> kids;

    std::string text() const;
};
using KnotPtr = std::shared_ptr<const KnotExpr>;

KnotPtr parse_knot(const std::string& s);
// Pushes mirrors to the leaves: m(a#b) = m(a)#m(b), m(m(a)) = a, m(k*a) = k*m(a).
KnotPtr normalize_mirrors(const KnotPtr& e);

enum class ModelPolicy {
    Literal,       // full tensor products of the leaf models
    DropAcyclic,   // acyclic connected pieces discarded after every step
};

Complex build_model(const KnotPtr& e, ModelPolicy policy = ModelPolicy::Literal);
Complex build_model(const std::string& text, ModelPolicy policy = ModelPolicy::Literal);

struct StaircaseSplit {
    Complex staircase;
    Complex acyclic;
};

// T(2,3)^{(x)k} split into the T(2,2k+1) staircase and an acyclic summand, by the
// explicit basis change iterated one tensor factor at a time.
StaircaseSplit split_staircase(int k);
// One step: T(2,2K+1) (x) T(2,3) = T(2,2K+3) + acyclic of rank 4K.
StaircaseSplit staircase_step(const Complex& staircase, int K);

}  // namespace hfs
