#pragma once

#include <utility>

#include "hfslice/complex.hpp"

namespace hfs {

struct RefilterParams {
    int N = 0;
    int m = 0;
    int genus_bound = 0;
};

// (width(reduce C) - 1) / 2
int genus_bound(const Complex& C);

int base_range_lo(int N);  // ceil((-N+1)/2)
int base_range_hi(int N);  // floor(N/2)

std::pair<int, int> refilter_level(int i, int j, int m);

// genus < 0: inferred from the complex.
Complex refilter(const Complex& C, int N, int m, int genus = -1);
// Label m + tN: j lowered by t.
Complex extend_spinc(const Complex& C, int t);

struct EssentialPosition {
    int grading = 0;  // grading of the slice that was inspected (0 or 1)
    int i = 0;        // least i-level carrying the essential class
    int j = 0;        // least j-level carrying the essential class
};

EssentialPosition essential_position(const Complex& C);
Complex normalize(const Complex& C);

}  // namespace hfs
