#pragma once

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace hfs::f2 {

using Vec = boost::dynamic_bitset<>;

// Fully reduced row space: every stored row is zero on every other row's pivot,
// so reduction is a single pass. Each row optionally tracks the combination of
// inputs that produced it (for kernels).
class Echelon {
public:
    explicit Echelon(std::size_t dim = 0, std::size_t tracked = 0) : dim_(dim), tracked_(tracked) {}

    // Reduces v in place; returns true if v ends up zero. Combination (if tracked) follows along.
    bool reduce(Vec& v, Vec* comb = nullptr) const;
    // Inserts v; returns false if v was already in the span (comb then holds a kernel relation).
    bool insert(Vec v, Vec* comb = nullptr);
    bool contains(Vec v) const { return reduce(v); }

    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

private:
    std::size_t dim_;
    std::size_t tracked_;
    std::vector<Vec> rows_;
    std::vector<Vec> combs_;
    std::vector<std::size_t> pivots_;
};

// Rank of the matrix given by its rows.
std::size_t rank(const std::vector<Vec>& rows);

// Basis of ker(f) where images[k] = f(e_k) in a space of dimension `codim`.
std::vector<Vec> kernel(const std::vector<Vec>& images, std::size_t codim);

}  // namespace hfs::f2
