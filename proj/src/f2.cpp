#include "hfslice/f2.hpp"

namespace hfs::f2 {

bool Echelon::reduce(Vec& v, Vec* comb) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!v.test(pivots_[r])) continue;
        v ^= rows_[r];
        if (comb && tracked_) *comb ^= combs_[r];
    }
    return v.none();
}

bool Echelon::insert(Vec v, Vec* comb) {
    Vec c = (comb && tracked_) ? *comb : Vec(tracked_);
    if (reduce(v, &c)) {
        if (comb) *comb = c;
        return false;
    }
    std::size_t p = v.find_first();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].test(p)) {
            rows_[r] ^= v;
            if (tracked_) combs_[r] ^= c;
        }
    }
    rows_.push_back(std::move(v));
    combs_.push_back(std::move(c));
    pivots_.push_back(p);
    return true;
}

std::size_t rank(const std::vector<Vec>& rows) {
    if (rows.empty()) return 0;
    Echelon e(rows.front().size());
    for (auto& r : rows) e.insert(r);
    return e.rank();
}

std::vector<Vec> kernel(const std::vector<Vec>& images, std::size_t codim) {
    std::size_t n = images.size();
    Echelon e(codim, n);
    std::vector<Vec> ker;
    for (std::size_t k = 0; k < n; ++k) {
        Vec c(n);
        c.set(k);
        if (!e.insert(images[k], &c)) ker.push_back(c);
    }
    return ker;
}

}  // namespace hfs::f2
