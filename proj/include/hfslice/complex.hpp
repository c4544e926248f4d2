#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "hfslice/tag.hpp"

namespace hfs {

struct Generator {
    std::string id;
    int gr = 0;
    int i = 0;
    int j = 0;
};

// from -> U^upow * to
struct Arrow {
    int from = 0;
    int to = 0;
    int upow = 0;
    auto key() const { return std::tie(from, to, upow); }
    bool operator<(const Arrow& o) const { return key() < o.key(); }
    bool operator==(const Arrow& o) const { return key() == o.key(); }
};

struct Complex {
    std::string label;
    ShiftTag tag;
    std::vector<Generator> gens;
    std::vector<Arrow> arrows;

    int add_gen(std::string id, int gr, int i, int j);
    void add_arrow(int from, int to, int upow);
    // Adds from -> to with the exponent forced by the gradings.
    void add_arrow(int from, int to);
    void add_arrow(const std::string& from, const std::string& to, int upow);
    int index_of(const std::string& id) const;
    std::size_t size() const { return gens.size(); }
    bool empty() const { return gens.empty(); }
    // Cancels duplicate arrows mod 2 and sorts.
    void normalize_arrows();
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
};

ValidationReport validate(const Complex& C);
// Throws std::invalid_argument carrying the first issue.
void require_valid(const Complex& C);

Complex tensor(const Complex& A, const Complex& B);
Complex dualize(const Complex& C);
Complex shift(const Complex& C, int di, int dj, int dg);
Complex shift(const Complex& C, int di, int dj, const ShiftTag& dg);
Complex direct_sum(const Complex& A, const Complex& B);
Complex subcomplex(const Complex& C, const std::vector<int>& idx);
Complex subcomplex(const Complex& C, const std::vector<std::string>& ids);

int width(const Complex& C);

// Rank over F[U,U^-1] of the homology of C (x) F[U,U^-1].
int homology_rank(const Complex& C);
bool is_acyclic(const Complex& C);

// Graded ranks of {i = 0, j = j0} / lower, i.e. the hat theory at Alexander level j0.
std::map<int, int> slice_homology(const Complex& C, int j0);

// Replaces each generator by its U-translate with i = 0; arrows re-exponentiated.
Complex rebase(const Complex& C);

Complex reduce(const Complex& C);

std::string canonical_form(const Complex& C);
Complex canonical_complex(const Complex& C);

// Basis change inside a block of generators sharing (gr,i,j): new basis vector k is
// sum of old[idx[r]] over r with M[k][r] = 1. M must be invertible over F2.
Complex filtered_basis_change(const Complex& C, const std::vector<int>& idx,
                              const std::vector<std::vector<int>>& M);
// Replaces y by y + U^q x. Requires the substitution to respect filtration and grading.
Complex substitute(const Complex& C, int y, int x, int q);

std::vector<std::vector<int>> components(const Complex& C);
std::vector<Complex> split_components(const Complex& C);
Complex drop_acyclic_components(const Complex& C);

// ASCII grid: j rows (descending) by i columns, cells "id^gr"; arrows listed below.
std::string text_diagram(const Complex& C);

nlohmann::json to_json(const Complex& C);
Complex complex_from_json(const nlohmann::json& j);

}  // namespace hfs
