#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "hfslice/surgery.hpp"

namespace hfs {

using u64 = std::uint64_t;

bool is_prime(u64 n);
// Prime factors with multiplicity, ascending.
std::vector<std::pair<u64, int>> factorize(u64 n);

long long h1_order(int n);

struct SieveResult {
    u64 n = 0;
    u64 value = 0;
    std::vector<std::pair<u64, int>> factors;
    bool admissible = false;
    std::vector<u64> roots_b;
};

SieveResult admissible(u64 n);

struct SieveFamily {
    std::vector<SieveResult> members;
    std::string warning;  // set when the list is partial
};

SieveFamily sieve_family(int count, u64 search_limit = 1000000);

std::vector<u64> sqrt_minus_one(u64 N);
// b^2 = 1 mod N, sorted.
std::vector<u64> sqrt_one(u64 N);

struct LinkingForm {
    long N = 0;
    long alpha = 1;
};

// Subgroup of Z_N^2 in Hermite normal form: rows (a,b), (0,d) with a*d = N for order N.
struct Metabolizer {
    long N = 0;
    long a = 0, b = 0, d = 0;
    bool operator==(const Metabolizer& o) const { return N == o.N && a == o.a && b == o.b && d == o.d; }
    bool operator<(const Metabolizer& o) const {
        return std::tie(N, a, b, d) < std::tie(o.N, o.a, o.b, o.d);
    }
};

// All order-N subgroups of Z_N^2, as HNF triples.
std::vector<Metabolizer> order_n_subgroups(long N);
bool self_annihilating(const Metabolizer& M, const LinkingForm& f);
std::vector<Metabolizer> brute_force_metabolizers(const LinkingForm& f);
// Classification for square-free N: the subgroups generated by (1,b), b^2 = -1.
std::vector<Metabolizer> metabolizers(long N);
bool square_free(u64 N);

// True when no metabolizer has dA(z1) + dB(z2) = 0 on all of its elements.
bool metabolizer_obstruction(const std::vector<Rational>& dA, const std::vector<Rational>& dB, long N);

struct ObstructionReport {
    int n = 0;
    u64 value = 0;
    std::vector<std::pair<u64, int>> factors;
    std::vector<u64> roots_b;           // b^2 = 1: products of two metabolizer roots
    std::vector<u64> metabolizer_roots;  // b^2 = -1
    long alpha = 0;
    std::vector<Rational> excluded;  // S_b
    std::optional<int> k_n;
    std::string note;
};

ObstructionReport choose_kn(int n, int jobs = 1);
ObstructionReport choose_kn(const Calibration& cal);
bool obstruct_slice(int n, int k, const ObstructionReport& report);
bool obstruct_slice(int n, int k);

nlohmann::json to_json(const ObstructionReport& r);
nlohmann::json to_json(const SieveResult& r);

}  // namespace hfs
