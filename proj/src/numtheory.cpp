#include <algorithm>
#include <numeric>
#include <random>

#include "hfslice/obstruction.hpp"

namespace hfs {

namespace {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    for (; e; e >>= 1, a = mulmod(a, a, m))
        if (e & 1) r = mulmod(r, a, m);
    return r;
}

u64 rho(u64 n, u64 c) {
    auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
        x = f(x);
        y = f(f(y));
        d = std::gcd(x > y ? x - y : y - x, n);
    }
    return d;
}

void split(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % p == 0) {
            out.push_back(p);
            split(n / p, out);
            return;
        }
    for (u64 c = 1;; ++c) {
        u64 d = rho(n, c);
        if (d != n) {
            split(d, out);
            split(n / d, out);
            return;
        }
    }
}

u64 inverse(u64 a, u64 m) {
    // extended Euclid on signed 128-bit
    __int128 g = m, x = 0, g1 = a % m, x1 = 1;
    while (g1) {
        __int128 q = g / g1;
        std::tie(g, g1) = std::make_pair(g1, g - q * g1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::invalid_argument("no inverse");
    x %= m;
    if (x < 0) x += m;
    return static_cast<u64>(x);
}

// Roots of b^2 = -1 modulo p^e.
std::vector<u64> roots_prime_power(u64 p, int e) {
    if (p == 2) return e == 1 ? std::vector<u64>{1} : std::vector<u64>{};
    if (p % 4 == 3) return {};
    u64 c = 2;
    while (powmod(c, (p - 1) / 2, p) != p - 1) ++c;
    u64 r = powmod(c, (p - 1) / 4, p);
    u64 mod = p;
    for (int k = 1; k < e; ++k) {
        u64 next = mod * p;
        // Hensel: r <- r - (r^2 + 1) / (2r)
        u64 fr = (mulmod(r, r, next) + 1) % next;
        u64 corr = mulmod(fr, inverse((2 * r) % next, next), next);
        r = (r + next - corr) % next;
        mod = next;
    }
    return {std::min(r, mod - r), std::max(r, mod - r)};
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s && comp; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) comp = false;
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<u64> ps;
    split(n, ps);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<u64, int>> out;
    for (u64 p : ps) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.push_back({p, 1});
    }
    return out;
}

bool square_free(u64 N) {
    for (auto& [p, e] : factorize(N))
        if (e > 1) return false;
    return true;
}

long long h1_order(int n) {
    if (n < 1) throw std::invalid_argument("h1_order needs n >= 1");
    // linking matrix of the (-2n, 2n) Hopf-link surgery
    long long a = -2LL * n, b = 1, c = 1, d = 2LL * n;
    long long det = a * d - b * c;
    long long order = det < 0 ? -det : det;
    if (order != 4LL * n * n + 1) throw ConsistencyError("determinant disagrees with 4n^2+1");
    return order;
}

std::vector<u64> sqrt_minus_one(u64 N) {
    if (N < 2) throw std::invalid_argument("sqrt_minus_one needs N >= 2");
    std::vector<u64> out;
    if (N < 1000000) {
        for (u64 b = 0; b < N; ++b)
            if ((b * b + 1) % N == 0) out.push_back(b);
        return out;
    }
    std::vector<u64> acc{0};
    u64 mod = 1;
    for (auto& [p, e] : factorize(N)) {
        u64 pe = 1;
        for (int k = 0; k < e; ++k) pe *= p;
        auto rs = roots_prime_power(p, e);
        if (rs.empty()) return {};
        std::vector<u64> next;
        u64 M = mod * pe;
        u64 inv = inverse(mod % pe, pe);
        for (u64 x : acc)
            for (u64 r : rs) {
                // y = x (mod mod), y = r (mod pe)
                u64 t = mulmod((r + pe - x % pe) % pe, inv, pe);
                next.push_back((x + mulmod(mod, t, M)) % M);
            }
        acc.swap(next);
        mod = M;
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

std::vector<u64> sqrt_one(u64 N) {
    if (N < 2) throw std::invalid_argument("sqrt_one needs N >= 2");
    std::vector<u64> out;
    if (N < 1000000) {
        for (u64 b = 1; b < N; ++b)
            if (b * b % N == 1) out.push_back(b);
        return out;
    }
    std::vector<u64> acc{0};
    u64 mod = 1;
    for (auto& [p, e] : factorize(N)) {
        u64 pe = 1;
        for (int k = 0; k < e; ++k) pe *= p;
        std::vector<u64> rs;
        for (u64 r = 1; r < pe && p > 2; r += pe - 2) rs.push_back(r);  // +-1 for odd p
        if (p == 2) throw std::invalid_argument("sqrt_one: even modulus above the brute-force bound");
        std::vector<u64> next;
        u64 M = mod * pe;
        u64 inv = inverse(mod % pe, pe);
        for (u64 x : acc)
            for (u64 r : rs) {
                u64 t = mulmod((r + pe - x % pe) % pe, inv, pe);
                next.push_back((x + mulmod(mod, t, M)) % M);
            }
        acc.swap(next);
        mod = M;
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

SieveResult admissible(u64 n) {
    if (n < 1) throw std::invalid_argument("admissible needs n >= 1");
    if (n > 2147483647ULL) throw std::invalid_argument("4n^2+1 does not fit in 64 bits");
    SieveResult r;
    r.n = n;
    r.value = 4 * n * n + 1;
    r.factors = factorize(r.value);
    bool sqf = std::all_of(r.factors.begin(), r.factors.end(), [](auto& f) { return f.second == 1; });
    r.admissible = r.value >= 9 && sqf && r.factors.size() <= 2;
    if (r.admissible) r.roots_b = sqrt_minus_one(r.value);
    return r;
}

SieveFamily sieve_family(int count, u64 search_limit) {
    if (count < 1) throw std::invalid_argument("sieve_family needs count >= 1");
    SieveFamily fam;
    fam.members.push_back(admissible(2));
    u128 A = fam.members[0].value;
    while (static_cast<int>(fam.members.size()) < count) {
        bool found = false;
        for (u64 N = 1; N <= search_limit; ++N) {
            u128 n = A * N;
            if (n > 2147483647ULL) {
                fam.warning = "stopped after " + std::to_string(fam.members.size()) +
                              " members: the next 4n^2+1 exceeds 64 bits";
                return fam;
            }
            auto r = admissible(static_cast<u64>(n));
            if (!r.admissible) continue;
            for (auto& m : fam.members)
                if (std::gcd(m.value, r.value) != 1)
                    throw ConsistencyError("sieve family values " + std::to_string(m.value) + " and " +
                                           std::to_string(r.value) + " share a factor");
            fam.members.push_back(r);
            A *= r.value;
            found = true;
            break;
        }
        if (!found) {
            fam.warning = "search bound exceeded after " + std::to_string(fam.members.size()) + " members";
            return fam;
        }
    }
    return fam;
}

}  // namespace hfs
