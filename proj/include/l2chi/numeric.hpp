#ifndef L2CHI_NUMERIC_HPP
#define L2CHI_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace l2chi {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Malformed user input (files, flags, expressions). CLI exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Computation aborted (size limits, singular Laplacian, internal checks). CLI exit code 3.
struct compute_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string rat_str(const Rat& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

// Deterministic splitmix64 stream; identical across platforms for a given seed.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
    return r.next();
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

inline bool is_probable_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Deterministic for n < 3.3e24 with these witnesses.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Random prime in [2^30, 2^31) congruent to `residue` mod `modulus`.
inline std::uint64_t random_prime_31(Rng& rng, std::uint64_t modulus = 1, std::uint64_t residue = 0) {
    if (modulus <= 1) { modulus = 1; residue = 0; }
    for (int tries = 0; tries < 2000000; ++tries) {
        std::uint64_t lo = 1ull << 30, hi = 1ull << 31;
        std::uint64_t k = lo + rng.below(hi - lo);
        std::uint64_t cand = k - (k % modulus) + residue;
        if (cand < lo || cand >= hi) continue;
        if (is_probable_prime(cand)) return cand;
    }
    throw compute_error("prime search failed");
}

inline Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { Int t = a % b; a = b; b = t; }
    return a;
}

// g = gcd(a,b) with g = x*a + y*b.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        if (a < 0) { x = -1; y = 0; return -a; }
        x = 1; y = 0; return a;
    }
    Int x1, y1;
    Int g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

} // namespace l2chi

#endif
