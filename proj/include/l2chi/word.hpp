#ifndef L2CHI_WORD_HPP
#define L2CHI_WORD_HPP

#include "l2chi/numeric.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace l2chi {

// Reduced free-group word: run-length syllables (generator index, nonzero exponent),
// adjacent syllables on distinct generators. The empty word is the identity.
struct Word {
    using Syllable = std::pair<std::int32_t, std::int64_t>;
    std::vector<Syllable> syl;

    Word() = default;

    static Word generator(int g, std::int64_t e = 1) {
        Word w;
        if (e != 0) w.syl.push_back({g, e});
        return w;
    }

    bool is_identity() const { return syl.empty(); }
    std::size_t length() const {
        std::size_t n = 0;
        for (auto& s : syl) n += static_cast<std::size_t>(s.second < 0 ? -s.second : s.second);
        return n;
    }

    void push_syllable(int g, std::int64_t e) {
        if (e == 0) return;
        if (!syl.empty() && syl.back().first == g) {
            syl.back().second += e;
            if (syl.back().second == 0) syl.pop_back();
        } else {
            syl.push_back({g, e});
        }
    }

    friend bool operator==(const Word& a, const Word& b) { return a.syl == b.syl; }
    friend auto operator<=>(const Word& a, const Word& b) { return a.syl <=> b.syl; }
};

inline Word word_concat(const Word& a, const Word& b) {
    Word r = a;
    for (auto& s : b.syl) r.push_syllable(s.first, s.second);
    return r;
}

inline Word word_inverse(const Word& a) {
    Word r;
    r.syl.reserve(a.syl.size());
    for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it)
        r.syl.push_back({it->first, -it->second});
    return r;
}

inline Word word_pow(const Word& a, std::int64_t n) {
    if (n == 0) return Word();
    Word base = n > 0 ? a : word_inverse(a);
    std::int64_t k = n > 0 ? n : -n;
    if (base.syl.size() == 1)
        return Word::generator(base.syl[0].first, base.syl[0].second * k);
    Word r;
    for (std::int64_t i = 0; i < k; ++i) r = word_concat(r, base);
    return r;
}

inline Word word_conjugate(const Word& x, const Word& w) {
    // x w x^-1
    return word_concat(word_concat(x, w), word_inverse(x));
}

// Sum of exponent * image over syllables (abelianized evaluation).
inline std::int64_t word_weight(const Word& w, const std::vector<std::int64_t>& images) {
    std::int64_t s = 0;
    for (auto& p : w.syl) s += p.second * images[static_cast<std::size_t>(p.first)];
    return s;
}

inline std::string gen_name(int g) {
    if (g < 26) return std::string(1, static_cast<char>('a' + g));
    return "g" + std::to_string(g);
}

inline std::string word_str(const Word& w) {
    if (w.is_identity()) return "1";
    std::string s;
    bool first = true;
    for (auto& p : w.syl) {
        if (!first) s += "*";
        first = false;
        s += gen_name(p.first);
        if (p.second != 1) s += "^" + std::to_string(p.second);
    }
    return s;
}

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto& p : w.syl) {
            h = (h ^ static_cast<std::uint64_t>(p.first)) * 1099511628211ull;
            h = (h ^ static_cast<std::uint64_t>(p.second)) * 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace l2chi

#endif
