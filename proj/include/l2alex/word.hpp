#pragma once
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "l2alex/errors.hpp"

namespace l2alex {

// One syllable g^e with e != 0.
struct Syllable {
    int gen = 0;
    long long exp = 0;

    friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// A group word in syllable form. Adjacent syllables with the same generator
// are merged on construction via free reduction; the empty word is the
// identity. Equality in a particular group is decided by GroupModel::normalize.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Syllable> syls) : syls_(std::move(syls)) {}

    static Word identity() { return Word(); }

    static Word gen(int g, long long e = 1) {
        Word w;
        if (e != 0) w.syls_.push_back({g, e});
        return w;
    }

    const std::vector<Syllable>& syllables() const { return syls_; }
    bool is_identity() const { return syls_.empty(); }
    std::size_t size() const { return syls_.size(); }

    // Total letter length |e_1| + ... + |e_l|.
    long long length() const {
        long long n = 0;
        for (auto& s : syls_) n += s.exp < 0 ? -s.exp : s.exp;
        return n;
    }

    int max_gen() const {
        int m = -1;
        for (auto& s : syls_) m = s.gen > m ? s.gen : m;
        return m;
    }

    // Concatenation without any group-specific reduction beyond merging
    // adjacent equal-generator syllables.
    Word concat(const Word& other) const {
        Word r = *this;
        for (auto& s : other.syls_) r.push(s.gen, s.exp);
        return r;
    }

    Word inverse_raw() const {
        Word r;
        for (auto it = syls_.rbegin(); it != syls_.rend(); ++it)
            r.syls_.push_back({it->gen, -it->exp});
        return r;
    }

    Word pow_raw(long long n) const {
        Word base = n < 0 ? inverse_raw() : *this;
        long long k = n < 0 ? -n : n;
        Word r;
        for (long long i = 0; i < k; ++i) r = r.concat(base);
        return r;
    }

    // Appends g^e, merging with the last syllable and dropping zero exponents.
    void push(int g, long long e) {
        if (e == 0) return;
        if (!syls_.empty() && syls_.back().gen == g) {
            syls_.back().exp += e;
            if (syls_.back().exp == 0) syls_.pop_back();
        } else {
            syls_.push_back({g, e});
        }
    }

    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Syllable> syls_;
};

// Free reduction: merge adjacent syllables of the same generator and cancel
// zero exponents, repeatedly. Length is non-increasing.
inline Word reduce_free(const Word& w) {
    Word r;
    for (auto& s : w.syllables()) r.push(s.gen, s.exp);
    return r;
}

// Rendering relative to an alphabet of generator names. The identity prints
// as "1"; inverses use a prime suffix, powers use '^'.
inline std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
    if (w.is_identity()) return "1";
    std::string out;
    for (auto& s : w.syllables()) {
        if (!out.empty()) out += ' ';
        if (s.gen < 0 || s.gen >= static_cast<int>(names.size()))
            throw UnknownGenerator("generator index " + std::to_string(s.gen));
        out += names[static_cast<std::size_t>(s.gen)];
        long long e = s.exp;
        if (e < 0) {
            out += '\'';
            e = -e;
        }
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

} // namespace l2alex
