#pragma once
#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "l2alex/errors.hpp"
#include "l2alex/word.hpp"

namespace l2alex {

// A group with a solved word problem. Words over the model's alphabet are
// brought to a canonical normal form; two words represent the same group
// element iff their normal forms coincide.
//
// Supported kinds:
//   Free(k)        free reduction
//   FreeAbelian(k) exponent vectors, sorted by generator
//   Finite         multiplication table, normal form is a single element
//   TorusKnot(p,q) <x,y | x^p = y^q>; z := x^p generates the center, the
//                  quotient is Z/p * Z/q with unique alternating normal form.
//                  Normal form: z^k s_1...s_l with x-exponents in (0,p) and
//                  y-exponents in (0,q).
class GroupModel {
public:
    enum class Kind { Free, FreeAbelian, Finite, TorusKnot };

    static std::shared_ptr<const GroupModel> free_group(std::vector<std::string> names) {
        auto m = std::make_shared<GroupModel>();
        m->kind_ = Kind::Free;
        m->names_ = std::move(names);
        return m;
    }

    static std::shared_ptr<const GroupModel> free_abelian(std::vector<std::string> names) {
        auto m = std::make_shared<GroupModel>();
        m->kind_ = Kind::FreeAbelian;
        m->names_ = std::move(names);
        return m;
    }

    // table[i][j] = index of element i*j; element 0 need not be the identity,
    // the identity is located by scanning.
    static std::shared_ptr<const GroupModel> finite(std::vector<std::string> element_names,
                                                    std::vector<std::vector<int>> table) {
        auto m = std::make_shared<GroupModel>();
        m->kind_ = Kind::Finite;
        m->names_ = std::move(element_names);
        m->table_ = std::move(table);
        const int n = static_cast<int>(m->names_.size());
        if (static_cast<int>(m->table_.size()) != n)
            throw ModelMismatch("multiplication table size");
        m->identity_ = -1;
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int j = 0; j < n && ok; ++j)
                ok = m->table_[static_cast<std::size_t>(e)][static_cast<std::size_t>(j)] == j &&
                     m->table_[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] == j;
            if (ok) {
                m->identity_ = e;
                break;
            }
        }
        if (m->identity_ < 0) throw ModelMismatch("table has no identity element");
        m->inverse_.assign(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (m->table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == m->identity_)
                    m->inverse_[static_cast<std::size_t>(i)] = j;
        for (int i = 0; i < n; ++i)
            if (m->inverse_[static_cast<std::size_t>(i)] < 0)
                throw ModelMismatch("table element without inverse");
        return m;
    }

    static std::shared_ptr<const GroupModel> cyclic(int n) {
        std::vector<std::string> names;
        std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                            std::vector<int>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i) {
            names.push_back(i == 0 ? "e" : "s" + std::to_string(i));
            for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
        }
        return finite(std::move(names), std::move(table));
    }

    static std::shared_ptr<const GroupModel> torus_knot(int p, int q) {
        if (p < 2 || q < 2 || std::gcd(p, q) != 1)
            throw NotCoprime("TorusKnot requires coprime p,q >= 2");
        auto m = std::make_shared<GroupModel>();
        m->kind_ = Kind::TorusKnot;
        m->p_ = p;
        m->q_ = q;
        m->names_ = {"x", "y", "z"};
        return m;
    }

    // Same model as torus_knot but with an external alphabet mapped into it:
    // words arriving through translate() use generator ids 0..images.size()-1
    // and are rewritten via the given image words over {x,y,z}.
    static std::shared_ptr<const GroupModel> torus_knot_with_letters(int p, int q,
                                                                     std::vector<Word> images) {
        auto base = torus_knot(p, q);
        auto m = std::make_shared<GroupModel>(*base);
        m->images_ = std::move(images);
        return m;
    }

    Kind kind() const { return kind_; }
    int num_generators() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    int torus_p() const { return p_; }
    int torus_q() const { return q_; }
    int order() const { return kind_ == Kind::Finite ? num_generators() : 0; }
    bool has_letter_images() const { return !images_.empty(); }
    const std::vector<Word>& letter_images() const { return images_; }

    Word normalize(const Word& w) const {
        switch (kind_) {
        case Kind::Free:
            check_alphabet(w);
            return reduce_free(w);
        case Kind::FreeAbelian: {
            check_alphabet(w);
            std::map<int, long long> ex;
            for (auto& s : w.syllables()) ex[s.gen] += s.exp;
            Word r;
            for (auto& [g, e] : ex)
                if (e != 0) r.push(g, e);
            return r;
        }
        case Kind::Finite: {
            check_alphabet(w);
            int cur = identity_;
            for (auto& s : w.syllables()) {
                int g = s.gen;
                long long e = s.exp;
                if (e < 0) {
                    g = inverse_[static_cast<std::size_t>(g)];
                    e = -e;
                }
                for (long long i = 0; i < e; ++i)
                    cur = table_[static_cast<std::size_t>(cur)][static_cast<std::size_t>(g)];
            }
            if (cur == identity_) return Word::identity();
            return Word::gen(cur, 1);
        }
        case Kind::TorusKnot:
            return normalize_torus(w);
        }
        throw ModelMismatch("unreachable");
    }

    Word multiply(const Word& u, const Word& v) const { return normalize(u.concat(v)); }

    Word invert(const Word& w) const {
        if (kind_ == Kind::Finite) {
            Word n = normalize(w);
            if (n.is_identity()) return n;
            return Word::gen(inverse_[static_cast<std::size_t>(n.syllables()[0].gen)], 1);
        }
        return normalize(w.inverse_raw());
    }

    // Maps a word over the external alphabet (when letter images are
    // registered) or over the model alphabet into normal form.
    Word translate(const Word& w) const {
        if (images_.empty()) return normalize(w);
        Word expanded;
        for (auto& s : w.syllables()) {
            if (s.gen < 0 || s.gen >= static_cast<int>(images_.size()))
                throw UnknownGenerator("external generator " + std::to_string(s.gen));
            expanded = expanded.concat(images_[static_cast<std::size_t>(s.gen)].pow_raw(s.exp));
        }
        return normalize(expanded);
    }

    // Nontrivial elements of Free, FreeAbelian and TorusKnot models have
    // infinite order (torus knot groups are torsion free).
    bool infinite_order(const Word& w) const {
        if (normalize(w).is_identity()) return false;
        return kind_ != Kind::Finite;
    }

    // All elements with word length <= radius in the standard generators
    // (x,y for TorusKnot), sorted; identity first. Throws BallTooLarge when
    // the enumeration exceeds cap.
    std::vector<Word> ball(int radius, std::size_t cap = 100000) const {
        std::vector<int> gens;
        if (kind_ == Kind::TorusKnot)
            gens = {0, 1};
        else
            for (int g = 0; g < num_generators(); ++g) gens.push_back(g);
        std::set<Word> seen;
        std::vector<Word> frontier{Word::identity()};
        seen.insert(Word::identity());
        for (int r = 0; r < radius; ++r) {
            std::vector<Word> next;
            for (auto& w : frontier)
                for (int g : gens)
                    for (long long e : {1LL, -1LL}) {
                        Word n = multiply(w, Word::gen(g, e));
                        if (seen.insert(n).second) {
                            next.push_back(n);
                            if (seen.size() > cap) throw BallTooLarge("radius " + std::to_string(radius));
                        }
                    }
            frontier = std::move(next);
            if (frontier.empty()) break;
        }
        return {seen.begin(), seen.end()};
    }

private:
    void check_alphabet(const Word& w) const {
        for (auto& s : w.syllables())
            if (s.gen < 0 || s.gen >= num_generators())
                throw UnknownGenerator("generator " + std::to_string(s.gen));
    }

    Word normalize_torus(const Word& w) const {
        long long zexp = 0;
        std::vector<Syllable> alt;
        auto append = [&](int g, long long e, auto&& self) -> void {
            if (e == 0) return;
            if (g == 2) {
                zexp += e;
                return;
            }
            if (g != 0 && g != 1) throw UnknownGenerator("torus generator " + std::to_string(g));
            const long long ord = g == 0 ? p_ : q_;
            if (!alt.empty() && alt.back().gen == g) {
                e += alt.back().exp;
                alt.pop_back();
            }
            long long rem = ((e % ord) + ord) % ord;
            zexp += (e - rem) / ord;
            if (rem != 0) {
                alt.push_back({g, rem});
            } else if (!alt.empty()) {
                // the merged syllable vanished; re-append the new tail so a
                // later syllable of the same generator can still merge
                Syllable s = alt.back();
                alt.pop_back();
                self(s.gen, s.exp, self);
            }
        };
        for (auto& s : w.syllables()) append(s.gen, s.exp, append);
        Word r;
        if (zexp != 0) r.push(2, zexp);
        for (auto& s : alt) r.push(s.gen, s.exp);
        return r;
    }

    Kind kind_ = Kind::Free;
    std::vector<std::string> names_;
    std::vector<std::vector<int>> table_; // Finite
    std::vector<int> inverse_;            // Finite
    int identity_ = 0;                    // Finite
    int p_ = 0, q_ = 0;                   // TorusKnot
    std::vector<Word> images_;            // external alphabet -> model words
};

using ModelPtr = std::shared_ptr<const GroupModel>;

} // namespace l2alex
