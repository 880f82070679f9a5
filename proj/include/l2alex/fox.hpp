#pragma once
#include <vector>

#include "l2alex/errors.hpp"
#include "l2alex/group_ring.hpp"
#include "l2alex/laurent.hpp"
#include "l2alex/presentation.hpp"

namespace l2alex {

// Fox derivative d(r)/d(g) over the free group, by prefix accumulation over
// syllables with d(g^n)/dg = 1 + g + ... + g^{n-1} for n > 0 and
// -(g^-1 + ... + g^-n) for n < 0.
inline RingElement fox_derive(const ModelPtr& free_model, const Word& r, int g) {
    if (free_model->kind() != GroupModel::Kind::Free)
        throw ModelMismatch("fox_derive works over the free group");
    if (g < 0 || g >= free_model->num_generators())
        throw UnknownGenerator("generator " + std::to_string(g));
    RingElement d = RingElement::zero(free_model);
    Word prefix;
    const Word reduced = reduce_free(r);
    for (auto& s : reduced.syllables()) {
        if (s.gen == g) {
            if (s.exp > 0) {
                for (long long i = 0; i < s.exp; ++i)
                    d.add_term(free_model->normalize(prefix.concat(Word::gen(g, i))), {1.0, 0.0});
            } else {
                for (long long i = 1; i <= -s.exp; ++i)
                    d.add_term(free_model->normalize(prefix.concat(Word::gen(g, -i))), {-1.0, 0.0});
            }
        }
        prefix = prefix.concat(Word::gen(s.gen, s.exp));
    }
    return d;
}

struct FoxMatrix {
    ModelPtr free_model; // free group on the presentation's generators
    RingMatrix entries;  // (k-1) x k, column l = derivative by generator l
};

inline FoxMatrix fox_matrix(const Presentation& p) {
    p.validate();
    if (!p.deficiency_one()) throw ModelMismatch("fox_matrix requires a deficiency-1 presentation");
    const int k = p.num_generators();
    auto fm = GroupModel::free_group(p.names());
    RingMatrix m(fm, k - 1, k);
    for (int i = 0; i + 1 < k; ++i)
        for (int l = 0; l < k; ++l) m.at(i, l) = fox_derive(fm, p.relators[static_cast<std::size_t>(i)], l);
    return {fm, m};
}

// Removes the j-th column (1-based, following the usual indexing F_j).
inline RingMatrix delete_column(const FoxMatrix& f, int j) {
    const int k = f.entries.cols();
    if (j < 1 || j > k) throw IndexOutOfRange("column " + std::to_string(j));
    RingMatrix m(f.free_model, k - 1, k - 1);
    for (int i = 0; i + 1 < k; ++i) {
        int jj = 0;
        for (int l = 0; l < k; ++l) {
            if (l == j - 1) continue;
            m.at(i, jj++) = f.entries.at(i, l);
        }
    }
    return m;
}

// Sends g -> t^{phi(g)}, collecting by exponent.
inline LaurentPoly abelianize(const RingElement& a, const PhiGrading& phi) {
    LaurentPoly p;
    for (auto& [w, c] : a.terms()) p.add_term(phi.weight(w), c);
    return p;
}

namespace detail {

inline LaurentPoly laurent_det(const std::vector<std::vector<LaurentPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return LaurentPoly::constant({1.0, 0.0});
    if (n == 1) return m[0][0];
    LaurentPoly det;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<LaurentPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<LaurentPoly> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        LaurentPoly term = m[0][c] * laurent_det(minor);
        det = (c % 2 == 0) ? det + term : det - term;
    }
    return det;
}

} // namespace detail

inline LaurentPoly abelianized_determinant(const RingMatrix& fj, const PhiGrading& phi) {
    std::vector<std::vector<LaurentPoly>> m(static_cast<std::size_t>(fj.rows()));
    for (int i = 0; i < fj.rows(); ++i)
        for (int j = 0; j < fj.cols(); ++j)
            m[static_cast<std::size_t>(i)].push_back(abelianize(fj.at(i, j), phi));
    return detail::laurent_det(m);
}

// Classical Alexander polynomial from the abelianized column-deleted Fox
// matrix: det(F_j) * (t - 1) / (t^{phi(g_j)} - 1), normalized to lowest
// exponent 0 and positive leading coefficient. Serves as the cross-check
// oracle for the L2 pipeline.
inline LaurentPoly classical_alexander(const Presentation& p, const PhiGrading& phi, int j) {
    FoxMatrix f = fox_matrix(p);
    RingMatrix fj = delete_column(f, j);
    LaurentPoly det = abelianized_determinant(fj, phi);
    const long long wj = phi.weights[static_cast<std::size_t>(j - 1)];
    if (wj == 1) return det.normalized();
    if (wj == 0) throw ZeroPolynomial("deleted column has weight 0");
    LaurentPoly tm1 = LaurentPoly::monomial(1) - LaurentPoly::constant({1.0, 0.0});
    LaurentPoly denom = LaurentPoly::monomial(wj) - LaurentPoly::constant({1.0, 0.0});
    return laurent_div_exact(det * tm1, denom).normalized();
}

} // namespace l2alex
