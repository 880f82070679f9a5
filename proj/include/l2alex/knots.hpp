#pragma once
#include <array>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "l2alex/errors.hpp"
#include "l2alex/group_model.hpp"
#include "l2alex/presentation.hpp"

namespace l2alex {

// One crossing of a diagram: the outgoing under-arc equals
// over^{sign} . in . over^{-sign}.
struct Crossing {
    int over = 0;
    int in = 0;
    int out = 0;
    int sign = +1;
};

struct KnotSpec {
    enum class Kind { Torus, Trefoil, Table };
    Kind kind = Kind::Trefoil;
    int p = 0, q = 0;                // Torus
    std::vector<Crossing> crossings; // Table
    int num_arcs = 0;                // Table; 0 means inferred
};

struct KnotPresentation {
    Presentation pres;
    PhiGrading phi;
    ModelPtr model; // null when no word-problem solver is available
    std::string name;
};

namespace detail {

// Smith-normal-form based projection Z^k / rowspace(R) -> Z. Returns the
// functional (one weight per generator) when the cokernel is infinite cyclic,
// throws NotHomologyCircle otherwise. R is (#relators x k).
inline std::vector<long long> homology_circle_phi(std::vector<std::vector<long long>> R, int k) {
    const int m = static_cast<int>(R.size()); // relators
    // A = R^T (k x m); row operations are mirrored on L so that L*A0*V = D.
    std::vector<std::vector<long long>> A(static_cast<std::size_t>(k),
                                          std::vector<long long>(static_cast<std::size_t>(m), 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j)
            A[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = R[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    std::vector<std::vector<long long>> L(static_cast<std::size_t>(k),
                                          std::vector<long long>(static_cast<std::size_t>(k), 0));
    for (int i = 0; i < k; ++i) L[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;

    auto row_swap = [&](int a, int b) {
        std::swap(A[static_cast<std::size_t>(a)], A[static_cast<std::size_t>(b)]);
        std::swap(L[static_cast<std::size_t>(a)], L[static_cast<std::size_t>(b)]);
    };
    auto row_axpy = [&](int dst, int src, long long f) { // row dst += f * row src
        for (int j = 0; j < m; ++j)
            A[static_cast<std::size_t>(dst)][static_cast<std::size_t>(j)] += f * A[static_cast<std::size_t>(src)][static_cast<std::size_t>(j)];
        for (int j = 0; j < k; ++j)
            L[static_cast<std::size_t>(dst)][static_cast<std::size_t>(j)] += f * L[static_cast<std::size_t>(src)][static_cast<std::size_t>(j)];
    };
    auto col_swap = [&](int a, int b) {
        for (int i = 0; i < k; ++i)
            std::swap(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)], A[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)]);
    };
    auto col_axpy = [&](int dst, int src, long long f) {
        for (int i = 0; i < k; ++i)
            A[static_cast<std::size_t>(i)][static_cast<std::size_t>(dst)] += f * A[static_cast<std::size_t>(i)][static_cast<std::size_t>(src)];
    };

    int rank = 0;
    for (int t = 0; t < std::min(k, m); ++t) {
        // find a pivot
        int pi = -1, pj = -1;
        long long best = 0;
        for (int i = t; i < k; ++i)
            for (int j = t; j < m; ++j) {
                long long v = std::llabs(A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool again = true;
        while (again) {
            again = false;
            for (int i = t + 1; i < k; ++i) {
                long long a = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
                long long piv = A[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
                if (a == 0) continue;
                long long f = a / piv;
                row_axpy(i, t, -f);
                if (A[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] != 0) {
                    row_swap(t, i);
                    again = true;
                }
            }
            for (int j = t + 1; j < m; ++j) {
                long long a = A[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
                long long piv = A[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
                if (a == 0) continue;
                long long f = a / piv;
                col_axpy(j, t, -f);
                if (A[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] != 0) {
                    col_swap(t, j);
                    again = true;
                }
            }
        }
        ++rank;
    }
    // Cokernel is Z iff rank == m == k-1 and every pivot is a unit.
    if (rank != m || m != k - 1) throw NotHomologyCircle("cokernel has rank != 1");
    for (int t = 0; t < rank; ++t)
        if (std::llabs(A[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]) != 1)
            throw NotHomologyCircle("cokernel has torsion");
    // The free coordinate is the last row of L.
    std::vector<long long> phi = L[static_cast<std::size_t>(k - 1)];
    long long g = 0;
    for (auto v : phi) g = std::gcd(g, std::llabs(v));
    if (g != 1) throw NotHomologyCircle("projection is not surjective");
    return phi;
}

inline std::vector<std::string> default_names(int k) {
    std::vector<std::string> n;
    for (int i = 0; i < k; ++i) {
        if (k <= 26)
            n.push_back(std::string(1, static_cast<char>('a' + i)));
        else
            n.push_back("g" + std::to_string(i));
    }
    return n;
}

} // namespace detail

// Standard presentation <x,y | x^p y^-q> with phi(x)=q, phi(y)=p and the
// TorusKnot(p,q) word-problem model attached.
inline KnotPresentation torus_presentation(int p, int q) {
    if (p < 2 || q < 2 || std::gcd(p, q) != 1) throw NotCoprime("torus knot needs coprime p,q >= 2");
    Presentation pres;
    pres.kind = PresentationKind::TorusStandard;
    pres.generators = {{0, "x"}, {1, "y"}};
    pres.relators = {Word::gen(0, p).concat(Word::gen(1, -q))};
    PhiGrading phi{{q, p}};
    phi.validate(pres);
    return {pres, phi, GroupModel::torus_knot(p, q),
            "torus(" + std::to_string(p) + "," + std::to_string(q) + ")"};
}

// Wirtinger presentation <a,b | aba = bab> of the trefoil, solved through
// the TorusKnot(2,3) model via x = aba, y = ab (so a = y^-1 x, b = x^-1 y^2).
inline KnotPresentation trefoil_presentation() {
    Presentation pres;
    pres.kind = PresentationKind::Wirtinger;
    pres.generators = {{0, "a"}, {1, "b"}};
    Word aba = Word::gen(0).concat(Word::gen(1)).concat(Word::gen(0));
    Word bab = Word::gen(1).concat(Word::gen(0)).concat(Word::gen(1));
    pres.relators = {aba.concat(bab.inverse_raw())};
    PhiGrading phi{{1, 1}};
    phi.validate(pres);
    Word img_a = Word::gen(1, -1).concat(Word::gen(0, 1));
    Word img_b = Word::gen(0, -1).concat(Word::gen(1, 2));
    return {pres, phi, GroupModel::torus_knot_with_letters(2, 3, {img_a, img_b}), "trefoil"};
}

// Builds the Wirtinger presentation of a crossing table: one generator per
// arc, relator out = over^{sign} in over^{-sign} per crossing, first relator
// dropped; phi sends every generator to 1.
inline KnotPresentation wirtinger(const KnotSpec& spec) {
    if (spec.kind == KnotSpec::Kind::Torus) {
        auto kp = torus_presentation(spec.p, spec.q);
        return kp;
    }
    if (spec.kind == KnotSpec::Kind::Trefoil) return trefoil_presentation();

    int k = spec.num_arcs;
    for (auto& c : spec.crossings) k = std::max({k, c.over + 1, c.in + 1, c.out + 1});
    if (k <= 0) throw MalformedDiagram("no arcs");
    if (!spec.crossings.empty() && static_cast<int>(spec.crossings.size()) != k)
        throw MalformedDiagram("a knot diagram has as many arcs as crossings");
    std::vector<int> out_count(static_cast<std::size_t>(k), 0);
    for (auto& c : spec.crossings) {
        if (c.sign != 1 && c.sign != -1) throw MalformedDiagram("crossing sign must be +-1");
        out_count[static_cast<std::size_t>(c.out)]++;
    }
    if (!spec.crossings.empty())
        for (int a = 0; a < k; ++a)
            if (out_count[static_cast<std::size_t>(a)] != 1)
                throw MalformedDiagram("arc " + std::to_string(a) + " is out-arc of " +
                                       std::to_string(out_count[static_cast<std::size_t>(a)]) + " crossings");

    Presentation pres;
    pres.kind = PresentationKind::Wirtinger;
    auto names = detail::default_names(k);
    for (int i = 0; i < k; ++i) pres.generators.push_back({i, names[static_cast<std::size_t>(i)]});
    bool first = true;
    for (auto& c : spec.crossings) {
        if (first) { // drop one relator to reach deficiency 1
            first = false;
            continue;
        }
        Word r = Word::gen(c.over, c.sign)
                     .concat(Word::gen(c.in))
                     .concat(Word::gen(c.over, -c.sign))
                     .concat(Word::gen(c.out, -1));
        pres.relators.push_back(reduce_free(r));
    }
    PhiGrading phi{std::vector<long long>(static_cast<std::size_t>(k), 1)};
    phi.validate(pres);
    return {pres, phi, nullptr, "table"};
}

// Recovers phi from the abelianization: Smith normal form of the relator
// exponent matrix, requiring H1 = Z. Wirtinger generators are normalized
// to map to +1, otherwise the first nonzero weight is made positive.
inline PhiGrading phi_from_abelianization(const Presentation& p) {
    p.validate();
    if (!p.deficiency_one()) throw ModelMismatch("deficiency-1 presentation required");
    const int k = p.num_generators();
    std::vector<std::vector<long long>> R;
    for (auto& r : p.relators) {
        std::vector<long long> row(static_cast<std::size_t>(k), 0);
        for (auto& s : r.syllables()) row[static_cast<std::size_t>(s.gen)] += s.exp;
        R.push_back(std::move(row));
    }
    auto w = detail::homology_circle_phi(std::move(R), k);
    long long ref = 0;
    for (auto v : w)
        if (v != 0) {
            ref = v;
            break;
        }
    if (ref < 0)
        for (auto& v : w) v = -v;
    if (p.kind == PresentationKind::Wirtinger)
        for (auto v : w)
            if (v != 1) throw NotHomologyCircle("Wirtinger generators must map to 1");
    PhiGrading phi{std::move(w)};
    phi.validate(p);
    return phi;
}

} // namespace l2alex
