#include <Eigen/Dense>
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "l2alex/dsl.hpp"
#include "l2alex/weighted.hpp"

using namespace l2alex;

namespace {

LaurentPoly parse_poly(const std::string& s) { return parse_laurent(s).first; }

RingElement random_finite_element(std::mt19937& rng, const ModelPtr& m) {
    std::uniform_int_distribution<int> which(0, m->order() - 1);
    std::uniform_int_distribution<int> terms(0, 2);
    std::uniform_int_distribution<int> coeff(-2, 2);
    RingElement e(m);
    int n = terms(rng);
    for (int i = 0; i < n; ++i)
        e.add_term(m->normalize(Word::gen(which(rng), 1)),
                   {static_cast<double>(coeff(rng)), 0.0});
    return e;
}

// c2 hits only the first `split` coordinates of C1, c1 only reads the rest:
// c2 * c1 = 0 exactly by construction.
ChainComplexW random_finite_complex(std::mt19937& rng, int order, ModelPtr model = nullptr) {
    std::uniform_int_distribution<int> rk(1, 3);
    ChainComplexW c;
    c.model = model ? model : GroupModel::cyclic(order);
    c.phi.weights = {0};
    while (static_cast<int>(c.phi.weights.size()) < c.model->num_generators())
        c.phi.weights.push_back(0);
    int k0 = rk(rng), k1 = rk(rng), k2 = rk(rng);
    std::uniform_int_distribution<int> sp(0, k1);
    int split = sp(rng);
    c.ranks = {k0, k1, k2};
    RingMatrix c1(c.model, k1, k0), c2(c.model, k2, k1);
    for (int i = split; i < k1; ++i)
        for (int j = 0; j < k0; ++j) c1.at(i, j) = random_finite_element(rng, c.model);
    for (int i = 0; i < k2; ++i)
        for (int j = 0; j < split; ++j) c2.at(i, j) = random_finite_element(rng, c.model);
    c.diffs = {c1, c2};
    return c;
}

// independent oracle: complex dimension of homology via the right-regular
// representation, assembled directly with Eigen
Eigen::MatrixXcd regular_rep(const RingMatrix& a) {
    const ModelPtr& m = a.model();
    const int ng = m->order();
    std::vector<Word> elems;
    std::map<Word, int> index;
    for (int i = 0; i < ng; ++i) {
        Word w = m->normalize(Word::gen(i, 1));
        index[w] = static_cast<int>(elems.size());
        elems.push_back(w);
    }
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(a.rows() * ng, a.cols() * ng);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (auto& [g, co] : a.at(i, j).terms())
                for (int b = 0; b < ng; ++b)
                    big(i * ng + b, j * ng + index.at(m->multiply(elems[b], g))) += co;
    return big;
}

int mrank(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(1e-9);
    return static_cast<int>(qr.rank());
}

} // namespace

TEST_CASE("finite-group dimension law and Euler-Poincare") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> ord(2, 4);
    for (int trial = 0; trial < 200; ++trial) {
        ChainComplexW c = random_finite_complex(rng, ord(rng));
        c.validate();
        const int g = c.model->order();
        double chi = 0.0, chi_b = 0.0;
        for (int n = 0; n <= c.top(); ++n) {
            double b = weighted_betti(c, n);
            // dimension law: vN dimension equals dim_C of homology over |G|
            Eigen::MatrixXcd down = n >= 1 ? regular_rep(c.diffs[n - 1])
                                           : Eigen::MatrixXcd::Zero(0, c.ranks[0] * g);
            Eigen::MatrixXcd up = n < c.top()
                                      ? regular_rep(c.diffs[n])
                                      : Eigen::MatrixXcd::Zero(0, c.ranks[n] * g);
            int dim_ker = c.ranks[n] * g - mrank(down);
            int dim_im = mrank(up);
            REQUIRE(std::abs(b - static_cast<double>(dim_ker - dim_im) / g) < 1e-9);
            double sign = n % 2 == 0 ? 1.0 : -1.0;
            chi += sign * c.ranks[n];
            chi_b += sign * b;
        }
        REQUIRE(std::abs(chi - chi_b) < 1e-9);
    }
}

TEST_CASE("finite complexes with zero differentials") {
    ChainComplexW c;
    c.model = GroupModel::cyclic(3);
    c.phi.weights = {0, 0, 0};
    c.ranks = {2, 1};
    c.diffs = {RingMatrix(c.model, 1, 2)};
    c.validate();
    REQUIRE(weighted_betti(c, 0) == 2.0);
    REQUIRE(weighted_betti(c, 1) == 1.0);
}

TEST_CASE("dimension is additive on direct sums") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        ChainComplexW a = random_finite_complex(rng, 3);
        ChainComplexW b = random_finite_complex(rng, 3, a.model);
        // direct sum
        ChainComplexW s;
        s.model = a.model;
        s.phi = a.phi;
        for (std::size_t i = 0; i < a.ranks.size(); ++i)
            s.ranks.push_back(a.ranks[i] + b.ranks[i]);
        for (std::size_t d = 0; d < a.diffs.size(); ++d) {
            const RingMatrix &da = a.diffs[d], &db = b.diffs[d];
            RingMatrix m(s.model, da.rows() + db.rows(), da.cols() + db.cols());
            for (int i = 0; i < da.rows(); ++i)
                for (int j = 0; j < da.cols(); ++j) m.at(i, j) = da.at(i, j);
            for (int i = 0; i < db.rows(); ++i)
                for (int j = 0; j < db.cols(); ++j)
                    m.at(da.rows() + i, da.cols() + j) = db.at(i, j);
            s.diffs.push_back(m);
        }
        for (int n = 0; n <= s.top(); ++n)
            REQUIRE(std::abs(weighted_betti(s, n) - (weighted_betti(a, n) + weighted_betti(b, n))) <
                    1e-9);
    }
}

TEST_CASE("chain complex validation") {
    auto z = GroupModel::free_abelian({"z"});
    ChainComplexW c;
    c.model = z;
    c.phi.weights = {1};
    c.ranks = {1, 1, 1};
    RingMatrix c1(z, 1, 1), c2(z, 1, 1);
    c1.at(0, 0) = element_of(z, parse_poly("z-1"));
    c2.at(0, 0) = element_of(z, parse_poly("z+1"));
    c.diffs = {c1, c2};
    REQUIRE_THROWS_AS(c.validate(), ModelMismatch); // c2*c1 != 0

    ChainComplexW f;
    f.model = GroupModel::cyclic(2);
    f.phi.weights = {1, 0}; // forbidden on a finite group
    f.ranks = {1};
    REQUIRE_THROWS_AS(f.validate(), ModelMismatch);
}

TEST_CASE("Z-model Betti numbers") {
    auto z = GroupModel::free_abelian({"z"});

    // S^1: multiplication by z-1 is injective with dense image
    ChainComplexW s1;
    s1.model = z;
    s1.phi.weights = {1};
    s1.ranks = {1, 1};
    RingMatrix c1(z, 1, 1);
    c1.at(0, 0) = element_of(z, parse_poly("z-1"));
    s1.diffs = {c1};
    REQUIRE(weighted_betti(s1, 0) == 0.0);
    REQUIRE(weighted_betti(s1, 1) == 0.0);

    // rank-deficient differential: [[z-1],[1-z]] has generic rank 1
    ChainComplexW r;
    r.model = z;
    r.phi.weights = {0};
    r.ranks = {1, 2};
    RingMatrix d(z, 2, 1);
    d.at(0, 0) = element_of(z, parse_poly("z-1"));
    d.at(1, 0) = element_of(z, parse_poly("1-z"));
    r.diffs = {d};
    REQUIRE(weighted_betti(r, 1) == 1.0);
    REQUIRE(weighted_betti(r, 0) == 0.0);
}

TEST_CASE("S^1 torsion curve") {
    auto z = GroupModel::free_abelian({"z"});
    ChainComplexW s1;
    s1.model = z;
    s1.phi.weights = {1}; // rho(t) = e^2
    s1.ranks = {1, 1};
    RingMatrix c1(z, 1, 1);
    c1.at(0, 0) = element_of(z, parse_poly("z-1"));
    s1.diffs = {c1};
    for (int i = 0; i <= 20; ++i) {
        double x = -2.0 + 0.2 * i;
        REQUIRE(std::abs(weighted_torsion_z(s1, x) - std::max(x, 0.0)) < 1e-8);
    }
}

TEST_CASE("torsion of an off-circle two-term complex") {
    auto z = GroupModel::free_abelian({"z"});
    ChainComplexW c;
    c.model = z;
    c.phi.weights = {0}; // rho trivial: no x-dependence
    c.ranks = {1, 1};
    RingMatrix c1(z, 1, 1);
    c1.at(0, 0) = element_of(z, parse_poly("z-2"));
    c.diffs = {c1};
    for (double x : {-1.0, 0.0, 2.0})
        REQUIRE(std::abs(weighted_torsion_z(c, x) - std::log(2.0)) < 1e-9);
}

TEST_CASE("torsion refuses non-acyclic complexes") {
    auto z = GroupModel::free_abelian({"z"});
    ChainComplexW c;
    c.model = z;
    c.phi.weights = {0};
    c.ranks = {1, 1};
    c.diffs = {RingMatrix(z, 1, 1)}; // zero differential
    REQUIRE_THROWS_AS(weighted_torsion_z(c, 0.0), NotDetAcyclic);
}

TEST_CASE("restriction law for Z over nZ") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> cf(-2.0, 2.0);
    for (int n : {2, 3, 5}) {
        auto [l0, r0] = restriction_check(parse_poly("z-2"), n);
        REQUIRE(std::abs(l0 - n * std::log(2.0)) < 1e-8);
        REQUIRE(std::abs(l0 - r0) < 1e-8);
        auto [l1, r1] = restriction_check(parse_poly("2z-1"), n);
        REQUIRE(std::abs(l1 - n * std::log(2.0)) < 1e-8);
        REQUIRE(std::abs(l1 - r1) < 1e-8);
        for (int trial = 0; trial < 10; ++trial) {
            LaurentPoly p;
            for (int e = 0; e <= 3; ++e) p.add_term(e, {cf(rng), 0.0});
            bool near = p.trimmed(1e-12).is_zero();
            if (!near)
                for (auto root : poly_roots(p))
                    if (std::abs(std::abs(root) - 1.0) < 1e-3) near = true;
            if (near) continue;
            auto [lhs, rhs] = restriction_check(p, n);
            REQUIRE(std::abs(lhs - rhs) < 1e-8);
        }
    }
    auto [lc, rc] = restriction_check(parse_poly("1"), 4);
    REQUIRE(std::abs(lc) < 1e-12);
    REQUIRE(std::abs(rc) < 1e-12);
    REQUIRE_THROWS_AS(restriction_check(parse_poly("z-1"), 2), CircleZero);
}

TEST_CASE("complex JSON parsing") {
    auto j = nlohmann::json::parse(R"({
        "model": {"kind": "Z"}, "weight": [1],
        "ranks": [1, 1], "diffs": [[["z-1"]]]
    })");
    ChainComplexW c = parse_complex_json(j);
    REQUIRE(c.top() == 1);
    REQUIRE(weighted_betti(c, 0) == 0.0);

    auto f = nlohmann::json::parse(R"({
        "model": {"kind": "cyclic", "n": 3},
        "ranks": [1, 1],
        "diffs": [[[[{"word": "s1", "re": 1.0}]]]]
    })");
    ChainComplexW fc = parse_complex_json(f);
    REQUIRE(fc.model->kind() == GroupModel::Kind::Finite);
}
