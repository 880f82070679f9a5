#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "l2alex/dsl.hpp"
#include "l2alex/fox.hpp"
#include "l2alex/group_model.hpp"
#include "l2alex/knots.hpp"
#include "l2alex/presentation.hpp"
#include "l2alex/word.hpp"

using namespace l2alex;

namespace {

Word random_word(std::mt19937& rng, int num_gens, int max_syllables) {
    std::uniform_int_distribution<int> len(0, max_syllables);
    std::uniform_int_distribution<int> gen(0, num_gens - 1);
    std::uniform_int_distribution<int> exp(-3, 3);
    Word w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        long long e = exp(rng);
        if (e == 0) e = 1;
        w = w.concat(Word::gen(gen(rng), e));
    }
    return w;
}

} // namespace

TEST_CASE("free reduction") {
    Word a = Word::gen(0), b = Word::gen(1);
    REQUIRE(reduce_free(a.concat(a.pow_raw(-1))).is_identity());
    REQUIRE(reduce_free(a.concat(b).concat(b.pow_raw(-1)).concat(a)) == Word::gen(0, 2));
    Word aba = a.concat(b).concat(a);
    REQUIRE(reduce_free(aba.concat(aba.inverse_raw())).is_identity());
    // length is non-increasing
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        Word w = random_word(rng, 3, 8);
        REQUIRE(reduce_free(w).length() <= w.length());
    }
}

TEST_CASE("free abelian normal form") {
    auto m = GroupModel::free_abelian({"u", "v"});
    Word w = Word::gen(1, 2).concat(Word::gen(0, 1)).concat(Word::gen(1, -2));
    REQUIRE(m->normalize(w) == Word::gen(0, 1));
    REQUIRE(m->multiply(Word::gen(0), Word::gen(1)) == m->multiply(Word::gen(1), Word::gen(0)));
}

TEST_CASE("finite model: cyclic group") {
    auto m = GroupModel::cyclic(5);
    Word s = Word::gen(1, 1);
    REQUIRE(m->normalize(s.pow_raw(5)).is_identity());
    REQUIRE(m->normalize(s.pow_raw(7)) == m->normalize(s.pow_raw(2)));
    REQUIRE(m->multiply(s, m->invert(s)).is_identity());
    REQUIRE_FALSE(m->infinite_order(s));
}

TEST_CASE("torus knot normal form") {
    auto m = GroupModel::torus_knot(2, 3);
    // x^2 = z for p = 2
    REQUIRE(m->normalize(Word::gen(0, 2).concat(Word::gen(1, -3)).concat(Word::gen(1, 3))) ==
            Word::gen(2, 1));
    // y^4 = z y for q = 3
    REQUIRE(m->normalize(Word::gen(1, 4)) == Word::gen(2, 1).concat(Word::gen(1, 1)));
    // z is central
    Word zx = m->multiply(Word::gen(2), Word::gen(0));
    Word xz = m->multiply(Word::gen(0), Word::gen(2));
    REQUIRE(zx == xz);

    std::mt19937 rng(7);
    for (int i = 0; i < 500; ++i) {
        Word u = random_word(rng, 2, 6), v = random_word(rng, 2, 6);
        // idempotence and compatibility with multiplication
        REQUIRE(m->normalize(m->normalize(u)) == m->normalize(u));
        REQUIRE(m->normalize(u.concat(v)) == m->multiply(m->normalize(u), m->normalize(v)));
        REQUIRE(m->multiply(u, m->invert(u)).is_identity());
    }
}

TEST_CASE("torus knot normal form preserves the grading") {
    for (auto [p, q] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
        auto m = GroupModel::torus_knot(p, q);
        PhiGrading mg{{static_cast<long long>(q), static_cast<long long>(p),
                       static_cast<long long>(p) * q}};
        std::mt19937 rng(100 * p + q);
        for (int i = 0; i < 200; ++i) {
            Word w = random_word(rng, 2, 6);
            REQUIRE(mg.weight(m->normalize(w)) == mg.weight(w));
        }
    }
}

TEST_CASE("trefoil letter images solve a b a = b a b") {
    auto kp = trefoil_presentation();
    auto m = kp.model;
    Word a = Word::gen(0), b = Word::gen(1);
    Word aba = a.concat(b).concat(a), bab = b.concat(a).concat(b);
    REQUIRE(m->translate(aba) == m->translate(bab));
    REQUIRE(m->translate(aba) == Word::gen(0, 1)); // aba = x
    REQUIRE(m->translate(a.concat(b)) == Word::gen(1, 1)); // ab = y
    REQUIRE_FALSE(m->translate(a) == m->translate(b));
}

TEST_CASE("ball enumeration") {
    auto z = GroupModel::free_abelian({"z"});
    auto ball = z->ball(3);
    REQUIRE(ball.size() == 7);
    auto tk = GroupModel::torus_knot(2, 3);
    auto b2 = tk->ball(2);
    // distinct normal forms by construction; identity present
    REQUIRE(std::count_if(b2.begin(), b2.end(), [](const Word& w) { return w.is_identity(); }) == 1);
    REQUIRE_THROWS_AS(tk->ball(30, 50), BallTooLarge);
}

TEST_CASE("presentation validation and gradings") {
    Presentation p;
    p.generators = {{0, "a"}, {1, "b"}};
    p.relators = {Word::gen(0, 1).concat(Word::gen(1, -1))};
    p.validate();
    REQUIRE(p.deficiency_one());
    PhiGrading phi{{1, 1}};
    phi.validate(p);
    PhiGrading bad{{1, 2}};
    REQUIRE_THROWS_AS(bad.validate(p), ModelMismatch);
}

TEST_CASE("fox derivative rules") {
    auto fm = GroupModel::free_group({"a", "b"});
    Word a = Word::gen(0), b = Word::gen(1);

    // d(g^n)/dg = 1 + g + ... + g^{n-1}
    RingElement d = fox_derive(fm, Word::gen(0, 3), 0);
    REQUIRE(d.coeff(Word::identity()) == cplx{1.0, 0.0});
    REQUIRE(d.coeff(Word::gen(0, 1)) == cplx{1.0, 0.0});
    REQUIRE(d.coeff(Word::gen(0, 2)) == cplx{1.0, 0.0});
    REQUIRE(d.support_size() == 3);

    // d(g^-n)/dg = -(g^-1 + ... + g^-n)
    RingElement dn = fox_derive(fm, Word::gen(0, -2), 0);
    REQUIRE(dn.coeff(Word::gen(0, -1)) == cplx{-1.0, 0.0});
    REQUIRE(dn.coeff(Word::gen(0, -2)) == cplx{-1.0, 0.0});
    REQUIRE(dn.support_size() == 2);

    // product rule d(uv) = d(u) + u d(v), on random pairs
    std::mt19937 rng(23);
    for (int i = 0; i < 300; ++i) {
        Word u = random_word(rng, 2, 5), v = random_word(rng, 2, 5);
        for (int g = 0; g < 2; ++g) {
            RingElement lhs = fox_derive(fm, u.concat(v), g);
            RingElement rhs = fox_derive(fm, u, g) +
                              RingElement::from_word(fm, u) * fox_derive(fm, v, g);
            REQUIRE(lhs == rhs);
        }
    }

    // trefoil relator
    Word rel = a.concat(b).concat(a).concat(b.inverse_raw()).concat(a.inverse_raw()).concat(
        b.inverse_raw());
    RingElement da = fox_derive(fm, rel, 0);
    REQUIRE(da.coeff(Word::identity()) == cplx{1.0, 0.0});
    REQUIRE(da.coeff(a.concat(b)) == cplx{1.0, 0.0});
    REQUIRE(da.support_size() == 3);
}

TEST_CASE("fox matrix shape and column deletion") {
    auto kp = torus_presentation(2, 3);
    FoxMatrix f = fox_matrix(kp.pres);
    REQUIRE(f.entries.rows() == 1);
    REQUIRE(f.entries.cols() == 2);
    RingMatrix f2 = delete_column(f, 2);
    REQUIRE(f2.cols() == 1);
    REQUIRE(f2.at(0, 0).support_size() == 2); // 1 + x
    REQUIRE_THROWS_AS(delete_column(f, 3), IndexOutOfRange);
}

TEST_CASE("phi from abelianization") {
    auto tp = torus_presentation(2, 3);
    PhiGrading phi = phi_from_abelianization(tp.pres);
    REQUIRE(phi.weights == std::vector<long long>{3, 2});

    auto tref = trefoil_presentation();
    REQUIRE(phi_from_abelianization(tref.pres).weights == std::vector<long long>{1, 1});

    Presentation unknot;
    unknot.generators = {{0, "a"}};
    REQUIRE(phi_from_abelianization(unknot).weights == std::vector<long long>{1});

    Presentation torsion;
    torsion.generators = {{0, "a"}, {1, "b"}};
    torsion.relators = {Word::gen(0, 2)};
    REQUIRE_THROWS_AS(phi_from_abelianization(torsion), NotHomologyCircle);
}

TEST_CASE("wirtinger construction") {
    // figure-eight crossing table
    KnotSpec spec;
    spec.kind = KnotSpec::Kind::Table;
    spec.num_arcs = 4;
    spec.crossings = {{2, 3, 0, 1}, {0, 1, 2, 1}, {3, 0, 1, -1}, {1, 2, 3, -1}};
    auto kp = wirtinger(spec);
    REQUIRE(kp.pres.num_generators() == 4);
    REQUIRE(kp.pres.relators.size() == 3);
    REQUIRE(kp.phi.weights == std::vector<long long>(4, 1));
    kp.phi.validate(kp.pres);

    // broken diagram: arc 0 is never an out-arc
    KnotSpec bad = spec;
    bad.crossings[0].out = 1;
    REQUIRE_THROWS_AS(wirtinger(bad), MalformedDiagram);
}

TEST_CASE("presentation DSL round trip") {
    for (const char* s : {"<a,b|a b a = b a b>", "<x,y|x^2 y^-3>", "<a|>",
                          "<g0,g1,g2|g0 g1 g0^-1 g1^-1,g1 g2^2>"}) {
        Presentation p = parse_presentation(s);
        std::string printed = print_presentation(p);
        Presentation p2 = parse_presentation(printed);
        REQUIRE(print_presentation(p2) == printed);
        REQUIRE(p2.relators == p.relators);
    }
    // adjacency parsing for single-letter names
    Presentation p = parse_presentation("<a,b|aba=bab>");
    REQUIRE(p.relators == parse_presentation("<a,b|a b a = b a b>").relators);
    REQUIRE_THROWS_AS(parse_presentation("<a,b|c>"), ParseError);
    REQUIRE_THROWS_AS(parse_presentation("a,b|ab"), ParseError);
}

TEST_CASE("laurent DSL") {
    auto [p, var] = parse_laurent("z^2 - z + 1");
    REQUIRE(var == "z");
    REQUIRE(p.coeff(2) == cplx{1.0, 0.0});
    REQUIRE(p.coeff(1) == cplx{-1.0, 0.0});
    REQUIRE(p.coeff(0) == cplx{1.0, 0.0});
    REQUIRE(parse_laurent("2z-1").first.coeff(1) == cplx{2.0, 0.0});
    REQUIRE(parse_laurent("1 - 0.5z").first.coeff(1) == cplx{-0.5, 0.0});
    REQUIRE(parse_laurent("z^-2 + 3").first.coeff(-2) == cplx{1.0, 0.0});
    REQUIRE_THROWS_AS(parse_laurent("z + w"), ParseError);
    REQUIRE_THROWS_AS(parse_laurent(""), ParseError);

    // print/parse round trip
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly q;
        for (long long e = -3; e <= 3; ++e) q.add_term(e, {static_cast<double>(coeff(rng)), 0.0});
        if (q.is_zero()) continue;
        auto [back, v] = parse_laurent(print_laurent(q, "z"));
        REQUIRE(back == q);
    }
}

TEST_CASE("knot spec strings") {
    KnotSpec t = parse_knot_spec("torus:3,5");
    REQUIRE(t.kind == KnotSpec::Kind::Torus);
    REQUIRE(t.p == 3);
    REQUIRE(t.q == 5);
    REQUIRE(parse_knot_spec("trefoil").kind == KnotSpec::Kind::Trefoil);
    REQUIRE_THROWS_AS(parse_knot_spec("granny"), ParseError);
    REQUIRE_THROWS_AS(parse_knot_spec("file:/nonexistent/x.json"), ParseError);
}

TEST_CASE("torus shape detection in presentations") {
    auto kp = knot_presentation_from(parse_presentation("<x,y|x^2=y^3>"));
    REQUIRE(kp.model);
    REQUIRE(kp.model->kind() == GroupModel::Kind::TorusKnot);
    REQUIRE(kp.phi.weights == std::vector<long long>{3, 2});

    auto unknot = knot_presentation_from(parse_presentation("<a|>"));
    REQUIRE(unknot.model);
    REQUIRE(unknot.model->kind() == GroupModel::Kind::FreeAbelian);

    auto generic = knot_presentation_from(parse_presentation("<a,b|aba=bab>"));
    REQUIRE_FALSE(generic.model);
    REQUIRE(generic.phi.weights == std::vector<long long>{1, 1});
}
