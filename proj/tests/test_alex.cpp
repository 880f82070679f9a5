#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "l2alex/dsl.hpp"
#include "l2alex/l2_alexander.hpp"

using namespace l2alex;

TEST_CASE("torus closed form") {
    REQUIRE(l2_alexander_torus(2, 3, {2.0, 0.0}).value == 4.0);
    REQUIRE(l2_alexander_torus(2, 5, {0.5, 0.0}).value == 1.0);
    REQUIRE(l2_alexander_torus(3, 5, {1.0, 0.0}).value == 1.0);
    REQUIRE_THROWS_AS(l2_alexander_torus(2, 4, {2.0, 0.0}), NotCoprime);
    REQUIRE_THROWS_AS(l2_alexander_torus(2, 3, {0.0, 0.0}), ZeroParameter);
}

TEST_CASE("pipeline equals closed form exactly on standard torus presentations") {
    for (auto [p, q] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
        auto kp = torus_presentation(p, q);
        for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            AlexResult r = l2_alexander(kp, {t, 0.0});
            AlexResult c = l2_alexander_torus(p, q, {t, 0.0});
            REQUIRE(r.value == c.value);
            REQUIRE(r.det.rigorous);
            REQUIRE(r.det.error_bound == 0.0);
            REQUIRE(r.provenance == AlexProvenance::TheoremPipeline);
        }
    }
}

TEST_CASE("pipeline is j-independent modulo |t|^p") {
    for (auto [p, q] : {std::pair{2, 3}, {3, 4}}) {
        auto kp = torus_presentation(p, q);
        for (double t : {0.5, 2.0, 3.0}) {
            AlexConfig c1, c2;
            c1.j = 1;
            c2.j = 2;
            double v1 = l2_alexander(kp, {t, 0.0}, c1).value;
            double v2 = l2_alexander(kp, {t, 0.0}, c2).value;
            double k = (std::log(v1) - std::log(v2)) / std::log(t);
            REQUIRE(std::abs(k - std::round(k)) < 1e-9);
        }
    }
}

TEST_CASE("trefoil via trace series") {
    auto kp = trefoil_presentation();
    for (double t : {0.2, 0.3, 0.5}) {
        AlexConfig cfg;
        cfg.engine = EngineChoice::TraceSeries;
        AlexResult r = l2_alexander(kp, {t, 0.0}, cfg);
        REQUIRE(r.value == 1.0);
        REQUIRE(r.det.rigorous);
        REQUIRE(r.det.error_bound <= 1e-8);
        REQUIRE(r.det.method == DetMethod::TraceSeries);
    }
    // |t| > 1: monomial factoring branch
    AlexResult big = l2_alexander(kp, {2.0, 0.0});
    REQUIRE(std::abs(big.value - 4.0) < 1e-12);
    // near |t| = 1 the series fails; proven closed form takes over
    AlexResult mid = l2_alexander(kp, {0.9, 0.0});
    REQUIRE(mid.value == 1.0);
    REQUIRE(mid.provenance == AlexProvenance::ClosedFormTorus);
}

TEST_CASE("modulus invariance") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> mod(0.3, 3.0);
    std::uniform_real_distribution<double> arg(0.1, 3.0);
    for (auto [p, q] : {std::pair{2, 3}, {2, 5}, {3, 4}}) {
        auto kp = torus_presentation(p, q);
        for (int i = 0; i < 10; ++i) {
            double r = mod(rng), th = arg(rng);
            cplx t{r * std::cos(th), r * std::sin(th)};
            REQUIRE(l2_alexander(kp, t).value == l2_alexander(kp, {std::abs(t), 0.0}).value);
        }
    }
}

TEST_CASE("unknot") {
    auto kp = knot_presentation_from(parse_presentation("<a|>"));
    for (double t : {0.5, 1.0, 3.0}) REQUIRE(l2_alexander(kp, {t, 0.0}).value == 1.0);
}

TEST_CASE("presentation without a model reports unsupported") {
    auto kp = knot_presentation_from(parse_presentation("<a,b,c|a b^-1, b c^-1>"));
    AlexResult r = l2_alexander(kp, {0.5, 0.0});
    REQUIRE(r.provenance == AlexProvenance::Unsupported);
    REQUIRE(r.status == AlexStatus::Unsupported);
}

TEST_CASE("classical alexander polynomials") {
    auto tref = trefoil_presentation();
    LaurentPoly expect = parse_laurent("t^2-t+1").first;
    REQUIRE(equal_up_to_units(classical_alexander(tref.pres, tref.phi, 2), expect));
    REQUIRE(equal_up_to_units(classical_alexander(tref.pres, tref.phi, 1), expect));

    auto t23 = torus_presentation(2, 3);
    REQUIRE(equal_up_to_units(classical_alexander(t23.pres, t23.phi, 2), expect));
    REQUIRE(equal_up_to_units(classical_alexander(t23.pres, t23.phi, 1), expect));

    auto t25 = torus_presentation(2, 5);
    REQUIRE(equal_up_to_units(classical_alexander(t25.pres, t25.phi, 2),
                              parse_laurent("t^4-t^3+t^2-t+1").first));

    KnotSpec fig8;
    fig8.kind = KnotSpec::Kind::Table;
    fig8.num_arcs = 4;
    fig8.crossings = {{2, 3, 0, 1}, {0, 1, 2, 1}, {3, 0, 1, -1}, {1, 2, 3, -1}};
    auto kp8 = wirtinger(fig8);
    REQUIRE(equal_up_to_units(classical_alexander(kp8.pres, kp8.phi, 4),
                              parse_laurent("t^2-3t+1").first));
}

TEST_CASE("simplified invariant") {
    // torus (2,3) at |t| = 2: sqrt(4/2 * 1/1)
    double d = simplified_delta_prime(4.0, 1.0, {2.0, 0.0});
    REQUIRE(std::abs(d - std::sqrt(2.0)) < 1e-12);
    REQUIRE(simplified_delta_prime(1.0, 1.0, {1.0, 0.0}) == 1.0);
    REQUIRE(simplified_delta_prime(1.0, 1.0, {0.4, 0.0}) == 1.0); // unknot at any t
}

TEST_CASE("torsion correspondence") {
    double e = std::exp(1.0);
    REQUIRE(std::abs(torsion_from_alexander(e * e, {e, 0.0}) - (-1.0)) < 1e-12);
    REQUIRE(torsion_from_alexander(1.0, {1.0, 0.0}) == 0.0);
    for (double t : {0.3, 1.0, 2.5})
        REQUIRE(std::abs(torsion_from_alexander(std::max(t, 1.0), {t, 0.0})) < 1e-12);
    REQUIRE_THROWS_AS(torsion_from_alexander(0.0, {2.0, 0.0}), NonpositiveValue);
}

TEST_CASE("alex result serialization") {
    AlexResult r = l2_alexander_torus(2, 3, {2.0, 0.0});
    auto j = alex_result_json(r, "torus(2,3)", "<x,y|x^2 y^-3>", 2);
    REQUIRE(j["value"] == 4.0);
    REQUIRE(j["rigorous"] == true);
    REQUIRE(j["status"] == "ok");
    auto dj = det_estimate_json(r.det);
    REQUIRE(dj["injectivity_status"] == "Proven");
}

TEST_CASE("wirtinger trefoil and torus(2,3) agree classically") {
    auto a = trefoil_presentation();
    auto b = torus_presentation(2, 3);
    REQUIRE(equal_up_to_units(classical_alexander(a.pres, a.phi, 2),
                              classical_alexander(b.pres, b.phi, 2)));
}
