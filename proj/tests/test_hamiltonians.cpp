#include <catch2/catch_amalgamated.hpp>

#include "pqha/hamiltonians.hpp"

using namespace pqha;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("plain oscillator spectrum", "[ham]") {
    const auto rep = build_rep(DsfKind::Undeformed, {1.0, 1.0}, GaugeSpec::symmetric(), 16);
    const Matrix h = build_H(rep, HamiltonianForm::Ladder);
    // matrix products square the sqrt entries, so exactness is one ulp off
    for (int n = 0; n < 15; ++n) CHECK_THAT(h(n, n).real(), WithinRel(n + 0.5, 1e-14));

    const auto en = spectrum_values(DsfKind::Undeformed, {1.0, 1.0}, 10);
    for (int n = 0; n <= 10; ++n) CHECK(en[static_cast<size_t>(n)] == n + 0.5);

    const auto eigs = interior_eigenvalues(h, 4);
    REQUIRE(eigs.size() == 12);
    CHECK_THAT(eigs.front(), WithinAbs(0.5, 1e-13));
    CHECK_THAT(eigs.back(), WithinAbs(11.5, 1e-13));
}

TEST_CASE("equal parameters rescale the level spacing", "[ham]") {
    const double q0 = 0.7;
    const auto rep = build_rep(DsfKind::NonstandardPQ, {q0, q0}, GaugeSpec::symmetric(), 24);
    const Matrix h = build_H(rep, HamiltonianForm::Ladder);
    for (int n = 1; n < 23; ++n)
        CHECK_THAT(h(n, n).real(), WithinRel((n + 0.5) / q0, 1e-12));
    CHECK_THAT(h(0, 0).real(), WithinRel(0.5 / q0, 1e-12));
}

TEST_CASE("all four forms agree on the non-standard family", "[ham]") {
    for (double p : {0.5, 1.0, 2.0}) {
        for (double q : {0.5, 1.25, 2.0}) {
            const DeformationParams par{p, q};
            const auto rep = build_rep(DsfKind::NonstandardPQ, par, GaugeSpec::symmetric(), 32);
            const Matrix hl = build_H(rep, HamiltonianForm::Ladder);
            INFO("p=" << p << " q=" << q);
            CHECK(scaled_residual(build_H(rep, HamiltonianForm::Quadrature), hl, 4) < 1e-10);
            CHECK(scaled_residual(build_H(rep, HamiltonianForm::QuadratureReduced), hl, 4) <
                  1e-10);
            CHECK(scaled_residual(build_H(rep, HamiltonianForm::Normal), hl, 4) < 1e-10);
        }
    }
}

TEST_CASE("quadrature forms only exist for the non-standard family", "[ham]") {
    const auto rep = build_rep(DsfKind::Undeformed, {1.0, 1.0}, GaugeSpec::symmetric(), 8);
    CHECK_THROWS_AS(build_H(rep, HamiltonianForm::Quadrature), WrongKind);
    CHECK_THROWS_AS(build_H(rep, HamiltonianForm::QuadratureReduced), WrongKind);
    CHECK_THROWS_AS(build_H(rep, HamiltonianForm::Normal), WrongKind);
    CHECK_NOTHROW(build_H(rep, HamiltonianForm::Ladder));
}

TEST_CASE("form names", "[ham]") {
    CHECK(std::string(hamiltonian_form_name(HamiltonianForm::Ladder)) == "ladder");
    CHECK(std::string(hamiltonian_form_name(HamiltonianForm::Quadrature)) == "quadrature");
    CHECK(std::string(hamiltonian_form_name(HamiltonianForm::QuadratureReduced)) ==
          "quadrature-reduced");
    CHECK(std::string(hamiltonian_form_name(HamiltonianForm::Normal)) == "normal");
}

TEST_CASE("ladder form is hermitian for every gauge", "[ham]") {
    for (const auto& g : {GaugeSpec::symmetric(), GaugeSpec::case_a(), GaugeSpec::case_b()}) {
        const auto rep = build_rep(DsfKind::NonstandardPQ, {1.0, 2.0}, g, 24);
        const Matrix h = build_H(rep, HamiltonianForm::Ladder);
        CHECK(hermiticity_residual(h, 2) < 1e-13);
    }
}

TEST_CASE("naive quadrature Hamiltonian fails, the dressed one works", "[ham]") {
    const DeformationParams par{1.0, 0.9};
    const double Q = par.Q();
    const auto rep = build_rep(DsfKind::NonstandardPQ, par, GaugeSpec::symmetric(), 32);
    const auto pair = build_xp(rep);
    const Matrix naive = 0.5 * (pair.X * pair.X + pair.P * pair.P);
    CHECK(hermiticity_residual(naive, 4) > 1e-3);

    const EtaPair metrics = derive_eta_closed_forms(eta_a_of_gauge(rep.gauge));
    const Matrix dressed = build_H_tilde(rep, metrics.eta_x, metrics.eta_p);
    CHECK(hermiticity_residual(dressed, 4) < 1e-12);
}

TEST_CASE("dressed Hamiltonian is hermitian whenever the metrics match the gauge", "[ham]") {
    const DeformationParams par{1.25, 0.8};
    for (const auto& g : {GaugeSpec::symmetric(), GaugeSpec::case_a(), GaugeSpec::case_b(),
                          *parse_gauge("w:0,0.333")}) {
        const auto rep = build_rep(DsfKind::NonstandardPQ, par, g, 32);
        const EtaPair metrics = derive_eta_closed_forms(eta_a_of_gauge(g));
        const Matrix dressed = build_H_tilde(rep, metrics.eta_x, metrics.eta_p);
        INFO("gauge " << g.label);
        CHECK(hermiticity_residual(dressed, 4) < 1e-12);
    }
}

TEST_CASE("no deformation means no dressing", "[ham]") {
    const auto rep = build_rep(DsfKind::Undeformed, {1.0, 1.0}, GaugeSpec::symmetric(), 16);
    const auto pair = build_xp(rep);
    const EtaPair metrics = derive_eta_closed_forms(eta_a_of_gauge(rep.gauge));
    const Matrix dressed = build_H_tilde(rep, metrics.eta_x, metrics.eta_p);
    const Matrix plain = 0.5 * (pair.X * pair.X + pair.P * pair.P);
    CHECK(scaled_residual(dressed, plain, 0) == 0.0);
}

TEST_CASE("spectrum values match the built diagonal", "[ham]") {
    const DeformationParams par{1.0, 2.0};
    const auto rep = build_rep(DsfKind::NonstandardPQ, par, GaugeSpec::symmetric(), 24);
    const Matrix h = build_H(rep, HamiltonianForm::Ladder);
    const auto en = spectrum_values(DsfKind::NonstandardPQ, par, 23);
    CHECK_THAT(en[0], WithinRel(0.1, 1e-13));  // phi(1)/2 with phi(0) = 0
    for (int n = 1; n < 23; ++n)
        CHECK_THAT(h(n, n).real(), WithinRel(en[static_cast<size_t>(n)], 1e-12));
}
