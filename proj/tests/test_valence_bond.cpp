#include <catch2/catch_amalgamated.hpp>

#include "vbmps/valence_bond.hpp"

using namespace vbmps;

namespace {
double phase_distance(const CVector& a, const CVector& b) {
    CVector ah = a / a.norm(), bh = b / b.norm();
    Complex ov = bh.dot(ah);
    return (ah - (ov / std::abs(ov)) * bh).norm();
}
} // namespace

TEST_CASE("epsilon sign by spin parity") {
    CHECK(epsilon_sign(HalfInt::from_twice(1)) == -1);
    CHECK(epsilon_sign(HalfInt::from_int(1)) == 1);
    CHECK(epsilon_sign(HalfInt::from_twice(3)) == -1);
    CHECK(epsilon_sign(HalfInt::from_int(2)) == 1);
}

TEST_CASE("spin-1/2 singlet: explicit amplitudes and rotational invariance") {
    CVector s = singlet(HalfInt::from_twice(1));
    REQUIRE(s.size() == 4);
    double r = 1.0 / std::sqrt(2.0);
    CHECK(s(0) == Complex(0, 0));
    CHECK(s(1).real() == Catch::Approx(-r)); // (-1)^(s+m) at m = +1/2
    CHECK(s(2).real() == Catch::Approx(r));
    CHECK(s(3) == Complex(0, 0));
    CHECK(std::abs(s.norm() - 1.0) <= 1e-14);

    TotalSpin ts = total_spin_operators(uniform_sites(HalfInt::from_twice(1), 2));
    CHECK((ts.casimir * s).norm() <= 1e-13);
}

TEST_CASE("singlets of higher spin are normalized total-spin-zero states") {
    for (long long twice : {2LL, 3LL}) {
        HalfInt s = HalfInt::from_twice(twice);
        CVector v = singlet(s);
        CHECK(std::abs(v.norm() - 1.0) <= 1e-13);
        TotalSpin ts = total_spin_operators(uniform_sites(s, 2));
        CHECK((ts.casimir * v).norm() <= 1e-12);
        CHECK((ts.triple.lz * v).norm() <= 1e-13);
    }
    CHECK_THROWS_AS(singlet(HalfInt::from_int(0)), std::invalid_argument);
}

TEST_CASE("dimer coverings pair the expected sites") {
    DimerCovering c0{HalfInt::from_twice(1), 6, 0};
    auto p0 = c0.pairs();
    REQUIRE(p0.size() == 3);
    CHECK(p0[0] == std::make_pair(0LL, 1LL));
    CHECK(p0[2] == std::make_pair(4LL, 5LL));
    DimerCovering c1{HalfInt::from_twice(1), 6, 1};
    auto p1 = c1.pairs();
    CHECK(p1[0] == std::make_pair(1LL, 2LL));
    CHECK(p1[2] == std::make_pair(5LL, 0LL)); // wraps the ring

    CHECK_THROWS_AS((DimerCovering{HalfInt::from_twice(1), 5, 0}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((DimerCovering{HalfInt::from_twice(1), 6, 2}).validate(),
                    std::invalid_argument);
}

TEST_CASE("offset-0 dimer state is the literal singlet product") {
    HalfInt half = HalfInt::from_twice(1);
    CVector product = kron(singlet(half), singlet(half));
    CVector phi = dimer_state({half, 4, 0});
    CHECK((phi - product).norm() <= 1e-14);
    CHECK(std::abs(phi.norm() - 1.0) <= 1e-14);
}

TEST_CASE("covering overlap matches the closed form") {
    HalfInt half = HalfInt::from_twice(1);
    CVector phi1 = dimer_state({half, 4, 0});
    CVector phi2 = dimer_state({half, 4, 1});
    // eps^N / (2s+1)^(N-1) with N = 2 pairs: 1/2.
    CHECK(std::abs(phi1.dot(phi2) - Complex(0.5, 0)) <= 1e-13);

    HalfInt one = HalfInt::from_int(1);
    CVector psi1 = dimer_state({one, 4, 0});
    CVector psi2 = dimer_state({one, 4, 1});
    CHECK(std::abs(psi1.dot(psi2) - Complex(1.0 / 3.0, 0)) <= 1e-13);
}

TEST_CASE("analytic predictions reproduce the pinned spin-1/2 values") {
    DimerPredictions p = analytic_predictions(HalfInt::from_twice(1), 3);
    CHECK(p.overlap == Catch::Approx(-0.25));
    CHECK(p.norm_plus == Catch::Approx(1.5));
    CHECK(p.norm_minus == Catch::Approx(2.5));
    CHECK(p.corr_plus == Catch::Approx(-0.25));
    CHECK(p.corr_minus == Catch::Approx(-0.45));
    CHECK_THROWS_AS(analytic_predictions(HalfInt::from_twice(1), 0), std::invalid_argument);
}

TEST_CASE("mg_state is the sum or difference of the two coverings") {
    HalfInt half = HalfInt::from_twice(1);
    CVector phi1 = dimer_state({half, 4, 0});
    CVector phi2 = dimer_state({half, 4, 1});
    CHECK((mg_state(half, 2, +1) - (phi1 + phi2)).norm() <= 1e-14);
    CHECK((mg_state(half, 2, -1) - (phi1 - phi2)).norm() <= 1e-14);
    CHECK_THROWS_AS(mg_state(half, 2, 0), std::invalid_argument);
}

TEST_CASE("alternating chain equals the singlet product for one period") {
    HalfInt one = HalfInt::from_int(1), half = HalfInt::from_twice(1);
    CVector product = alternating_dimer_state(one, half, 1);
    CHECK((product - kron(singlet(one), singlet(half))).norm() <= 1e-14);
    CVector psi = expand_state(alternating_chain(one, half, 1));
    CHECK(phase_distance(psi, product) <= 1e-12);

    // Equal spins still dimerize blockwise; no shifted covering appears.
    CVector psi_h = expand_state(alternating_chain(half, half, 1));
    CHECK(phase_distance(psi_h, kron(singlet(half), singlet(half))) <= 1e-12);
}

TEST_CASE("symmetry-breaking spec validation") {
    SymmetryBreakingSpec bad_m{HalfInt::from_twice(1), {{HalfInt::from_int(1), Complex(1, 0)}}};
    CHECK_THROWS_AS(bad_m.validate(), std::invalid_argument);
    SymmetryBreakingSpec zero{HalfInt::from_twice(1), {{HalfInt::from_twice(1), Complex(0, 0)}}};
    CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
}

TEST_CASE("symmetry-breaking chain equals the explicit product") {
    HalfInt half = HalfInt::from_twice(1);
    SymmetryBreakingSpec spec{half, {{HalfInt::from_twice(1), Complex(1, 0)}}};
    CVector product = symmetry_breaking_state(spec, 1);
    CHECK((product - kron(singlet(half), CVector(CVector::Unit(2, 0)))).norm() <= 1e-14);
    CVector psi = expand_state(symmetry_breaking_chain(spec, 1));
    CHECK(phase_distance(psi, product) <= 1e-12);

    // A complex two-component alpha, two periods.
    SymmetryBreakingSpec spec2{half,
                               {{HalfInt::from_twice(1), Complex(0.6, 0)},
                                {HalfInt::from_twice(-1), Complex(0, 0.8)}}};
    CHECK(phase_distance(expand_state(symmetry_breaking_chain(spec2, 2)),
                         symmetry_breaking_state(spec2, 2)) <= 1e-12);
}

TEST_CASE("four-site contraction identity") {
    auto rep_half = contraction_identity_check(HalfInt::from_twice(1));
    CHECK(rep_half.pass);
    CHECK(std::abs(rep_half.coefficient - Complex(-0.5, 0)) <= 1e-12);
    auto rep_one = contraction_identity_check(HalfInt::from_int(1));
    CHECK(rep_one.pass);
    CHECK(std::abs(rep_one.coefficient - Complex(1.0 / 3.0, 0)) <= 1e-12);
    auto rep_32 = contraction_identity_check(HalfInt::from_twice(3));
    CHECK(rep_32.pass);
    CHECK(std::abs(rep_32.coefficient - Complex(-0.25, 0)) <= 1e-12);
}

TEST_CASE("spin_dot_spin spectrum and the singlet correlation") {
    SiteSystem sys = uniform_sites(HalfInt::from_twice(1), 2);
    CMatrix op = spin_dot_spin(sys, 0, 1);
    HermitianEig eig = eig_hermitian(op);
    CHECK(eig.eigenvalues(0) == Catch::Approx(-0.75));
    for (int i = 1; i < 4; ++i) CHECK(eig.eigenvalues(i) == Catch::Approx(0.25));
    CHECK_THROWS_AS(spin_dot_spin(sys, 0, 0), std::invalid_argument);

    CVector s = singlet(HalfInt::from_twice(1));
    CHECK(state_correlation(s, HalfInt::from_twice(1), 2, 0, 1) == Catch::Approx(-0.75));
}
