#include <catch2/catch_amalgamated.hpp>

#include "vbmps/mps.hpp"
#include "vbmps/parent_hamiltonian.hpp"

using namespace vbmps;

TEST_CASE("spin-1/2 window-2 product map has no null space") {
    NullSpaceResult ns = null_space(canonical_tensor(HalfInt::from_twice(1)), 2);
    CHECK(ns.basis.empty());
}

TEST_CASE("spin-1/2 window-3 null space is the spin-3/2 multiplet") {
    HalfInt half = HalfInt::from_twice(1);
    NullSpaceResult ns = null_space(canonical_tensor(half), 3);
    REQUIRE(ns.basis.size() == 4);
    // The basis is orthonormal and genuinely annihilates the product map.
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Complex g = ns.basis[i].dot(ns.basis[j]);
            CHECK(std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0))) <= 1e-12);
        }

    SiteSystem sys = uniform_sites(half, 3);
    ns = classify_multiplets(std::move(ns), sys);
    REQUIRE(ns.multiplets.size() == 1);
    CHECK(ns.multiplets[0].j == HalfInt::from_twice(3));
    CHECK(ns.multiplets[0].label == "3/2");
    CHECK(ns.multiplets[0].members.size() == 4);
}

TEST_CASE("classification is deterministic across runs") {
    HalfInt half = HalfInt::from_twice(1);
    SiteSystem sys = uniform_sites(half, 3);
    auto run = [&] {
        return classify_multiplets(null_space(canonical_tensor(half), 3), sys);
    };
    NullSpaceResult a = run(), b = run();
    REQUIRE(a.multiplets.size() == b.multiplets.size());
    for (std::size_t i = 0; i < a.multiplets.size(); ++i)
        CHECK((a.multiplets[i].top - b.multiplets[i].top).norm() == 0.0);
}

TEST_CASE("coupling spec validation") {
    CouplingSpec coup;
    coup.lambda["3/2"] = 0.0;
    CHECK_THROWS_AS(coup.at("3/2"), std::invalid_argument);
    CHECK_THROWS_AS(coup.at("missing"), std::invalid_argument);
    coup.lambda["3/2"] = 2.5;
    CHECK(coup.at("3/2") == 2.5);
}

TEST_CASE("local Hamiltonian is an su(2) scalar and assembles into a ring sum") {
    HalfInt half = HalfInt::from_twice(1);
    SiteSystem sys = uniform_sites(half, 3);
    NullSpaceResult ns = classify_multiplets(null_space(canonical_tensor(half), 3), sys);
    CouplingSpec coup;
    coup.lambda["3/2"] = 1.0;
    LocalHamiltonian local = local_hamiltonian(ns, sys, coup);
    REQUIRE(local.h.rows() == 8);

    TotalSpin ts = total_spin_operators(sys);
    CHECK(comm(local.h, ts.triple.lz).norm() <= 1e-12);
    CHECK(comm(local.h, ts.triple.lplus).norm() <= 1e-12);

    CMatrix h6 = assemble_hamiltonian(local, 6);
    CHECK(is_hermitian(h6, 1e-12));
    TotalSpin ts6 = total_spin_operators(uniform_sites(half, 6));
    CHECK(comm(h6, ts6.triple.lz).norm() <= 1e-11);
    CHECK(comm(h6, ts6.triple.lplus).norm() <= 1e-11);

    CHECK_THROWS_AS(assemble_hamiltonian(local, 2), std::invalid_argument);
    NullSpaceResult unclassified = null_space(canonical_tensor(half), 3);
    CHECK_THROWS_AS(local_hamiltonian(unclassified, sys, coup), std::invalid_argument);
}

TEST_CASE("verify_ground_state validates its inputs") {
    CMatrix h = CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(verify_ground_state(h, {CVector::Zero(2)}), std::invalid_argument);
    CHECK_THROWS_AS(verify_ground_state(h, {CVector::Ones(3)}), std::invalid_argument);
    GroundStateReport rep = verify_ground_state(h, {});
    CHECK(rep.min_eigenvalue == Catch::Approx(1.0));
    CHECK(rep.ground_space_dim == 0);
}

TEST_CASE("spin-1 preferred tops are highest-weight vectors of the expected spins") {
    SiteSystem sys = uniform_sites(HalfInt::from_int(1), 3);
    TotalSpin ts = total_spin_operators(sys);
    std::vector<CVector> tops = spin1_preferred_tops();
    REQUIRE(tops.size() == 5);
    std::vector<long long> twice_j{6, 4, 4, 2, 0};
    for (std::size_t i = 0; i < tops.size(); ++i) {
        CVector t = tops[i] / tops[i].norm();
        double jv = 0.5 * static_cast<double>(twice_j[i]);
        CHECK((ts.triple.lz * t - jv * t).norm() <= 1e-12);
        CHECK((ts.triple.lplus * t).norm() <= 1e-12);
    }
    // The unnormalized spin-0 top has squared norm 6; its normalization is
    // what the coupling map absorbs into the lambda0 channel.
    CHECK(tops[4].squaredNorm() == Catch::Approx(6.0));
}

TEST_CASE("spin-1 classification yields the (3, 2, 2', 1, 0) census") {
    NullSpaceResult ns = spin1_null_multiplets();
    CHECK(ns.basis.size() == 21);
    REQUIRE(ns.multiplets.size() == 5);
    CHECK(ns.multiplets[0].label == "3");
    CHECK(ns.multiplets[1].label == "2");
    CHECK(ns.multiplets[2].label == "2'");
    CHECK(ns.multiplets[3].label == "1");
    CHECK(ns.multiplets[4].label == "0");

    // All 21 members together form an orthonormal set.
    std::vector<const CVector*> members;
    for (const auto& m : ns.multiplets)
        for (const auto& v : m.members) members.push_back(&v);
    REQUIRE(members.size() == 21);
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i; j < members.size(); ++j) {
            Complex g = members[i]->dot(*members[j]);
            CHECK(std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0))) <= 1e-10);
        }
}

TEST_CASE("spin-1 local Hamiltonian acts by the pinned channel weights") {
    NullSpaceResult ns = spin1_null_multiplets();
    Spin1Couplings unit{1, 1, 1, 1, 1};
    LocalHamiltonian local = spin1_local_hamiltonian(unit, ns);
    // Within each multiplet h acts as its channel weight; the spin-0 channel
    // carries 6 * lambda0.
    std::map<std::string, double> expected{
        {"3", 1.0}, {"2", 1.0}, {"2'", 1.0}, {"1", 1.0}, {"0", 6.0}};
    for (const auto& m : ns.multiplets) {
        CVector t = m.top / m.top.norm();
        CHECK((local.h * t - expected.at(m.label) * t).norm() <= 1e-10);
    }
}

TEST_CASE("printed coupling columns: unit lambda0") {
    RVector j = spin1_printed_couplings({1, 0, 0, 0, 0});
    RVector expected(8);
    expected << -2, 2, -3, 2, 1, 1, -1, 1;
    CHECK((j - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("fitted couplings match the printed table") {
    ToleranceConfig tc;
    NullSpaceResult ns = spin1_null_multiplets(tc);
    std::vector<CMatrix> basis = spin1_operator_basis();
    for (const Spin1Couplings& lam :
         {Spin1Couplings{1, 0, 0, 0, 0}, Spin1Couplings{0, 0, 1, 0, 0},
          Spin1Couplings{0.7, 1.3, 2.1, 0.4, 1.9}}) {
        Spin1CouplingReport rep = spin1_coupling_table(lam, ns, basis, tc);
        CHECK(rep.pass);
        CHECK(rep.max_mismatch <= 1e-10);
        CHECK(rep.fit_residual <= 1e-10);
    }
}

TEST_CASE("three-body couplings vanish along the whole parametric family") {
    ToleranceConfig tc;
    NullSpaceResult ns = spin1_null_multiplets(tc);
    std::vector<CMatrix> basis = spin1_operator_basis();
    for (double lambda2 : {0.0, 6.0, 11.5}) {
        Spin1CouplingReport rep =
            spin1_coupling_table(spin1_parametric_family(lambda2), ns, basis, tc);
        CHECK(rep.pass);
        for (int idx : {3, 4, 6, 7}) CHECK(std::abs(rep.fitted(idx)) <= 1e-10);
    }
}

TEST_CASE("vbs_parent for (1, 1/2) is the neighbouring spin-3 projector") {
    HalfInt one = HalfInt::from_int(1), half = HalfInt::from_twice(1);
    LocalHamiltonian h = vbs_parent(one, half, {{HalfInt::from_int(3), 2.0}});
    SiteSystem pair = uniform_sites(HalfInt::from_twice(3), 2);
    CMatrix p3 = casimir_projector(pair, HalfInt::from_int(3));
    CHECK((h.h - 2.0 * p3).norm() <= 1e-10);

    CHECK_THROWS_AS(vbs_parent(one, half, {}), std::invalid_argument);
    CHECK_THROWS_AS(vbs_parent(one, half, {{HalfInt::from_int(3), -1.0}}),
                    std::invalid_argument);
}

TEST_CASE("vbs_parent covers every fusion-forbidden channel for (1, 1)") {
    HalfInt one = HalfInt::from_int(1);
    std::map<HalfInt, double> coup{{HalfInt::from_int(3), 1.0}, {HalfInt::from_int(4), 0.5}};
    LocalHamiltonian h = vbs_parent(one, one, coup);
    SiteSystem pair = uniform_sites(HalfInt::from_int(2), 2);
    CMatrix expected = casimir_projector(pair, HalfInt::from_int(3)) +
                       0.5 * casimir_projector(pair, HalfInt::from_int(4));
    CHECK((h.h - expected).norm() <= 1e-10);
}

TEST_CASE("AKLT projector expansion") {
    OperatorExpansion fit = aklt_spin1_parent();
    REQUIRE(fit.coefficients.size() == 3);
    CHECK(fit.coefficients(0) == Catch::Approx(1.0 / 3.0).margin(1e-12));
    CHECK(fit.coefficients(1) == Catch::Approx(0.5).margin(1e-12));
    CHECK(fit.coefficients(2) == Catch::Approx(1.0 / 6.0).margin(1e-12));
    CHECK(fit.residual <= 1e-12);
}
