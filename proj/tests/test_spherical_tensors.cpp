#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <utility>
#include <vector>

#include "vbmps/spherical_tensors.hpp"

using namespace vbmps;

TEST_CASE("canonical spin-1/2 tensor has the defining matrix elements") {
    HalfInt half = HalfInt::from_twice(1);
    SphericalTensorFamily fam = canonical_tensor(half);
    CHECK(fam.physical_dimension() == 2);
    CHECK(fam.aux_dimension() == 3);

    // Basis order: |1/2,+1/2>, |1/2,-1/2>, |0~>.
    const CMatrix& up = fam.component(HalfInt::from_twice(1));
    const CMatrix& down = fam.component(HalfInt::from_twice(-1));
    CHECK(up(0, 2) == Complex(1, 0));
    CHECK(up(2, 1) == Complex(1, 0)); // (-1)^(s-m) = (-1)^0
    CHECK(up.cwiseAbs().sum() == Catch::Approx(2.0));
    CHECK(down(1, 2) == Complex(1, 0));
    CHECK(down(2, 0) == Complex(-1, 0)); // (-1)^(s-m) = (-1)^1
    CHECK(down.cwiseAbs().sum() == Catch::Approx(2.0));

    CHECK_THROWS_AS(fam.component(HalfInt::from_twice(3)), std::out_of_range);
    CHECK_THROWS_AS(canonical_tensor(HalfInt::from_int(0)), std::invalid_argument);
}

TEST_CASE("components_descending starts at m = +s") {
    SphericalTensorFamily fam = canonical_tensor(HalfInt::from_int(1));
    auto comps = fam.components_descending();
    REQUIRE(comps.size() == 3);
    CHECK((comps[0] - fam.component(HalfInt::from_int(1))).norm() == 0.0);
    CHECK((comps[2] - fam.component(HalfInt::from_int(-1))).norm() == 0.0);
}

TEST_CASE("canonical tensors satisfy the spherical relations exactly") {
    for (long long twice = 1; twice <= 6; ++twice) {
        HalfInt s = HalfInt::from_twice(twice);
        SphericalTensorFamily fam = canonical_tensor(s);
        SphericalCheckReport rep = verify_spherical(fam, direct_sum_generators(fam.aux), 1e-12);
        INFO("rank " << s.str());
        CHECK(rep.pass);
    }
}

TEST_CASE("verify_spherical rejects dimension mismatches and catches violations") {
    SphericalTensorFamily fam = canonical_tensor(HalfInt::from_twice(1));
    CHECK_THROWS_AS(verify_spherical(fam, irrep_generators(HalfInt::from_twice(1)), 1e-9),
                    std::invalid_argument);
    // Breaking one component must show up as a deviation of the same size.
    SphericalTensorFamily broken = fam;
    broken.components.at(HalfInt::from_twice(1))(0, 2) += 0.5;
    SphericalCheckReport rep =
        verify_spherical(broken, direct_sum_generators(broken.aux), 1e-9);
    CHECK(!rep.pass);
    CHECK(rep.max_deviation >= 0.49);
}

TEST_CASE("rank-1 AKLT family: explicit matrices and transfer spectrum") {
    SphericalTensorFamily fam = aklt_rank1_tensor();
    CHECK(fam.aux_dimension() == 2);
    SphericalCheckReport rep = verify_spherical(fam, direct_sum_generators(fam.aux), 1e-12);
    CHECK(rep.pass);

    const CMatrix& a1 = fam.component(HalfInt::from_int(1));
    CHECK(a1(0, 1) == Complex(-std::sqrt(2.0), 0));
    const CMatrix& a0 = fam.component(HalfInt::from_int(0));
    CHECK(a0(0, 0) == Complex(1, 0));
    CHECK(a0(1, 1) == Complex(-1, 0));

    // E = sum_m A_m* (x) A_m has eigenvalues {3, -1, -1, -1}.
    CMatrix e = CMatrix::Zero(4, 4);
    for (const auto& [m, a] : fam.components) e += kron(a.conjugate(), a);
    Eigen::ComplexEigenSolver<CMatrix> eig(e);
    std::vector<double> real_parts;
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(eig.eigenvalues()(i).imag()) <= 1e-12);
        real_parts.push_back(eig.eigenvalues()(i).real());
    }
    std::sort(real_parts.begin(), real_parts.end());
    CHECK(real_parts[0] == Catch::Approx(-1.0));
    CHECK(real_parts[1] == Catch::Approx(-1.0));
    CHECK(real_parts[2] == Catch::Approx(-1.0));
    CHECK(real_parts[3] == Catch::Approx(3.0));
}

TEST_CASE("V tensor for (1, 1/2): rank, top component, and lowered entries") {
    HalfInt one = HalfInt::from_int(1), half = HalfInt::from_twice(1);
    SphericalTensorFamily fam = vbs_tensor(one, half);
    CHECK(fam.rank == HalfInt::from_twice(3));
    CHECK(fam.physical_dimension() == 4);
    CHECK(fam.aux_dimension() == 5);

    // Basis order: |1,1>, |1,0>, |1,-1>, |1/2,1/2>, |1/2,-1/2>.
    const CMatrix& top = fam.component(HalfInt::from_twice(3));
    CHECK(top(0, 4) == Complex(1, 0)); // |1,1><1/2,-1/2|
    CHECK(top(3, 2) == Complex(1, 0)); // |1/2,1/2><1,-1|
    CHECK(top.cwiseAbs().sum() == Catch::Approx(2.0));

    // One lowering step: sqrt(3) V_{1/2} has entries -1, sqrt(2), -sqrt(2), 1.
    CMatrix v = std::sqrt(3.0) * fam.component(HalfInt::from_twice(1));
    CHECK(v(0, 3).real() == Catch::Approx(-1.0).margin(1e-12));
    CHECK(v(1, 4).real() == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    CHECK(v(3, 1).real() == Catch::Approx(-std::sqrt(2.0)).margin(1e-12));
    CHECK(v(4, 2).real() == Catch::Approx(1.0).margin(1e-12));
    CHECK(v.cwiseAbs().sum() == Catch::Approx(2.0 + 2.0 * std::sqrt(2.0)).margin(1e-12));

    SphericalCheckReport rep = verify_spherical(fam, direct_sum_generators(fam.aux), 1e-12);
    CHECK(rep.pass);
}

TEST_CASE("V tensors satisfy the spherical relations for larger pairs") {
    std::vector<std::pair<long long, long long>> pairs{{3, 2}, {2, 2}, {4, 1}};
    for (auto [t1, t2] : pairs) {
        SphericalTensorFamily fam =
            vbs_tensor(HalfInt::from_twice(t1), HalfInt::from_twice(t2));
        SphericalCheckReport rep = verify_spherical(fam, direct_sum_generators(fam.aux), 1e-10);
        INFO("pair twice = (" << t1 << ", " << t2 << ")");
        CHECK(rep.pass);
    }
}

TEST_CASE("fusion spectrum of (1, 1/2): channel 3 absent, others single") {
    FusionSpectrum spec = fusion_spectrum(vbs_tensor(HalfInt::from_int(1), HalfInt::from_twice(1)));
    REQUIRE(spec.channels.size() == 4);
    CHECK(spec.channels.at(0) == 1);
    CHECK(spec.channels.at(1) == 1);
    CHECK(spec.channels.at(2) == 1);
    CHECK(spec.channels.at(3) == 0);
    CHECK(spec.present(1));
    CHECK(!spec.present(3));
    CHECK(!spec.present(17)); // unknown channels are absent, not errors
}

TEST_CASE("fusion spectrum of (3/2, 1): channels 4 and 5 absent") {
    FusionSpectrum spec = fusion_spectrum(vbs_tensor(HalfInt::from_twice(3), HalfInt::from_int(1)));
    CHECK(spec.present(0));
    CHECK(spec.present(3));
    CHECK(!spec.present(4));
    CHECK(!spec.present(5));
}
