#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "vbmps/mps.hpp"
#include "vbmps/valence_bond.hpp"

using namespace vbmps;

namespace {
double phase_distance(const CVector& a, const CVector& b) {
    CVector ah = a / a.norm(), bh = b / b.norm();
    Complex ov = bh.dot(ah);
    return (ah - (ov / std::abs(ov)) * bh).norm();
}
} // namespace

TEST_CASE("SiteTensor physical indexing is m-descending") {
    SiteTensor t = SiteTensor::from_family(canonical_tensor(HalfInt::from_int(1)));
    CHECK((t.matrix_by_index(0) - t.matrix(HalfInt::from_int(1))).norm() == 0.0);
    CHECK((t.matrix_by_index(2) - t.matrix(HalfInt::from_int(-1))).norm() == 0.0);
    CHECK_THROWS_AS(t.matrix(HalfInt::from_twice(1)), std::out_of_range);
    CHECK(t.physical_dimension() == 3);
    CHECK(t.aux_dimension() == 4);
}

TEST_CASE("chain validation catches period and dimension mismatches") {
    SiteTensor a = SiteTensor::from_family(canonical_tensor(HalfInt::from_twice(1)));
    SiteTensor b = SiteTensor::from_family(canonical_tensor(HalfInt::from_int(1)));
    MpsChain bad_period{5, {a, a}};
    CHECK_THROWS_AS(bad_period.validate(), std::invalid_argument);
    MpsChain bad_aux{4, {a, b}}; // aux 3 vs aux 4
    CHECK_THROWS_AS(bad_aux.validate(), std::invalid_argument);
    MpsChain good{4, {a, a}};
    CHECK_NOTHROW(good.validate());
}

TEST_CASE("amplitude agrees with the dense expansion entry by entry") {
    MpsChain chain = uniform_chain(canonical_tensor(HalfInt::from_twice(1)), 4);
    CVector psi = expand_state(chain);
    REQUIRE(psi.size() == 16);

    std::vector<long long> dims(4, 2);
    HalfInt up = HalfInt::from_twice(1), dn = HalfInt::from_twice(-1);
    for (long long flat = 0; flat < 16; ++flat) {
        auto idx = unflatten_index(flat, dims);
        std::vector<HalfInt> config;
        for (long long i : idx) config.push_back(i == 0 ? up : dn);
        CHECK(std::abs(amplitude(chain, config) - psi(flat)) <= 1e-13);
    }
    CHECK_THROWS_AS(amplitude(chain, {up, dn}), std::invalid_argument);
}

TEST_CASE("expanded chain equals the two-covering superposition on 4 sites") {
    HalfInt half = HalfInt::from_twice(1);
    CVector psi = expand_state(uniform_chain(canonical_tensor(half), 4));
    CVector mg = mg_state(half, 2, +1);
    CHECK(phase_distance(psi, mg) <= 1e-12);
}

TEST_CASE("transfer normalization equals the brute-force norm") {
    for (long long n : {3LL, 4LL, 6LL}) {
        MpsChain chain = uniform_chain(canonical_tensor(HalfInt::from_twice(1)), n);
        CHECK(transfer_normalization(chain) ==
              Catch::Approx(expand_state(chain).squaredNorm()).margin(1e-10));
    }
    // Exact value on the 6-site spin-1/2 ring.
    MpsChain chain6 = uniform_chain(canonical_tensor(HalfInt::from_twice(1)), 6);
    CHECK(transfer_normalization(chain6) == Catch::Approx(12.0).margin(1e-10));
}

TEST_CASE("partial-trace and transfer-matrix density matrices agree") {
    MpsChain chain = uniform_chain(canonical_tensor(HalfInt::from_twice(1)), 6);
    for (long long start : {0LL, 5LL}) { // the second window wraps the ring
        CMatrix rho = reduced_density_matrix(chain, start, 2);
        CMatrix rho_t = reduced_density_matrix_transfer(chain, start, 2);
        REQUIRE(rho.rows() == 4);
        CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-12);
        CHECK(std::abs(rho.trace().imag()) <= 1e-12);
        CHECK((rho - rho.adjoint()).norm() <= 1e-12);
        CHECK((rho - rho_t).norm() <= 1e-10);
        HermitianEig eig = eig_hermitian(rho);
        CHECK(eig.eigenvalues(0) >= -1e-12);
    }
    CHECK_THROWS_AS(reduced_density_matrix(chain, 0, 7), std::invalid_argument);
    CHECK_THROWS_AS(reduced_density_matrix_transfer(chain, 0, 6), std::invalid_argument);
}

TEST_CASE("window expectation reproduces the dimerized pair correlation") {
    HalfInt half = HalfInt::from_twice(1);
    MpsChain chain = uniform_chain(canonical_tensor(half), 6);
    SiteSystem pair = uniform_sites(half, 2);
    CMatrix op = spin_dot_spin(pair, 0, 1);
    // The chain state is the plus-superposition of the coverings.
    CHECK(window_expectation(chain, op, 0, 2) == Catch::Approx(-0.25).margin(1e-10));

    CMatrix skew(4, 4);
    skew.setZero();
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(window_expectation(chain, skew, 0, 2), std::invalid_argument);
}

TEST_CASE("AKLT chain: neighbouring spin-2 weight vanishes") {
    MpsChain chain = uniform_chain(aklt_rank1_tensor(), 6);
    SiteSystem pair = uniform_sites(HalfInt::from_int(1), 2);
    CMatrix p2 = casimir_projector(pair, HalfInt::from_int(2));
    CHECK(window_expectation(chain, p2, 0, 2) == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("gauge transformations preserve the physical state") {
    MpsChain chain = uniform_chain(canonical_tensor(HalfInt::from_twice(1)), 6);
    CVector reference = expand_state(chain);
    std::mt19937_64 rng(99);
    CMatrix u = random_unitary(chain.aux_dimension(), rng);
    MpsChain transformed = gauge_transform(chain, u, Complex(0.8, 0.3));
    CHECK(phase_distance(reference, expand_state(transformed)) <= 1e-10);

    CHECK_THROWS_AS(gauge_transform(chain, CMatrix::Identity(2, 2), Complex(1, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(gauge_transform(chain, u, Complex(0, 0)), std::invalid_argument);
}

TEST_CASE("expansion respects the dimension cap") {
    MpsChain chain = uniform_chain(canonical_tensor(HalfInt::from_twice(1)), 40);
    CHECK_THROWS_AS(expand_state(chain), DimensionCapExceeded);
}
