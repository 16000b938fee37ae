#include "helpers.hpp"
#include "loqc/qudit.hpp"

using namespace loqc;

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("logical states put one photon in the right mode") {
    CHECK(logical_state(2, 0).amplitude({1, 0}) == cplx{1.0});
    CHECK(logical_state(3, 2).amplitude({0, 0, 1}) == cplx{1.0});
    CHECK(std::abs(logical_state(5, 3).norm() - 1.0) < 1e-15);
    CHECK_THROWS_AS(logical_state(3, 3), std::out_of_range);
}

TEST_CASE("Bell state d=2 labels") {
    auto phi = bell_state(2, 0, 0);
    CHECK(std::abs(phi.amplitude({1, 0, 1, 0}) - cplx{inv_sqrt2}) < 1e-12);
    CHECK(std::abs(phi.amplitude({0, 1, 0, 1}) - cplx{inv_sqrt2}) < 1e-12);

    auto singlet = bell_state(2, 1, 1);
    CHECK(std::abs(singlet.amplitude({1, 0, 0, 1}) - cplx{inv_sqrt2}) < 1e-12);
    CHECK(std::abs(singlet.amplitude({0, 1, 1, 0}) + cplx{inv_sqrt2}) < 1e-12);
}

TEST_CASE("Bell states are orthonormal for d = 2, 3, 4") {
    for (int d : {2, 3, 4}) {
        std::vector<SparseState> states;
        for (int m = 0; m < d; ++m)
            for (int n = 0; n < d; ++n) states.push_back(bell_state(d, m, n));
        for (size_t i = 0; i < states.size(); ++i)
            for (size_t j = 0; j < states.size(); ++j) {
                cplx want = i == j ? cplx{1.0} : cplx{};
                CHECK(std::abs(inner_product(states[i], states[j]) - want) < 1e-10);
            }
    }
}

TEST_CASE("generalized Bell states reduce to Bell states at N=2") {
    for (int d : {2, 3})
        for (int k1 = 0; k1 < d; ++k1)
            for (int k2 = 0; k2 < d; ++k2)
                CHECK(generalized_bell(d, {k1, k2}).max_amplitude_diff(bell_state(d, k2, k1)) <
                      1e-12);
}

TEST_CASE("three-party all-zero label is the GHZ-type state") {
    auto ghz = generalized_bell(2, {0, 0, 0});
    CHECK(std::abs(ghz.amplitude({1, 0, 1, 0, 1, 0}) - cplx{inv_sqrt2}) < 1e-12);
    CHECK(std::abs(ghz.amplitude({0, 1, 0, 1, 0, 1}) - cplx{inv_sqrt2}) < 1e-12);
    CHECK(ghz.term_count() == 2);
}

TEST_CASE("generalized Bell states are orthonormal for d=2, N=3") {
    std::vector<SparseState> states;
    for (int k1 = 0; k1 < 2; ++k1)
        for (int k2 = 0; k2 < 2; ++k2)
            for (int k3 = 0; k3 < 2; ++k3) states.push_back(generalized_bell(2, {k1, k2, k3}));
    for (size_t i = 0; i < states.size(); ++i)
        for (size_t j = 0; j < states.size(); ++j) {
            cplx want = i == j ? cplx{1.0} : cplx{};
            CHECK(std::abs(inner_product(states[i], states[j]) - want) < 1e-10);
        }
}

TEST_CASE("generalized Hadamard") {
    auto h2 = hadamard_d(2);
    auto plus = apply_hadamard(logical_state(2, 0), QuditRegister(2, 0));
    CHECK(std::abs(plus.amplitude({1, 0}) - cplx{inv_sqrt2}) < 1e-12);
    CHECK(std::abs(plus.amplitude({0, 1}) - cplx{inv_sqrt2}) < 1e-12);

    auto h3 = hadamard_d(3);
    for (int k = 0; k < 3; ++k)
        for (int x = 0; x < 3; ++x)
            CHECK(std::abs(h3(k, x)) == Catch::Approx(1.0 / std::sqrt(3.0)));

    for (int d : {2, 3, 4, 5}) {
        CHECK(hadamard_d(d).unitarity_deviation() < 1e-12);
        // Inverse-DFT form: H F = 1.
        CHECK((hadamard_d(d) * dft_matrix(d)).max_abs_diff(Matrix::identity(d)) < 1e-12);
    }
}

TEST_CASE("register decode recognizes valid encodings only") {
    QuditRegister reg(3, 2);  // modes 2, 3, 4
    CHECK(reg.decode({0, 0, 0, 1, 0}) == 1);
    CHECK(reg.decode({1, 0, 0, 1, 0}) == 1);  // photons outside the register ignored
    CHECK(reg.decode({0, 0, 1, 1, 0}) == -1);
    CHECK(reg.decode({0, 0, 0, 0, 2}) == -1);
    CHECK(reg.decode({0, 0, 0, 0, 0}) == -1);
}
