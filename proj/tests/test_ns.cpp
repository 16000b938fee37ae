#include "helpers.hpp"
#include "loqc/ns.hpp"
#include "loqc/permanent.hpp"

using namespace loqc;

namespace {

// Independent check of the heralded amplitudes through the permanent.
cplx heralded_amplitude(int photons_in, int photons_out) {
    ModeUnitary u(ns_unitary(), {0, 1, 2});
    return transition_amplitude(u, {photons_in, 1, 0}, {photons_out, 1, 0});
}

SparseState ns_ideal(const SparseState& s, int mode) {
    SparseState out(s.mode_count());
    for (const auto& [occ, amp] : s.terms()) out.add(occ, occ[mode] == 2 ? -amp : amp);
    return out;
}

}  // namespace

TEST_CASE("NS unitary is unitary with the known corner entry") {
    auto u = ns_unitary();
    CHECK(u.unitarity_deviation() < 1e-12);
    CHECK(u(0, 0).real() == Catch::Approx(1.0 - std::sqrt(2.0)));
    CHECK(u(0, 0).imag() == 0.0);
}

TEST_CASE("NS heralded amplitudes are 1/2, 1/2, -1/2") {
    CHECK(std::abs(heralded_amplitude(0, 0) - cplx{0.5}) < 1e-12);
    CHECK(std::abs(heralded_amplitude(1, 1) - cplx{0.5}) < 1e-12);
    CHECK(std::abs(heralded_amplitude(2, 2) + cplx{0.5}) < 1e-12);
    // No heralded leakage between photon numbers.
    CHECK(std::abs(heralded_amplitude(0, 2)) < 1e-12);
    CHECK(std::abs(heralded_amplitude(2, 0)) < 1e-12);
}

TEST_CASE("apply_ns flips the sign of the two-photon component") {
    SparseState s(1);
    double r = 1.0 / std::sqrt(3.0);
    s.add({0}, r);
    s.add({1}, r);
    s.add({2}, r);
    auto result = apply_ns(s, 0);
    CHECK(result.success_probability() == Catch::Approx(0.25).margin(1e-9));
    CHECK(std::abs(result.total_probability() - 1.0) < 1e-9);
    const auto& out = result.success_state();
    CHECK(std::abs(out.amplitude({0}) - cplx{r}) < 1e-9);
    CHECK(std::abs(out.amplitude({1}) - cplx{r}) < 1e-9);
    CHECK(std::abs(out.amplitude({2}) + cplx{r}) < 1e-9);
}

TEST_CASE("vacuum passes the NS gate unchanged") {
    auto result = apply_ns(SparseState::basis({0}), 0);
    CHECK(result.success_probability() == Catch::Approx(0.25).margin(1e-9));
    CHECK(std::abs(result.success_state().amplitude({0}) - cplx{1.0}) < 1e-9);
}

TEST_CASE("single photon passes without a sign flip") {
    auto result = apply_ns(SparseState::basis({1}), 0);
    CHECK(std::abs(result.success_state().amplitude({1}) - cplx{1.0}) < 1e-9);
}

TEST_CASE("NS success probability is input-independent at 1/4") {
    auto rng = testing::make_rng(59);
    for (int rep = 0; rep < 20; ++rep) {
        // Random signal in span{|0>,|1>,|2>} on one mode.
        std::normal_distribution<double> gauss(0.0, 1.0);
        SparseState s(1);
        for (int q = 0; q <= 2; ++q) s.add({q}, cplx(gauss(rng), gauss(rng)));
        s.normalize();
        auto result = apply_ns(s, 0);
        CHECK(std::abs(result.success_probability() - 0.25) < 1e-9);
        auto ideal = ns_ideal(s, 0);
        CHECK(std::abs(std::abs(inner_product(ideal, result.success_state())) - 1.0) < 1e-9);
        CHECK(result.success_state().max_amplitude_diff(ideal) < 1e-9);
    }
}

TEST_CASE("NS acts on the signal mode inside a wider state") {
    SparseState s(3);
    double r = 1.0 / std::sqrt(2.0);
    s.add({0, 2, 1}, r);
    s.add({1, 0, 1}, r);
    auto result = apply_ns(s, 1);
    const auto& out = result.success_state();
    CHECK(std::abs(out.amplitude({0, 2, 1}) + cplx{r}) < 1e-9);
    CHECK(std::abs(out.amplitude({1, 0, 1}) - cplx{r}) < 1e-9);
    CHECK_THROWS_AS(apply_ns(s, 3), std::invalid_argument);
}
