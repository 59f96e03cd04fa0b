#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "susyscat/scatter_core.hpp"
#include "test_oracles.hpp"

using namespace susyscat;

namespace {

const ModelParams toy = ModelParams::make(3.0, 0.5, -0.1);

double rel(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST(V0, Values) {
    EXPECT_NEAR(v0(1.0, toy), oracle::v0_at_1, 1e-15);
    EXPECT_LT(v0(50.0, toy), 1e-100);
    // nu = 1 singularity: x^2 v0 -> nu (nu + 1) = 2
    EXPECT_NEAR(v0(1e-5, toy) * 1e-10, 2.0, 1e-8);
}

TEST(V0, PositiveAndDecreasing) {
    double prev = v0(1e-3, toy);
    for (double x = 2e-3; x < 10.0; x += 1e-2) {
        const double v = v0(x, toy);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, prev);
        prev = v;
    }
}

TEST(V0, DomainError) {
    EXPECT_THROW(v0(0.0, toy), DomainError);
    EXPECT_THROW(v0(-1.0, toy), DomainError);
}

TEST(Psi0, ClosedFormValue) {
    // k = a1 is regular once the normalization factor is dropped.
    EXPECT_NEAR(psi0(3.0, 1.0, toy), oracle::psi0_k3_x1, 1e-13);
}

TEST(Psi0, VanishesQuadraticallyAtOrigin) {
    for (double k : {0.3, 1.7, 4.0}) {
        const double lead = k * (k * k + 9.0) / 3.0;
        const double x = 1e-3;
        EXPECT_NEAR(psi0(k, x, toy) / (x * x), lead, 1e-4 * lead) << "k = " << k;
    }
}

TEST(Psi0, AsymptoticAmplitude) {
    const double k = 1.7;
    const double x = 20.0 / 3.0;
    EXPECT_NEAR(psi0(k, x, toy), 3.0 * std::sin(k * x) - k * std::cos(k * x), 1e-12);
}

TEST(Psi0, SolvesBackgroundEquation) {
    const double h = 1e-3;
    for (double k : {0.5, 1.7, 3.0}) {
        auto f = [&](double x) { return psi0(k, x, toy); };
        for (double x : {0.2, 0.7, 1.5, 4.0}) {
            const double residual = -oracle::fd2(f, x, h) + (v0(x, toy) - k * k) * f(x);
            EXPECT_LT(std::abs(residual), 1e-6) << "k = " << k << " x = " << x;
            EXPECT_NEAR(psi0_prime(k, x, toy), oracle::fd1(f, x, h), 1e-8);
        }
    }
}

TEST(JostU, ClosedFormValue) { EXPECT_LT(rel(jost_u(1.0, toy), oracle::u_at_1), 1e-14); }

TEST(JostU, Limits) {
    // u ~ 1/x at the origin
    EXPECT_LT(rel(jost_u(1e-6, toy) * 1e-6, cplx(1.0, 0.0)), 1e-5);
    // u e^{-ax} -> a1 - a at a1 x = 20
    const double x = 20.0 / 3.0;
    EXPECT_LT(rel(jost_u(x, toy) * std::exp(-toy.a() * x), 3.0 - toy.a()), 1e-12);
}

TEST(JostU, NonvanishingForRandomParams) {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> a1s(0.5, 5.0), bs(-3.0, 3.0), ds(-3.0, -1e-3);
    for (int trial = 0; trial < 40; ++trial) {
        double b = bs(rng);
        if (std::abs(b) < 1e-3) b = 0.1;
        const auto p = ModelParams::make(a1s(rng), b, ds(rng));
        const XGrid grid = XGrid::for_model(p, 2000);
        EXPECT_NO_THROW(check_jost_nonvanishing(grid, p));
        for (std::size_t i = 0; i < grid.size(); i += 7) {
            // |a1 coth(a1 x) - a| >= |b|
            EXPECT_GE(std::abs(jost_u(grid[i], p) * std::exp(-p.a() * grid[i])), std::abs(b) * (1 - 1e-12));
        }
    }
}

TEST(Superpotential, ClosedFormValue) { EXPECT_LT(rel(superpotential_w(1.0, toy), oracle::w_at_1), 1e-14); }

TEST(Superpotential, Limits) {
    EXPECT_LT(std::abs(superpotential_w(20.0, toy) - toy.a()), 1e-15);
    EXPECT_LT(std::abs(superpotential_w(500.0, toy) - toy.a()), 1e-15);
    EXPECT_LT(rel(superpotential_w(1e-6, toy) * 1e-6, cplx(-1.0, 0.0)), 1e-5);
}

TEST(Superpotential, IsLogDerivativeOfU) {
    auto log_u = [](double x) { return std::log(jost_u(x, toy)); };
    for (double x : {0.3, 0.7, 2.0}) {
        EXPECT_LT(std::abs(oracle::fd1(log_u, x, 1e-4) - superpotential_w(x, toy)), 1e-9);
    }
}

TEST(Superpotential, RiccatiAtOne) {
    auto w = [](double x) { return superpotential_w(x, toy); };
    const double x = 1.0;
    const cplx residual = oracle::fd1(w, x, 1e-4) + w(x) * w(x) - v0(x, toy) + toy.alpha();
    EXPECT_LT(std::abs(residual), 1e-6);
}

TEST(Superpotential, RiccatiPropertyRandomParams) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> a1s(0.5, 5.0), bs(0.05, 3.0), ds(-3.0, -1e-3), t(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = ModelParams::make(a1s(rng), bs(rng), ds(rng));
        auto w = [&](double x) { return superpotential_w(x, p); };
        for (int j = 0; j < 20; ++j) {
            const double x = 0.1 + t(rng) * (25.0 / p.a1() - 0.1);
            const double v = v0(x, p);
            const cplx residual = oracle::fd1(w, x, 1e-3) + w(x) * w(x) - v + p.alpha();
            EXPECT_LT(std::abs(residual), 1e-6 * (1.0 + v)) << "a1=" << p.a1() << " x=" << x;
        }
    }
}

TEST(PotentialV, Values) {
    const cplx at0 = potential_V(0.0, toy);
    EXPECT_NEAR(at0.real(), -18.48, 1e-12);
    EXPECT_NEAR(at0.imag(), -0.2, 1e-12);
    EXPECT_LT(rel(potential_V(1.0, toy), oracle::V_at_1), 1e-13);
    EXPECT_LT(std::abs(potential_V(25.0 / 3.0, toy)), 1e-12);
    EXPECT_THROW(potential_V(-1e-9, toy), DomainError);
}

TEST(PotentialV, EqualsV0MinusTwiceWPrime) {
    auto w = [](double x) { return superpotential_w(x, toy); };
    for (double x : {0.5, 1.0, 2.0}) {
        const cplx residual = potential_V(x, toy) - v0(x, toy) + 2.0 * oracle::fd1(w, x, 1e-4);
        EXPECT_LT(std::abs(residual), 1e-6) << "x = " << x;
    }
}

TEST(PhiAtAlpha, Limits) {
    EXPECT_LT(rel(phi_at_alpha(1e-6, toy) / 1e-6, cplx(1.0, 0.0)), 1e-5);
    // |phi| grows like e^{-d x} with amplitude 1/|a1 - a|
    const double x = 20.0 / 3.0;
    EXPECT_NEAR(std::abs(phi_at_alpha(x, toy)) * std::exp(toy.d() * x), 1.0 / std::abs(3.0 - toy.a()), 1e-12);
}

TEST(PhiAtAlpha, EigenResidual) {
    auto phi = [](double x) { return phi_at_alpha(x, toy); };
    const double h = 1e-3;
    double worst = 0.0, peak = 0.0;
    for (double x = 0.01; x < 25.0 / 3.0; x += 0.01) {
        const cplx r = -oracle::fd2(phi, x, h) + (potential_V(x, toy) - toy.alpha()) * phi(x);
        worst = std::max(worst, std::abs(r));
        peak = std::max(peak, std::abs(phi(x)));
    }
    EXPECT_LT(worst / peak, 1e-5);
    EXPECT_LT(std::abs(phi_at_alpha_prime(1.3, toy) - oracle::fd1(phi, 1.3, 1e-4)), 1e-9);
}

TEST(DarbouxMap, SolvesPartnerEquation) {
    const XGrid grid = XGrid::for_model(toy, 8334);
    const double h = grid.spacing();
    for (double k : {0.25, 0.5, 1.0, 2.0, 3.0}) {
        const WaveSolution phi = darboux_map(sample_psi0(k, grid, toy), toy);
        EXPECT_EQ(phi.potential_tag, PotentialTag::V_complex);
        double worst = 0.0, peak = 0.0;
        for (std::size_t i = 2; i + 2 < grid.size(); ++i) {
            const cplx d2 = (-phi.values[i - 2] + 16.0 * phi.values[i - 1] - 30.0 * phi.values[i] +
                             16.0 * phi.values[i + 1] - phi.values[i + 2]) /
                            (12.0 * h * h);
            worst = std::max(worst, std::abs(-d2 + (potential_V(grid[i], toy) - k * k) * phi.values[i]));
            peak = std::max(peak, std::abs(phi.values[i]));
        }
        EXPECT_LT(worst / peak, 1e-5) << "k = " << k;
        // Vanishes linearly at the origin: L psi ~ -3 k (k^2 + a1^2) x / 3.
        const double lead = k * (k * k + 9.0) / 3.0;
        EXPECT_LT(std::abs(phi.values.front() / grid[0] + 3.0 * lead), 1e-3 * 3.0 * lead) << "k = " << k;
    }
}

TEST(DarbouxMap, DerivativeMatchesFiniteDifference) {
    const XGrid grid(0.5, 3.0, 2501);
    const WaveSolution phi = darboux_map(sample_psi0(1.3, grid, toy), toy);
    const double h = grid.spacing();
    for (std::size_t i = 100; i < 2400; i += 300) {
        const cplx fd = (phi.values[i - 2] - 8.0 * phi.values[i - 1] + 8.0 * phi.values[i + 1] - phi.values[i + 2]) /
                        (12.0 * h);
        EXPECT_LT(std::abs(fd - phi.derivatives[i]), 1e-8);
    }
}

TEST(DarbouxMap, AsymptoticallyActsAsLa) {
    const double k = 0.8;
    const double x = 25.0 / 3.0;
    const XGrid grid(x - 0.01, x, 11);
    const WaveSolution phi = darboux_map(sample_psi0(k, grid, toy), toy);
    const cplx la_psi = -psi0_prime(k, x, toy) + toy.a() * psi0(k, x, toy);
    EXPECT_LT(rel(phi.values.back(), la_psi), 1e-12);

    // The e^{ikx} amplitude is multiplied by (d + ib - ik), e^{-ikx} by (d + ib + ik).
    auto amplitudes = [k, x](cplx f, cplx df) {
        const cplx ik(0.0, k);
        return std::pair{(df + ik * f) / (2.0 * ik) * std::exp(-ik * x), (ik * f - df) / (2.0 * ik) * std::exp(ik * x)};
    };
    const auto [A0, B0] = amplitudes(psi0(k, x, toy), psi0_prime(k, x, toy));
    const auto [AH, BH] = amplitudes(phi.values.back(), phi.derivatives.back());
    EXPECT_LT(rel(AH / A0, toy.a() - cplx(0.0, k)), 1e-10);
    EXPECT_LT(rel(BH / B0, toy.a() + cplx(0.0, k)), 1e-10);
}

TEST(DarbouxMap, Preconditions) {
    const XGrid grid = XGrid::for_model(toy, 4000);
    WaveSolution psi = sample_psi0(1.0, grid, toy);
    psi.potential_tag = PotentialTag::V_complex;
    EXPECT_THROW(darboux_map(psi, toy), PreconditionError);

    WaveSolution wrong_k = sample_psi0(1.0, grid, toy);
    wrong_k.k = 1.3;
    EXPECT_THROW(darboux_map(wrong_k, toy), PreconditionError);
}
