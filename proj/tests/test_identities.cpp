#include <gtest/gtest.h>

#include <tuple>

#include "susyscat/identities.hpp"

using namespace susyscat;

namespace {

const ModelParams toy = ModelParams::make(3.0, 0.5, -0.1);

IntegratorSpec toy_spec() { return IntegratorSpec::for_potential(partner_potential(toy), toy); }

}  // namespace

TEST(Identities, HoldForToyModel) {
    const VerificationReport report = verify_identities(toy, toy_spec());
    for (const auto& item : report.items) {
        EXPECT_TRUE(item.passed) << item.name << ": " << item.residual << " >= " << item.tolerance;
    }
    for (const char* name : {"riccati", "potential_identity", "factorization_h0", "factorization_H", "intertwining",
                             "jost_nonvanishing", "eigen_alpha"}) {
        EXPECT_NE(report.find(name), nullptr) << name;
    }
    EXPECT_EQ(report.items.size(), 7 + darboux_check_momenta().size());
    EXPECT_TRUE(report.all_passed());
}

TEST(Identities, HoldAcrossParameters) {
    for (auto [a1, b, d] : {std::tuple{1.0, 0.3, -0.5}, std::tuple{2.0, -1.2, -0.05}, std::tuple{4.0, 2.0, -2.0}}) {
        const auto p = ModelParams::make(a1, b, d);
        const VerificationReport report =
            verify_identities(p, IntegratorSpec::for_potential(partner_potential(p), p));
        for (const auto& item : report.items) {
            EXPECT_TRUE(item.passed) << "a1=" << a1 << " " << item.name << ": " << item.residual;
        }
    }
}

TEST(Identities, DetectWrongPartner) {
    const VerificationReport report =
        verify_identities(toy, toy_spec(), [](double x) { return potential_V(x, toy) + 0.01; });
    EXPECT_FALSE(report.all_passed());
    ASSERT_NE(report.find("intertwining"), nullptr);
    EXPECT_FALSE(report.find("intertwining")->passed);
    EXPECT_FALSE(report.find("potential_identity")->passed);
    // Identities that never touch V stay green.
    EXPECT_TRUE(report.find("riccati")->passed);
    EXPECT_TRUE(report.find("factorization_h0")->passed);
}

TEST(Identities, ReportJson) {
    VerificationReport report;
    report.add("good", 1e-9, 1e-6);
    report.add("bad", 1e-3, 1e-6);
    const nlohmann::json j = to_json(report);
    EXPECT_FALSE(j.at("passed").get<bool>());
    ASSERT_EQ(j.at("items").size(), 2u);
    EXPECT_EQ(j.at("items")[0].at("name"), "good");
    EXPECT_TRUE(j.at("items")[0].at("passed").get<bool>());
    EXPECT_DOUBLE_EQ(j.at("items")[1].at("residual").get<double>(), 1e-3);
    EXPECT_DOUBLE_EQ(j.at("items")[1].at("tolerance").get<double>(), 1e-6);
    EXPECT_FALSE(j.at("items")[1].at("passed").get<bool>());
}

TEST(Identities, SMatricesVerify) {
    const VerificationReport report = verify_smatrices(toy, log_spaced(0.05, 10.0, 20));
    for (const char* name :
         {"smatrix_background", "smatrix_partner", "flux_background", "absorption_partner", "step_halving"}) {
        const ReportItem* item = report.find(name);
        ASSERT_NE(item, nullptr) << name;
        EXPECT_TRUE(item->passed) << name << ": " << item->residual;
    }
}

TEST(Identities, FiniteDifferenceHelpers) {
    const double h = 1e-2;
    fd::Samples f;
    for (int i = 0; i < 200; ++i) f.push_back(std::sin(h * i));
    const fd::Samples d1 = fd::first(f, h);
    const fd::Samples d2 = fd::second(f, h);
    for (std::size_t i = 2; i + 2 < f.size(); ++i) {
        EXPECT_NEAR(d1[i].real(), std::cos(h * static_cast<double>(i)), 1e-8);
        EXPECT_NEAR(d2[i].real(), -std::sin(h * static_cast<double>(i)), 1e-6);
    }
}
