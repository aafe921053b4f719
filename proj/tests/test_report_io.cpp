#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "effidx/report_io.hpp"
#include "published_measures.hpp"

using namespace effidx;

namespace {

std::vector<EfficiencyReport> random_reports(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> h(0.0, 0.999), d(1.0, 2.0), ae(0.0, 1.2);
    std::vector<EfficiencyReport> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string group = (i % 3 == 0) ? "Group, with comma" : "G\"" + std::to_string(i % 2);
        out.push_back(efficiency_index("S" + std::to_string(i), group, {h(gen), h(gen), d(gen), d(gen), ae(gen)}));
    }
    return rank(std::move(out));
}

}  // namespace

TEST(ReportCsv, HeaderColumns) {
    EXPECT_EQ(report_io::header_line(),
              "symbol,group,h_lw,h_gph,h_avg,d_hw,d_g,d_avg,apen,ei,rank,contrib_h,contrib_d,contrib_ae");
}

TEST(ReportCsv, RoundTripWithinPrintedPrecision) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto reports = random_reports(seed, 1 + seed * 3);
        std::stringstream ss;
        report_io::write_csv(ss, reports);
        const auto back = report_io::read_csv(ss);
        ASSERT_EQ(back.size(), reports.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            const auto& a = reports[i];
            const auto& b = back[i];
            EXPECT_EQ(a.symbol, b.symbol);
            EXPECT_EQ(a.group, b.group);
            EXPECT_EQ(a.rank, b.rank);
            EXPECT_NEAR(a.ei, b.ei, 5e-7);
            EXPECT_NEAR(a.measures.h_lw, b.measures.h_lw, 5e-7);
            EXPECT_NEAR(a.measures.h_gph, b.measures.h_gph, 5e-7);
            EXPECT_NEAR(a.measures.d_hw, b.measures.d_hw, 5e-7);
            EXPECT_NEAR(a.measures.d_g, b.measures.d_g, 5e-7);
            EXPECT_NEAR(a.measures.apen_rescaled, b.measures.apen_rescaled, 5e-7);
            EXPECT_NEAR(a.contributions.ae, b.contributions.ae, 5e-7);
        }
        // A second pass is byte-stable.
        std::stringstream again, twice;
        report_io::write_csv(again, back);
        report_io::write_csv(twice, report_io::read_csv(again));
        EXPECT_EQ(again.str(), twice.str());
    }
}

TEST(ReportCsv, ToleratesCrlfAndBlankLines) {
    const auto reports = effidx::testing::published_reports();
    std::stringstream ss;
    report_io::write_csv(ss, reports);
    std::string text;
    for (char c : ss.str()) {
        if (c == '\n') text += "\r\n";
        else text.push_back(c);
    }
    text += "\r\n";
    std::istringstream in(text);
    EXPECT_EQ(report_io::read_csv(in).size(), 25u);
}

TEST(ReportCsv, MalformedInput) {
    const auto expect_parse = [](const std::string& text) {
        std::istringstream in(text);
        try {
            report_io::read_csv(in);
            FAIL() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::Parse);
        }
    };
    expect_parse("");
    expect_parse("symbol,group,ei\n");
    expect_parse("symbol,group,h_lw,h_gph,h_avg,d_hw,d_g,d_avg,apen,ei,rank,contrib_h,contrib_d,contrib_x\n");
    const std::string header = report_io::header_line() + "\n";
    expect_parse(header + "A,G,0.5,0.5,0.5,1.5,1.5,1.5,1.0,0.0,1,0,0\n");
    expect_parse(header + "A,G,0.5,x,0.5,1.5,1.5,1.5,1.0,0.0,1,0,0,0\n");
    expect_parse(header + "A,G,0.5,0.5,0.5,1.5,1.5,1.5,1.0,0.0,-1,0,0,0\n");
    expect_parse(header + "A,\"G,0.5,0.5,0.5,1.5,1.5,1.5,1.0,0.0,1,0,0,0\n");
}

TEST(ReportJson, MatchesCsvFields) {
    const auto reports = rank(effidx::testing::published_reports());
    const auto arr = report_io::to_json(reports);
    ASSERT_EQ(arr.size(), reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& j = arr[i];
        EXPECT_EQ(j["symbol"], reports[i].symbol);
        EXPECT_EQ(j["rank"], reports[i].rank);
        EXPECT_DOUBLE_EQ(j["ei"].get<double>(), reports[i].ei);
        EXPECT_DOUBLE_EQ(j["h_avg"].get<double>(), reports[i].measures.h_avg());
        const double shares = j["share_h"].get<double>() + j["share_d"].get<double>() + j["share_ae"].get<double>();
        EXPECT_NEAR(shares, 1.0, 1e-12);
        const auto back = report_io::from_json(j);
        EXPECT_EQ(back.symbol, reports[i].symbol);
        EXPECT_EQ(back.group, reports[i].group);
        EXPECT_DOUBLE_EQ(back.ei, reports[i].ei);
        EXPECT_DOUBLE_EQ(back.measures.d_g, reports[i].measures.d_g);
    }
    // Keys appear in CSV column order, followed by the shares.
    std::size_t k = 0;
    for (const auto& [key, value] : arr[0].items()) {
        if (k < report_io::kColumns.size()) {
            EXPECT_EQ(key, report_io::kColumns[k]);
        }
        ++k;
    }
    EXPECT_EQ(k, report_io::kColumns.size() + 3);
}

TEST(ReportJson, MissingFieldIsParseError) {
    auto j = report_io::to_json(effidx::testing::published_reports().front());
    j.erase("ei");
    try {
        report_io::from_json(j);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
    }
}

TEST(ReportFiles, MissingFileIsIoError) {
    try {
        report_io::load_csv("/nonexistent/report.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
    }
}
