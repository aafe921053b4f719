#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "effidx/ingest.hpp"
#include "effidx/synthgen.hpp"

using namespace effidx;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected effidx::Error";
    return ErrorKind::Io;
}

std::string csv_of(const std::vector<double>& prices) {
    const auto dates = synth::business_days(prices.size());
    std::ostringstream out;
    write_series(out, dates, prices);
    return out.str();
}

}  // namespace

TEST(Ingest, MinimalFileParsesButIsTooShort) {
    std::istringstream in("date,price\n2000-01-03,100.0\n2000-01-04,101.0\n");
    const auto s = parse_series(in, "X");
    EXPECT_EQ(s.size(), 2u);
    EXPECT_DOUBLE_EQ(s.prices[1], 101.0);

    std::istringstream again("date,price\n2000-01-03,100.0\n2000-01-04,101.0\n");
    EXPECT_EQ(kind_of([&] { read_series(again, "X"); }), ErrorKind::TooShort);
}

TEST(Ingest, ZeroPriceIsValidationErrorNamingTheRow) {
    std::istringstream in("date,price\n2000-01-03,100.0\n2000-01-04,0.0\n");
    try {
        parse_series(in, "X");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Validation);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Ingest, MalformedRowsAreParseErrors) {
    const char* cases[] = {
        "date,price\n2000-01-03,\n",            // missing price
        "date,price\n2000-01-03,abc\n",         // not a number
        "date,price\n2000-13-03,1.0\n",         // bad month
        "date,price\n2000-02-30,1.0\n",         // invalid day
        "date,price\n2000-01-03,1.0,2.0\n",     // extra field
        "day,close\n2000-01-03,1.0\n",          // wrong header
        "",                                     // empty
    };
    for (const char* text : cases) {
        std::istringstream in(text);
        EXPECT_EQ(kind_of([&] { parse_series(in, "X"); }), ErrorKind::Parse) << text;
    }
}

TEST(Ingest, NegativeAndNonFinitePricesRejected) {
    for (const char* p : {"-1.0", "inf", "nan"}) {
        std::istringstream in(std::string("date,price\n2000-01-03,") + p + "\n");
        EXPECT_EQ(kind_of([&] { parse_series(in, "X"); }), ErrorKind::Validation) << p;
    }
}

TEST(Ingest, DuplicateAndDecreasingDatesRejected) {
    std::istringstream dup("date,price\n2000-01-03,1.0\n2000-01-03,1.1\n");
    EXPECT_EQ(kind_of([&] { parse_series(dup, "X"); }), ErrorKind::Validation);
    std::istringstream back("date,price\n2000-01-04,1.0\n2000-01-03,1.1\n");
    EXPECT_EQ(kind_of([&] { parse_series(back, "X"); }), ErrorKind::Validation);
}

TEST(Ingest, ToleratesCrlfBomAndGaps) {
    std::istringstream in("\xEF\xBB\xBF" "date,price\r\n2000-01-03,1.5\r\n2000-01-10,1.6\r\n\r\n");
    const auto s = parse_series(in, "X");
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(format_date(s.dates[1]), "2000-01-10");
}

TEST(Ingest, SyntheticFixtureRoundTrip) {
    std::mt19937_64 gen(7);
    std::lognormal_distribution<double> dist(4.0, 0.3);
    std::vector<double> prices(3400);
    for (auto& p : prices) p = dist(gen);

    const auto dir = std::filesystem::temp_directory_path() / "effidx_ingest_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "FIX.csv";
    {
        std::ofstream out(path);
        out << csv_of(prices);
    }
    const auto s = load_series(path);
    EXPECT_EQ(s.symbol, "FIX");
    ASSERT_EQ(s.size(), 3400u);
    for (std::size_t i = 1; i < s.size(); ++i) {
        EXPECT_LT(std::chrono::sys_days{s.dates[i - 1]}, std::chrono::sys_days{s.dates[i]});
    }
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s.prices[i], prices[i], 1e-9 * prices[i]);

    // Same bytes, same series.
    const auto again = load_series(path);
    EXPECT_EQ(again.prices, s.prices);
    EXPECT_EQ(again.dates, s.dates);
}

TEST(Ingest, MissingFileIsIoError) {
    EXPECT_EQ(kind_of([] { load_series("/nonexistent/none.csv"); }), ErrorKind::Io);
}

TEST(LogTransform, ExactLogs) {
    PriceSeries s{"X", "g", synth::business_days(3), {1.0, std::numbers::e, std::numbers::e * std::numbers::e}};
    const auto lp = to_log_prices(s);
    EXPECT_EQ(lp.kind, SeriesKind::LogPrice);
    EXPECT_NEAR(lp.values[0], 0.0, 1e-15);
    EXPECT_NEAR(lp.values[1], 1.0, 1e-15);
    EXPECT_NEAR(lp.values[2], 2.0, 1e-15);
}

TEST(LogTransform, ConstantPricesStayConstant) {
    PriceSeries s{"X", "g", synth::business_days(5), std::vector<double>(5, 42.0)};
    const auto lp = to_log_prices(s);
    for (double v : lp.values) EXPECT_EQ(v, std::log(42.0));
    const auto r = to_log_returns(lp);
    for (double v : r.values) EXPECT_EQ(v, 0.0);
}

TEST(LogTransform, HandDifferences) {
    LogSeries lp{"X", {0.0, 1.0, 3.0}, SeriesKind::LogPrice};
    const auto r = to_log_returns(lp);
    EXPECT_EQ(r.kind, SeriesKind::LogReturn);
    EXPECT_EQ(r.values, (std::vector<double>{1.0, 2.0}));
}

TEST(LogTransform, ReturnsOfReturnsIsWrongKind) {
    LogSeries r{"X", {0.1, 0.2}, SeriesKind::LogReturn};
    EXPECT_EQ(kind_of([&] { to_log_returns(r); }), ErrorKind::WrongKind);
}

TEST(LogTransform, RandomRoundTripProperties) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> price(0.01, 5000.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + gen() % 500;
        PriceSeries s{"X", "g", synth::business_days(n), {}};
        for (std::size_t i = 0; i < n; ++i) s.prices.push_back(price(gen));
        const auto lp = to_log_prices(s);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(std::exp(lp.values[i]), s.prices[i], 1e-12 * s.prices[i]);

        const auto r = to_log_returns(lp);
        ASSERT_EQ(r.size(), n - 1);
        double level = lp.values[0];
        double total = 0.0;
        for (std::size_t t = 0; t < r.size(); ++t) {
            level += r.values[t];
            total += r.values[t];
            EXPECT_NEAR(level, lp.values[t + 1], 1e-12);
        }
        EXPECT_NEAR(total, lp.values.back() - lp.values.front(), 1e-10);
    }
}

TEST(LogTransform, CumulativeSumOfReturnsRecoveredExactly) {
    const std::vector<double> returns = {0.5, -0.25, 0.125, 0.0, -1.0};
    LogSeries lp{"X", {0.0}, SeriesKind::LogPrice};
    for (double r : returns) lp.values.push_back(lp.values.back() + r);
    EXPECT_EQ(to_log_returns(lp).values, returns);
}

TEST(Manifest, ParsesEitherColumnOrderAndDefaultsShortName) {
    std::istringstream in("group,symbol,full_name\nEnergy,HO1,NYMEX Heating Oil HO1\n\"Other, misc\",X1,Thing\n");
    const auto m = read_manifest(in);
    EXPECT_EQ(m.size(), 2u);
    EXPECT_EQ(m.group_of("HO1"), "Energy");
    EXPECT_EQ(m.find("HO1")->short_name, "NYMEX Heating Oil HO1");
    EXPECT_EQ(m.group_of("X1"), "Other, misc");
    EXPECT_EQ(m.group_of("nope"), "ungrouped");
}

TEST(Manifest, DuplicateSymbolsRejected) {
    std::istringstream in("symbol,full_name,group\nA,a,g\nA,b,g\n");
    EXPECT_EQ(kind_of([&] { read_manifest(in); }), ErrorKind::Validation);
}

TEST(Manifest, MissingColumnsRejected) {
    std::istringstream in("symbol,group\nA,g\n");
    EXPECT_EQ(kind_of([&] { read_manifest(in); }), ErrorKind::Parse);
}

TEST(Manifest, WriteReadRoundTrip) {
    Manifest m;
    m.insert("HO1", {"NYMEX Heating Oil HO1", "Heating Oil", "Energy"});
    m.insert("LB1", {"CME Lumber LB1", "Lumber", "Other agriculturals"});
    std::stringstream io;
    write_manifest(io, m);
    const auto back = read_manifest(io);
    EXPECT_EQ(back.find("LB1")->short_name, "Lumber");
    EXPECT_EQ(back.group_of("HO1"), "Energy");
}
