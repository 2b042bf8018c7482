#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "uncervals/csv.hpp"
#include "uncervals/rng.hpp"
#include "uncervals/split.hpp"
#include "uncervals/types.hpp"

using namespace uncervals;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "uncervals_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p);
    out << body;
}

}  // namespace

TEST_CASE("load_dataset maps rows to observations") {
    auto p = temp_file("basic.csv");
    write_file(p, "l,u,x1\n0.4,0.9,1.2\n1.3,inf,0.0\n");
    Dataset d = load_dataset(p.string());
    REQUIRE(d.size() == 2);
    CHECK(d[0].l == 0.4);
    CHECK(d[0].u == 0.9);
    CHECK(d[0].x == std::vector<double>{1.2});
    CHECK(std::isinf(d[1].u));
    CHECK(classify(d[1]) == Censoring::right);
}

TEST_CASE("load_dataset rejects l > u with the row number") {
    auto p = temp_file("bad.csv");
    write_file(p, "l,u,x1\n0.9,0.4,0.0\n");
    try {
        load_dataset(p.string());
        FAIL("expected io_error");
    } catch (const io_error& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
}

TEST_CASE("load_dataset reports malformed rows") {
    auto p = temp_file("malformed.csv");
    write_file(p, "l,u,x1\n0.1,0.5,1.0\nnot,a,number\n");
    try {
        load_dataset(p.string());
        FAIL("expected io_error");
    } catch (const io_error& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
}

TEST_CASE("dataset save/load round-trips bit-exactly") {
    rng::Stream s(42);
    for (int round = 0; round < 20; ++round) {
        Dataset d;
        d.covariate_dim = 1 + static_cast<std::size_t>(s.next_index(3));
        const std::size_t n = 1 + static_cast<std::size_t>(s.next_index(40));
        for (std::size_t i = 0; i < n; ++i) {
            IntervalObservation o;
            o.l = s.next_unit() * 3.0;
            o.u = s.next_unit() < 0.25 ? kInf : o.l + s.next_unit_open();
            for (std::size_t j = 0; j < d.covariate_dim; ++j)
                o.x.push_back(s.next_uniform(-5.0, 5.0));
            d.observations.push_back(std::move(o));
        }
        auto p = temp_file("roundtrip.csv");
        save_dataset(d, p.string());
        Dataset back = load_dataset(p.string());
        REQUIRE(back.size() == d.size());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(back[i].l == d[i].l);
            if (std::isinf(d[i].u))
                CHECK(std::isinf(back[i].u));
            else
                CHECK(back[i].u == d[i].u);
            CHECK(back[i].x == d[i].x);
        }
    }
}

TEST_CASE("format_double round-trips awkward values") {
    for (double v : {0.1, 1.0 / 3.0, 1e-17, 12345.678901234567, 2e300}) {
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(kInf) == "inf");
    CHECK(std::isinf(parse_double("inf")));
}

TEST_CASE("make_split partitions deterministically") {
    SplitPlan a = make_split(10, 0.5, 7);
    SplitPlan b = make_split(10, 0.5, 7);
    CHECK(a.fit_indices == b.fit_indices);
    CHECK(a.calibration_indices == b.calibration_indices);
    CHECK(a.fit_indices.size() == 5);
    CHECK(a.calibration_indices.size() == 5);

    std::vector<bool> seen(10, false);
    for (auto i : a.fit_indices) seen[i] = true;
    for (auto i : a.calibration_indices) {
        CHECK_FALSE(seen[i]);  // disjoint
        seen[i] = true;
    }
    for (bool v : seen) CHECK(v);  // exhaustive
}

TEST_CASE("make_split rejects degenerate inputs") {
    CHECK_THROWS_AS(make_split(3, 0.9, 1), numeric_error);
    CHECK_THROWS_AS(make_split(10, 0.0, 1), numeric_error);
    CHECK_THROWS_AS(make_split(10, 0.999999, 1), numeric_error);  // empty calibration
}

TEST_CASE("make_split sizes follow the rounding rule") {
    rng::Stream s(9);
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 4 + static_cast<std::size_t>(s.next_index(200));
        const double frac = 0.1 + 0.8 * s.next_unit();
        const auto want = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
        if (want == 0 || want == n) continue;
        SplitPlan plan = make_split(n, frac, s.next_u64());
        CHECK(plan.fit_indices.size() == want);
        CHECK(plan.fit_indices.size() + plan.calibration_indices.size() == n);
    }
}

TEST_CASE("counter-based stream is addressable") {
    rng::Stream s(1234);
    std::vector<std::uint64_t> seq;
    for (int i = 0; i < 8; ++i) seq.push_back(s.next_u64());
    for (int i = 0; i < 8; ++i)
        CHECK(seq[static_cast<std::size_t>(i)] == rng::at(1234, static_cast<std::uint64_t>(i)));
    CHECK(rng::derive(1, "sim") != rng::derive(1, "split"));
    CHECK(rng::derive(1, 0) != rng::derive(2, 0));
}
