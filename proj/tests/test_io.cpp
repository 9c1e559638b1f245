#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "airmia/dataset_io.hpp"
#include "airmia/error.hpp"
#include "airmia/rfsim.hpp"

using namespace airmia;
namespace fs = std::filesystem;

namespace {

rfsim::SignalSample sample(std::size_t id, double base)
{
    rfsim::SignalSample s;
    s.sample_id = id;
    s.tx_id = 100 + id;
    s.class_label = static_cast<int>(id % 2);
    s.member = id % 3 == 0;
    s.view = id % 2 ? rfsim::Receiver::Adversary : rfsim::Receiver::Provider;
    for (std::size_t k = 0; k < rfsim::kSymbolsPerSample; ++k) {
        s.phases[k] = std::round((base + 0.001 * k) * 1e9) / 1e9;
        s.powers[k] = std::round((base * 3.0 + 0.37 * k) * 1e9) / 1e9;
    }
    return s;
}

}  // namespace

TEST_CASE("dataset CSV round-trip is exact for quantized features")
{
    std::vector<rfsim::SignalSample> in;
    for (std::size_t i = 0; i < 12; ++i) in.push_back(sample(i, 0.123456789 * (i + 1)));
    const auto text = io::dataset_to_csv(in);
    CHECK(text.rfind(io::dataset_csv_header() + "\n", 0) == 0);
    const auto out = io::dataset_from_csv(text);
    REQUIRE(out.size() == in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        CHECK(out[i].sample_id == in[i].sample_id);
        CHECK(out[i].tx_id == in[i].tx_id);
        CHECK(out[i].class_label == in[i].class_label);
        CHECK(out[i].member == in[i].member);
        CHECK(out[i].view == in[i].view);
        CHECK(out[i].phases == in[i].phases);
        CHECK(out[i].powers == in[i].powers);
    }
    CHECK(io::dataset_to_csv(out) == text);
}

TEST_CASE("header has 5 + 32 columns")
{
    const auto h = io::dataset_csv_header();
    CHECK(std::count(h.begin(), h.end(), ',') == 36);
}

TEST_CASE("malformed CSV raises LoadError")
{
    const std::string good = io::dataset_to_csv({sample(1, 0.5)});
    const auto header_end = good.find('\n') + 1;

    CHECK_THROWS_AS(io::dataset_from_csv("a,b,c\n1,2,3\n"), LoadError);
    CHECK_THROWS_AS(io::dataset_from_csv(good.substr(0, good.size() - 20) + "\n"), LoadError);
    std::string bad_number = good;
    bad_number.replace(header_end, 1, "x");
    CHECK_THROWS_AS(io::dataset_from_csv(bad_number), LoadError);
    try {
        io::dataset_from_csv(bad_number, "somefile.csv");
        FAIL("expected LoadError");
    } catch (const LoadError& e) {
        CHECK(e.path() == "somefile.csv");
    }
}

TEST_CASE("file helpers")
{
    const auto dir = fs::temp_directory_path() / "airmia-test-io";
    fs::remove_all(dir);
    const auto p = dir / "nested" / "x.csv";
    io::write_dataset_csv(p, {sample(2, 0.25), sample(3, 0.75)});
    CHECK(io::read_dataset_csv(p).size() == 2);
    io::atomic_write_text(dir / "t.txt", "hello");
    CHECK(io::read_text(dir / "t.txt") == "hello");
    CHECK_THROWS_AS(io::read_text(dir / "missing.txt"), LoadError);
    fs::remove_all(dir);
}
