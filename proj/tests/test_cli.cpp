#include "cobosons/cli.hpp"
#include "cobosons/interference.hpp"
#include "cobosons/io.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace cobosons;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name)
    {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

} // namespace

TEST_CASE("cli: weights")
{
    TempDir dir("cobosons_cli_weights");
    const auto r = run({"weights", "--inline", "0.25,0.25,0.25,0.25", "--n1", "2", "--n2", "2", "--out",
                        dir / "w.csv"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(slurp(dir / "w.csv"));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"p", "w_p"});
    CHECK_CLOSE(std::stod(rows[2][1]), 2.0 / 3.0, 1e-12);

    const auto doc = nlohmann::json::parse(slurp(dir / "w.json"));
    CHECK_CLOSE(doc["chi"][2].get<double>(), 0.75, 1e-15);
    CHECK_CLOSE(doc["w0_bounds"]["lower"].get<double>(), 1.0 / 6.0, 1e-15);
    CHECK_CLOSE(doc["w0_bounds"]["upper"].get<double>(), 5.0 / 9.0, 1e-15);

    io::write_atomically(dir / "bad.json", R"({"lambda": [0.6, 0.5]})");
    CHECK(run({"weights", "--lambda", dir / "bad.json", "--n1", "1", "--n2", "1"}).code == 2);

    const auto saturated = run({"weights", "--inline", "1.0", "--n1", "2", "--n2", "1"});
    CHECK(saturated.code == 3);
    CHECK(saturated.err.find("upper lattice") != std::string::npos);

    CHECK(run({"weights", "--inline", "1.0", "--family", "uniform", "--modes", "3"}).code == 2);
    CHECK(run({"weights", "--inline", "1.0", "--n1", "-1"}).code == 2);
    CHECK(run({"weights", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: counting")
{
    const auto r = run({"counting", "--family", "uniform", "--purity", "0.2", "--n1", "1", "--n2", "1", "--reference"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"m", "p_tot", "p_m_0", "p_m_1", "p_distinguishable"});
    CHECK_CLOSE(std::stod(rows[2][1]), 0.2, 1e-12);
    CHECK_CLOSE(std::stod(rows[1][1]), 0.4, 1e-12);
    CHECK_CLOSE(std::stod(rows[2][4]), 0.5, 1e-15);

    // t = pi / (2 J_v) is the balanced splitter
    const auto timed = run({"counting", "--inline", "0.5,0.3,0.2", "--n1", "2", "--n2", "2", "--t",
                            io::format_number(std::numbers::pi / 4.0), "--jv", "2"});
    const auto direct = run({"counting", "--inline", "0.5,0.3,0.2", "--n1", "2", "--n2", "2", "--reflectivity", "0.5"});
    REQUIRE(timed.code == 0);
    CHECK(timed.out == direct.out);

    CHECK(run({"counting", "--inline", "1.0", "--reflectivity", "0.5", "--t", "1", "--jv", "1"}).code == 2);
    CHECK(run({"counting", "--inline", "1.0", "--t", "1"}).code == 2);
    CHECK(run({"counting", "--inline", "1.0", "--reflectivity", "1.5"}).code == 2);
}

TEST_CASE("cli: runs are byte-identical")
{
    const std::vector<std::string> args{"counting", "--family", "random", "--modes", "7", "--seed", "42",
                                        "--n1",     "3",        "--n2",   "2",       "--reflectivity", "0.3"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto other = args;
    other[6] = "43";
    CHECK(run(other).out != a.out);
}

TEST_CASE("cli: sweep")
{
    const auto r = run({"sweep", "--family", "uniform", "--purity-min", "0.01", "--purity-max",
                        io::format_number(1.0 / 6.0), "--purity-count", "5", "--n1", "6", "--n2", "6"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    // header + 5 purities x 13 counts
    REQUIRE(rows.size() == 1 + 5 * 13);
    CHECK(rows[0].front() == "purity");
    CHECK(rows[0].back() == "status");
    const auto& last_six = rows[1 + 4 * 13 + 6];
    CHECK(last_six[1] == "6");
    CHECK_CLOSE(std::stod(last_six[2]), 1.0, 1e-12);

    const auto infeasible = run({"sweep", "--family", "uniform", "--purity-min", "0.1", "--purity-max", "0.5",
                                 "--purity-count", "2", "--n1", "6", "--n2", "6"});
    REQUIRE(infeasible.code == 0);
    const auto irows = parse_csv(infeasible.out);
    CHECK(irows.back().back() == "infeasible");
    CHECK(infeasible.err.find("infeasible") != std::string::npos);

    CHECK(run({"sweep", "--family", "uniform", "--purity-min", "0.5"}).code == 2);
}

TEST_CASE("cli: infer")
{
    TempDir dir("cobosons_cli_infer");
    const SchmidtDistribution d(testing::vec({0.6, 0.3, 0.1}));
    const BeamSplitter half(0.5);
    nlohmann::json obs = nlohmann::json::array();
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
        const auto c = counting_statistics(d, {a, b}, half);
        obs.push_back({{"n1", a}, {"n2", b}, {"p", std::vector<double>(c.probabilities.begin(), c.probabilities.end())}});
    }
    io::write_atomically(dir / "obs.json", obs.dump());

    const auto r = run({"infer", "--observations", dir / "obs.json", "--target", "6"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0][0] == "order");
    const auto truth = moments(d, 4);
    for (int m = 1; m <= 4; ++m)
        CHECK_CLOSE(std::stod(rows[m][1]), truth.at(m), 1e-8);
    CHECK(rows[5][1].empty());
    CHECK(std::stod(rows[5][2]) <= std::stod(rows[5][3]));

    io::write_atomically(dir / "single.json", R"([{"n1": 1, "n2": 1, "p": [0.4, 0.2, 0.4]}])");
    const auto single = parse_csv(run({"infer", "--observations", dir / "single.json"}).out);
    REQUIRE(single.size() == 6);
    CHECK_CLOSE(std::stod(single[3][2]), 0.04, 1e-14);
    CHECK_CLOSE(std::stod(single[3][3]), std::pow(0.2, 1.5), 1e-14);

    io::write_atomically(dir / "empty.json", "[]");
    CHECK(run({"infer", "--observations", dir / "empty.json"}).code == 2);
    io::write_atomically(dir / "gap.json", R"([{"n1": 2, "n2": 1, "p": [0.25, 0.25, 0.25, 0.25]}])");
    CHECK(run({"infer", "--observations", dir / "gap.json"}).code == 2);
    io::write_atomically(dir / "flat.json", R"([{"n1": 2, "n2": 0, "p": [0.25, 0.5, 0.25]}])");
    CHECK(run({"infer", "--observations", dir / "flat.json"}).code == 4);
}

TEST_CASE("cli: macro")
{
    TempDir dir("cobosons_cli_macro");
    const auto r = run({"macro", "--i1", "0.5", "--rho", "0", "--out", dir / "m.csv"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(slurp(dir / "m.json"));
    CHECK_CLOSE(doc["width"].get<double>(), 1.0, 1e-15);
    CHECK(doc["fermion_fraction"].get<double>() == 0.0);
    CHECK(parse_csv(slurp(dir / "m.csv")).size() == 202);

    REQUIRE(run({"macro", "--i1", "0.5", "--rho", "2", "--out", dir / "full.csv"}).code == 0);
    doc = nlohmann::json::parse(slurp(dir / "full.json"));
    CHECK_CLOSE(doc["width"].get<double>(), 0.0, 1e-15);

    const std::vector<std::string> sampled{"macro", "--rho", "1", "--sample", "1000", "--seed", "9", "--points", "11"};
    const auto s1 = run(sampled);
    const auto s2 = run(sampled);
    REQUIRE(s1.code == 0);
    CHECK(s1.out == s2.out);
    const auto rows = parse_csv(s1.out);
    CHECK(rows.size() == 1001);
    CHECK(rows[0].back() == "sample");

    CHECK(run({"macro", "--i1", "0.5", "--i2", "0.6"}).code == 2);
    CHECK(run({"macro", "--i1", "0.5", "--rho", "3"}).code == 3);
}

TEST_CASE("cli: oracle-check")
{
    const auto ok = run({"oracle-check", "--family", "uniform", "--modes", "4", "--n1", "2", "--n2", "2"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS") != std::string::npos);

    CHECK(run({"oracle-check", "--family", "random", "--modes", "8", "--seed", "5", "--n1", "3", "--n2", "3",
               "--reflectivity", "0.3"})
              .code == 0);
    CHECK(run({"oracle-check", "--family", "random", "--modes", "20", "--n1", "2", "--n2", "2"}).code == 2);
}
