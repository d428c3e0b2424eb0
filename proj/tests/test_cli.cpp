#include "coxfano/cli.hpp"
#include "coxfano/fixtures.hpp"
#include "coxfano/serialize.hpp"
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace coxfano;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = coxfano::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("coxfano-cli-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string read(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json without_timing(Json j)
{
    j.erase("timing");
    return j;
}

std::string write_fixture(const fs::path& dir, const std::string& name)
{
    for (const auto& f : embedded_fixtures())
        if (f.name == name) {
            const fs::path p = dir / (name + ".json");
            std::ofstream(p) << dump(to_json(f.data));
            return p.string();
        }
    throw std::invalid_argument(name);
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("classify exit codes")
{
    const Run empty = invoke({"classify", "--dim", "2", "--picard-index", "5", "--torsion", "nontrivial"});
    CHECK(empty.code == cli::ok);
    CHECK(Json::parse(empty.out)["count"] == 0);

    CHECK(invoke({"classify", "--dim", "2", "--picard-index", "0"}).code == cli::usage_error);
    const Run zero = invoke({"classify", "--dim", "2", "--picard-index", "0"});
    CHECK(zero.err.find("error: Picard index must be at least 1") != std::string::npos);
    CHECK(invoke({"classify", "--dim", "2"}).code == cli::usage_error);
    CHECK(invoke({"classify", "--dim", "2", "--picard-index", "2", "--bogus"}).code == cli::usage_error);
    CHECK(invoke({"classify", "--dim", "2", "--picard-index", "2", "--torsion", "some"}).code == cli::usage_error);
    CHECK(invoke({"classify", "--dim", "2", "--picard-index", "2", "--format", "xml"}).code == cli::usage_error);
    CHECK(invoke({}).code == cli::usage_error);

    const Run limited = invoke({"classify", "--dim", "2", "--picard-index", "6", "--max-candidates", "5"});
    CHECK(limited.code == cli::resource_limit);
    CHECK(limited.out.empty());

    CHECK(invoke({"--version"}).out == tool_version() + "\n");
    CHECK(invoke({"--help"}).code == cli::ok);
}

TEST_CASE("classify formats agree")
{
    const std::vector<std::string> base = {"classify", "--dim", "2", "--picard-index", "4", "--torsion", "nontrivial"};
    auto with = [&](const std::string& fmt) {
        auto a = base;
        a.insert(a.end(), {"--format", fmt});
        return invoke(a);
    };
    const Run json = with("json");
    const Run table = with("table");
    const Run latex = with("latex");
    REQUIRE(json.code == 0);
    REQUIRE(table.code == 0);
    REQUIRE(latex.code == 0);

    const Json j = Json::parse(json.out);
    REQUIRE(j["count"] == 5);
    const auto tl = lines(table.out);
    CHECK(tl[0] == "varieties (5)");
    int rows = 0;
    for (const auto& l : tl)
        if (!l.empty() && std::isdigit(static_cast<unsigned char>(l[0]))) ++rows;
    CHECK(rows == 5);

    int latex_rows = 0;
    for (const auto& l : lines(latex.out))
        if (!l.empty() && std::isdigit(static_cast<unsigned char>(l[0]))) ++latex_rows;
    CHECK(latex_rows == 5);
    CHECK(latex.out.find("\\begin{longtable}") != std::string::npos);

    // the d_X column of the table matches the JSON degrees
    for (std::size_t i = 0; i < 5; ++i) {
        const std::string deg = j["varieties"][i]["invariants"]["degree"];
        const std::string shown = deg.substr(deg.size() - 2) == "/1" ? deg.substr(0, deg.size() - 2) : deg;
        const std::string row = tl[3 + i];
        std::vector<std::string> cells;
        std::istringstream in(row);
        for (std::string c; std::getline(in, c, '|');) cells.push_back(c.substr(c.find_first_not_of(' '), c.find_last_not_of(' ') - c.find_first_not_of(' ') + 1));
        REQUIRE(cells.size() == 6);
        CHECK(cells[4] == shown);
        CHECK(cells[5] == std::to_string(j["varieties"][i]["invariants"]["gorenstein_index"].get<Int>()));
    }
}

TEST_CASE("output file and cache")
{
    TempDir tmp;
    const std::string out_file = (tmp.path / "res.json").string();
    const std::string cache = (tmp.path / "cache").string();
    const std::vector<std::string> args = {"classify", "--dim", "2", "--picard-index", "6", "--out", out_file, "--cache-dir", cache};

    const Run first = invoke(args);
    REQUIRE(first.code == 0);
    CHECK(first.out.empty());
    const Json a = Json::parse(read(out_file));
    CHECK(a["timing"]["cached"] == false);
    CHECK(std::distance(fs::directory_iterator(cache), fs::directory_iterator{}) == 1);

    const Run second = invoke(args);
    REQUIRE(second.code == 0);
    const Json b = Json::parse(read(out_file));
    CHECK(b["timing"]["cached"] == true);
    CHECK(dump(without_timing(a)) == dump(without_timing(b)));

    const Run direct = invoke({"classify", "--dim", "2", "--picard-index", "6"});
    CHECK(dump(without_timing(Json::parse(direct.out))) == dump(without_timing(a)));
}

TEST_CASE("verify")
{
    const Run all = invoke({"verify"});
    CHECK(all.code == cli::ok);
    CHECK(all.out.find("17/17 fixtures passed") != std::string::npos);

    TempDir tmp;
    const fs::path dumped = tmp.path / "fixtures.json";
    REQUIRE(invoke({"verify", "--dump", dumped.string()}).code == cli::ok);
    Json fx = Json::parse(read(dumped));
    REQUIRE(fx.size() == 17);
    CHECK(invoke({"verify", "--fixtures", dumped.string()}).code == cli::ok);

    fx[0]["expected"]["degree"] = "2/1";
    const fs::path tampered = tmp.path / "tampered.json";
    std::ofstream(tampered) << dump(fx);
    const Run bad = invoke({"verify", "--fixtures", tampered.string()});
    CHECK(bad.code == cli::fixture_failure);
    CHECK(bad.out.find("FAIL surface-1") != std::string::npos);
    CHECK(bad.out.find("16/17 fixtures passed") != std::string::npos);

    CHECK(invoke({"verify", "--fixtures", (tmp.path / "missing.json").string()}).code == cli::usage_error);
}

TEST_CASE("invariants")
{
    TempDir tmp;
    const Run s8 = invoke({"invariants", "--input", write_fixture(tmp.path, "surface-8")});
    REQUIRE(s8.code == cli::ok);
    const Json j = Json::parse(s8.out);
    CHECK(j["valid"] == true);
    CHECK(j["picard_index"] == 6);
    CHECK(j["degree"] == "2/3");
    CHECK(j["gorenstein_index"] == 3);
    CHECK(j["dimension"] == 2);
    CHECK(j["fano"] == true);
    CHECK(j["minimal_supports"].size() > 0);
    for (const auto& s : j["minimal_supports"]) CHECK(s["support"].get<std::string>().front() == '{');

    const Run q4 = invoke({"invariants", "--input", write_fixture(tmp.path, "grading-Q4")});
    REQUIRE(q4.code == cli::ok);
    CHECK(Json::parse(q4.out)["class_group"] == "Z + Z/11");

    Json broken = to_json(embedded_fixtures()[0].data);
    broken["weights"][0][0] = 5;
    const fs::path bp = tmp.path / "broken.json";
    std::ofstream(bp) << dump(broken);
    const Run inv = invoke({"invariants", "--input", bp.string()});
    CHECK(inv.code == cli::invalid_data);
    CHECK(Json::parse(inv.out)["valid"] == false);
    CHECK(inv.err.find("homogeneity") != std::string::npos);

    CHECK(invoke({"invariants", "--input", (tmp.path / "nope.json").string()}).code == cli::usage_error);
}

TEST_CASE("count")
{
    const Run r = invoke({"count", "--dim-range", "2..2", "--mu-range", "2..6", "--torsion", "nontrivial"});
    REQUIRE(r.code == cli::ok);
    const auto tl = lines(r.out);
    REQUIRE(tl.size() == 6);
    CHECK(tl[0] == "d\tmu\tcount\tupper_bound");
    const std::vector<std::string> counts = {"1", "1", "5", "0", "4"};
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<std::string> cells;
        std::istringstream in(tl[i + 1]);
        for (std::string c; std::getline(in, c, '\t');) cells.push_back(c);
        REQUIRE(cells.size() == 4);
        CHECK(cells[0] == "2");
        CHECK(cells[1] == std::to_string(i + 2));
        CHECK(cells[2] == counts[i]);
        CHECK(mpz_class(cells[2]) <= mpz_class(cells[3]));
        CHECK(mpz_class(cells[3]) == count_upper_bound(2, static_cast<Int>(i + 2)));
    }

    const Run empty = invoke({"count", "--dim-range", "2..2", "--mu-range", "5..4"});
    CHECK(empty.code == cli::ok);
    CHECK(empty.out == "d\tmu\tcount\tupper_bound\n");

    const Run js = invoke({"count", "--dim-range", "2..2", "--mu-range", "4..4", "--torsion", "nontrivial", "--format", "json"});
    CHECK(Json::parse(js.out)["rows"][0]["count"] == 5);

    CHECK(invoke({"count", "--dim-range", "2-3", "--mu-range", "1..2"}).code == cli::usage_error);
    CHECK(invoke({"count", "--dim-range", "0..1", "--mu-range", "1..2"}).code == cli::usage_error);
}
