#include <catch2/catch_amalgamated.hpp>

#include "l1cp/config.hpp"
#include "l1cp/error.hpp"
#include "l1cp/io.hpp"
#include "l1cp/scenarios.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace l1cp;
using Catch::Matchers::ContainsSubstring;

namespace {

FunctionalSample read(const std::string& text, HeaderMode mode = HeaderMode::Auto) {
    std::istringstream in(text);
    return read_curves(in, "data.csv", mode);
}

std::size_t error_line(const std::string& text) {
    try {
        (void)read(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("rows without a header sit on the uniform grid", "[io]") {
    const FunctionalSample x = read("1,2,3\n4,5,6\n");
    REQUIRE(x.n() == 2);
    REQUIRE(x.m() == 3);
    REQUIRE(x.grid() == Grid::uniform(3));
    REQUIRE(x.curve(1)[2] == 6.0);
}

TEST_CASE("a grid header row is detected", "[io]") {
    const FunctionalSample x = read("0,0.2,1\n1,2,3\n4,5,6\n7,8,9\n");
    REQUIRE(x.n() == 3);
    REQUIRE(x.grid().points()[1] == 0.2);
    REQUIRE_FALSE(x.grid().is_uniform());
    // Forced absent: the grid row becomes a curve.
    REQUIRE(read("0,0.2,1\n1,2,3\n4,5,6\n", HeaderMode::Absent).n() == 3);
    REQUIRE_THROWS_AS(read("5,0.2,1\n1,2,3\n4,5,6\n", HeaderMode::Present), ParseError);
}

TEST_CASE("whitespace, blank lines, CRLF and a byte-order mark are tolerated", "[io]") {
    const FunctionalSample x = read("\xEF\xBB\xBF 1, 2 \r\n\r\n+3,-4e-1\r\n");
    REQUIRE(x.n() == 2);
    REQUIRE(x.curve(1)[0] == 3.0);
    REQUIRE(x.curve(1)[1] == -0.4);
}

TEST_CASE("ragged rows are rejected with their line", "[io]") {
    REQUIRE(error_line("1,2,3\n4,5\n") == 2);
    REQUIRE_THROWS_WITH(read("1,2,3\n4,5\n"), ContainsSubstring("ragged"));
}

TEST_CASE("non-numeric cells are rejected with line and column", "[io]") {
    REQUIRE(error_line("1,2\n\n3,x\n") == 3);
    REQUIRE_THROWS_WITH(read("1,2\n3,x\n"), ContainsSubstring("column 2"));
    REQUIRE_THROWS_WITH(read("1,,2\n3,4,5\n"), ContainsSubstring("non-numeric"));
    REQUIRE_THROWS_WITH(read("1,nan\n3,4\n"), ContainsSubstring("non-numeric"));
}

TEST_CASE("fewer than two curves is an error", "[io]") {
    REQUIRE_THROWS_WITH(read("1,2,3\n"), ContainsSubstring("need at least 2 curves"));
    REQUIRE_THROWS_WITH(read(""), ContainsSubstring("need at least 2 curves"));
    REQUIRE_THROWS_WITH(read("0,1\n5,6\n", HeaderMode::Present), ContainsSubstring("need at least 2 curves"));
}

TEST_CASE("a wide file keeps its shape", "[io]") {
    std::ostringstream csv;
    for (int i = 0; i < 156; ++i) {
        for (int j = 0; j < 365; ++j) csv << (j ? "," : "") << (i * 0.01 + j);
        csv << '\n';
    }
    const FunctionalSample x = read(csv.str());
    REQUIRE(x.n() == 156);
    REQUIRE(x.m() == 365);
}

TEST_CASE("exported samples re-ingest identically", "[io]") {
    ScenarioSpec spec;
    spec.error_kind = ErrorKind::HeavyFAR;
    spec.mean_kind = parse_mean_kind("bumps");
    spec.kappa = 0.3;
    spec.seed = 5;
    const FunctionalSample x = assemble(spec);

    const auto path = std::filesystem::temp_directory_path() / "l1cp_roundtrip.csv";
    {
        std::ofstream out(path);
        write_curves(out, x);
    }
    REQUIRE(ingest_curves(path.string()) == x);
    std::filesystem::remove(path);

    std::stringstream bare;
    write_curves(bare, x, false);
    REQUIRE(read_curves(bare, "bare", HeaderMode::Absent) == x);
}

TEST_CASE("missing input file", "[io]") {
    REQUIRE_THROWS_WITH(ingest_curves("/nonexistent/curves.csv"), ContainsSubstring("cannot open"));
}

TEST_CASE("key-value config parsing", "[config]") {
    std::istringstream in("# comment\n\nn = 12\n  alpha=0.1  \nname = light iid\nflag = yes\n");
    const KeyValueConfig cfg = KeyValueConfig::parse(in, "plan.cfg");
    REQUIRE(cfg.get_uint("n") == 12u);
    REQUIRE(cfg.get_double("alpha") == 0.1);
    REQUIRE(cfg.get_string("name") == "light iid");
    REQUIRE(cfg.get_bool("flag") == true);
    REQUIRE_FALSE(cfg.get_string("missing").has_value());
    REQUIRE(cfg.line_of("alpha") == 4);
    REQUIRE_NOTHROW(cfg.require_known({"n", "alpha", "name", "flag"}));
    REQUIRE_THROWS_WITH(cfg.require_known({"n"}), ContainsSubstring("unknown key"));
}

TEST_CASE("key-value config errors", "[config]") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return KeyValueConfig::parse(in, "bad.cfg");
    };
    REQUIRE_THROWS_WITH(parse("n 12\n"), ContainsSubstring("bad.cfg:1"));
    REQUIRE_THROWS_WITH(parse(" = 3\n"), ContainsSubstring("empty key"));
    REQUIRE_THROWS_WITH(parse("n = 1\nn = 2\n"), ContainsSubstring("bad.cfg:2"));
    const KeyValueConfig cfg = parse("n = -3\nalpha = lots\nflag = maybe\n");
    REQUIRE_THROWS_WITH(cfg.get_uint("n"), ContainsSubstring("bad.cfg:1"));
    REQUIRE_THROWS_WITH(cfg.get_double("alpha"), ContainsSubstring("bad.cfg:2"));
    REQUIRE_THROWS_WITH(cfg.get_bool("flag"), ContainsSubstring("bad.cfg:3"));
}
