#include <doctest.h>

#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rsz/errors.hpp"
#include "rsz/experiments.hpp"
#include "rsz/report.hpp"

using namespace rsz;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

} // namespace

TEST_CASE("table formats") {
    Table t;
    t.columns = {"n", "value"};
    t.add({"10", "0.25"});
    t.add({"20", "1e-07"});
    CHECK(t.csv() == "n,value\n10,0.25\n20,1e-07\n");
    CHECK(t.dat() == "# n value\n10 0.25\n20 1e-07\n");
    CHECK_THROWS_AS(t.add({"1"}), ParameterError);
    Table empty;
    empty.columns = {"a"};
    CHECK(empty.csv() == "a\n");
}

TEST_CASE("svg points are csv cells") {
    Table t;
    t.columns = {"n", "lo", "hi"};
    t.add({"64", "0.125", "3"});
    t.add({"128", "0.0883", "5.5"});
    t.add({"256", "0.0625", "12"});
    const auto svg = svg_chart(t, 0, {1, 2}, "a & b");
    CHECK(svg.find("a &amp; b") != std::string::npos);

    std::set<std::pair<std::string, std::string>> allowed;
    for (const auto& line : split(t.csv(), '\n')) {
        const auto cells = split(line, ',');
        for (std::size_t c = 1; c < cells.size(); ++c) allowed.emplace(cells[0], cells[c]);
    }
    const std::regex poly("points=\"([^\"]*)\"");
    std::size_t lines = 0, points = 0;
    for (std::sregex_iterator it(svg.begin(), svg.end(), poly), end; it != end; ++it) {
        ++lines;
        for (const auto& p : split((*it)[1].str(), ' ')) {
            const auto xy = split(p, ',');
            REQUIRE(xy.size() == 2);
            CHECK(allowed.count({xy[0], xy[1]}) == 1);
            ++points;
        }
    }
    CHECK(lines == 2);
    CHECK(points == 6);
    CHECK_THROWS_AS(svg_chart(t, 0, {3}, "x"), ParameterError);

    Table bad = t;
    bad.add({"512", "oops", "1"});
    CHECK_THROWS_AS(svg_chart(bad, 0, {1}, "x"), ParameterError);
    Table none;
    none.columns = {"n", "y"};
    CHECK(svg_chart(none, 0, {1}, "empty").find("<svg") == 0);
}

TEST_CASE("certificate json round trip") {
    std::vector<SizeCertificate> certs = {{VertexSet(10, {1, 4, 7}), 3, 2, 1}, {VertexSet(10), 0, 0, 2}};
    const auto text = certificates_json(certs);
    const auto j = nlohmann::json::parse(text);
    REQUIRE(j.is_array());
    CHECK(j.size() == 2);
    CHECK(j[0]["vertices"] == nlohmann::json::array({1, 4, 7}));
    CHECK(text.rfind("[\n", 0) == 0);
    const auto back = parse_certificates_json(text, 10);
    REQUIRE(back.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(back[k].vertices == certs[k].vertices);
        CHECK(back[k].order == certs[k].order);
        CHECK(back[k].size == certs[k].size);
        CHECK(back[k].scale_index == certs[k].scale_index);
    }
    CHECK(certificates_json({}) == "[]\n");
    CHECK(parse_certificates_json("[]", 5).empty());
    CHECK_THROWS_AS(parse_certificates_json("{", 10), ParameterError);
    CHECK_THROWS_AS(parse_certificates_json(R"([{"scale_index":1,"vertices":[12],"order":1,"size":0}])", 10),
                    ParameterError);
    CHECK_THROWS_AS(parse_certificates_json(R"([{"vertices":[1],"order":1,"size":0}])", 10), ParameterError);
}

TEST_CASE("suites") {
    const auto empty = suite_conjecture_probe({}, {1, 2}, 1);
    CHECK(empty.runs.rows.empty());
    CHECK(empty.plotted.rows.empty());
    CHECK(empty.runs.csv() == "n,seed,phi,prefix_len,psi\n");

    const auto small = suite_conjecture_probe({8, 10}, {1, 2, 3}, 2);
    CHECK(small.runs.rows.size() == 6);
    CHECK(small.plotted.rows.size() == 2);
    CHECK(small.runs.rows[0][0] == "8");
    CHECK(small.runs.rows[0][1] == "1");
    CHECK(small.runs.rows[5][0] == "10");
    CHECK(small.runs.rows[5][1] == "3");
    const auto serial = suite_conjecture_probe({8, 10}, {1, 2, 3}, 1);
    CHECK(serial.runs.csv() == small.runs.csv());

    CHECK(median_of({3, 1, 2}) == 2);
    CHECK(median_of({4, 1, 3, 2}) == 2);
    CHECK_THROWS_AS(median_of({}), ParameterError);

    const auto ac = suite_antconc({}, 0.4, 0.4, 0.5);
    CHECK(ac.plotted.rows.empty());
    const auto sc = suite_scaling({}, {1}, ConstructionParams{}, 1);
    CHECK(sc.runs.rows.empty());
}
