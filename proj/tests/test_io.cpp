#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "bcall/io.hpp"

using namespace bcall;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "bcall_io_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }
};

} // namespace

TEST_CASE("csv parser handles quotes, embedded commas and crlf") {
    CsvTable t = parse_csv("a,b,c\r\n1,\"x,y\",\"he said \"\"hi\"\"\"\n2,,\n", "test");
    REQUIRE(t.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "x,y");
    CHECK(t.rows[0][2] == "he said \"hi\"");
    CHECK(t.rows[1][1].empty());
    CHECK(t.line_numbers[0] == 2);
    CHECK(t.line_numbers[1] == 3);

    CHECK_THROWS_AS(parse_csv("a,b\n1\n", "test"), DataError);       // ragged row
    CHECK_THROWS_AS(parse_csv("a,b\n\"x,1\n", "test"), DataError);   // unterminated quote
    CHECK_THROWS_AS(parse_csv("", "test"), DataError);               // no header
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("q\"q") == "\"q\"\"q\"");
}

TEST_CASE("canonical csv round trip") {
    TempDir tmp;
    std::string csv =
        "legislator_id,legislator_name,party,rollcall_id,date,cast\n"
        "L1,\"Doe, Jane\",PX,V1,2014-03-01,yea\n"
        "L2,Smith,PY,V1,2014-03-01,NAY\n"
        "L1,\"Doe, Jane\",PX,V2,2014-05-02,absent\n"
        "L2,Smith,PY,V2,2014-05-02,abstain\n";
    VoteMatrix m = read_canonical_csv(tmp.file("votes.csv", csv));
    REQUIRE(m.n_legislators() == 2);
    REQUIRE(m.n_rollcalls() == 2);
    CHECK(m.legislators()[0].name == "Doe, Jane");
    CHECK(m.cast_at(0, 0) == Cast::Yea);
    CHECK(m.cast_at(1, 0) == Cast::Nay);
    CHECK(m.cast_at(0, 1) == Cast::Absent);
    CHECK(m.cast_at(1, 1) == Cast::Abstain);

    fs::path out = tmp.path / "rt.csv";
    write_canonical_csv(m, out);
    VoteMatrix m2 = read_canonical_csv(out);
    REQUIRE(m2.n_legislators() == 2);
    REQUIRE(m2.n_rollcalls() == 2);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 2; ++i) CHECK(m.cast_at(i, j) == m2.cast_at(i, j));
}

TEST_CASE("canonical ingestion errors carry line numbers") {
    TempDir tmp;
    SUBCASE("unknown cast token") {
        auto p = tmp.file("bad.csv",
                          "legislator_id,legislator_name,party,rollcall_id,date,cast\n"
                          "L1,A,,V1,2014-01-01,maybe\n");
        CHECK_THROWS_WITH_AS(read_canonical_csv(p), doctest::Contains("bad.csv:2"), DataError);
    }
    SUBCASE("unparseable date names the rollcall") {
        auto p = tmp.file("bad.csv",
                          "legislator_id,legislator_name,party,rollcall_id,date,cast\n"
                          "L1,A,,V7,01-2014-01,yea\n");
        CHECK_THROWS_WITH_AS(read_canonical_csv(p), doctest::Contains("V7"), DataError);
    }
    SUBCASE("duplicate cast names both rows") {
        auto p = tmp.file("dup.csv",
                          "legislator_id,legislator_name,party,rollcall_id,date,cast\n"
                          "L1,A,,V1,2014-01-01,yea\n"
                          "L2,B,,V1,2014-01-01,nay\n"
                          "L1,A,,V1,2014-01-01,nay\n");
        CHECK_THROWS_WITH_AS(read_canonical_csv(p), doctest::Contains("rows 2 and 4"), DataError);
    }
    SUBCASE("conflicting metadata is rejected") {
        auto p = tmp.file("conflict.csv",
                          "legislator_id,legislator_name,party,rollcall_id,date,cast\n"
                          "L1,A,PX,V1,2014-01-01,yea\n"
                          "L1,A,PY,V2,2014-01-02,yea\n");
        CHECK_THROWS_AS((void)read_canonical_csv(p), DataError);
    }
    SUBCASE("missing column") {
        auto p = tmp.file("cols.csv",
                          "legislator_id,legislator_name,party,date,cast\nL1,A,,2014-01-01,yea\n");
        CHECK_THROWS_WITH_AS(read_canonical_csv(p), doctest::Contains("rollcall_id"), DataError);
    }
}

TEST_CASE("voteview adapter maps cast codes and joins metadata") {
    TempDir tmp;
    auto votes = tmp.file("votes.csv",
                          "congress,chamber,rollnumber,icpsr,cast_code\n"
                          "117,House,1,100,1\n"
                          "117,House,1,101,6\n"
                          "117,House,1,102,7\n"
                          "117,House,1,103,9\n"
                          "117,House,2,100,4\n"
                          "117,House,2,101,2\n");
    auto members = tmp.file("members.csv",
                            "icpsr,bioname,party_code\n"
                            "100,\"ALPHA, Amy\",100\n"
                            "101,BRAVO Luis,200\n");
    auto rollcalls = tmp.file("rollcalls.csv",
                              "congress,chamber,rollnumber,date\n"
                              "117,House,1,2021-01-05\n"
                              "117,House,2,2021-02-10\n");
    VoteMatrix m = read_voteview(votes, members, rollcalls);
    REQUIRE(m.n_legislators() == 4);
    REQUIRE(m.n_rollcalls() == 2);
    CHECK(m.legislators()[0].id == "100");
    CHECK(m.legislators()[0].name == "ALPHA, Amy");
    CHECK(m.legislators()[0].party == "100");
    CHECK(m.legislators()[2].name == "102"); // no members row: id as name
    CHECK(m.cast_at(0, 0) == Cast::Yea);     // code 1
    CHECK(m.cast_at(1, 0) == Cast::Nay);     // code 6
    CHECK(m.cast_at(2, 0) == Cast::Abstain); // code 7 (present)
    CHECK(m.cast_at(3, 0) == Cast::Absent);  // code 9
    CHECK(m.cast_at(0, 1) == Cast::Nay);     // code 4
    CHECK(m.cast_at(1, 1) == Cast::Yea);     // code 2
    CHECK(m.rollcalls()[0].date == Date{2021, 1, 5});

    SUBCASE("unknown cast code is rejected with its line") {
        auto bad = tmp.file("bad_votes.csv",
                            "congress,chamber,rollnumber,icpsr,cast_code\n"
                            "117,House,1,100,12\n");
        CHECK_THROWS_WITH_AS(read_voteview(bad, members, rollcalls),
                             doctest::Contains("bad_votes.csv:2"), DataError);
    }
    SUBCASE("duplicate (legislator, rollcall) is a hard error") {
        auto dup = tmp.file("dup_votes.csv",
                            "congress,chamber,rollnumber,icpsr,cast_code\n"
                            "117,House,1,100,1\n"
                            "117,House,1,100,6\n");
        CHECK_THROWS_AS((void)read_voteview(dup, members, rollcalls), DataError);
    }
    SUBCASE("dates are required") {
        CHECK_THROWS_AS((void)read_voteview(votes, members, std::nullopt), DataError);
    }
}

TEST_CASE("group labels file round trip and validation") {
    TempDir tmp;
    auto p = tmp.file("labels.csv", "legislator_id,cluster\nL1,left\nL2,RIGHT\n");
    GroupMap g = read_group_labels(p);
    CHECK(g.at("L1") == Group::Left);
    CHECK(g.at("L2") == Group::Right);

    auto bad = tmp.file("bad.csv", "legislator_id,cluster\nL1,center\n");
    CHECK_THROWS_AS((void)read_group_labels(bad), DataError);
    auto dup = tmp.file("dup.csv", "legislator_id,cluster\nL1,left\nL1,right\n");
    CHECK_THROWS_AS((void)read_group_labels(dup), DataError);

    VoteMatrix m({{"L1", "", "", {}}, {"L2", "", "", {}}},
                 {{"V1", Date{2014, 1, 1}, {{"L1", Cast::Yea}, {"L2", Cast::Nay}}}});
    fs::path out = tmp.path / "labels_out.csv";
    write_group_labels(m, g, out);
    GroupMap g2 = read_group_labels(out);
    CHECK(g2 == g);
}

TEST_CASE("party map file") {
    TempDir tmp;
    auto p = tmp.file("parties.csv", "party,cluster\nPX,left\nPY,right\n");
    auto map = read_party_map(p);
    CHECK(map.at("PX") == Group::Left);
    CHECK(map.at("PY") == Group::Right);
}

TEST_CASE("score file reader picks the right column") {
    TempDir tmp;
    auto generic = tmp.file("ext.csv", "legislator_id,period,score\nL1,2014,0.25\n");
    auto rows = read_score_file(generic, std::nullopt);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].score == doctest::Approx(0.25));

    auto ours = tmp.file("scores.csv",
                         "legislator_id,legislator_name,party,period,n_votes,d1,d2,group\n"
                         "L1,A,PX,2014,10,-0.5,0.1,left\n");
    auto rows2 = read_score_file(ours, std::nullopt);
    CHECK(rows2[0].score == doctest::Approx(-0.5)); // d1 fallback
    auto rows3 = read_score_file(ours, std::string("d2"));
    CHECK(rows3[0].score == doctest::Approx(0.1));

    auto bad = tmp.file("bad.csv", "legislator_id,period,score\nL1,2014,abc\n");
    CHECK_THROWS_WITH_AS(read_score_file(bad, std::nullopt), doctest::Contains("bad.csv:2"),
                         DataError);
}

TEST_CASE("real formatting is fixed 6 decimals with NA for missing") {
    CHECK(format_real(0.5) == "0.500000");
    CHECK(format_real(-1.0 / 3.0) == "-0.333333");
    CHECK(format_real(std::optional<double>{}) == "NA");
    CHECK(format_real(std::optional<double>{2.0}) == "2.000000");
}
