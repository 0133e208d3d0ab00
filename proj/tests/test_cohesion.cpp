#include <doctest.h>

#include <algorithm>
#include <random>

#include "bcall/cohesion.hpp"

using namespace bcall;

namespace {

GroupVoteTally tally(const std::string& group, const std::string& rc, std::size_t yea,
                     std::size_t nay, std::size_t abstain = 0) {
    return GroupVoteTally{group, rc, yea, nay, abstain};
}

VoteMatrix two_party_matrix() {
    std::vector<Legislator> legs = {
        {"A1", "", "PA", {}}, {"A2", "", "PA", {}}, {"A3", "", "PA", {}},
        {"B1", "", "PB", {}}, {"B2", "", "PB", {}},
        {"I1", "", "", {}}, // no party: skipped in party tallies
    };
    std::vector<RollCall> rcs = {
        {"V1", Date{2014, 1, 1}, {{"A1", Cast::Yea}, {"A2", Cast::Yea}, {"A3", Cast::Nay},
                                  {"B1", Cast::Nay}, {"B2", Cast::Nay}, {"I1", Cast::Yea}}},
        {"V2", Date{2014, 2, 1}, {{"A1", Cast::Yea}, {"A2", Cast::Abstain}, {"A3", Cast::Absent},
                                  {"B1", Cast::Yea}, {"B2", Cast::Nay}, {"I1", Cast::Absent}}},
    };
    return VoteMatrix(std::move(legs), std::move(rcs));
}

} // namespace

TEST_CASE("tallies count yea/nay/abstain per group, absences excluded") {
    VoteMatrix m = two_party_matrix();
    auto tallies = tally_by_party(m);
    // V1: PA and PB; V2: PA and PB -> 4 tallies
    REQUIRE(tallies.size() == 4);
    CHECK(tallies[0].group == "PA");
    CHECK(tallies[0].rollcall_id == "V1");
    CHECK(tallies[0].yea == 2);
    CHECK(tallies[0].nay == 1);
    CHECK(tallies[1].group == "PB");
    CHECK(tallies[1].nay == 2);
    // V2: PA has yea 1, abstain 1 (absent A3 not counted)
    CHECK(tallies[2].group == "PA");
    CHECK(tallies[2].yea == 1);
    CHECK(tallies[2].abstain == 1);
    CHECK(tallies[2].nay == 0);

    auto chamber = chamber_tallies(m);
    REQUIRE(chamber.size() == 2);
    CHECK(chamber[0].yea == 3);
    CHECK(chamber[0].nay == 3);
    CHECK(chamber[1].yea == 2);
    CHECK(chamber[1].nay == 1);
    CHECK(chamber[1].abstain == 1);
}

TEST_CASE("rice index hand values") {
    CHECK(*rice_index({tally("g", "V1", 80, 20)}) == doctest::Approx(0.6));
    CHECK(*rice_index({tally("g", "V1", 10, 0), tally("g", "V2", 7, 0)}) == doctest::Approx(1.0));
    CHECK(*rice_index({tally("g", "V1", 50, 50)}) == doctest::Approx(0.0));
    // unweighted mean over rollcalls
    CHECK(*rice_index({tally("g", "V1", 80, 20), tally("g", "V2", 50, 50)}) ==
          doctest::Approx(0.3));
    // abstentions never enter the ratio
    CHECK(*rice_index({tally("g", "V1", 80, 20, 900)}) == doctest::Approx(0.6));
}

TEST_CASE("rice is undefined without any yea/nay") {
    CHECK_FALSE(rice_index({}).has_value());
    CHECK_FALSE(rice_index({tally("g", "V1", 0, 0, 12)}).has_value());
}

TEST_CASE("rice ignores rollcall ids and order") {
    std::vector<GroupVoteTally> a = {tally("g", "V1", 80, 20), tally("g", "V2", 30, 70)};
    std::vector<GroupVoteTally> b = {tally("g", "X9", 30, 70), tally("g", "Q0", 80, 20)};
    CHECK(*rice_index(a) == doctest::Approx(*rice_index(b)));
}

TEST_CASE("unity weights rice by chamber closeness") {
    // single contested rollcall: chamber 50/50 -> weight 1, group 80/20 -> 0.6
    auto u = unity_index({tally("g", "V1", 80, 20)}, {tally("", "V1", 50, 50)});
    CHECK(*u == doctest::Approx(0.6));

    // unanimous group everywhere -> 1.0 whenever any weight is positive
    auto u2 = unity_index({tally("g", "V1", 10, 0), tally("g", "V2", 9, 0)},
                          {tally("", "V1", 60, 40), tally("", "V2", 99, 1)});
    CHECK(*u2 == doctest::Approx(1.0));

    // lopsided chamber vote fully discounted: V1 gets weight 0, so only V2
    // (group rice 1) contributes
    auto u3 = unity_index({tally("g", "V1", 5, 5), tally("g", "V2", 10, 0)},
                          {tally("", "V1", 100, 0), tally("", "V2", 50, 50)});
    CHECK(*u3 == doctest::Approx(1.0));
}

TEST_CASE("unity worked weights") {
    // group rice {1.0, 0.0}, chamber closeness {1.0, 0.0} -> weighted mean 1.0
    auto u = unity_index({tally("g", "V1", 10, 0), tally("g", "V2", 5, 5)},
                         {tally("", "V1", 50, 50), tally("", "V2", 100, 0)});
    CHECK(*u == doctest::Approx(1.0));

    // all weights zero -> undefined
    auto u2 = unity_index({tally("g", "V1", 10, 0)}, {tally("", "V1", 100, 0)});
    CHECK_FALSE(u2.has_value());

    // unmatched rollcall ids contribute nothing
    auto u3 = unity_index({tally("g", "V9", 10, 0)}, {tally("", "V1", 50, 50)});
    CHECK_FALSE(u3.has_value());
}

TEST_CASE("index series carries both values and the rollcall count") {
    VoteMatrix m = two_party_matrix();
    auto chamber = chamber_tallies(m);
    auto tallies = tally_by_party(m);
    std::vector<GroupVoteTally> pa;
    std::copy_if(tallies.begin(), tallies.end(), std::back_inserter(pa),
                 [](const auto& t) { return t.group == "PA"; });
    GroupIndexSeries s = make_index_series("PA", "2014", pa, chamber);
    CHECK(s.group == "PA");
    CHECK(s.period == "2014");
    CHECK(s.n_rollcalls == 2);
    // V1: |2-1|/3; V2: |1-0|/1 -> mean of (1/3, 1)
    CHECK(*s.rice == doctest::Approx((1.0 / 3.0 + 1.0) / 2.0));
    REQUIRE(s.unity.has_value());
    // V1 chamber 3/3 -> w=1; V2 chamber 2/1 -> w = 1 - 1/3 = 2/3
    CHECK(*s.unity == doctest::Approx((1.0 * (1.0 / 3.0) + (2.0 / 3.0) * 1.0) / (1.0 + 2.0 / 3.0)));
}

TEST_CASE("rice and unity always land in [0,1]") {
    std::mt19937 gen(99);
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n_rc = 1 + gen() % 8;
        std::vector<GroupVoteTally> group, chamber;
        for (std::size_t j = 0; j < n_rc; ++j) {
            std::string id = "V" + std::to_string(j);
            group.push_back(tally("g", id, gen() % 20, gen() % 20, gen() % 5));
            chamber.push_back(tally("", id, gen() % 50, gen() % 50, gen() % 10));
        }
        auto r = rice_index(group);
        auto u = unity_index(group, chamber);
        if (r) {
            CHECK(*r >= 0.0);
            CHECK(*r <= 1.0);
        }
        if (u) {
            CHECK(*u >= 0.0);
            CHECK(*u <= 1.0);
        }
    }
}

TEST_CASE("cohesion comparison pairs mean d2 with the indices") {
    // six cells over two groups and three periods; d2 falls as rice rises
    std::vector<GroupedScore> scores;
    std::vector<GroupIndexSeries> indices;
    const char* periods[] = {"2014", "2015", "2016"};
    for (int p = 0; p < 3; ++p) {
        for (int g = 0; g < 2; ++g) {
            std::string group = g == 0 ? "A" : "B";
            double rice = 0.2 + 0.12 * p + 0.3 * g;
            double d2 = 1.0 - rice + (g == 0 ? 0.01 : -0.01);
            // two legislators per cell with spread around the cell mean
            scores.push_back({group, periods[p], d2 + 0.05});
            scores.push_back({group, periods[p], d2 - 0.05});
            GroupIndexSeries s;
            s.group = group;
            s.period = periods[p];
            s.rice = rice;
            s.unity = rice * 0.9;
            s.n_rollcalls = 10;
            indices.push_back(s);
        }
    }
    CohesionComparison cmp = cohesion_comparison(scores, indices);
    CHECK(cmp.n_cells == 6);
    REQUIRE(cmp.vs_rice.pearson_r.has_value());
    CHECK(*cmp.vs_rice.pearson_r < -0.99); // exactly linear up to rounding
    REQUIRE(cmp.vs_unity.pearson_r.has_value());
    CHECK(*cmp.vs_unity.pearson_r < -0.99);
    CHECK(cmp.vs_rice.n == 6);
}

TEST_CASE("cohesion comparison wants at least 3 matched cells") {
    std::vector<GroupedScore> scores = {{"A", "2014", 0.5}, {"B", "2014", 0.4}};
    std::vector<GroupIndexSeries> indices;
    GroupIndexSeries s;
    s.group = "A";
    s.period = "2014";
    s.rice = 0.5;
    indices.push_back(s);
    CHECK_THROWS_AS((void)cohesion_comparison(scores, indices), DataError);
}

TEST_CASE("constant mean d2 reports missing correlation") {
    std::vector<GroupedScore> scores;
    std::vector<GroupIndexSeries> indices;
    const char* periods[] = {"p1", "p2", "p3"};
    for (int p = 0; p < 3; ++p) {
        scores.push_back({"A", periods[p], 0.7});
        GroupIndexSeries s;
        s.group = "A";
        s.period = periods[p];
        s.rice = 0.1 * (p + 1);
        indices.push_back(s);
    }
    CohesionComparison cmp = cohesion_comparison(scores, indices);
    CHECK(cmp.n_cells == 3);
    CHECK_FALSE(cmp.vs_rice.pearson_r.has_value());
    CHECK(cmp.vs_rice.n == 3);
    CHECK_FALSE(cmp.vs_unity.pearson_r.has_value());
    CHECK(cmp.vs_unity.n == 0); // no unity values at all
}
