#include <catch2/catch_amalgamated.hpp>

#include "m24/serialize.hpp"

using namespace m24;

TEST_CASE("series serialization round structure") {
    RatSeries s = eta_power(3, Rat(3));
    json j = qseries_json(s);
    CHECK(j["denom"] == 24);
    CHECK(j["trunc"] == "3");
    // first term is q^{1/8} with coefficient 1: lattice exponent 3 on /24
    CHECK(j["terms"][0][0] == 3);
    CHECK(j["terms"][0][1] == "1");
    CHECK(j["terms"][0][2] == "0");
}

TEST_CASE("jacobi serialization carries both lattices") {
    JacobiSeries th = theta_kmr(1, 2, 1, Rat(2));
    json j = jacobi_json(th);
    CHECK(j["qdenom"] == 1);
    CHECK(j["zdenom"] == 2);
    CHECK(j["rows"].size() == th.rows().size());
    std::string csv = jacobi_csv(th);
    CHECK(csv.find("q\\zeta") == 0);
}

TEST_CASE("records carry the uniform schema") {
    json r = record("gauss", json{{"a", 1}}, "context", json{{"v", 1}}, true);
    for (const char* key : {"op", "params", "ref", "values", "pass"}) CHECK(r.contains(key));
}

TEST_CASE("reports are byte-stable") {
    auto build = [] {
        json out = json::array();
        for (const auto& c : all_classes()) out.push_back(class_json(c));
        out.push_back(qseries_json(mock_h(Rat(5)).series));
        out.push_back(trace_json(poincare_c_trace(1, 1, PoincareRequest{1, 1, 1, 1, 50}), true));
        return out.dump();
    };
    std::string a = build();
    std::string b = build();
    CHECK(a == b);
}

TEST_CASE("class table dump") {
    json out = json::array();
    for (const auto& c : all_classes()) out.push_back(class_json(c));
    CHECK(out.size() == 21);
    CHECK(out[0]["label"] == "1A");
    CHECK(out[20]["label"] == "23AB");
    CHECK(out[16]["level"] == 144);  // the order-12, h = 12 row
}
