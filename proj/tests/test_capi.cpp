#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "genhyp/genhyp.h"

using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::string read_file(const std::string& name)
{
    std::ifstream in(std::string(GENHYP_TEST_DATA) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Owned {
    char* ptr = nullptr;
    ~Owned() { genhyp_string_free(ptr); }
};

}  // namespace

TEST_CASE("triangle entry points")
{
    const int eps[3] = {0, 0, 0};
    genhyp_triangle tri{};
    REQUIRE(genhyp_triangle_from_lengths(eps, (const double[3]){0.0, 0.0, 0.0}, &tri) == GENHYP_OK);
    for (double t : tri.theta) CHECK(t == Approx(2.0));

    const int hyper[3] = {1, 1, 1};
    REQUIRE(genhyp_triangle_sas(hyper, 1.0, 1.0, kPi / 2, &tri) == GENHYP_OK);
    CHECK(tri.len[2] == Approx(std::acosh(std::cosh(1.0) * std::cosh(1.0))));

    double dl[9], dt[9];
    REQUIRE(genhyp_triangle_jacobians(&tri, dl, dt) == GENHYP_OK);
    // mutual inverses
    double prod[9] = {0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) prod[3 * i + j] += dl[3 * i + k] * dt[3 * k + j];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(prod[3 * i + j] == Approx(i == j ? 1.0 : 0.0).margin(1e-10));
}

TEST_CASE("triangle errors map to status codes")
{
    genhyp_triangle tri{};
    const int eps[3] = {1, 1, 1};
    CHECK(genhyp_triangle_from_angles(eps, (const double[3]){1.2, 1.2, 1.2}, &tri) ==
          GENHYP_ERR_DOMAIN);
    CHECK(std::strlen(genhyp_last_error()) > 0);

    const int bad[3] = {7, 0, 0};
    CHECK(genhyp_triangle_from_angles(bad, (const double[3]){1.0, 1.0, 1.0}, &tri) ==
          GENHYP_ERR_INPUT);

    const int mixed[3] = {-1, -1, 0};
    CHECK(genhyp_triangle_sas(mixed, 0.0, 0.0, 1.0, &tri) == GENHYP_ERR_REALIZABILITY);
}

TEST_CASE("verify laws through the c api")
{
    int pass = 0;
    Owned report;
    REQUIRE(genhyp_verify_laws("1,1,1;0,0,0", 50, 7, 1e-9, &pass, &report.ptr) == GENHYP_OK);
    CHECK(pass == 1);
    CHECK(std::string(report.ptr).find("\"pass\": true") != std::string::npos);

    // impossible tolerance
    REQUIRE(genhyp_verify_laws("1,1,1", 50, 7, 1e-30, &pass, nullptr) == GENHYP_OK);
    CHECK(pass == 0);

    CHECK(genhyp_verify_laws("nonsense", 10, 7, 1e-9, &pass, nullptr) == GENHYP_ERR_INPUT);
}

TEST_CASE("surface handles and penner round trip")
{
    const std::string mesh = read_file("punctured_torus.json");
    genhyp_surface* s = nullptr;
    REQUIRE(genhyp_surface_parse(mesh.c_str(), &s) == GENHYP_OK);
    CHECK(genhyp_surface_vertex_count(s) == 1);
    CHECK(genhyp_surface_edge_count(s) == 3);
    CHECK(genhyp_surface_triangle_count(s) == 2);
    CHECK(std::string(genhyp_surface_vertex_id(s, 0)) == "v0");
    CHECK(std::string(genhyp_surface_edge_id(s, 2)) == "2");
    CHECK(genhyp_surface_edge_id(s, 9) == nullptr);

    Owned serialized;
    REQUIRE(genhyp_surface_serialize(s, &serialized.ptr) == GENHYP_OK);
    genhyp_surface* again = nullptr;
    REQUIRE(genhyp_surface_parse(serialized.ptr, &again) == GENHYP_OK);
    genhyp_surface_free(again);

    double values[3];
    REQUIRE(genhyp_surface_edge_values(s, R"({"edge_weights":{"0":1,"1":2,"2":3}})", values) ==
            GENHYP_OK);
    CHECK(values[1] == 2.0);
    CHECK(genhyp_surface_edge_values(s, R"({"edge_weights":{"0":1}})", values) ==
          GENHYP_ERR_VALIDATION);

    const double l[3] = {0.0, 0.0, 0.0};
    double z[3];
    REQUIRE(genhyp_penner_map(s, l, z) == GENHYP_OK);
    for (double v : z) CHECK(v == Approx(2.0));

    int feasible = -1;
    Owned witness;
    REQUIRE(genhyp_penner_check(s, z, &feasible, &witness.ptr) == GENHYP_OK);
    CHECK(feasible == 1);
    CHECK(witness.ptr == nullptr);

    const double zero[3] = {0.0, 0.0, 0.0};
    Owned witness2;
    REQUIRE(genhyp_penner_check(s, zero, &feasible, &witness2.ptr) == GENHYP_OK);
    CHECK(feasible == 0);
    REQUIRE(witness2.ptr != nullptr);
    CHECK(std::string(witness2.ptr).front() == '[');

    double solved[3];
    int iterations = 0;
    double residual = 0.0;
    REQUIRE(genhyp_penner_solve(s, z, 1e-10, 50, solved, &iterations, &residual) == GENHYP_OK);
    for (double v : solved) CHECK(v == Approx(0.0).margin(1e-9));
    CHECK(residual <= 1e-10);
    CHECK(genhyp_penner_solve(s, zero, 1e-10, 50, solved, nullptr, nullptr) ==
          GENHYP_ERR_INFEASIBLE);
    CHECK(std::strlen(genhyp_last_error_detail()) > 0);

    genhyp_surface_free(s);
}

TEST_CASE("packing through the c api")
{
    const std::string mesh = read_file("tetrahedron.json");
    genhyp_surface* s = nullptr;
    REQUIRE(genhyp_surface_parse(mesh.c_str(), &s) == GENHYP_OK);

    const std::vector<double> phi(6, 2.0);
    const std::vector<double> r(4, 0.0);
    std::vector<double> k(4);
    REQUIRE(genhyp_packing_curvature(s, 0, 0, phi.data(), r.data(), k.data()) == GENHYP_OK);
    for (double v : k) CHECK(v == Approx(6.0));

    const std::vector<double> target(4, 3.0);
    std::vector<double> solved(4);
    int iterations = 0;
    double residual = 0.0;
    REQUIRE(genhyp_packing_solve(s, 0, 0, phi.data(), target.data(), 1e-10, 50, solved.data(),
                                 &iterations, &residual) == GENHYP_OK);
    for (double v : solved) CHECK(v == Approx(std::log(2.0)));

    CHECK(genhyp_packing_solve(s, 1, 0, phi.data(), target.data(), 1e-10, 50, solved.data(),
                               nullptr, nullptr) == GENHYP_ERR_UNSUPPORTED);

    // a short flow with trace
    std::vector<double> r_final(4);
    Owned trace;
    REQUIRE(genhyp_packing_flow(s, 0, 0, phi.data(), r.data(), target.data(), 0.05, 10,
                                r_final.data(), &trace.ptr) == GENHYP_OK);
    REQUIRE(trace.ptr != nullptr);
    const std::string csv(trace.ptr);
    CHECK(csv.rfind("t,v0,v1,v2,v3,K_v0,K_v1,K_v2,K_v3,gradnorm\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);  // header + 11 samples

    genhyp_surface_free(s);
}

TEST_CASE("pattern through the c api")
{
    const std::string mesh = read_file("digon_pair.json");
    genhyp_cell_surface* s = nullptr;
    REQUIRE(genhyp_cell_surface_parse(mesh.c_str(), &s) == GENHYP_OK);
    CHECK(genhyp_cell_surface_face_count(s) == 2);
    CHECK(std::string(genhyp_cell_surface_face_id(s, 0)) == "f0");

    const std::vector<double> theta(2, 2.0);
    const std::vector<double> r{1.3, 1.5};
    std::vector<double> k(2);
    REQUIRE(genhyp_pattern_curvature(s, -1, -1, 0.0, theta.data(), r.data(), k.data()) ==
            GENHYP_OK);

    std::vector<double> solved(2);
    int iterations = 0;
    double residual = 0.0;
    REQUIRE(genhyp_pattern_solve(s, -1, -1, 0.0, theta.data(), k.data(), 1e-10, 50, solved.data(),
                                 &iterations, &residual) == GENHYP_OK);
    CHECK(solved[0] == Approx(1.3).margin(1e-8));
    CHECK(solved[1] == Approx(1.5).margin(1e-8));

    std::vector<double> r_final(2);
    Owned trace;
    REQUIRE(genhyp_pattern_flow(s, -1, -1, 0.0, theta.data(), r.data(), k.data(), 0.01, 5,
                                r_final.data(), &trace.ptr) == GENHYP_OK);
    CHECK(std::string(trace.ptr).rfind("t,f0,f1,K_f0,K_f1,gradnorm\n", 0) == 0);

    genhyp_cell_surface_free(s);
}

TEST_CASE("parse errors map to status codes")
{
    genhyp_surface* s = nullptr;
    CHECK(genhyp_surface_parse("{", &s) == GENHYP_ERR_PARSE);
    genhyp_cell_surface* c = nullptr;
    CHECK(genhyp_cell_surface_parse("{}", &c) == GENHYP_ERR_PARSE);
}
