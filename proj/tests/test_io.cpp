#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <hullsep/gram.hpp>
#include <hullsep/instance.hpp>
#include <hullsep/report.hpp>

using namespace hullsep;

namespace {

Instance parse_text(const std::string& text) {
    return parse_instance_json(nlohmann::json::parse(text), "inline");
}

std::string repo_file(const std::string& rel) { return std::string(HULLSEP_REPO_DIR) + "/" + rel; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string strip_wall(const std::string& text) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = text.find('\n', pos);
        const std::string line = text.substr(pos, end == std::string::npos ? end : end - pos);
        if (line.find("\"wall_ms\"") == std::string::npos) out += line + "\n";
        pos = end == std::string::npos ? text.size() : end + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("instance files parse into the declared bodies") {
    const Instance hulls = parse_text(R"({
        "name": "pentagon-vs-point",
        "K": {"type": "point_set",
              "points": [[0, 0], [4, 3], [8, 2], [7, 0], [5, -2]]},
        "K_prime": {"type": "point_set", "points": [[1, 5]]}
    })");
    REQUIRE(hulls.k.as_point_set() != nullptr);
    CHECK(hulls.k.as_point_set()->points().size() == 5);
    CHECK(hulls.k_prime.as_point_set()->points().size() == 1);
    CHECK(hulls.k.dim() == 2);
    CHECK(hulls.name == "pentagon-vs-point");
    CHECK(hulls.k.as_point_set()->points()[1] == Vec{4.0, 3.0});

    const Instance balls = parse_text(R"({
        "K": {"type": "ball", "center": [-4, 0], "radius": 2.1},
        "K_prime": {"type": "ball", "center": [4, 0], "radius": 2.1}
    })");
    REQUIRE(balls.k.as_ball() != nullptr);
    CHECK(balls.k.as_ball()->center() == Vec{-4.0, 0.0});
    CHECK(balls.k.as_ball()->radius() == 2.1);
    CHECK(balls.k_prime.as_ball()->center() == Vec{4.0, 0.0});

    const Instance box = parse_text(R"({
        "K": {"type": "polytope",
              "rows": [[1, 0], [-1, 0], [0, 1], [0, -1]],
              "rhs": [1, 0, 1, 0]},
        "K_prime": {"type": "point_set", "points": [[2, 0.5]]}
    })");
    REQUIRE(box.k.as_polytope() != nullptr);
    CHECK(box.k.as_polytope()->rows().size() == 4);
    CHECK(box.k.as_polytope()->rhs() == Vec{1.0, 0.0, 1.0, 0.0});
}

TEST_CASE("instance start pair is parsed and validated") {
    const Instance with_start = parse_text(R"({
        "K": {"type": "point_set", "points": [[0, 0], [2, 0], [0, 2]]},
        "K_prime": {"type": "point_set", "points": [[5, 5]]},
        "start": {"p": [1, 0], "p_prime": [5, 5]}
    })");
    REQUIRE(with_start.start.has_value());
    CHECK(with_start.start->first == Vec{1.0, 0.0});
    CHECK(with_start.start->second == Vec{5.0, 5.0});

    CHECK_THROWS_AS(parse_text(R"({
        "K": {"type": "point_set", "points": [[0, 0]]},
        "K_prime": {"type": "point_set", "points": [[1, 1]]},
        "start": {"p": [0, 0]}
    })"),
                    ParseError);
    CHECK_THROWS_AS(parse_text(R"({
        "K": {"type": "point_set", "points": [[0, 0]]},
        "K_prime": {"type": "point_set", "points": [[1, 1]]},
        "start": {"p": [0, 0, 0], "p_prime": [1, 1]}
    })"),
                    DimensionMismatch);
}

TEST_CASE("malformed instances are rejected with context") {
    CHECK_THROWS_AS(parse_text(R"({"K": {"type": "ball", "center": [0], "radius": 1}})"),
                    ParseError);
    CHECK_THROWS_AS(parse_text(R"({
        "K": {"type": "wedge", "points": [[0]]},
        "K_prime": {"type": "point_set", "points": [[1]]}
    })"),
                    ParseError);
    CHECK_THROWS_AS(parse_text(R"({
        "K": {"type": "point_set", "points": [[0, "x"]]},
        "K_prime": {"type": "point_set", "points": [[1, 1]]}
    })"),
                    ParseError);
    CHECK_THROWS_AS(parse_text(R"({
        "K": {"type": "point_set", "points": []},
        "K_prime": {"type": "point_set", "points": [[1, 1]]}
    })"),
                    EmptyBody);
    CHECK_THROWS_AS(parse_text(R"({
        "K": {"type": "point_set", "points": [[0, 0], [1]]},
        "K_prime": {"type": "point_set", "points": [[1, 1]]}
    })"),
                    DimensionMismatch);
    CHECK_THROWS_AS(parse_text(R"({
        "K": {"type": "point_set", "points": [[0, 0]]},
        "K_prime": {"type": "point_set", "points": [[1, 1, 1]]}
    })"),
                    DimensionMismatch);
    CHECK_THROWS_AS(parse_text(R"({"K_prime": {"type": "point_set", "points": [[1]]}})"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance("/nonexistent/path/to/instance.json"), ParseError);

    const auto bad_json = std::filesystem::temp_directory_path() / "hullsep_bad_instance.json";
    std::ofstream(bad_json) << "{ not json";
    CHECK_THROWS_AS(parse_instance(bad_json.string()), ParseError);
    std::filesystem::remove(bad_json);
}

TEST_CASE("instance round-trip preserves every coordinate bit") {
    Instance inst{
        ConvexBody{PointSetBody({{0.1, 1.0 / 3.0}, {1e-17, -0.0}, {1.7976931348623157e308, 1.0},
                                 {5e-324, 2.0 / 7.0}})},
        ConvexBody{BallBody({-0.30000000000000004, 0.1 + 0.2}, 0.012345678901234567)},
        std::make_pair(Vec{0.1, 1.0 / 3.0}, Vec{-0.30000000000000004, 0.30000000000000004}),
        "bit-exact",
        "round-trip"};

    const std::string text = emit_instance(inst);
    const Instance back = parse_instance_json(nlohmann::json::parse(text), "round-trip");

    REQUIRE(back.k.as_point_set() != nullptr);
    CHECK(back.k.as_point_set()->points() == inst.k.as_point_set()->points());
    CHECK(back.k_prime.as_ball()->center() == inst.k_prime.as_ball()->center());
    CHECK(back.k_prime.as_ball()->radius() == inst.k_prime.as_ball()->radius());
    REQUIRE(back.start.has_value());
    CHECK(back.start->first == inst.start->first);
    CHECK(back.start->second == inst.start->second);
    CHECK(back.name == inst.name);
    CHECK(back.expected == inst.expected);

    CHECK(emit_instance(back) == text);
}

TEST_CASE("shipped instance files parse and re-emit stably") {
    const std::vector<std::string> files = {
        "instances/separated_balls.json",   "instances/pentagon_point.json",
        "instances/overlapping_hulls.json", "instances/touching_squares.json",
        "instances/box_vs_point.json",      "instances/tiny_hulls.json",
        "instances/shallow_crossing.json"};
    for (const auto& rel : files) {
        INFO(rel);
        const Instance inst = parse_instance(repo_file(rel));
        CHECK(inst.k.dim() == inst.k_prime.dim());
        CHECK(!inst.name.empty());
        const std::string once = emit_instance(inst);
        const Instance again = parse_instance_json(nlohmann::json::parse(once), rel);
        CHECK(emit_instance(again) == once);
    }
}

TEST_CASE("report round-trip reproduces the serialized form byte for byte") {
    const Instance inst = parse_instance(repo_file("instances/tiny_hulls.json"));
    RunOptions opt;
    opt.eps = 1e-3;

    const RunResultI r1 = run_intersect(inst.k, inst.k_prime, opt, inst.start);
    REQUIRE(r1.certificate.kind == CertKind::Witness);
    const RunResultII r2 = run_distance(inst.k, inst.k_prime, r1.certificate.pair, opt);
    const RunReport rep =
        make_report("distance", inst.name, opt, r2.certificate, r2.trace, 12.5);

    const std::string text = emit_report(rep);
    const RunReport back = parse_report_json(nlohmann::json::parse(text), "round-trip");
    CHECK(emit_report(back) == text);

    CHECK(back.command == "distance");
    CHECK(back.instance_name == "tiny-hulls");
    CHECK(back.config.eps == opt.eps);
    CHECK(back.config.strategy == PivotStrategy::MaxViolation);
    REQUIRE(back.distance_cert.has_value());
    CHECK(back.distance_cert->delta == r2.certificate.delta);
    CHECK(back.distance_cert->lower == r2.certificate.lower);
    CHECK(back.distance_cert->pair.p == r2.certificate.pair.p);
    CHECK(back.distance_cert->h_v.normal == r2.certificate.h_v.normal);
    CHECK(back.counters.support_calls == r2.trace.support_calls);
    CHECK(back.wall_ms == 12.5);
}

TEST_CASE("witness and intersection reports round-trip") {
    const Instance pent = parse_instance(repo_file("instances/pentagon_point.json"));
    const RunResultI rw = run_intersect(pent.k, pent.k_prime);
    REQUIRE(rw.certificate.kind == CertKind::Witness);
    const RunReport wrep = make_report("intersect", pent.name, RunOptions{}, rw.certificate,
                                       rw.trace, 0.25);
    const std::string wtext = emit_report(wrep);
    const RunReport wback = parse_report_json(nlohmann::json::parse(wtext), "w");
    CHECK(emit_report(wback) == wtext);
    REQUIRE(wback.intersect_cert.has_value());
    CHECK(wback.intersect_cert->kind == CertKind::Witness);
    REQUIRE(wback.intersect_cert->separator.has_value());
    CHECK(wback.intersect_cert->separator->offset == rw.certificate.separator->offset);

    const Instance over = parse_instance(repo_file("instances/overlapping_hulls.json"));
    const RunResultI ri = run_intersect(over.k, over.k_prime);
    REQUIRE(ri.certificate.kind == CertKind::Intersection);
    const RunReport irep =
        make_report("intersect", over.name, RunOptions{}, ri.certificate, ri.trace, 1.0);
    const std::string itext = emit_report(irep);
    const RunReport iback = parse_report_json(nlohmann::json::parse(itext), "i");
    CHECK(emit_report(iback) == itext);
    REQUIRE(iback.intersect_cert.has_value());
    CHECK(iback.intersect_cert->basis_side == ri.certificate.basis_side);
    CHECK(iback.intersect_cert->relative_gap_basis == ri.certificate.relative_gap_basis);
    CHECK(iback.gap_history.size() == ri.trace.gap_history.values().size());
}

TEST_CASE("fresh certificates pass verification") {
    for (const auto& rel :
         {"instances/separated_balls.json", "instances/tiny_hulls.json",
          "instances/box_vs_point.json", "instances/pentagon_point.json"}) {
        INFO(rel);
        const Instance inst = parse_instance(repo_file(rel));
        const RunResultI r1 = run_intersect(inst.k, inst.k_prime);
        RunReport rep;
        if (r1.certificate.kind == CertKind::Witness) {
            const RunResultII r2 = run_distance(inst.k, inst.k_prime, r1.certificate.pair);
            rep = make_report("distance", inst.name, RunOptions{}, r2.certificate, r2.trace,
                              0.0);
        } else {
            rep = make_report("intersect", inst.name, RunOptions{}, r1.certificate, r1.trace,
                              0.0);
        }
        const VerifyResult res = verify_report(inst, rep);
        for (const auto& c : res.checks) {
            INFO(c.name << " residual=" << c.residual << " " << c.note);
            CHECK(c.pass);
        }
        CHECK_NOTHROW(require_verified(inst, rep));
    }
}

TEST_CASE("verification pinpoints corrupted certificate fields") {
    const Instance inst = parse_instance(repo_file("instances/separated_balls.json"));
    const RunResultI r1 = run_intersect(inst.k, inst.k_prime);
    const RunResultII r2 = run_distance(inst.k, inst.k_prime, r1.certificate.pair);
    const RunReport good =
        make_report("distance", inst.name, RunOptions{}, r2.certificate, r2.trace, 0.0);
    REQUIRE(verify_report(inst, good).all_pass());

    auto failing = [&](const RunReport& rep) { return verify_report(inst, rep).failures(); };

    RunReport bad = good;
    bad.distance_cert->delta = 2.0;
    auto names = failing(bad);
    CHECK(std::find(names.begin(), names.end(), "delta-is-pair-distance") != names.end());

    bad = good;
    bad.distance_cert->h_v.offset += 1.0;
    names = failing(bad);
    CHECK(std::find(names.begin(), names.end(), "plane-contact-v") != names.end());
    CHECK(std::find(names.begin(), names.end(), "plane-supports-K") != names.end());

    bad = good;
    bad.distance_cert->lower = bad.distance_cert->delta * 1.5;
    names = failing(bad);
    CHECK(std::find(names.begin(), names.end(), "sandwich-lower") != names.end());

    bad = good;
    bad.distance_cert->pair.p_prime = Vec{40.0, 0.0};
    names = failing(bad);
    CHECK(!names.empty());

    const Instance pent = parse_instance(repo_file("instances/pentagon_point.json"));
    const RunResultI rw = run_intersect(pent.k, pent.k_prime);
    RunReport wrep =
        make_report("intersect", pent.name, RunOptions{}, rw.certificate, rw.trace, 0.0);
    REQUIRE(verify_report(pent, wrep).all_pass());
    wrep.intersect_cert->separator->offset = 5.0;
    const auto wnames = verify_report(pent, wrep).failures();
    CHECK(std::find(wnames.begin(), wnames.end(), "separator-is-pair-bisector") !=
          wnames.end());
    CHECK(std::find(wnames.begin(), wnames.end(), "witness-margin-K") != wnames.end());

    wrep.intersect_cert->pair.p_prime = wrep.intersect_cert->pair.p;
    const auto dnames = verify_report(pent, wrep).failures();
    CHECK(std::find(dnames.begin(), dnames.end(), "certificate-internally-consistent") !=
          dnames.end());
}

TEST_CASE("golden reports verify and corrupted controls fail") {
    const std::vector<std::pair<std::string, std::string>> goldens = {
        {"instances/separated_balls.json", "tests/golden/ball_distance.json"},
        {"instances/pentagon_point.json", "tests/golden/pentagon_witness.json"},
        {"instances/tiny_hulls.json", "tests/golden/tiny_distance.json"},
        {"instances/overlapping_hulls.json", "tests/golden/overlap_intersection.json"},
    };
    for (const auto& [inst_rel, rep_rel] : goldens) {
        INFO(rep_rel);
        const Instance inst = parse_instance(repo_file(inst_rel));
        const RunReport rep = parse_report(repo_file(rep_rel));
        const VerifyResult res = verify_report(inst, rep);
        for (const auto& c : res.checks) {
            INFO(c.name << " residual=" << c.residual);
            CHECK(c.pass);
        }
        const std::string text = read_file(repo_file(rep_rel));
        CHECK(emit_report(parse_report_json(nlohmann::json::parse(text), rep_rel)) == text);
    }

    const std::vector<std::pair<std::string, std::string>> corrupted = {
        {"instances/pentagon_point.json", "tests/golden/corrupted_offset.json"},
        {"instances/separated_balls.json", "tests/golden/corrupted_delta.json"},
    };
    for (const auto& [inst_rel, rep_rel] : corrupted) {
        INFO(rep_rel);
        const Instance inst = parse_instance(repo_file(inst_rel));
        const RunReport rep = parse_report(repo_file(rep_rel));
        CHECK(!verify_report(inst, rep).all_pass());
        CHECK_THROWS_AS(require_verified(inst, rep), VerificationFailed);
    }
}

TEST_CASE("golden reports match fresh runs byte for byte outside wall time") {
    const Instance inst = parse_instance(repo_file("instances/separated_balls.json"));
    RunOptions opt;
    const RunResultI r1 = run_intersect(inst.k, inst.k_prime, opt, inst.start);
    REQUIRE(r1.certificate.kind == CertKind::Witness);
    const RunResultII r2 = run_distance(inst.k, inst.k_prime, r1.certificate.pair, opt);
    RunTrace merged = r2.trace;
    merged.iterations += r1.trace.iterations;
    merged.support_calls += r1.trace.support_calls;
    merged.arith_ops += r1.trace.arith_ops;
    merged.precompute_ops += r1.trace.precompute_ops;
    const RunReport fresh =
        make_report("distance", inst.name, opt, r2.certificate, merged, 0.0);
    CHECK(strip_wall(emit_report(fresh)) ==
          strip_wall(read_file(repo_file("tests/golden/ball_distance.json"))));
}

TEST_CASE("limit reports carry the best pair and fail closed on verification") {
    const Instance over = parse_instance(repo_file("instances/overlapping_hulls.json"));
    RunOptions opt;
    opt.max_iter = 3;
    try {
        run_intersect(over.k, over.k_prime, opt);
        FAIL("expected the iteration limit to fire");
    } catch (const MaxIterExceeded& e) {
        const RunReport rep = make_limit_report("intersect", over.name, opt, e, 0.0);
        const std::string text = emit_report(rep);
        const RunReport back = parse_report_json(nlohmann::json::parse(text), "limit");
        CHECK(emit_report(back) == text);
        REQUIRE(back.best_pair.has_value());
        CHECK(back.counters.termination == "max-iter");
        CHECK(back.best_pair->gap == e.best.gap);

        const VerifyResult res = verify_report(over, back);
        CHECK(res.all_pass());
        CHECK(res.checks.size() >= 3);

        RunReport none = back;
        none.best_pair.reset();
        CHECK(!verify_report(over, none).all_pass());
    }
}
