#include "tforge/commands.hpp"
#include "tforge/errors.hpp"
#include "tforge/relations.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tforge;

namespace {

std::filesystem::path tampered_relations() {
    std::ifstream in(default_relations_path());
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    const auto pos = text.find("\"-3/7\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 6, "\"-2/7\"");
    const auto path = std::filesystem::temp_directory_path() / "tforge_tampered.json";
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_SUITE("commands") {

TEST_CASE("basis") {
    const auto r = cmd_basis(5, false);
    CHECK(r.status == Status::pass);
    CHECK(r.results["count"] == 5);
    CHECK(render_text(r).find("count=5, F_5=5") != std::string::npos);
    CHECK(cmd_basis(7, false).results["count"] == 13);
    const auto m = cmd_basis(4, true);
    CHECK(m.results["indices"].dump() == "[[2,2]]");
    CHECK(render_text(m).find("count=1, d_4=1") != std::string::npos);
    CHECK_THROWS_AS(cmd_basis(1, false), UsageError);
    CHECK_THROWS_AS(cmd_basis(65, false), UsageError);
}

TEST_CASE("eval") {
    Evaluator ev(EvalConfig{.digits = 15});
    const auto r = cmd_eval("2", ev);
    CHECK(r.results["value"] == "1.233700550136170");
    CHECK(render_text(r).find("1.233700550136170") != std::string::npos);
    CHECK_THROWS_AS(cmd_eval("1,2", ev), UsageError);
}

TEST_CASE("verify-paper") {
    Evaluator ev;
    const auto r = cmd_verify_paper(50, default_relations_path(), ev);
    CHECK(r.status == Status::pass);
    for (const auto& c : r.results["checks"]) {
        CAPTURE(c.dump());
        CHECK(c["pass"].get<bool>());
        if (c.contains("data")) CHECK(c["data"]["residual_exp"].get<long>() <= -40);
    }
    const auto low = cmd_verify_paper(20, default_relations_path(), ev);
    CHECK(low.status == Status::pass);
    for (const auto& c : low.results["checks"]) {
        if (c.contains("data")) CHECK(c["data"]["residual_exp"].get<long>() <= -10);
    }
}

TEST_CASE("tampered relation fails") {
    Evaluator ev;
    const auto path = tampered_relations();
    const auto r = cmd_verify_paper(50, path, ev);
    CHECK(r.status == Status::fail);
    bool eq1_failed = false;
    for (const auto& c : r.results["checks"]) {
        if (c["name"] == "Eq.(1) residual" && !c["pass"].get<bool>()) eq1_failed = true;
    }
    CHECK(eq1_failed);
    CHECK(exit_code_for(r.status) == ExitCode::verification_fail);
    std::filesystem::remove(path);
}

TEST_CASE("scan weight 5") {
    Evaluator ev(EvalConfig{.digits = 60});
    const auto r = cmd_scan(5, 60, 1000000, default_relations_path(), ev, 2);
    CHECK(r.status == Status::pass);
    const auto& rows = r.results["rows"];
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) {
        if (row["target"] == "t(5)") {
            const std::string want = R"j(["0/1","6/1","0/1","0/1","7/1"])j";
            CHECK(row["coefficients"].dump() == want);
            CHECK(row["provenance"] == "elimination");
            CHECK(row["exact_matches_numeric"].get<bool>());
        }
        if (row["target"] == "t(4,1)") {
            const std::string want = R"j(["0/1","-1/1","4/1","0/1","1/2"])j";
            CHECK(row["coefficients"].dump() == want);
        }
    }
    const std::string text = render_text(r);
    CHECK(text.find("1/2") != std::string::npos);
    CHECK(text.find("status: pass") != std::string::npos);
}

TEST_CASE("scan weight 2 and parallel determinism") {
    Evaluator ev;
    const auto r = cmd_scan(2, 60, 1000000, default_relations_path(), ev);
    CHECK(r.results["rows"].size() == 1);
    CHECK(r.status == Status::pass);
    Evaluator a, b;
    const auto serial = cmd_scan(6, 60, 1000000, default_relations_path(), a, 1);
    const auto parallel = cmd_scan(6, 60, 1000000, default_relations_path(), b, 4);
    CHECK(serial.results.dump() == parallel.results.dump());
    CHECK(serial.results["rows"].size() == 16);
    CHECK(serial.status == Status::pass);
    CHECK_THROWS_AS(cmd_scan(11, 60, 1000000, default_relations_path(), ev), UsageError);
}

TEST_CASE("exit codes") {
    CHECK(static_cast<int>(exit_code_for(Status::pass)) == 0);
    CHECK(static_cast<int>(exit_code_for(Status::fail)) == 1);
    CHECK(static_cast<int>(exit_code_for(Status::none_found)) == 4);
    CHECK(to_string(Status::none_found) == "none-found");
}

}
