#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "futs_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace futs;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome futs_cmd(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return fixtures::data_path(name); }

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "futs_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write_tmp(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_CASE("bisim") {
    auto r = futs_cmd({"bisim", data("fig1.futs")});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "{ {s0}, {s1}, {s2}, {s3} }\n");
    CHECK(futs_cmd({"bisim", data("w3.futs")}).out == "{ {x, x'}, {y, z} }\n");

    const std::string q = (scratch() / "w3_quotient.futs").string();
    CHECK(futs_cmd({"bisim", data("w3.futs"), "--quotient", q}).code == cli::kOk);
    CHECK(fixtures::load_path(q).states().size() == 2);

    const auto bad = futs_cmd({"bisim", write_tmp("bad.futs", "futs\nlabels A0 = {a}\nstates {\n")});
    CHECK(bad.code == cli::kUsage);
    CHECK_THAT(bad.err, Catch::Matchers::ContainsSubstring("error"));
    CHECK(futs_cmd({"bisim", (scratch() / "missing.futs").string()}).code == cli::kUsage);
    CHECK(futs_cmd({}).code == cli::kUsage);
}

TEST_CASE("reduce") {
    const std::string out = (scratch() / "fig1_wts.futs").string();
    const std::string map = (scratch() / "fig1_wts.map").string();
    auto r = futs_cmd({"reduce", data("fig1.futs"), "--to", "wts", "-o", out, "--map", map});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "wts: 9 states (4 original, 5 intermediate)\n");
    CHECK(fixtures::read_text(out) == fixtures::read_text(data("fig1_wts.golden.futs")));
    CHECK(fixtures::read_text(map) == "s0 -> s0\ns1 -> s1\ns2 -> s2\ns3 -> s3\n");

    const std::string w = (scratch() / "w3_wts.futs").string();
    CHECK(futs_cmd({"reduce", data("w3.futs"), "--to", "wts", "-o", w}).out == "wts: 4 states\n");

    const auto nested = futs_cmd({"reduce", data("fig1.futs"), "--to", "nested", "-o", out});
    CHECK(nested.code == cli::kUsage);
    CHECK_THAT(nested.err, Catch::Matchers::ContainsSubstring("requires tabular homogeneous"));
    CHECK(futs_cmd({"reduce", data("fig1.futs"), "--to", "sideways", "-o", out}).code == cli::kUsage);
}

TEST_CASE("check") {
    auto r = futs_cmd({"check", data("fig1.futs"), "--formula", "<0|b|tt,1/2> T"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "s0: false\ns1: true\ns2: false\ns3: false\n");
    CHECK(futs_cmd({"check", data("fig1.futs"), "--formula", "T"}).out == "s0: true\ns1: true\ns2: true\ns3: true\n");

    auto s2 = futs_cmd({"check", data("fig1.futs"), "--formula", "<0|a|tt,1/2> <0|b|tt,1/2> T", "--state", "s2"});
    CHECK(s2.code == cli::kFails);
    CHECK(s2.out == "s2: false\n");
    CHECK(futs_cmd({"check", data("fig1.futs"), "--formula", "<0|a|tt,1/2> <0|b|tt,1/2> T", "--state", "s0"}).code ==
          cli::kOk);

    CHECK(futs_cmd({"check", data("fig1.futs"), "--formula", "<0|b|tt> T"}).code == cli::kUsage);
    CHECK(futs_cmd({"check", data("fig1.futs")}).code == cli::kUsage);

    const std::string fcl = write_tmp("two.fcl", "T\n<0|b|tt,1/2> T\n");
    auto many = futs_cmd({"check", data("fig1.futs"), "--formula-file", fcl, "--state", "s1"});
    CHECK(many.code == cli::kOk);
    CHECK(many.out == "formula: T\ns1: true\nformula: <0|b|tt,1/2> T\ns1: true\n");
}

TEST_CASE("equiv") {
    CHECK(futs_cmd({"equiv", data("w3.futs"), "x", "x'"}).code == cli::kOk);
    CHECK(futs_cmd({"equiv", data("w3.futs"), "x", "x"}).out == "equivalent\n");
    CHECK(futs_cmd({"equiv", data("w3.futs"), "x", "y"}).code == cli::kFails);

    auto w = futs_cmd({"equiv", data("w3.futs"), "x", "y", "--logic"});
    CHECK(w.code == cli::kFails);
    CHECK(w.out == "distinguished\nformula: <0|2> T\n");

    auto f = futs_cmd({"equiv", data("fig1.futs"), "s0", "s2", "--logic"});
    CHECK(f.code == cli::kFails);
    CHECK_THAT(f.out, Catch::Matchers::StartsWith("distinguished\nformula over the wts reduction: <0|"));
    CHECK(futs_cmd({"equiv", data("fig1.futs"), "s0", "s0", "--logic"}).code == cli::kOk);

    CHECK(futs_cmd({"equiv", data("w3.futs"), "x", "nope"}).code == cli::kUsage);
    CHECK(futs_cmd({"equiv", data("w3.futs"), "x", "y", "--depth", "1"}).code == cli::kUsage);
}

TEST_CASE("verify") {
    auto f = futs_cmd({"verify", data("fig1.futs"), "--to", "wts", "--exhaustive"});
    CHECK(f.code == cli::kOk);
    CHECK(f.out == "15/15 relations checked, 0 violations\n");
    CHECK(futs_cmd({"verify", data("w3.futs"), "--to", "unlabelled", "--exhaustive"}).out ==
          "15/15 relations checked, 0 violations\n");
    CHECK(futs_cmd({"verify-reduction", data("w3.futs"), "--to", "wts"}).code == cli::kOk);

    std::string six = "futs\nlabels A0 = {a}\nmonoids M0 = [nat-plus]\nstates {x0, x1, x2, x3, x4, x5}\n";
    const std::string path = write_tmp("six.futs", six + "trans 0 x0 a -> {x1: 1}\n");
    auto refused = futs_cmd({"verify", path, "--to", "wts", "--exhaustive"});
    CHECK(refused.code == cli::kUsage);
    CHECK_THAT(refused.err, Catch::Matchers::ContainsSubstring("sampled mode"));
    auto sampled = futs_cmd({"verify", path, "--to", "wts", "--seed", "3", "--samples", "10"});
    CHECK(sampled.code == cli::kOk);
    CHECK(sampled.out == futs_cmd({"verify", path, "--to", "wts", "--seed", "3", "--samples", "10"}).out);
}

TEST_CASE("translate") {
    auto u = futs_cmd({"translate", "--formula", "<0|a|tt,1/2> T", "--sig", data("fig1.futs"), "--to", "unlabelled"});
    CHECK(u.code == cli::kOk);
    CHECK(u.out == "<0|{a: tt},1/2> T\n");
    for (const char* st : {"unlabelled", "tabular", "homogeneous", "wts"}) {
        CHECK(futs_cmd({"translate", "--formula", "T", "--sig", data("fig1.futs"), "--to", st}).out == "T\n");
    }
    CHECK(futs_cmd({"translate", "--formula", "<0|b|tt,1/2> T", "--sig", data("fig1.futs"), "--to", "wts"}).out ==
          "<0|({b: tt}, 0)> <0|({}, 1/2)> T\n");
    CHECK(futs_cmd({"translate", "--formula", "<0|b|tt> T", "--sig", data("fig1.futs"), "--to", "wts"}).code ==
          cli::kUsage);
}
