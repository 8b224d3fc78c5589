#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

// Exercises the installed binary end to end: exit codes, output stability and
// the documented line formats, via popen on the real executable.

namespace {

using json = nlohmann::json;

struct CliResult {
    int status = -1;
    std::string out;  // stdout and stderr merged
};

CliResult run_cli(const std::string& args) {
    CliResult res;
    std::string cmd = std::string(BUDGETDIV_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
    int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

const std::string& scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/budgetdiv_cli_XXXXXX";
        char* made = mkdtemp(tmpl);
        return std::string(made ? made : "/tmp");
    }();
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& content) {
    std::string path = scratch_dir() + "/" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

const std::string& running_example_path() {
    static std::string path = write_scratch("running_example.profile",
                                            "candidates: a b c d\n"
                                            "4: a b\n"
                                            "4: a\n"
                                            "2: b c\n"
                                            "1: c d\n"
                                            "1: d\n");
    return path;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("run prints exact shares and is byte-stable") {
    CliResult r = run_cli("run map " + running_example_path());
    CHECK(r.status == 0);
    CHECK(contains(r.out, "rule map\n"));
    CHECK(contains(r.out, "profile n=12 m=4 digest="));
    CHECK(contains(r.out, "share a 2/3\nshare b 0\nshare c 1/4\nshare d 1/12\n"));

    CliResult again = run_cli("run map " + running_example_path());
    CHECK(again.status == 0);
    CHECK(again.out == r.out);

    CliResult ues = run_cli("run ues " + running_example_path());
    CHECK(contains(ues.out, "share a 1/2\nshare b 1/4\nshare c 1/8\nshare d 1/8\n"));

    CliResult dec = run_cli("run map --decimal 3 " + running_example_path());
    CHECK(contains(dec.out, "share a 2/3 0.667\n"));
}

TEST_CASE("run --json is machine readable") {
    CliResult r = run_cli("run map --json " + running_example_path());
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["rule"] == "map");
    CHECK(j["exact"] == true);
    CHECK(j["profile"]["n"] == 12);
    CHECK(j["profile"]["m"] == 4);
    CHECK(j["distribution"]["a"] == "2/3");
    CHECK(j["distribution"]["d"] == "1/12");
}

TEST_CASE("run --trace shows rounds, events and splits") {
    CliResult seq = run_cli("run map --trace " + running_example_path());
    CHECK(contains(seq.out, "round 1 select a total 8\n"));
    CHECK(contains(seq.out, "  pay group 0 per-voter 1\n"));
    CHECK(contains(seq.out, "round 4 select b total 0\n"));

    std::string fut_a = write_scratch("fut_a.profile",
                                      "candidates: a b c\n"
                                      "3: a\n5: a c\n1: c\n1: b c\n4: b\n");
    CliResult fut = run_cli("run fut --trace " + fut_a);
    CHECK(fut.status == 0);
    CHECK(contains(fut.out, "share a 4/7\n"));
    CHECK(contains(fut.out, "event 1 lambda 1 fired a\n"));
    CHECK(contains(fut.out, "event 2 lambda 3/2 fired c\n"));
    CHECK(contains(fut.out, "event 3 lambda 13/8 fired b\n"));

    std::string cut_a = write_scratch("cut_a.profile",
                                      "candidates: a b c\n"
                                      "2: a\n4: a c\n1: c\n3: b\n");
    CliResult cut = run_cli("run cut --trace " + cut_a);
    CHECK(cut.status == 0);
    CHECK(contains(cut.out, "group 0 splits a:1\n"));
    CHECK(contains(cut.out, "group 1 splits a:1\n"));
    CHECK(contains(cut.out, "group 3 splits b:1\n"));

    CliResult nope = run_cli("run nash --trace " + running_example_path());
    CHECK(nope.status == 2);
    CHECK(contains(nope.out, "error:"));
}

TEST_CASE("run nash reports convergence diagnostics") {
    CliResult r = run_cli("run nash --json " + running_example_path());
    REQUIRE(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["exact"] == false);
    CHECK(j["verified"] == true);
    CHECK(j["iterations"].get<long>() >= 1);
    double total = 0;
    for (const auto& [name, share] : j["distribution"].items()) {
        (void)name;
        total += share.get<double>();
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));

    CliResult text = run_cli("run nash " + running_example_path());
    CHECK(contains(text.out, "iterations "));
    CHECK(contains(text.out, "verified true\n"));
}

TEST_CASE("audit reports the fairness panel") {
    CliResult r = run_cli("audit " + running_example_path() + " map --exact-core");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "source map\n"));
    CHECK(contains(r.out, "afs 1 witness a size 8\n"));
    CHECK(contains(r.out, "pf 5/4 witness d\n"));
    CHECK(contains(r.out, "core_lower 1 witness a size 8\n"));
    CHECK(contains(r.out, "decomposable true\n"));
    CHECK(contains(r.out, "core_exact 1 coalition "));

    // a distribution file audits the same way; exact strings stay rational
    std::string dist = write_scratch("ues.dist.json",
                                     "{\"a\": \"1/2\", \"b\": \"1/4\", \"c\": \"1/8\", "
                                     "\"d\": \"1/8\"}");
    CliResult f = run_cli("audit " + running_example_path() + " " + dist);
    CHECK(f.status == 0);
    CHECK(contains(f.out, "source file:"));
    CHECK(contains(f.out, "afs 16/15 witness a size 8\n"));
    CHECK(contains(f.out, "decomposable true\n"));

    // large-n guard on the exhaustive core audit
    CliResult skip = run_cli("audit " + running_example_path() + " map --exact-core --core-limit 4");
    CHECK(contains(skip.out, "core_exact skipped n>4\n"));
}

TEST_CASE("check verdicts drive the exit code") {
    std::string a = write_scratch("wpc_a.profile",
                                  "candidates: a b c\n2: a\n4: a c\n1: c\n3: b\n");
    std::string b = write_scratch("wpc_b.profile",
                                  "candidates: a b c\n6: a\n2: b\n1: b c\n1: c\n");
    CliResult bad = run_cli("check wpc cut " + a + " " + b);
    CHECK(bad.status == 1);
    CHECK(contains(bad.out, "outcome fails\n"));
    CHECK(contains(bad.out, "candidate b\n"));

    CliResult good = run_cli("check wpc map " + a + " " + b);
    CHECK(good.status == 0);
    CHECK(contains(good.out, "outcome holds\n"));

    CliResult mono = run_cli("check monotonicity map " + a + " --group 0 --add b");
    CHECK(mono.status == 0);
    CHECK(contains(mono.out, "outcome holds\n"));

    CliResult missing = run_cli("check monotonicity map " + a);
    CHECK(missing.status == 2);
    CHECK(contains(missing.out, "error:"));

    CliResult wrong_arity = run_cli("check wpc map " + a);
    CHECK(wrong_arity.status == 2);
    CHECK(contains(wrong_arity.out, "expected 2 profile argument(s)"));
}

TEST_CASE("check rpc on the emitted nash pair") {
    std::string dir = scratch_dir() + "/nash_pair";
    CliResult emit = run_cli("corpus emit nash_rpc --out-dir " + dir);
    REQUIRE(emit.status == 0);
    CHECK(contains(emit.out, "nash_rpc.profile\n"));

    CliResult r = run_cli("check rpc nash " + dir + "/nash_rpc.profile " + dir +
                          "/nash_rpc_second.profile");
    CHECK(r.status == 1);
    CHECK(contains(r.out, "outcome fails\n"));
    CHECK(contains(r.out, "candidate a\n"));
}

TEST_CASE("fuzz gates its exit code on claimed axioms") {
    CliResult clean = run_cli("fuzz monotonicity map --trials 50 " + std::string());
    CHECK(clean.status == 0);
    CHECK(contains(clean.out, "fails 0\n"));
    CHECK(contains(clean.out, "claimed true\n"));

    // violations on an unclaimed bound surface in the report but exit 0
    CliResult unclaimed = run_cli("fuzz afs_bound:1 cut --trials 200 --seed 42");
    CHECK(unclaimed.status == 0);
    CHECK(contains(unclaimed.out, "claimed false\n"));

    CliResult relaxed = run_cli("fuzz afs_bound:3 map --trials 100");
    CHECK(relaxed.status == 0);
    CHECK(contains(relaxed.out, "claimed true\n"));
    CHECK(contains(relaxed.out, "fails 0\n"));

    CliResult json_mode = run_cli("fuzz monotonicity map --trials 20 --json");
    REQUIRE(json_mode.status == 0);
    json j = json::parse(json_mode.out);
    CHECK(j["trials"] == 20);
    CHECK(j["fails"] == 0);
}

TEST_CASE("corpus list and emit round-trip") {
    CliResult list = run_cli("corpus list");
    CHECK(list.status == 0);
    CHECK(contains(list.out, "cut_lb"));
    CHECK(contains(list.out, "prop_lb_wz"));

    CliResult jlist = run_cli("corpus list --json");
    REQUIRE(jlist.status == 0);
    json cat = json::parse(jlist.out);
    CHECK(cat.size() == 14);

    std::string dir = scratch_dir() + "/cutlb";
    CliResult emit = run_cli("corpus emit cut_lb n=8 --out-dir " + dir);
    REQUIRE(emit.status == 0);
    CHECK(contains(emit.out, "cut_lb_n8.profile\n"));
    CHECK(contains(emit.out, "cut_lb_n8.expected.json\n"));

    std::ifstream in(dir + "/cut_lb_n8.expected.json");
    REQUIRE(in.good());
    json expected = json::parse(in);
    CHECK(expected["afs_exact"] == "3");
    CHECK(expected["factor_rule"] == "cut");

    // the emitted profile reproduces the frozen distribution
    CliResult run = run_cli("run cut " + dir + "/cut_lb_n8.profile");
    CHECK(run.status == 0);
    CHECK(contains(run.out, "share xstar 5/8\n"));
}

TEST_CASE("corpus emit handles inapplicable and bad requests") {
    CliResult na = run_cli("corpus emit nonmonotone rule=map --out-dir " + scratch_dir());
    CHECK(na.status == 0);
    CHECK(contains(na.out, "not applicable"));

    CliResult bad = run_cli("corpus emit cut_lb n=7 --out-dir " + scratch_dir());
    CHECK(bad.status == 2);
    CHECK(contains(bad.out, "error:"));

    CliResult unknown = run_cli("corpus emit never_heard_of_it");
    CHECK(unknown.status == 2);
}

TEST_CASE("planted monotonicity witness round-trips through files") {
    std::string dir = scratch_dir() + "/mono";
    CliResult emit = run_cli("corpus emit nonmonotone rule=mps:1/2 --out-dir " + dir);
    REQUIRE(emit.status == 0);

    std::ifstream in(dir + "/nonmonotone_mps_1_2.expected.json");
    REQUIRE(in.good());
    json expected = json::parse(in);
    REQUIRE(expected.contains("monotonicity_witness"));
    json witness = expected["monotonicity_witness"];

    std::string wpath = write_scratch("mono_witness.profile", witness["profile"].dump());
    CliResult r = run_cli("check monotonicity mps:1/2 " + wpath + " --group " +
                          std::to_string(witness["group"].get<int>()) + " --add " +
                          witness["add_candidate"].get<std::string>());
    CHECK(r.status == 1);
    CHECK(contains(r.out, "outcome fails\n"));
}

TEST_CASE("usage errors exit with status 2") {
    CliResult none = run_cli("");
    CHECK(none.status == 2);

    CliResult badrule = run_cli("run bogus " + running_example_path());
    CHECK(badrule.status == 2);
    CHECK(contains(badrule.out, "error:"));

    CliResult nofile = run_cli("run map /nonexistent/file.profile");
    CHECK(nofile.status == 2);
    CHECK(contains(nofile.out, "error:"));

    CliResult help = run_cli("--help");
    CHECK(help.status == 0);
    CHECK(contains(help.out, "run"));
}
