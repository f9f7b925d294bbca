#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(CYLPOS_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    for (std::size_t got; (got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), got);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("cylpos-cli-" + std::to_string(::getpid()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& contents) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kFig1 = std::string(CYLPOS_FIXTURES) + "/fig1.net";

}  // namespace

TEST_CASE("check") {
    TempDir dir;
    const Run i3 = run("check " + dir.file("i3.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n"));
    CHECK(i3.code == 0);
    CHECK(i3.out.rfind("ACCEPT\n", 0) == 0);
    CHECK(i3.out.find("rank 3\n") != std::string::npos);
    CHECK(i3.out.find("min-minor 1 cols=1,2,3\n") != std::string::npos);

    const Run alt = run("check " + dir.file("alt.txt", "2 4\n1 0 1 0\n0 1 0 1\n"));
    CHECK(alt.code == 1);
    CHECK(alt.out.rfind("REJECT cvar=4\n", 0) == 0);
    CHECK(alt.out.find("cvar 4\n") != std::string::npos);

    CHECK(run("check " + dir.file("bad.txt", "2 2\n1 1/0\n0 1\n")).code == 2);
    CHECK(run("check " + dir.file("four.txt", "4 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n")).code == 2);
    CHECK(run("check " + dir.path("missing.txt")).code == 2);
    CHECK(run("frobnicate").code == 2);
}

TEST_CASE("synthesize") {
    TempDir dir;
    const std::string cert = dir.path("i2.cert");
    const Run i2 = run("synthesize " + dir.file("i2.txt", "2 2\n1 0\n0 1\n") + " --emit-cert " + cert);
    CHECK(i2.code == 0);
    CHECK(slurp(cert) == "rows 2\n");

    const std::string ring = dir.file("ring.txt", "3 3\n0 1 1\n1 0 1\n1 1 0\n");
    const std::string ring_cert = dir.path("ring.cert");
    const std::string ring_net = dir.path("ring.net");
    CHECK(run("synthesize " + ring + " --emit-cert " + ring_cert + " --emit-network " + ring_net).code == 0);
    const Run verified = run("verify " + ring + " " + ring_cert);
    CHECK(verified.code == 0);
    CHECK(verified.out == "OK\n");
    const Run measured = run("measure " + ring_net);
    CHECK(measured.code == 0);
    CHECK(measured.out == "3 3\n0 1 1\n1 0 1\n1 1 0\n");

    const std::string rejected = dir.path("rejected.cert");
    const Run rej = run("synthesize " + dir.file("alt.txt", "2 4\n1 0 1 0\n0 1 0 1\n") + " --emit-cert " + rejected);
    CHECK(rej.code == 1);
    CHECK_FALSE(fs::exists(rejected));
}

TEST_CASE("measure") {
    const Run fig = run("measure " + kFig1);
    CHECK(fig.code == 0);
    CHECK(fig.out == "3 3\n1 2 1\n1 2 1\n0 1 1\n");
    TempDir dir;
    const Run single = run("measure " + dir.file("one.net", "cylinder 1 1\nsource 1\nsink 2\nedge 1 2 5/3\n"));
    CHECK(single.code == 0);
    CHECK(single.out == "1 1\n5/3\n");
    const std::string loop = dir.file("loop.net",
                                      "cylinder 1 1\nsource 1\nsink 2\nvertex 3 1/3\nvertex 4 2/3\n"
                                      "edge 1 3 1\nedge 3 4 1\nedge 4 3 1\nedge 4 2 1\n");
    CHECK(run("measure " + loop).code == 2);
    const std::string cmd = std::string(CYLPOS_CLI) + " measure " + loop + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    std::array<char, 512> buf{};
    const std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe);
    ::pclose(pipe);
    CHECK(std::string(buf.data(), got).find("oriented loop") != std::string::npos);
}

TEST_CASE("slice") {
    const Run cut = run("slice " + kFig1 + " --t 31/50");
    CHECK(cut.code == 0);
    CHECK(cut.out.find("# measurement\n3 2\n1 1\n1 1\n0 1\n") != std::string::npos);
    const Run low = run("slice " + kFig1 + " --t 1/10");
    CHECK(low.out.find("# measurement\n3 3\n1 0 0\n0 1 0\n0 0 1\n") != std::string::npos);
    CHECK(run("slice " + kFig1 + " --t 9/50").code == 2);
    CHECK(run("slice " + kFig1 + " --t 1/0").code == 2);
}

TEST_CASE("verify") {
    TempDir dir;
    const std::string i3 = dir.file("i3.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
    CHECK(run("verify " + i3 + " " + dir.file("empty.cert", "rows 3\n")).code == 0);
    const Run dim = run("verify " + i3 + " " + dir.file("d.cert", "rows 3\ndouble 1\n"));
    CHECK(dim.code == 1);
    CHECK(dim.out == "MISMATCH dimension mismatch: certificate gives 3x4, matrix is 3x3\n");
    const Run entry = run("verify " + i3 + " " + dir.file("r.cert", "rows 3\nrescale 2 2\n"));
    CHECK(entry.out == "MISMATCH entry row=2 col=2 certificate=2 matrix=1\n");
    CHECK(run("verify " + i3 + " " + dir.file("bad.cert", "rows 3\nwiggle\n")).code == 2);
}

TEST_CASE("gen") {
    const Run id = run("gen --rows 3 --ops 0 --seed 1");
    CHECK(id.code == 0);
    CHECK(id.out == "rows 3\n3 3\n1 0 0\n0 1 0\n0 0 1\n");
    CHECK(run("gen --rows 2 --ops 15 --seed 9").out == run("gen --rows 2 --ops 15 --seed 9").out);
    TempDir dir;
    const std::string m = dir.path("m.txt"), c = dir.path("c.cert"), n = dir.path("n.net");
    const Run emitted =
        run("gen --rows 3 --ops 25 --seed 4 --emit-matrix " + m + " --emit-cert " + c + " --emit-network " + n + " --check");
    CHECK(emitted.code == 0);
    CHECK(emitted.out == "CHECK-OK\n");
    CHECK(run("verify " + m + " " + c).code == 0);
    CHECK(run("measure " + n).out == slurp(m));
    CHECK(run("gen --rows 4 --ops 1 --seed 1").code == 2);
}

TEST_CASE("oracle") {
    const Run two = run("oracle --rows 2 --cols-max 4 --max-entry 2");
    CHECK(two.code == 0);
    CHECK(two.out.find("\ndiscrepancies 0\n") != std::string::npos);
    CHECK(run("oracle --rows 3 --cols-max 4 --max-entry 1").code == 0);
    CHECK(run("oracle --rows 3 --cols-max 4 --max-entry 1 --jobs 4").out ==
          run("oracle --rows 3 --cols-max 4 --max-entry 1 --jobs 1").out);
    CHECK(run("oracle --rows 3 --cols-max 3 --max-entry 1 --mutant").code == 1);
    CHECK(run("oracle --rows 2 --cols-max 9 --max-entry 1").code == 2);
    CHECK(run("oracle --rows 2 --cols-max 4 --max-entry 7").code == 2);
}
