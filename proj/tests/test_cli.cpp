#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "kerovlab/cli.hpp"
#include "kerovlab/conjectures.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = kerovlab::cli::main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("kerovlab_cli_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("cli_frontend") {
    TEST_CASE("kerov prints the documented JSON") {
        const Outcome o = invoke({"kerov", "--r", "3", "--basis", "R"});
        CHECK(o.code == 0);
        CHECK(o.out == "{\"r\":3,\"terms\":[{\"partition\":[4],\"coef\":\"1\"},{\"partition\":[2],\"coef\":\"1\"}]}\n");
        CHECK_FALSE(o.err.empty());
    }

    TEST_CASE("kerov in other families, components and formats") {
        const Outcome c = invoke({"kerov", "--r", "5", "--basis", "C", "--component", "4"});
        CHECK(c.code == 0);
        const auto j = nlohmann::json::parse(c.out);
        CHECK(j["basis"] == "C");
        CHECK(j["terms"].size() == 1);
        CHECK(j["terms"][0]["coef"] == "5");
        const Outcome text = invoke({"kerov", "--r", "6", "--out", "text"});
        CHECK(text.out == "1*R[7] + 35*R[5] + 35*R[3,2] + 84*R[3]\n");
        const Outcome csv = invoke({"kerov", "--r", "3", "--out", "csv"});
        CHECK(csv.out == "partition;coef\n4;1\n2;1\n");
    }

    TEST_CASE("character and cumulants") {
        const Outcome ch = invoke({"character", "--lambda", "3,1", "--r", "2"});
        CHECK(ch.code == 0);
        CHECK(ch.out == "{\"lambda\":\"3,1\",\"r\":2,\"normalized\":\"4\",\"dim\":3,\"raw\":1}\n");
        const Outcome cu = invoke({"cumulants", "--lambda", "2,1", "--max-k", "4"});
        CHECK(cu.code == 0);
        const auto j = nlohmann::json::parse(cu.out);
        CHECK(j["R"]["2"] == "3");
        CHECK(j["R"]["4"] == "-6");
    }

    TEST_CASE("usage errors exit 2") {
        CHECK(invoke({}).code == 2);
        CHECK(invoke({"frobnicate"}).code == 2);
        CHECK(invoke({"kerov"}).code == 2);
        CHECK(invoke({"kerov", "--r", "1"}).code == 2);
        CHECK(invoke({"kerov", "--r", "3", "--basis", "X"}).code == 2);
        CHECK(invoke({"character", "--lambda", "3,1", "--r", "9"}).code == 2);
        CHECK(invoke({"character", "--lambda", "1,3", "--r", "1"}).code == 2);
        CHECK(invoke({"verify", "--suite", "nonsense"}).code == 2);
        CHECK(invoke({"kerov", "--help"}).code == 0);
    }

    TEST_CASE("extract reports the f_2 solution") {
        const Outcome o = invoke({"extract", "--family", "f", "--k", "2", "--r-min", "5", "--r-max", "12"});
        CHECK(o.code == 0);
        const auto j = nlohmann::json::parse(o.out);
        CHECK(j["unique"] == true);
        CHECK(j["solution"]["terms"][0]["coef"] == "1/1920");
    }

    TEST_CASE("verify suites") {
        CHECK(invoke({"verify", "--suite", "lemmas", "--r-max", "10"}).code == 0);
        CHECK(invoke({"verify", "--suite", "kerov-theorem", "--r-max", "5", "--lambda-max", "7"}).code == 0);
        CHECK(invoke({"verify", "--suite", "positivity-Q", "--r-max", "9"}).code == 0);
        CHECK(invoke({"verify", "--suite", "conj3", "--r-max", "9"}).code == 0);
    }

    TEST_CASE("a table mismatch is a finding") {
        const fs::path dir = scratch("finding");
        for (const auto& e : fs::directory_iterator(kerovlab::default_data_dir())) fs::copy_file(e.path(), dir / e.path().filename());
        // Change one coefficient and re-record its checksum: the data is then trusted but wrong.
        std::string text;
        {
            std::ifstream in(dir / "c3.csv");
            std::stringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        const auto pos = text.find('\n');
        const std::string first = text.substr(0, pos);
        const auto semi = first.find(';');
        text = first.substr(0, semi + 1) + "1" + first.substr(semi + 1) + text.substr(pos);
        std::ofstream(dir / "c3.csv", std::ios::trunc) << text;
        auto sums = nlohmann::json::parse(std::ifstream(dir / "checksums.json"));
        sums["files"]["c3.csv"] = kerovlab::sha256_hex(dir / "c3.csv");
        std::ofstream(dir / "checksums.json", std::ios::trunc) << sums.dump(2);
        const Outcome o = invoke({"verify", "--suite", "conj3", "--r-max", "9", "--data-dir", dir.string()});
        CHECK(o.code == 1);
        CHECK(o.err.find("mismatch") != std::string::npos);
        fs::remove_all(dir);
    }

    TEST_CASE("selftest passes, rejects corrupted tables and survives stale caches") {
        const fs::path cache = scratch("selftest_cache");
        std::ofstream(cache / "kerov_r6.json") << R"({"format_version":0,"r":6,"terms":[{"partition":[7],"coef":"1"}]})";
        const Outcome ok = invoke({"selftest", "--cache-dir", cache.string()});
        CHECK(ok.code == 0);
        CHECK(nlohmann::json::parse(ok.out)["pass"] == true);
        std::ifstream rewritten(cache / "kerov_r6.json");
        CHECK(nlohmann::json::parse(rewritten)["format_version"] == 1);

        const fs::path data = scratch("selftest_data");
        for (const auto& e : fs::directory_iterator(kerovlab::default_data_dir())) fs::copy_file(e.path(), data / e.path().filename());
        std::ofstream(data / "c3.csv", std::ios::app) << "2,2;7\n";
        const Outcome bad = invoke({"selftest", "--data-dir", data.string()});
        CHECK(bad.code == 2);
        const auto report = nlohmann::json::parse(bad.out);
        CHECK(report["checksums"]["ok"] == false);
        CHECK(invoke({"verify", "--suite", "conj3", "--r-max", "8", "--data-dir", data.string()}).code == 2);
        fs::remove_all(cache);
        fs::remove_all(data);
    }

    TEST_CASE("identical configurations give identical bytes") {
        const fs::path cache = scratch("determinism");
        const std::vector<std::string> args{"verify", "--suite", "closed-forms", "--r-max", "9"};
        const Outcome cold = invoke(args);
        std::vector<std::string> cached = args;
        cached.insert(cached.end(), {"--cache-dir", cache.string()});
        const Outcome fill = invoke(cached);
        const Outcome warm = invoke(cached);
        std::vector<std::string> parallel = args;
        parallel.insert(parallel.end(), {"--jobs", "3"});
        const Outcome threaded = invoke(parallel);
        CHECK(cold.code == 0);
        CHECK(cold.out == fill.out);
        CHECK(cold.out == warm.out);
        CHECK(cold.out == threaded.out);
        fs::remove_all(cache);
    }
}
