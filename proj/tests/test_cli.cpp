#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "mgb/cli.hpp"
#include "mgb/csv.hpp"

using namespace mgb;

namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "mgbounds");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("mgb_cli_" + std::to_string(::getpid()) + "_" + std::to_string(n_++))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name) << text;
        return (path_ / name).string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    static inline int n_ = 0;
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kVerify = R"({
  "model": {"kind": "rademacher"},
  "cells": [
    {"char": "sq_var", "param": 0, "x": 2, "budget": 10, "n": 10, "bound": "b0"},
    {"mode": "some_k", "char": "m", "param": 0.5, "x": 3, "budget": 20, "n": 20, "bound": "b0"}
  ],
  "trials": 20000,
  "seed": 3
})";

}  // namespace

TEST_CASE("csv formatting") {
    CHECK(csv::format_double(0.1) == "0.10000000000000001");
    CHECK(csv::format_double(1.0 / 0.0) == "inf");
    CHECK(csv::format_double(-1.0 / 0.0) == "-inf");
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    std::ostringstream out;
    csv::Writer(out).row({"a", "b,c"});
    CHECK(out.str() == "a,\"b,c\"\r\n");
}

TEST_CASE("bound prints a single value") {
    const auto r = invoke({"bound", "--kind", "b1", "--x", "1", "--y", "1", "--v", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("0.6795704571", 0) == 0);
    CHECK(std::stod(r.out) == doctest::Approx(std::exp(1.0) / 4).epsilon(1e-15));
    const auto sn = invoke({"bound", "--kind", "selfnorm", "--x", "1", "--beta", "2", "--constant", "paper"});
    CHECK(sn.code == 0);
    CHECK(std::stod(sn.out) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
}

TEST_CASE("usage and domain errors exit 1 with a diagnostic") {
    const auto neg = invoke({"bound", "--kind", "b1", "--x", "-1", "--y", "1", "--v", "1"});
    CHECK(neg.code == 1);
    CHECK_FALSE(neg.err.empty());
    CHECK(invoke({"bound", "--kind", "b9", "--x", "1"}).code == 1);
    CHECK(invoke({"bound", "--kind", "b1"}).code == 1);
    CHECK(invoke({"bound", "--kind", "b1", "--x", "abc"}).code == 1);
    CHECK(invoke({"nonsense"}).code == 1);
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"simulate", "--trials", "-5"}).code == 1);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("config documents: unknown keys and bad types are rejected") {
    TempDir dir;
    const auto bad_key = dir.write("a.json", R"({"kind": "b1", "x": 1, "colour": "red"})");
    CHECK(invoke({"bound", "--config", bad_key}).code == 1);
    const auto bad_type = dir.write("b.json", R"({"kind": "b1", "x": "one"})");
    CHECK(invoke({"bound", "--config", bad_type}).code == 1);
    const auto bad_cell = dir.write("c.json", R"({"model": {"kind": "rademacher"},
        "cells": [{"char": "m", "x": 1, "budget": 2, "n": 3, "wat": 1}]})");
    CHECK(invoke({"simulate", "--config", bad_cell}).code == 1);
    CHECK(invoke({"bound", "--config", dir.file("missing.json")}).code == 1);
    const auto wrong_cmd = dir.write("d.json", R"({"command": "curve", "kind": "b1", "x": 1})");
    CHECK(invoke({"bound", "--config", wrong_cmd}).code == 1);
    const auto mispaired = dir.write("e.json", R"({"model": {"kind": "finite_support", "atoms": [[-1, 0.3], [1, 0.7]]},
        "cells": [{"char": "m", "param": 0, "x": 1, "budget": 5, "n": 5, "bound": "b0"}]})");
    CHECK(invoke({"verify", "--config", mispaired}).code == 1);
}

TEST_CASE("flags override config scalars") {
    TempDir dir;
    const auto cfg = dir.write("b.json", R"({"kind": "b2", "x": 5, "y": 1, "v": 1})");
    const auto r = invoke({"bound", "--config", cfg, "--x", "1"});
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(std::exp(-3.0 / 8)).epsilon(1e-15));
}

TEST_CASE("verify exit codes") {
    TempDir dir;
    const auto cfg = dir.write("v.json", kVerify);
    const auto ok = invoke({"verify", "--config", cfg});
    CHECK(ok.code == 0);
    CHECK(ok.out.rfind("model_id,event_mode,char_kind,y_or_beta,x,budget,n,trials,hits,p_hat,upper,bound_name,"
                       "bound_value,margin,status\r\n",
                       0) == 0);
    CHECK(ok.out.find("PASS") != std::string::npos);
    const auto falsified = invoke({"verify", "--config", cfg, "--falsify"});
    CHECK(falsified.code == 2);
    CHECK(falsified.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify output is byte-identical across runs and worker counts") {
    TempDir dir;
    const auto cfg = dir.write("v.json", kVerify);
    CHECK(invoke({"verify", "--config", cfg, "--output", dir.file("a.csv")}).code == 0);
    CHECK(invoke({"verify", "--config", cfg, "--output", dir.file("b.csv"), "--workers", "8"}).code == 0);
    CHECK(invoke({"verify", "--config", cfg, "--output", dir.file("c.csv"), "--seed", "4"}).code == 0);
    CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
    CHECK(slurp(dir.file("a.csv")) != slurp(dir.file("c.csv")));
}

TEST_CASE("simulate reports cells with and without bounds") {
    TempDir dir;
    const auto cfg = dir.write("s.json", R"({"model": {"kind": "sym_pareto", "alpha": 1.8, "id": "par"},
        "cells": [{"mode": "self_norm", "param": 1.5, "x": 1, "n": 20, "bound": "selfnorm_derived"},
                  {"mode": "max_terminal", "char": "g_beta_abs", "param": 1.5, "x": 2, "budget": 30, "n": 20}],
        "trials": 5000})");
    const auto r = invoke({"simulate", "--config", cfg});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(first.rfind("par,self_norm,", 0) == 0);
    CHECK(first.find("selfnorm_derived") != std::string::npos);
    CHECK(second.find(",NA") != std::string::npos);
}

TEST_CASE("curve marks lambda star") {
    const auto r = invoke({"curve", "--variant", "bennett", "--x", "1", "--y", "1", "--points", "11"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.69314718055994529,") != std::string::npos);
    std::size_t marked = 0;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "lambda,exponent,is_lambda_star\r");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        if (line.size() >= 2 && line.substr(line.size() - 2) == "1\r") ++marked;
    }
    CHECK(marked == 1);
    CHECK(rows == 12);
}

TEST_CASE("tightness, selfnorm and lemmas commands") {
    const auto t = invoke({"tightness"});
    CHECK(t.code == 0);
    CHECK(t.out.rfind("n,p,lambda,inf_value,b0,gap,rel_gap\r\n100,", 0) == 0);

    TempDir dir;
    const auto cfg = dir.write("sn.json", R"({"model": {"kind": "rademacher"}, "beta": 2, "x_grid": [1, 2], "n": 50,
        "trials": 20000})");
    const auto s = invoke({"selfnorm", "--config", cfg});
    CHECK(s.code == 0);
    CHECK(s.out.find("paper_status") != std::string::npos);

    const auto l = invoke({"lemmas", "--models", "50"});
    CHECK(l.code == 0);
    CHECK(l.err.find("0 violations") != std::string::npos);
}
