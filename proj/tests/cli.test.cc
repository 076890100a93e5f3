// Copyright 2026 The qsynergy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsynergy/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "qsynergy/dataset.h"
#include "qsynergy/train.h"

using namespace qsynergy;

namespace {

class Workspace {
   public:
    explicit Workspace(const std::string &name)
        : dir_(std::filesystem::temp_directory_path() / ("qsynergy_cli_" + name)) {
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    ~Workspace() {
        std::filesystem::remove_all(dir_);
    }
    std::string path(const std::string &file) const {
        return (dir_ / file).string();
    }

   private:
    std::filesystem::path dir_;
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qsynergy");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<std::string> lines(const std::string &path) {
    std::vector<std::string> out;
    std::istringstream in(slurp(path));
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> fields(const std::string &line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) {
        out.push_back(f);
    }
    return out;
}

void write_small_arch(const std::string &path, int dims) {
    Architecture a;
    a.dims = dims;
    a.conv_widths = {6, 6};
    a.dense_widths = {6};
    std::ofstream(path) << a.to_json().dump();
}

Result gen(const Workspace &ws, const std::string &file, const std::string &n, int k, uint64_t seed, int threads = 1) {
    return cli(
        {"gen", "--n", n, "--layers", "3", "--k", std::to_string(k), "--n-traj", "32", "--seed", std::to_string(seed),
         "--threads", std::to_string(threads), "-o", ws.path(file)});
}

}  // namespace

TEST(cli, gen_is_deterministic) {
    Workspace ws("gen");
    ASSERT_EQ(gen(ws, "a.jsonl", "4..5", 8, 3).code, kExitOk);
    ASSERT_EQ(gen(ws, "b.jsonl", "4..5", 8, 3, 3).code, kExitOk);
    ASSERT_EQ(gen(ws, "c.jsonl", "4..5", 8, 4).code, kExitOk);
    std::string a = slurp(ws.path("a.jsonl"));
    ASSERT_FALSE(a.empty());
    ASSERT_EQ(a, slurp(ws.path("b.jsonl")));
    ASSERT_NE(a, slurp(ws.path("c.jsonl")));
    auto records = read_jsonl(ws.path("a.jsonl"));
    ASSERT_EQ(records.size(), 8u);
    for (const auto &r : records) {
        ASSERT_TRUE(r.n == 4 || r.n == 5);
        ASSERT_EQ(r.p_layers, 3);
        ASSERT_EQ(r.estimator.samples, 32);
    }
}

TEST(cli, gen_config_b_and_shots) {
    Workspace ws("gen_b");
    auto r = cli(
        {"gen", "--config", "B", "--n", "4", "--layers", "2", "--k", "2", "--estimator", "shots", "--n-shots", "64",
         "--p-noise", "0.5", "-o", ws.path("b.jsonl")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto records = read_jsonl(ws.path("b.jsonl"));
    ASSERT_EQ(records[0].config, Config::B);
    ASSERT_EQ(records[0].theta.size(), 2u);
    ASSERT_EQ(records[0].p_noise, 0.5);
    ASSERT_EQ(records[0].estimator.kind, EstimatorKind::Shots);
}

TEST(cli, train_eval_zne_scatter_pipeline) {
    Workspace ws("pipeline");
    write_small_arch(ws.path("arch.json"), 1);
    ASSERT_EQ(gen(ws, "train.jsonl", "4..5", 40, 1).code, kExitOk);
    ASSERT_EQ(gen(ws, "test.jsonl", "6", 12, 2).code, kExitOk);

    auto t = cli(
        {"train", "--train", ws.path("train.jsonl"), "--arch", ws.path("arch.json"), "--epochs", "3", "--batch", "8",
         "--seed", "5", "-o", ws.path("hybrid.bin")});
    ASSERT_EQ(t.code, kExitOk) << t.err;
    CnnModel m = load_model(ws.path("hybrid.bin"));
    ASSERT_EQ(m.metadata["method"], "cnn_hybrid");
    ASSERT_EQ(m.metadata["seed"], 5);
    auto history = nlohmann::json::parse(slurp(ws.path("hybrid.bin.history.json")));
    ASSERT_EQ(history["epochs"].size(), 3u);
    ASSERT_EQ(history["monitor"], "validation_mse");

    t = cli(
        {"train", "--train", ws.path("train.jsonl"), "--val", ws.path("test.jsonl"), "--inputs", "classical",
         "--arch", ws.path("arch.json"), "--epochs", "2", "--history", ws.path("h.json"), "-o",
         ws.path("classical.bin")});
    ASSERT_EQ(t.code, kExitOk) << t.err;
    ASSERT_TRUE(std::filesystem::exists(ws.path("h.json")));

    auto z = cli({"zne", "--test", ws.path("test.jsonl"), "-o", ws.path("zne.jsonl")});
    ASSERT_EQ(z.code, kExitOk) << z.err;
    auto zl = lines(ws.path("zne.jsonl"));
    ASSERT_EQ(zl.size(), 12u);
    auto first = nlohmann::json::parse(zl[0]);
    ASSERT_EQ(first["n"], 6);
    ASSERT_TRUE(first["values"].contains("1"));
    ASSERT_TRUE(first["values"].contains("3"));
    double v1 = first["values"]["1"], v2 = first["values"]["2"], v3 = first["values"]["3"];
    ASSERT_NEAR(first["extrapolated"].get<double>(), 3 * v1 - 3 * v2 + v3, 1e-12);

    auto e = cli(
        {"eval", "--model", ws.path("hybrid.bin"), "--model", ws.path("classical.bin"), "--test",
         ws.path("test.jsonl"), "--zne-file", ws.path("zne.jsonl"), "--include-exact", "-o", ws.path("eval.csv")});
    ASSERT_EQ(e.code, kExitOk) << e.err;
    auto el = lines(ws.path("eval.csv"));
    ASSERT_EQ(el[0], "n,method,r2,one_minus_r2,pearson,mse,k_test,seed");
    // Two models with different seeds, each followed by its own baselines.
    ASSERT_EQ(el.size(), 1u + 2 + 2 * 3);
    ASSERT_EQ(fields(el[1])[1], "cnn_hybrid");
    ASSERT_EQ(fields(el[2])[1], "cnn_classical");
    for (size_t k = 1; k < el.size(); k++) {
        auto f = fields(el[k]);
        ASSERT_EQ(f.size(), 8u);
        ASSERT_EQ(f[0], "6");
        ASSERT_EQ(f[6], "12");
        if (f[1] == "exact") {
            ASSERT_EQ(std::stod(f[3]), 0.0);
        }
    }
    auto sl = lines(ws.path("eval.summary.csv"));
    ASSERT_EQ(sl[0], "n,method,repeats,mean_one_minus_r2,std_one_minus_r2");
    ASSERT_EQ(sl.size(), 1u + 5);

    // Computing ZNE inline reproduces the file.
    e = cli({"eval", "--test", ws.path("test.jsonl"), "--zne", "-o", ws.path("inline.csv")});
    ASSERT_EQ(e.code, kExitOk) << e.err;
    auto il = lines(ws.path("inline.csv"));
    ASSERT_EQ(il.size(), 3u);
    ASSERT_EQ(fields(il[2])[1], "zne");
    auto from_file = std::find_if(el.begin(), el.end(), [](const std::string &l) { return fields(l)[1] == "zne"; });
    ASSERT_EQ(fields(il[2])[3], fields(*from_file)[3]);

    auto s = cli(
        {"scatter", "--model", ws.path("hybrid.bin"), "--test", ws.path("test.jsonl"), "--zne-file",
         ws.path("zne.jsonl"), "-o", ws.path("scatter.csv")});
    ASSERT_EQ(s.code, kExitOk) << s.err;
    auto sc = lines(ws.path("scatter.csv"));
    ASSERT_EQ(sc[0], "id,n,target,cnn,noisy,zne");
    ASSERT_EQ(sc.size(), 13u);
    ASSERT_EQ(std::stod(fields(sc[1])[5]), first["extrapolated"].get<double>());
}

TEST(cli, sweep_p_noise) {
    Workspace ws("sweep");
    write_small_arch(ws.path("arch.json"), 1);
    auto r = cli(
        {"sweep", "--var", "p_noise", "--values", "0.5,1", "--n-train", "4", "--n-test", "5", "--layers", "2",
         "--k-train", "20", "--k-test", "10", "--repeats", "2", "--zne", "--n-traj", "16", "--epochs", "1", "--arch",
         ws.path("arch.json"), "-o", ws.path("sweep.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto l = lines(ws.path("sweep.csv"));
    ASSERT_EQ(l[0], "var,value,n,method,r2,one_minus_r2,pearson,mse,k_test,seed");
    // Per value: 2 seeds x (2 networks + noisy + zne).
    ASSERT_EQ(l.size(), 1u + 2 * 2 * 4);
    ASSERT_EQ(fields(l[1])[0], "p_noise");
    ASSERT_EQ(fields(l[1])[1], "0.5");
    ASSERT_EQ(fields(l.back())[1], "1");
    auto s = lines(ws.path("sweep.summary.csv"));
    ASSERT_EQ(s[0], "var,value,n,method,repeats,mean_one_minus_r2,std_one_minus_r2");
    ASSERT_EQ(s.size(), 1u + 2 * 4);
    ASSERT_EQ(fields(s[1])[4], "2");
}

TEST(cli, sweep_k_train) {
    Workspace ws("sweep_k");
    write_small_arch(ws.path("arch.json"), 1);
    auto r = cli(
        {"sweep", "--var", "k_train", "--values", "10,20", "--n-train", "4", "--n-test", "5", "--layers", "2",
         "--k-test", "8", "--repeats", "1", "--inputs", "hybrid", "--n-traj", "16", "--epochs", "1", "--arch",
         ws.path("arch.json"), "-o", ws.path("k.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto l = lines(ws.path("k.csv"));
    ASSERT_EQ(l.size(), 1u + 2 * 2);
    ASSERT_EQ(fields(l[1])[1], "10");
    ASSERT_EQ(fields(l[3])[1], "20");
    // The test set is shared, so the noisy baseline is identical across values.
    ASSERT_EQ(fields(l[2])[3], "noisy");
    ASSERT_EQ(fields(l[2])[5], fields(l[4])[5]);
}

TEST(cli, exit_codes) {
    Workspace ws("exit");
    ASSERT_EQ(cli({"gen", "--k", "0", "-o", ws.path("x.jsonl")}).code, kExitUsage);
    ASSERT_EQ(cli({"gen", "--k", "2", "--bogus", "-o", ws.path("x.jsonl")}).code, kExitUsage);
    ASSERT_EQ(cli({"gen", "-o", ws.path("x.jsonl")}).code, kExitUsage);
    ASSERT_EQ(cli({}).code, kExitUsage);
    ASSERT_EQ(cli({"sweep", "--var", "p_noise", "--values", "", "-o", ws.path("s.csv")}).code, kExitUsage);
    ASSERT_EQ(cli({"sweep", "--var", "depth", "--values", "1", "-o", ws.path("s.csv")}).code, kExitUsage);
    ASSERT_EQ(cli({"train", "--train", ws.path("missing.jsonl"), "-o", ws.path("m.bin")}).code, kExitIo);
    ASSERT_EQ(cli({"eval", "--test", ws.path("missing.jsonl"), "-o", ws.path("e.csv")}).code, kExitIo);
    ASSERT_EQ(cli({"gen", "--k", "1", "--n", "4", "--noise-config", ws.path("nope.json"), "-o", ws.path("x")}).code,
              kExitIo);

    ASSERT_EQ(gen(ws, "train.jsonl", "4", 64, 1).code, kExitOk);
    write_small_arch(ws.path("arch.json"), 1);
    auto diverged = cli(
        {"train", "--train", ws.path("train.jsonl"), "--arch", ws.path("arch.json"), "--lr", "1e300", "--batch",
         "8", "-o", ws.path("m.bin")});
    ASSERT_EQ(diverged.code, kExitNumerical);
    ASSERT_NE(diverged.err.find("epoch 1"), std::string::npos);

    std::ofstream(ws.path("bad.jsonl")) << "{\"schema\": 1}\nnot json\n";
    auto bad = cli({"eval", "--test", ws.path("bad.jsonl"), "-o", ws.path("e.csv")});
    ASSERT_EQ(bad.code, kExitIo);
    ASSERT_NE(bad.err.find(":2"), std::string::npos);

    auto help = cli({"--help"});
    ASSERT_EQ(help.code, kExitOk);
    ASSERT_NE(help.out.find("sweep"), std::string::npos);
}
