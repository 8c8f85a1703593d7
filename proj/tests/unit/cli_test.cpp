// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <mutex>
#include <sstream>

#include "gita/cli.hpp"
#include "gita/dataset.hpp"
#include "gita/describer.hpp"
#include "gita/eval.hpp"
#include "gita/visualizer.hpp"
#include "support/chat_server.hpp"
#include "support/temp_dir.hpp"

namespace gita {
namespace {

namespace fs = std::filesystem;
using testing::ChatServer;
using testing::ServerReply;
using testing::TempDir;

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "gita");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

TEST(Cli, UsageAndHelp) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    const Result bad = run({"generate", "--task", "bogus", "--out", "x"});
    EXPECT_EQ(bad.code, kExitUsage);
    EXPECT_NE(bad.err.find("Usage:"), std::string::npos);
    EXPECT_EQ(run({"build", "--subset", "base"}).code, kExitUsage);
}

TEST(Cli, GenerateIsRepeatable) {
    TempDir d("gita-cli");
    const auto a = d.path() / "a";
    const auto b = d.path() / "b";
    ASSERT_EQ(run({"generate", "--task", "cycle", "-n", "5", "--seed", "1", "--out", a.string()}).code, kExitOk);
    ASSERT_EQ(run({"generate", "--task", "cycle", "-n", "5", "--seed", "1", "--out", b.string()}).code, kExitOk);
    for (int i = 0; i < 5; ++i) {
        const std::string name = "cycle-00000" + std::to_string(i) + ".json";
        ASSERT_TRUE(fs::exists(a / name));
        EXPECT_EQ(slurp(a / name), slurp(b / name));
        EXPECT_NO_THROW(load_graph((a / name).string()));
    }
    EXPECT_EQ(slurp(a / "answers.jsonl"), slurp(b / "answers.jsonl"));
    std::istringstream lines(slurp(a / "answers.jsonl"));
    std::size_t n = 0;
    for (std::string line; std::getline(lines, line); ++n) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_TRUE(j["answer"] == "Yes." || j["answer"] == "No.");
    }
    EXPECT_EQ(n, 5u);
    EXPECT_TRUE(fs::exists(a / "resolved_config.json"));
}

TEST(Cli, RenderDescribeAndSample) {
    TempDir d("gita-cli");
    const Graph g(false, 4, {{0, 1}, {1, 2}, {2, 3}});
    const auto gfile = d.path() / "g.json";
    save_graph(g, gfile.string());

    const auto svg = d.path() / "out" / "g.svg";
    ASSERT_EQ(run({"render", gfile.string(), "--layout", "circular", "--out", svg.string(), "--emit-dot"}).code,
              kExitOk);
    GraphStyles style;
    style.layout = LayoutAlgorithm::Circular;
    EXPECT_EQ(slurp(svg), render(g, {}, style, 0).svg);
    EXPECT_EQ(slurp(d.path() / "out" / "g.dot"), to_dot(g, {}, style));
    EXPECT_TRUE(fs::exists(d.path() / "out" / "resolved_config.json"));

    const auto aug = d.path() / "aug";
    ASSERT_EQ(run({"render", gfile.string(), "--augment", "layout", "--out", aug.string()}).code, kExitOk);
    std::size_t svgs = 0;
    for (const auto& e : fs::directory_iterator(aug)) svgs += e.path().extension() == ".svg";
    EXPECT_EQ(svgs, 6u);

    spit(d.path() / "bad.json", "{\"directed\": fals");
    EXPECT_EQ(run({"render", (d.path() / "bad.json").string(), "--out", (d.path() / "x.svg").string()}).code,
              kExitRuntime);
    EXPECT_EQ(run({"render", (d.path() / "missing.json").string(), "--out", (d.path() / "x.svg").string()}).code,
              kExitRuntime);
    EXPECT_EQ(run({"render", gfile.string(), "--layout", "hexagonal", "--out", svg.string()}).code, kExitUsage);

    const Result desc = run({"describe", gfile.string()});
    ASSERT_EQ(desc.code, kExitOk);
    EXPECT_EQ(desc.out, describe(g).text + "\n");
    EXPECT_EQ(run({"describe", "--templates"}).out, template_catalog());
    spit(d.path() / "desc.txt", describe(g).text);
    const Result parsed = run({"describe", "--parse", (d.path() / "desc.txt").string()});
    ASSERT_EQ(parsed.code, kExitOk);
    EXPECT_EQ(graph_from_json(parsed.out), g);

    spit(d.path() / "edges.txt", "# comment\n10 20\n20 30\n30 40\n");
    const auto sub = d.path() / "sub" / "s.json";
    ASSERT_EQ(run({"sample-subgraph", "--edge-list", (d.path() / "edges.txt").string(), "--center", "20", "--hops",
                   "1", "--out", sub.string()})
                  .code,
              kExitOk);
    const Graph s = load_graph(sub.string());
    EXPECT_EQ(s.node_count(), 3);
    EXPECT_EQ(s.edge_count(), 2u);
    const auto nodes = nlohmann::json::parse(slurp(d.path() / "sub" / "s.nodes.json"));
    EXPECT_EQ(nodes["original_ids"], (std::vector<std::string>{"10", "20", "30"}));
    EXPECT_EQ(run({"sample-subgraph", "--graph", gfile.string(), "--center", "9", "--out", sub.string()}).code,
              kExitRuntime);
}

TEST(Cli, BuildVerifySplitStatsWithConfigFile) {
    TempDir d("gita-cli");
    const auto cfg = d.path() / "cfg.json";
    spit(cfg, R"({"build": {"scale": 0.001, "seed": 4, "tasks": ["cycle", "sp"]}})");
    const auto ds = d.path() / "ds";
    const Result built = run({"--config", cfg.string(), "build", "--subset", "base", "--out", ds.string()});
    ASSERT_EQ(built.code, kExitOk) << built.err;
    Dataset loaded = read_dataset(ds);
    EXPECT_EQ(loaded.manifest.seed, 4u);
    EXPECT_EQ(loaded.manifest.counts.size(), 2u);

    const auto ds2 = d.path() / "ds2";
    ASSERT_EQ(run({"build", "--subset", "base", "--out", ds2.string(), "--config", cfg.string(), "--seed", "5"}).code,
              kExitOk);
    EXPECT_EQ(read_dataset(ds2).manifest.seed, 5u);

    const auto ds3 = d.path() / "ds3";
    ASSERT_EQ(run({"--config", (ds / "resolved_config.json").string(), "build", "--out", ds3.string()}).code,
              kExitOk);
    EXPECT_EQ(slurp(ds / "records.jsonl"), slurp(ds3 / "records.jsonl"));

    const Result ok = run({"verify", "--dataset", ds.string()});
    EXPECT_EQ(ok.code, kExitOk) << ok.err;

    const Result stats = run({"stats", "--dataset", ds.string(), "--json"});
    ASSERT_EQ(stats.code, kExitOk);
    EXPECT_EQ(nlohmann::json::parse(stats.out)["total_records"], loaded.records.size());

    ASSERT_EQ(run({"split", "--dataset", ds2.string(), "--seed", "99"}).code, kExitOk);
    EXPECT_EQ(read_dataset(ds2).manifest.split_seed, 99u);
    EXPECT_EQ(run({"verify", "--dataset", ds2.string()}).code, kExitOk);

    std::string records = slurp(ds / "records.jsonl");
    const auto pos = records.find("\"answer\":\"");
    ASSERT_NE(pos, std::string::npos);
    records.insert(pos + 10, "x");
    spit(ds / "records.jsonl", records);
    const Result bad = run({"verify", "--dataset", ds.string()});
    EXPECT_EQ(bad.code, kExitVerifyFailed);
    EXPECT_FALSE(bad.err.empty());

    EXPECT_EQ(run({"stats", "--dataset", (d.path() / "nothing").string()}).code, kExitRuntime);
}

TEST(Cli, EvalVisionOnlyAgainstLocalEndpoint) {
    TempDir d("gita-cli");
    const auto ds = d.path() / "ds";
    ASSERT_EQ(run({"build", "--subset", "base", "--scale", "0.001", "--seed", "2", "--tasks", "connect", "--out",
                   ds.string()})
                  .code,
              kExitOk);
    const Dataset data = read_dataset(ds);
    std::map<std::string, std::string> answer_by_vo;
    for (const auto& r : data.records) answer_by_vo[r.vo_query] = r.answer;

    std::mutex m;
    std::vector<nlohmann::json> bodies;
    ChatServer server([&](const nlohmann::json& body, const httplib::Request&) {
        std::lock_guard lock(m);
        bodies.push_back(body);
        const auto& parts = body["messages"][0]["content"];
        const auto it = answer_by_vo.find(parts[1]["text"].get<std::string>());
        return it == answer_by_vo.end() ? ServerReply{200, "?"} : ServerReply{200, it->second};
    });
    const auto endpoint = d.path() / "endpoint.json";
    spit(endpoint, nlohmann::json{{"base_url", server.base_url()}, {"model", "m"}, {"concurrency", 2}}.dump());
    const auto out = d.path() / "eval";
    const Result r = run({"eval", "--dataset", ds.string(), "--endpoint", endpoint.string(), "--mode", "vision_only",
                          "--out", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    ASSERT_FALSE(bodies.empty());
    for (const auto& b : bodies) {
        EXPECT_EQ(b["messages"][0]["content"][0]["type"], "image");
        EXPECT_EQ(b["messages"][0]["content"][1]["text"].get<std::string>().find("the edges are"), std::string::npos);
    }
    const auto report = nlohmann::json::parse(slurp(out / "report.json"));
    EXPECT_EQ(report["mode"], "vision_only");
    EXPECT_EQ(report["tasks"]["Connect"]["strict_exact"], 100.0);
    EXPECT_TRUE(fs::exists(out / "report.txt"));
    EXPECT_TRUE(fs::exists(out / "resolved_config.json"));

    const std::size_t before = server.requests();
    ASSERT_EQ(run({"eval", "--dataset", ds.string(), "--endpoint", endpoint.string(), "--mode", "vision_only",
                   "--out", out.string()})
                  .code,
              kExitOk);
    EXPECT_EQ(server.requests(), before);

    spit(d.path() / "bad_endpoint.json", R"({"modle": "x"})");
    EXPECT_EQ(run({"eval", "--dataset", ds.string(), "--endpoint", (d.path() / "bad_endpoint.json").string(),
                   "--out", out.string()})
                  .code,
              kExitRuntime);
}

}  // namespace
}  // namespace gita
