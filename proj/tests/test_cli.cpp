#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "akg/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "akg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = akg::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string example(const std::string& name) { return std::string(AKG_DOCS_DIR) + "/" + name; }

Result run_binary(const std::string& args) {
  Result r;
  const std::string cmd = std::string(AKG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, SegreRowComplementIsNotAffine) {
  Result r = run({"monoid-affine", "-i", example("segre22_row.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["affine"], false);
  EXPECT_EQ(j["affine_trivial"], false);

  Result mixed = run({"monoid-affine", "-i", example("segre22_row_col.json")});
  ASSERT_EQ(mixed.code, 0);
  EXPECT_EQ(json::parse(mixed.out)["affine"], true);
  EXPECT_TRUE(json::parse(mixed.out).contains("witness"));
}

TEST(Cli, MonoidReports) {
  Result facets = run({"monoid-facets", "-i", example("segre22_facets.json")});
  ASSERT_EQ(facets.code, 0);
  json f = json::parse(facets.out);
  EXPECT_EQ(f["normals"].size(), 4u);
  EXPECT_EQ(f["simplicial"], false);
  EXPECT_EQ(f["saturation"]["saturated"], true);
  EXPECT_EQ(f["segre_labels"].size(), 4u);

  json dkg = json::parse(run({"monoid-dkg", "-i", example("cone_index2.json")}).out);
  EXPECT_EQ(dkg["dkg"]["text"], "Z/2");
  json akg = json::parse(run({"monoid-akg", "--json", R"({"segre": [2, 3]})"}).out);
  EXPECT_EQ(akg["akg"]["text"], "Z");
  EXPECT_EQ(akg["akg_zero"], false);

  json hole = json::parse(run({"monoid-facets", "-i", example("saturation_hole.json")}).out);
  EXPECT_EQ(hole["saturation"]["saturated"], false);
  EXPECT_EQ(hole["saturation"]["witness"], json::parse("[1, 1]"));
}

TEST(Cli, Hyperbola) {
  Result r = run({"hyperbola", "-i", example("hyperbola33.json")});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["coaffine"], true);
  EXPECT_EQ(j["affine_trivial"], false);
  EXPECT_EQ(j["dkg"]["text"], "Z + Z/3");
  EXPECT_EQ(j["akg"]["text"], "Z");

  Result nonlocal = run({"hyperbola", "--json", R"({"d": [2, 2], "n": [1, 1]})"});
  EXPECT_EQ(nonlocal.code, 1);
  EXPECT_EQ(json::parse(nonlocal.out)["code"], "RequiresLocalBase");

  Result comax = run({"hyperbola", "--json", R"({"d": [2, 2], "comaximal": [[false, true], [true, false]]})"});
  EXPECT_EQ(comax.code, 0);
  EXPECT_EQ(json::parse(comax.out)["akg_zero"], true);
}

TEST(Cli, DeterminantalAndSegre) {
  json d = json::parse(run({"determinantal", "-i", example("determinantal222.json")}).out);
  EXPECT_EQ(d["dimension"], 3);
  EXPECT_EQ(d["ideal_height"], 1);
  EXPECT_EQ(d["extension_height"], 2);
  EXPECT_EQ(d["akg"]["text"], "Z");
  Result bad = run({"determinantal", "--json", R"({"m": 2, "n": 2, "k": 3})"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(json::parse(bad.out)["code"], "FormatViolation");

  json s = json::parse(run({"segre", "-i", example("segre_rule.json")}).out);
  EXPECT_EQ(s["affine"], true);
  EXPECT_EQ(s["row_superheight"], 2);
  json one = json::parse(run({"segre", "--json", R"({"m": 3, "n": 5, "rows": [1]})"}).out);
  EXPECT_EQ(one["affine"], false);
  EXPECT_EQ(one["column_superheight"], 5);
}

TEST(Cli, Bounds) {
  Result r = run({"bounds", "-i", example("bounds_local_maximal.json")});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "consistent");
  for (const char* k : {"ht", "alt", "supht_end", "supht", "ara", "afra", "kohoht"}) {
    EXPECT_EQ(j["intervals"][k]["lo"], 3) << k;
    EXPECT_EQ(j["intervals"][k]["hi"], 3) << k;
  }
  EXPECT_EQ(j["intervals"]["cd"]["hi"], 2);

  json k = json::parse(run({"bounds", "-i", example("bounds_kohoht.json")}).out);
  EXPECT_EQ(k["intervals"]["afra"]["lo"], 3);
  EXPECT_EQ(k["intervals"]["afra"]["hi"], 3);
  EXPECT_TRUE(k["intervals"]["dim_ring"]["hi"].is_null());

  Result c = run({"bounds", "-i", example("bounds_contradiction.json")});
  EXPECT_EQ(c.code, 1);
  json e = json::parse(c.out);
  EXPECT_EQ(e["code"], "Contradiction");
  EXPECT_EQ(e["witness"]["rule"], "R2");
  EXPECT_EQ(e["witness"]["trace"].back()["rule"], "R2");

  Result immediate = run({"bounds", "--json", R"({"facts": [{"invariant": "ht", "rel": "le", "value": 1},
                                                         {"invariant": "ht", "rel": "ge", "value": 2}]})"});
  EXPECT_EQ(immediate.code, 1);
  EXPECT_EQ(json::parse(immediate.out)["code"], "ImmediateContradiction");
}

TEST(Cli, DomainErrors) {
  Result r = run({"monoid-facets", "-i", example("not_pointed.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["code"], "NotPointed");
  Result neg = run({"monoid-affine", "--json", R"({"segre": [2, 2], "divisor": {"coeffs": [1, -1, 0, 0]}})"});
  EXPECT_EQ(neg.code, 1);
  EXPECT_EQ(json::parse(neg.out)["code"], "NotEffective");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"segre", "--json", "{not json"}).code, 2);
  EXPECT_EQ(run({"segre", "--json", R"({"m": 2})"}).code, 2);
  EXPECT_EQ(run({"segre", "--json", R"({"m": 2, "n": 2})", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"bounds", "--json", R"({"flags": ["bogus"]})"}).code, 2);
  EXPECT_EQ(run({"bounds", "-i", "/nonexistent/file.json"}).code, 2);
  Result both = run({"segre", "-i", example("segre_rule.json"), "--json", "{}"});
  EXPECT_EQ(both.code, 2);
  EXPECT_TRUE(both.out.empty());
  EXPECT_FALSE(both.err.empty());
}

TEST(Cli, TextFormatIsAProjection) {
  Result r = run({"hyperbola", "-i", example("hyperbola33.json"), "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("coaffine: true\n"), std::string::npos);
  EXPECT_NE(r.out.find("dkg.text: Z + Z/3\n"), std::string::npos);
}

TEST(Cli, OutputIsDeterministicAndReparses) {
  for (const char* name : {"segre22_facets.json", "bounds_kohoht.json", "hyperbola33.json", "cone_index2.json"}) {
    std::string sub = std::string(name).rfind("bounds", 0) == 0 ? "bounds"
                      : std::string(name).rfind("hyperbola", 0) == 0 ? "hyperbola"
                                                                      : "monoid-facets";
    Result a = run({sub, "-i", example(name)});
    Result b = run({sub, "-i", example(name)});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out).dump(2) + "\n", a.out);
  }
}

TEST(Cli, SelfcheckAndFaultInjection) {
  Result ok = run({"selfcheck"});
  EXPECT_EQ(ok.code, 0);
  json j = json::parse(ok.out);
  EXPECT_EQ(j["passed"], 10);
  EXPECT_EQ(run({"selfcheck"}).out, ok.out);

  Result mutated = run({"selfcheck", "--mutate", "R2:+1"});
  EXPECT_EQ(mutated.code, 1);
  json m = json::parse(mutated.out);
  EXPECT_EQ(m["passed"], 9);
  EXPECT_EQ(m["items"][6]["pass"], false);
  EXPECT_NE(m["items"][6]["detail"].get<std::string>().find("R2"), std::string::npos);
  EXPECT_EQ(run({"selfcheck", "--mutate", "R99:+1"}).code, 2);
}

TEST(CliBinary, ExitCodesAndStreams) {
  Result ok = run_binary("hyperbola -i " + example("hyperbola33.json"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(json::parse(ok.out)["coaffine"], true);
  Result domain = run_binary("bounds -i " + example("bounds_contradiction.json"));
  EXPECT_EQ(domain.code, 1);
  EXPECT_EQ(json::parse(domain.out)["witness"]["rule"], "R2");
  Result usage = run_binary("no-such-command");
  EXPECT_EQ(usage.code, 2);
  EXPECT_TRUE(usage.out.empty());
  EXPECT_EQ(run_binary("selfcheck").code, 0);
}
