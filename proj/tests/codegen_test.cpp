#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <regex>
#include <string>

#include "edpm/codegen.hpp"
#include "edpm/runner.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace edpm {
namespace {

const fs::path kSourceDir = EDPM_SOURCE_DIR;
const fs::path kGoldenDir = EDPM_GOLDEN_DIR;

struct Generated {
  std::string source;
  AnalysisResult analysis;
  std::vector<FileSpec> files;
};

Generated generate_text(const std::string& source, Backend backend,
                        const std::string& name = "input.c") {
  Generated g;
  g.source = source;
  g.analysis = analyze(scan(source).directives);
  EXPECT_TRUE(g.analysis.ok());
  GenConfig config;
  config.backend = backend;
  config.source_name = name;
  auto files = generate(g.analysis, source, config);
  EXPECT_TRUE(files.has_value());
  if (files) g.files = *files;
  return g;
}

Generated generate_file(const fs::path& path, Backend backend) {
  return generate_text(read_file(path), backend, path.filename().string());
}

int count_matches(const std::string& text, const std::string& pattern) {
  std::regex re(pattern);
  return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), re),
                                        std::sregex_iterator()));
}

const char* kTwoRegions =
    "int main(void)\n"
    "{\n"
    "#pragma edpm init\n"
    "    work();\n"
    "    #pragma edpm start outer cpu(cycles), memory(loads)\n"
    "    work();\n"
    "    #pragma edpm start inner memory(loads)\n"
    "    work();\n"
    "    #pragma edpm stop inner\n"
    "    #pragma edpm stop outer\n"
    "#pragma edpm deinit\n"
    "    return 0;\n"
    "}\n";

TEST(Render, ZeroFragmentsIsIdentity) {
  for (const char* text : {"", "a\nb\n", "a\nb", "\n\n#pragma edpm init\n"}) {
    auto out = render(text, {}, "x.c");
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(*out, text);
  }
}

TEST(Render, SingleFragmentSplice) {
  const std::string original = "l1\nl2\n#pragma edpm init\nl4\nl5\n";
  auto out = render(original, {CodeFragment{{3}, "lib_init();"}}, "x.c");
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(*out, "l1\nl2\nlib_init();\nl4\nl5\n");
}

TEST(Render, MultiLineFragmentKeepsIndentAndLineMarker) {
  const std::string original = "a\n    #pragma edpm stop r\nb\n";
  auto out = render(original, {CodeFragment{{2}, "one();\ntwo();"}}, "x.c");
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(*out, "a\n    one();\n    two();\n#line 3 \"x.c\"\nb\n");
}

TEST(Render, PositionCollision) {
  auto twice = render("a\nb\n", {CodeFragment{{1}, "x;"}, CodeFragment{{1}, "y;"}}, "x.c");
  ASSERT_FALSE(twice.has_value());
  EXPECT_EQ(twice.error().code, DiagCode::PositionCollision);
  auto past_end = render("a\nb\n", {CodeFragment{{3}, "x;"}}, "x.c");
  ASSERT_FALSE(past_end.has_value());
  EXPECT_EQ(past_end.error().code, DiagCode::PositionCollision);
}

TEST(Lower, PapiInitNamesTheEvent) {
  auto g = generate_text("#pragma edpm init\n#pragma edpm start r cpu(cycles)\n"
                         "#pragma edpm stop r\n#pragma edpm deinit\n",
                         Backend::Papi);
  GenConfig config;
  config.backend = Backend::Papi;
  auto init = lower(g.analysis.ir.front(), g.analysis, config);
  ASSERT_TRUE(init.has_value());
  EXPECT_NE(init->text.find("PAPI_library_init"), std::string::npos);
  EXPECT_NE(init->text.find("PAPI_create_eventset"), std::string::npos);
  EXPECT_NE(init->text.find("\"PAPI_TOT_CYC\""), std::string::npos) << init->text;

  auto deinit = lower(g.analysis.ir.back(), g.analysis, config);
  ASSERT_TRUE(deinit.has_value());
  for (const char* call : {"PAPI_cleanup_eventset", "PAPI_destroy_eventset", "PAPI_shutdown"}) {
    EXPECT_NE(deinit->text.find(call), std::string::npos) << call;
  }
  EXPECT_NE(deinit->text.find("__edpm_close()"), std::string::npos) << deinit->text;
}

TEST(Lower, EmptySetStartIsThreeActions) {
  auto g = generate_text(kTwoRegions, Backend::Soft);
  std::vector<IrAction> at_start;
  for (const auto& d : g.analysis.ir) {
    if (d.position.line == 5) at_start.push_back(d.action);
  }
  EXPECT_EQ(at_start, (std::vector<IrAction>{IrAction::BlockCreate, IrAction::BlockStart,
                                              IrAction::RegionCopyStart}));
}

TEST(Generate, HeaderBindingsForOneBlockTwoRegions) {
  auto g = generate_text(kTwoRegions, Backend::Soft);
  ASSERT_EQ(g.analysis.blocks.size(), 1u);
  ASSERT_EQ(g.files.size(), 3u);
  EXPECT_EQ(g.files[0].role, FileRole::Header);
  EXPECT_EQ(g.files[1].role, FileRole::Source);
  EXPECT_EQ(g.files[2].role, FileRole::BuildArtifact);
  const auto& header = g.files[0].content;
  EXPECT_EQ(count_matches(header, R"(static int __edpm_es_\d+;)"), 1);
  EXPECT_EQ(count_matches(header, R"(static long long __edpm_bv_\d+\[2\];)"), 1);
  EXPECT_EQ(count_matches(header, R"(static long long __edpm_rv_\w+\[\d+\];)"), 2);
  EXPECT_EQ(count_matches(header, R"(static long long __edpm_tid_\w+;)"), 2);
}

TEST(Generate, PapiEmitOnlyStillThreeFiles) {
  auto g = generate_text(kTwoRegions, Backend::Papi, "two.c");
  ASSERT_EQ(g.files.size(), 3u);
  EXPECT_EQ(g.files[0].path, "two.edpm.h");
  EXPECT_EQ(g.files[1].path, "two.edpm.c");
  EXPECT_EQ(g.files[2].path, "two.edpm.build");
  auto manifest = parse_manifest(g.files[2].content);
  EXPECT_EQ(manifest.at("backend"), "papi");
  EXPECT_EQ(manifest.at("link"), "papi");
  EXPECT_EQ(manifest.at("source"), "two.edpm.c");
  EXPECT_EQ(render_manifest(manifest), g.files[2].content);
}

TEST(Generate, InitDeinitOnlyDiffersAtThoseLines) {
  const std::string original = "int main(void)\n{\n#pragma edpm init\n  f();\n#pragma edpm deinit\n}\n";
  for (auto backend : {Backend::Soft, Backend::Papi}) {
    auto g = generate_text(original, backend);
    auto instrumented = testing::lines_of(g.files[1].content);
    auto deleted = testing::deleted_lines(original, g.files[1].content);
    EXPECT_EQ(deleted, (std::vector<int>{3, 5}));
    // Prologue then the untouched lines.
    ASSERT_GE(instrumented.size(), 2u);
    EXPECT_EQ(instrumented[0], "#include \"input.edpm.h\"");
    EXPECT_EQ(instrumented[1], "#line 1 \"input.c\"");
  }
}

TEST(Generate, BackendsShareFragmentPositions) {
  auto source = read_file(kSourceDir / "corpus/static/e3.c");
  auto soft = generate_text(source, Backend::Soft);
  auto papi = generate_text(source, Backend::Papi);
  EXPECT_EQ(soft.analysis, papi.analysis);
  EXPECT_EQ(testing::deleted_lines(source, soft.files[1].content),
            testing::deleted_lines(source, papi.files[1].content));
  EXPECT_EQ(soft.files[1].content.find("PAPI_"), std::string::npos);
  EXPECT_EQ(papi.files[1].content.find("edpm_soft_"), std::string::npos);
}

TEST(Generate, MatmulDiffTouchesPragmaLinesOnly) {
  auto path = kSourceDir / "corpus/matmul.c";
  for (auto backend : {Backend::Soft, Backend::Papi}) {
    auto g = generate_file(path, backend);
    auto deleted = testing::deleted_lines(g.source, g.files[1].content);
    auto original = testing::lines_of(g.source);
    EXPECT_EQ(deleted.size(), 6u);
    for (int line : deleted) {
      EXPECT_TRUE(testing::looks_like_edpm_pragma(original[static_cast<std::size_t>(line - 1)]))
          << line;
    }
  }
}

// Golden files: regenerate with EDPM_UPDATE_GOLDEN=1 after reviewing a change.
void check_golden(const std::string& name, const std::string& actual) {
  auto path = kGoldenDir / name;
  if (const char* update = std::getenv("EDPM_UPDATE_GOLDEN"); update && *update == '1') {
    write_file(path, actual);
    return;
  }
  ASSERT_TRUE(fs::exists(path)) << path << " missing; run with EDPM_UPDATE_GOLDEN=1";
  EXPECT_EQ(read_file(path), actual) << name;
}

TEST(Golden, MatmulBothBackends) {
  auto path = kSourceDir / "corpus/matmul.c";
  for (auto backend : {Backend::Soft, Backend::Papi}) {
    auto g = generate_file(path, backend);
    const std::string suffix = std::string(to_string(backend));
    check_golden("matmul." + suffix + ".h", g.files[0].content);
    check_golden("matmul." + suffix + ".c", g.files[1].content);
    check_golden("matmul." + suffix + ".build", g.files[2].content);
  }
  check_golden("matmul.ir.txt", dump(generate_file(path, Backend::Soft).analysis));
}

TEST(Golden, CorpusIrDumps) {
  for (const char* set : {"static", "dynamic"}) {
    for (int e = 1; e <= 4; ++e) {
      auto file = "e" + std::to_string(e);
      auto g = generate_file(kSourceDir / "corpus" / set / (file + ".c"), Backend::Soft);
      check_golden(std::string(set) + "-" + file + ".ir.txt", dump(g.analysis));
    }
  }
}

TEST(Generate, SoftOutputCompilesAgainstRuntimeHeader) {
  if (std::system("command -v cc >/dev/null 2>&1") != 0) GTEST_SKIP() << "no C compiler";
  auto dir = fs::temp_directory_path() / "edpm-codegen-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto g = generate_file(kSourceDir / "corpus/dynamic/e4.c", Backend::Soft);
  for (const auto& f : g.files) write_file(dir / f.path, f.content);
  // The generated prototypes must agree with the published runtime header.
  write_file(dir / "abi.c", "#include \"e4.edpm.h\"\n#include \"edpm_soft.h\"\n");
  auto cmd = "cc -std=c99 -Wall -Wextra -Werror -fsyntax-only -I" + shell_quote(dir.string()) +
             " -I" + shell_quote((kSourceDir / "runtime").string()) + " " +
             shell_quote((dir / "e4.edpm.c").string()) + " " + shell_quote((dir / "abi.c").string());
  auto result = run_command(cmd);
  EXPECT_EQ(result.exit_code, 0) << result.output;
  fs::remove_all(dir);
}

TEST(OutputStem, Names) {
  EXPECT_EQ(output_stem("matmul.c"), "matmul");
  EXPECT_EQ(output_stem("dir/x.y.c"), "x.y");
  EXPECT_EQ(output_stem("noext"), "noext");
}

}  // namespace
}  // namespace edpm
