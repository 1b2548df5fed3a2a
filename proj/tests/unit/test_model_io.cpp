#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "asymvol/error.hpp"
#include "asymvol/model_io.hpp"
#include "asymvol/volume.hpp"

using namespace asymvol;

namespace {

std::string error_of(std::string_view text) {
  try {
    parse_model_file(text, "m.txt");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ModelFile, Toric) {
  auto f = parse_model_file(R"(# Bl_p P^2 by hand
model toric
name bl2
dim 2
ray 1 0
ray 0 1
ray -1 -1
ray 1 1
basis 2 3
)");
  ASSERT_TRUE(f.model);
  EXPECT_EQ(model_name(*f.model), "bl2");
  EXPECT_EQ(vol(*f.model, NSClass{2, -1}).value, QuadExt(3));
  EXPECT_EQ(vol(*f.model, NSClass{1, 1}).value, QuadExt(1));
}

TEST(ModelFile, Surface) {
  auto f = parse_model_file(R"(model surface
gram 0 0 1
gram 1 1 -1
curve 0 1
)");
  ASSERT_TRUE(f.model);
  const auto& s = std::get<SurfaceModel>(*f.model);
  EXPECT_EQ(s.gram[0][1], 0);
  EXPECT_EQ(vol(*f.model, NSClass{2, 3}).value, QuadExt(4));
}

TEST(ModelFile, CutkoskyAndSplitRuled) {
  auto c = parse_model_file(R"(model cutkosky
gram 0 1 1
gram 0 2 1
gram 1 2 1
a 1 1 0
b 1 2 -1
)");
  ASSERT_TRUE(c.model);
  EXPECT_EQ(vol(*c.model, NSClass{1, 0, 0, 0}).value, vol(Model(cutkosky_golden()), NSClass{1, 0, 0, 0}).value);
  auto s = parse_model_file("model split_ruled -1 1\n");
  EXPECT_EQ(std::get<SplitRuledModel>(*s.model).d1, -1);
}

TEST(ModelFile, LineNumberedErrors) {
  EXPECT_NE(error_of("model toric\ndim 2\nray 1 x\n").find("m.txt:3:"), std::string::npos);
  EXPECT_NE(error_of("model toric\ndim 2\nray 1 0\nray 0 1\nray -1 -1\nbasis 7\n").find("m.txt:6:"), std::string::npos);
  EXPECT_NE(error_of("model surface\ngram 0 0 1\ncurve 0 1\nfoo 1\n").find("m.txt:4:"), std::string::npos);
  EXPECT_NE(error_of("\n\nmodel blob\n").find("m.txt:3:"), std::string::npos);
  EXPECT_NE(error_of("model surface\ngram 0 0 1\ngram 1 1 1\n").find("m.txt:1:"), std::string::npos);
  EXPECT_NE(error_of("dim 2\n").find("m.txt:1:"), std::string::npos);
  EXPECT_NE(error_of("model cutkosky\ndim 3\n").find("m.txt:2:"), std::string::npos);
  EXPECT_NE(error_of("model surface\ngram 0 1 1\ngram 1 0 2\n").find("m.txt:3:"), std::string::npos);
  EXPECT_FALSE(error_of("").empty());
}

TEST(ModelFile, ErrorKinds) {
  try {
    parse_model_file("model toric\ndim 2\nray 1 x\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  try {
    parse_model_file("model surface\ngram 0 0 1\ngram 1 1 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidModel);
  }
}

TEST(ModelFile, FamilyBlocks) {
  auto f = parse_model_file(R"(family rank 2 vars 2
rule threshold m1 + 2m2
weight 1,1
box -2 2
)");
  ASSERT_TRUE(f.family);
  EXPECT_EQ(f.family->rank(), 2);
  EXPECT_TRUE(verify_multiplicativity(*f.family, f.family->box()).passed());

  auto t = parse_model_file(R"(family rank 1 vars 1
rule table
ideal 1 1
ideal 2 3
ideal 3 2
)");
  ASSERT_TRUE(t.family);
  EXPECT_TRUE((*t.family)({3}).contains({2}));
  EXPECT_FALSE(verify_multiplicativity(*t.family, IndexBox::cube(1, 0, 3)).passed());

  auto s = parse_model_file(R"(model toric
dim 2
ray 1 0
ray 0 1
ray -1 -1
ray 1 1
basis 2 3
family rank 2 vars 2
rule toric self 0,3
)");
  ASSERT_TRUE(s.model && s.family);
  EXPECT_TRUE((*s.family)({1, 0}).is_unit());
  EXPECT_NE(error_of("family rank 1 vars 1\nrule table\nideal 1 1,2\n").find("m.txt:3:"), std::string::npos);
  EXPECT_NE(error_of("family rank 1 vars 1\nrule toric self 0,1\n").find("m.txt:2:"), std::string::npos);
}

TEST(ModelFile, RuleParsing) {
  auto f = parse_rule("threshold m1+2m2");
  EXPECT_EQ(f.rank(), 2);
  auto w = parse_rule("weighted 1,2 m");
  EXPECT_EQ(w.rank(), 1);
  EXPECT_EQ(w.variable_count(), 2);
  auto t = parse_rule("toric blowup2 0,3");
  EXPECT_EQ(t.rank(), 2);
  EXPECT_THROW(parse_rule("bogus m"), Error);
}

TEST(ModelFile, LoadFromPath) {
  std::string path = ::testing::TempDir() + "asymvol_model_test.txt";
  {
    std::ofstream out(path);
    out << "model split_ruled -2 1\n";
  }
  Model m = load_model(path);
  EXPECT_EQ(model_kind(m), "split_ruled");
  std::remove(path.c_str());
  EXPECT_EQ(model_name(load_model("blowup2")), "blowup_pd(2)");
}
