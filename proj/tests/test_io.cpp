#include <gtest/gtest.h>

#include <sstream>

#include "gmequiv/io.hpp"

using namespace gmequiv;

TEST(Io, KernelSpecs) {
  EXPECT_EQ(kernel_from_json(std::string_view("bm"))->name(), "bm");
  EXPECT_EQ(kernel_from_json(std::string_view(R"("slepian")"))->name(), "slepian");
  EXPECT_EQ(kernel_from_json(std::string_view(R"({"preset":"ou","params":{"L":2}})"))->name(), "ou(2)");
  const auto custom = kernel_from_json(std::string_view(R"({"name":"mine","u":"t","v":"2 - t"})"));
  EXPECT_EQ(custom->name(), "mine");
  EXPECT_NEAR(custom->q(0.5), presets::slepian()->q(0.5), 1e-15);
  EXPECT_THROW(kernel_from_json(std::string_view(R"({"preset":"bm","extra":1})")), Error);
  EXPECT_THROW(kernel_from_json(std::string_view(R"({"preset":"ou","params":{"rate":2}})")), Error);
  EXPECT_THROW(kernel_from_json(std::string_view(R"({"u":"t"})")), Error);
}

TEST(Io, FunctionSpecRoundTrip) {
  const auto f = function_from_json(std::string_view(R"({"coeffs":[[0,0.5],[1,0.25,-0.1],[4,0.0,0.3]]})"));
  EXPECT_EQ(f.coefficient(-1), Complex(0.25, 0.1));
  EXPECT_TRUE(function_from_json(function_to_json(f)) == f);
  EXPECT_THROW(function_from_json(std::string_view(R"({"coeffs":[[-1,1]]})")), Error);
  EXPECT_THROW(function_from_json(std::string_view(R"({"coeffs":[[1]]})")), Error);
  EXPECT_THROW(function_from_json(std::string_view(R"({"coeffs":[], "x":1})")), Error);
}

TEST(Io, NGrid) {
  EXPECT_EQ(parse_n_grid("16..512"), (std::vector<int>{16, 32, 64, 128, 256, 512}));
  EXPECT_EQ(parse_n_grid("3..20"), (std::vector<int>{3, 6, 12}));
  EXPECT_EQ(parse_n_grid("8,16,24"), (std::vector<int>{8, 16, 24}));
  EXPECT_EQ(parse_n_grid("64"), (std::vector<int>{64}));
  EXPECT_THROW(parse_n_grid("8,4"), Error);
  EXPECT_THROW(parse_n_grid("0"), Error);
  EXPECT_THROW(parse_n_grid("a..b"), Error);
  EXPECT_EQ(format_n_grid({1, 2, 3}), "1,2,3");
}

TEST(Io, RunConfigRoundTrip) {
  RunConfig c;
  c.subcommand = "rates";
  c.kernel = Json::parse(R"({"preset":"ou","params":{"L":1.5}})");
  c.function = Json::parse(R"({"coeffs":[[1,0.5,0]]})");
  c.n = {16, 32};
  c.seed = 99;
  c.format = "json";
  c.target = -0.5;
  c.family = "extremal";
  c.beta = 0.75;
  EXPECT_TRUE(RunConfig::from_json(c.to_json()) == c);
  EXPECT_TRUE(RunConfig::from_json(Json::parse(c.to_json().dump())) == c);
  auto j = c.to_json();
  j["unexpected"] = 1;
  EXPECT_THROW(RunConfig::from_json(j), Error);
  j.erase("unexpected");
  j["format"] = "xml";
  EXPECT_THROW(RunConfig::from_json(j), Error);
}

TEST(Io, CsvWriter) {
  std::ostringstream s;
  CsvWriter csv(s);
  csv.meta("kernel", "bm");
  csv.header({"a", "b", "c"});
  csv.row(1, 0.5, std::string("x,y"));
  EXPECT_EQ(s.str(), "# kernel=bm\na,b,c\n1,0.5,\"x,y\"\n");
}
