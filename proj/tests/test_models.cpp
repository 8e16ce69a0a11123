#include <gtest/gtest.h>

#include <filesystem>

#include "dcost/errors.hpp"
#include "dcost/models.hpp"

using namespace dcost;

TEST(Models, AdmireEntries) {
  const auto sys = admire();
  EXPECT_EQ(sys.A()(0, 2), 0.6176);
  EXPECT_EQ(sys.B()(2, 3), -0.8823);
  EXPECT_EQ(sys.states(), 3);
  EXPECT_EQ(sys.inputs(), 4);
  EXPECT_EQ(admire().A(), sys.A());
  EXPECT_EQ(admire().B(), sys.B());
}

TEST(Models, AdmireRank) { EXPECT_EQ(controllability_rank(admire().A(), admire().B()), 3); }

TEST(Models, Registry) {
  EXPECT_EQ(builtin_model("admire").A, admire_spec().A);
  const auto integrator = to_system(builtin_model("integrator"));
  EXPECT_EQ(integrator.states(), 1);
  EXPECT_THROW(builtin_model("f16"), ConfigError);
}

TEST(Models, RoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "dcost_admire_roundtrip.json").string();
  save_model(admire_spec(), path);
  const auto loaded = load_model(path);
  EXPECT_EQ(loaded.A(), admire().A());
  EXPECT_EQ(loaded.B(), admire().B());
  EXPECT_EQ(loaded.name(), "admire");
  std::filesystem::remove(path);
}

TEST(Models, ZeroInputIsUncontrollable) {
  const std::string text = R"({"name": "dead", "n": 2, "p": 1,
    "A": [[0, 1], [0, 0]], "B": [[0], [0]]})";
  try {
    (void)parse_model(text);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.rank(), 0);
  }
}

TEST(Models, MismatchedRow) {
  const std::string text = R"({"name": "bad", "n": 2, "p": 1,
    "A": [[0, 1], [0]], "B": [[0], [1]]})";
  try {
    (void)parse_model(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "A");
    EXPECT_EQ(e.row(), 1);
  }
}

TEST(Models, MalformedJson) {
  EXPECT_THROW(parse_model("{\"n\": 2,"), ParseError);
  EXPECT_THROW(parse_model(R"({"n": 1, "p": 1, "A": [["x"]], "B": [[1]]})"), ParseError);
  EXPECT_THROW(parse_model(R"({"n": 0, "p": 1, "A": [], "B": []})"), ParseError);
}

TEST(Models, Resolve) {
  EXPECT_EQ(resolve_model("admire").name, "admire");
  EXPECT_THROW(resolve_model("/nonexistent/model.json"), ConfigError);
}
