#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>

#include "fixtures.hpp"
#include "groupoidal/model.hpp"

using namespace groupoidal;
using namespace fixtures;

namespace {

const std::filesystem::path kModels = std::filesystem::path(GROUPOIDAL_SOURCE_DIR) / "models";

ParseError parse_error(std::string_view text)
{
  try {
    parse_model(text, "t.model");
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError("", 0, 0, "");
}

bool same_action(const GroupAction& a, const GroupAction& b)
{
  if (a.group().order() != b.group().order() || !(a.target() == b.target()) || a.side() != b.side())
    return false;
  for (ElementIndex t = 0; t < static_cast<ElementIndex>(a.group().order()); ++t)
    for (ArrowIndex x = 0; x < static_cast<ArrowIndex>(a.target().num_arrows()); ++x)
      if (a.act(t, x) != b.act(t, x))
        return false;
  return true;
}

} // namespace

TEST(Numbers, Forms)
{
  EXPECT_EQ(parse_number("3/2"), Complex(1.5, 0));
  EXPECT_EQ(parse_number("-1"), Complex(-1, 0));
  EXPECT_EQ(parse_number("0.5"), Complex(0.5, 0));
  EXPECT_EQ(parse_number("1e-3"), Complex(1e-3, 0));
  EXPECT_EQ(parse_number("2i"), Complex(0, 2));
  EXPECT_EQ(parse_number("-i"), Complex(0, -1));
  EXPECT_EQ(parse_number("1/2-3/4i"), Complex(0.5, -0.75));
  for (const char* bad : {"", "1/0", "x", "1..2", "3/", "1+", "2ii"})
    EXPECT_THROW(parse_number(bad), std::invalid_argument) << bad;
}

TEST(Numbers, FormatRoundTrips)
{
  for (const Complex z : {Complex(0.1, 0), Complex(1.0 / 3, -2.0 / 7), Complex(0, 1), Complex(-1e-300, 5e300),
                          Complex(std::sqrt(0.5), 0)})
    EXPECT_EQ(parse_number(format_number(z)), z) << format_number(z);
}

TEST(Model, EmptyModel)
{
  const auto m = parse_model("groupoidal-model 1\n\n# nothing here\n");
  EXPECT_TRUE(m.empty());
  EXPECT_TRUE(parse_model("").empty());
}

TEST(Model, ShippedFourPointInstance)
{
  const auto m = load_model(kModels / "symmetric_z2z2.model");
  ASSERT_NE(m.find_groupoid("X"), nullptr);
  EXPECT_EQ(m.find_groupoid("X")->groupoid, make_pair_groupoid(4));
  EXPECT_TRUE(same_action(m.find_action("g")->action, g13_24()));
  EXPECT_TRUE(same_action(m.find_action("h")->action, h12_34()));
  ASSERT_NE(m.find_scenario("symmetric_z2z2"), nullptr);
  EXPECT_EQ(m.find_scenario("symmetric_z2z2")->kind, "symmetric");
  EXPECT_EQ(m.kind_of("ga"), "bundle-action");
  EXPECT_EQ(m.kind_of("nope"), "");
}

TEST(Model, RoundTripAllShippedModels)
{
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kModels)) {
    if (entry.path().extension() != ".model")
      continue;
    ++count;
    const auto m = load_model(entry.path());
    const auto text = serialize_model(m);
    const auto back = parse_model(text, "serialized");
    EXPECT_TRUE(back == m) << entry.path();
    EXPECT_EQ(serialize_model(back), text) << entry.path();
  }
  EXPECT_GE(count, 8);
}

TEST(Model, JsonMirrorsTheModel)
{
  const auto m = load_model(kModels / "raeburn_klein.model");
  const auto j = nlohmann::json::parse(model_to_json(m));
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["algebras"].size(), 1u);
  EXPECT_EQ(j["space_actions"].size(), 2u);
  EXPECT_EQ(j["scenarios"][0]["kind"], "raeburn");
}

TEST(Model, DanglingReferenceNamesTheReference)
{
  const auto e = parse_error("groupoidal-model 1\n"
                             "bundle A\n"
                             "  base Missing\n"
                             "  line\n"
                             "end\n");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 8);
  EXPECT_NE(e.cause().find("Missing"), std::string::npos) << e.cause();
  EXPECT_NE(std::string(e.what()).find("t.model:3:8:"), std::string::npos) << e.what();
}

TEST(Model, DimensionMismatch)
{
  const auto e = parse_error("groupoidal-model 1\n"
                             "algebra B\n"
                             "  basis a b\n"
                             "  left a\n"
                             "    1 0\n"
                             "    0 1 0\n"
                             "end\n");
  EXPECT_EQ(e.line(), 6);
  EXPECT_NE(e.cause().find("2"), std::string::npos) << e.cause();
}

TEST(Model, MalformedNumber)
{
  const auto e = parse_error("groupoidal-model 1\n"
                             "algebra B\n"
                             "  basis a\n"
                             "  left a\n"
                             "    1.2.3\n"
                             "  star\n"
                             "    1\n"
                             "end\n");
  EXPECT_EQ(e.line(), 5);
  EXPECT_EQ(e.column(), 5);
  EXPECT_NE(e.cause().find("1.2.3"), std::string::npos) << e.cause();
}

TEST(Model, DuplicateNameAndUnknownBlock)
{
  EXPECT_EQ(parse_error("groupoidal-model 1\ngroup G\n  cyclic 2\nend\ngroupoid G\n  pair 2\nend\n").line(), 5);
  EXPECT_EQ(parse_error("groupoidal-model 1\nwidget W\nend\n").line(), 2);
  EXPECT_EQ(parse_error("groupoidal-model 1\ngroup G\n  cyclic 2\n").line(), 2);
  EXPECT_EQ(parse_error("groupoidal-model 7\n").line(), 1);
}

TEST(Model, ScenarioArgumentKinds)
{
  const auto e = parse_error("groupoidal-model 1\n"
                             "groupoid X\n  pair 2\nend\n"
                             "scenario s\n  kind symmetric\n  args X X\nend\n");
  EXPECT_EQ(e.line(), 7);
  EXPECT_NE(e.cause().find("bundle-action"), std::string::npos) << e.cause();
}

TEST(Model, AxiomsAreLeftToValidation)
{
  const auto m = parse_model("groupoidal-model 1\n"
                             "group Z2\n  cyclic 2\nend\n"
                             "groupoid X\n  points a b\nend\n"
                             "action g\n  group Z2\n  groupoid X\n  side left\n  permutations\n    a b\n    a a\nend\n");
  EXPECT_FALSE(check_action(m.find_action("g")->action).ok());
}
