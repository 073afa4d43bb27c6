#include <gtest/gtest.h>

#include "judge/backend/schemas.hpp"

using namespace judge;
using namespace judge::backend;
using nlohmann::json;

TEST(Schemas, MatchRoundTrip) {
  const json value = {{"matched", true}, {"reason", "settings list visible"}};
  EXPECT_FALSE(conformance_error(SchemaId::Match, value).has_value());
  auto parsed = parse_match(value);
  EXPECT_TRUE(parsed.matched);
  EXPECT_EQ(to_json_value(parsed), value);
}

TEST(Schemas, MatchNeedsNonEmptyReason) {
  EXPECT_TRUE(conformance_error(SchemaId::Match, json{{"matched", true}, {"reason", ""}}).has_value());
  EXPECT_TRUE(conformance_error(SchemaId::Match, json{{"matched", "yes"}, {"reason", "r"}}).has_value());
  EXPECT_THROW(parse_match(json{{"matched", true}}), std::invalid_argument);
}

TEST(Schemas, DisplayRoundTrip) {
  const json value = {{"has_defect", true},
                      {"defects",
                       {{{"type", "DD.ContentRendering"},
                         {"evidence", {"row 3 shows squares"}},
                         {"location_hint", "dialog, third row"},
                         {"reason", "glyphs missing"}}}}};
  EXPECT_FALSE(conformance_error(SchemaId::Display, value).has_value());
  auto parsed = parse_display(value);
  ASSERT_EQ(parsed.defects.size(), 1u);
  EXPECT_EQ(parsed.defects[0].type, model::FaultMode::ContentRendering);
  EXPECT_EQ(to_json_value(parsed), value);
}

TEST(Schemas, DisplayRejectsInteractionTypesAndUntypedPositives) {
  json value = {{"has_defect", true},
                {"defects",
                 {{{"type", "ID.OperationNoResponse"}, {"evidence", json::array()}, {"location_hint", ""},
                   {"reason", ""}}}}};
  EXPECT_TRUE(conformance_error(SchemaId::Display, value).has_value());
  value["defects"][0]["type"] = "None";
  EXPECT_TRUE(conformance_error(SchemaId::Display, value).has_value());
  value["has_defect"] = false;
  EXPECT_FALSE(conformance_error(SchemaId::Display, value).has_value());
}

TEST(Schemas, InteractionRoundTrip) {
  const json value = {{"has_defect", true},
                      {"defect",
                       {{"type", "ID.OperationNoResponse"},
                        {"step", 4},
                        {"reason", "list unchanged"},
                        {"effect", "nothing happened"}}}};
  EXPECT_FALSE(conformance_error(SchemaId::Interaction, value).has_value());
  auto parsed = parse_interaction(value);
  EXPECT_EQ(parsed.type, model::FaultMode::OperationNoResponse);
  EXPECT_EQ(parsed.step, 4);
  EXPECT_EQ(to_json_value(parsed), value);
}

TEST(Schemas, InteractionRejectsDisplayTypesButUnifiedAcceptsThem) {
  const json value = {{"has_defect", true},
                      {"defect", {{"type", "DD.ElementLayout"}, {"step", 2}, {"reason", "overlap"}}}};
  EXPECT_TRUE(conformance_error(SchemaId::Interaction, value).has_value());
  EXPECT_FALSE(conformance_error(SchemaId::Unified, value).has_value());
  EXPECT_EQ(parse_unified(value).type, model::FaultMode::ElementLayout);
}

TEST(Schemas, InteractionNoneWithDefectIsRejected) {
  const json value = {{"has_defect", true}, {"defect", {{"type", "None"}, {"step", 2}, {"reason", "r"}}}};
  EXPECT_TRUE(conformance_error(SchemaId::Interaction, value).has_value());
}

TEST(Schemas, ConsistencyRoundTrip) {
  const json value = {{"consistent", false}, {"reason", "different step"}};
  EXPECT_FALSE(conformance_error(SchemaId::Consistency, value).has_value());
  EXPECT_EQ(to_json_value(parse_consistency(value)), value);
}
