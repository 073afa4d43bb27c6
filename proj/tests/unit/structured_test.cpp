#include <gtest/gtest.h>

#include "fakes.hpp"
#include "judge/backend/errors.hpp"
#include "judge/backend/structured.hpp"

using namespace judge::backend;
using judge::testing::ScriptedTransport;

namespace {

const std::string kGood = R"({"matched": true, "reason": "settings visible"})";

MessageSequence prompt() {
  return {Message{Role::System, {ContentPart::make_text("system")}},
          Message{Role::User, {ContentPart::make_text("user")}}};
}

nlohmann::json complete(ScriptedTransport& transport, int retries = 2) {
  return complete_structured(prompt(), SchemaId::Match, {"judge-model", retries}, transport);
}

}  // namespace

TEST(Repair, StripFences) {
  EXPECT_EQ(strip_fences("```json\n{\"a\":1}\n```"), "{\"a\":1}");
  EXPECT_EQ(strip_fences("```\n{}\n```"), "{}");
  EXPECT_EQ(strip_fences("{}"), "{}");
}

TEST(Repair, FirstBalancedObjectHonorsStrings) {
  EXPECT_EQ(extract_first_object(R"(Sure! {"a": "}{", "b": {"c": 1}} trailing {"d":2})"),
            std::optional<std::string>(R"({"a": "}{", "b": {"c": 1}})"));
  EXPECT_FALSE(extract_first_object("no braces here").has_value());
  EXPECT_FALSE(extract_first_object("{ never closed").has_value());
}

TEST(Repair, CleanReplyTakesOneCall) {
  ScriptedTransport transport({ScriptedTransport::reply(kGood)});
  EXPECT_EQ(complete(transport)["reason"], "settings visible");
  EXPECT_EQ(transport.calls(), 1u);
}

TEST(Repair, FencedReplyParsesLocally) {
  ScriptedTransport transport({ScriptedTransport::reply("```json\n" + kGood + "\n```")});
  EXPECT_TRUE(complete(transport)["matched"].get<bool>());
  EXPECT_EQ(transport.calls(), 1u);
}

TEST(Repair, ProseWrappedReplyParsesLocally) {
  ScriptedTransport transport({ScriptedTransport::reply("Here is my answer: " + kGood + " Hope this helps.")});
  EXPECT_TRUE(complete(transport)["matched"].get<bool>());
  EXPECT_EQ(transport.calls(), 1u);
}

TEST(Repair, GarbageExhaustsBudget) {
  ScriptedTransport transport({ScriptedTransport::reply("I cannot answer that.")});
  try {
    complete(transport, 2);
    FAIL();
  } catch (const BackendFailure& e) {
    EXPECT_EQ(e.attempts(), 3);
  }
  EXPECT_EQ(transport.calls(), 3u);
}

TEST(Repair, CorrectiveRetryCarriesBadReplyAndInstruction) {
  ScriptedTransport transport({ScriptedTransport::reply(R"({"matched": "maybe"})"), ScriptedTransport::reply(kGood)});
  complete(transport);
  auto requests = transport.requests();
  ASSERT_EQ(requests.size(), 2u);
  ASSERT_EQ(requests[1].messages.size(), 4u);
  EXPECT_EQ(requests[1].messages[2].role, Role::Assistant);
  EXPECT_EQ(requests[1].messages[2].text(), R"({"matched": "maybe"})");
  EXPECT_EQ(requests[1].messages[3].text(), std::string(kCorrectiveInstruction));
}

TEST(Repair, TransportErrorResendsUnchanged) {
  ScriptedTransport transport({ScriptedTransport::transport_failure(), ScriptedTransport::reply(kGood)});
  complete(transport);
  auto requests = transport.requests();
  ASSERT_EQ(requests.size(), 2u);
  EXPECT_EQ(requests[0].messages, requests[1].messages);
}

TEST(Repair, AuthErrorIsNotRetried) {
  ScriptedTransport transport({ScriptedTransport::auth_failure(), ScriptedTransport::reply(kGood)});
  EXPECT_THROW(complete(transport), AuthError);
  EXPECT_EQ(transport.calls(), 1u);
}

TEST(Repair, MalformedResponseBodyCountsAsAttempt) {
  ScriptedTransport transport({ScriptedTransport::raw("{\"choices\": []}")});
  EXPECT_THROW(complete(transport, 1), BackendFailure);
  EXPECT_EQ(transport.calls(), 2u);
}

TEST(Repair, ZeroRetriesMeansOneCall) {
  ScriptedTransport transport({ScriptedTransport::reply("garbage")});
  EXPECT_THROW(complete(transport, 0), BackendFailure);
  EXPECT_EQ(transport.calls(), 1u);
}
