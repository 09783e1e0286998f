#include <nlohmann/json.hpp>

#include "doctest.h"
#include "twodescent/error.hpp"
#include "twodescent/report_io.hpp"

using namespace twodescent;

namespace {

using Status = CremonaCheck::Status;

Status check_line(const std::string& s) { return verify_cremona(parse_cremona_line(s)).status; }

}  // namespace

TEST_CASE("JSON round trip") {
  const DescentReport r = descent_report(Curve(-6, 12, 0), 10);
  ReportDocument doc = make_document(r, 1.5);
  CHECK(doc.curve == std::array<Int, 3>{-6, 12, 0});
  CHECK(doc.rank_exactness == "exact");
  CHECK(doc.rank_lower == 1);
  REQUIRE(doc.generators.size() == 1);
  CHECK(doc.generators[0] == std::array<Int, 4>{3, 1, 3, 1});
  CHECK(document_from_json(to_json(doc)) == doc);
  CHECK(document_from_json(to_json(doc, -1)) == doc);

  // Past 2^53 integers travel as strings and come back exact.
  doc.discriminant = Int(1) << 70;
  doc.generators[0][0] = -(Int(1) << 60) - 1;
  const std::string text = to_json(doc);
  CHECK(text.find("\"1180591620717411303424\"") != std::string::npos);
  CHECK(document_from_json(text) == doc);
  const auto j = nlohmann::json::parse(to_json(make_document(r)));
  CHECK(j["discriminant"].is_number_integer());
  CHECK(j["schema_version"] == 1);
}

TEST_CASE("JSON errors") {
  CHECK_THROWS_AS(document_from_json("{"), DomainError);
  CHECK_THROWS_AS(document_from_json("[]"), DomainError);
  ReportDocument doc = make_document(descent_report(Curve(6, 1, 0), 5));
  doc.schema_version = 2;
  CHECK_THROWS_WITH_AS(document_from_json(to_json(doc)), doctest::Contains("schema_version"), DomainError);
  auto j = nlohmann::json::parse(to_json(make_document(descent_report(Curve(6, 1, 0), 5))));
  j["discriminant"] = "12x";
  CHECK_THROWS_AS(document_from_json(j.dump()), DomainError);
}

TEST_CASE("text report") {
  const std::string t = render_text(descent_report(Curve(6, 1, 0), 20));
  CHECK(t.find("Results:\n") != std::string::npos);
  CHECK(t.find("2 <= #E(Q)/phi'(E'(Q)) <= 2") != std::string::npos);
  CHECK(t.find("0 <= rank of E(Q) = rank of E'(Q) <= 0") != std::string::npos);
  CHECK(t.find("(2, 2, 2, 2)") != std::string::npos);
  CHECK(t.find("Sel^(phi)(E/Q) = {1, 2}") != std::string::npos);
  CHECK(t.find("Sel^(phi')(E'/Q) = {-1, 1}") != std::string::npos);
  CHECK(t.find("not locally soluble at 2") != std::string::npos);

  const std::string t17 = render_text(descent_report(Curve(0, 17, 0), 20));
  CHECK(t17.find("#Sel^(phi)(E/Q) = 8") != std::string::npos);
  CHECK(t17.find("0 <= rank of E(Q) = rank of E'(Q) <= 2") != std::string::npos);
}

TEST_CASE("table JSON") {
  TableOptions opt;
  opt.mod8 = 1;
  const auto rows = ep_table(100, opt);
  const auto j = nlohmann::json::parse(table_to_json(rows));
  REQUIRE(j.is_array());
  CHECK(j.size() == rows.size());
  CHECK(j[0]["p"] == 17);
  CHECK(j[0]["rank"]["kind"] == "exact");
}

TEST_CASE("Cremona line parsing") {
  const CremonaLine c = parse_cremona_line("18496 k 1 [0,0,0,17,0] 0 [2] [0:0:1]");
  CHECK(c.conductor == 18496);
  CHECK(c.class_label == "k");
  CHECK(c.number == 1);
  CHECK(c.ainv == std::array<Int, 5>{0, 0, 0, 17, 0});
  CHECK(c.rank == 0);
  CHECK(c.torsion_invariants == std::vector<unsigned>{2});
  CHECK(c.generators == std::vector<std::array<Int, 3>>{{0, 0, 1}});
  CHECK(parse_cremona_line("  18496  k 1 [ 0, 0, 0, 17, 0 ]  0 [ 2 ]  [ 0 : 0 : 1 ] ") == c);
  CHECK(parse_cremona_line("11 a 3 [0,-1,1,0,0] 0 [5]").generators.empty());
  CHECK(parse_cremona_line("37 a 1 [0,0,1,-1,0] 1 [] [0:0:1]").torsion_invariants.empty());
  CHECK(parse_cremona_line("37 a 1 [0,0,1,-1,0] 1 [1] [0:0:1]").torsion_invariants.empty());

  for (const char* bad : {"", "18496 k 1 [0,0,0,17,0] 0", "18496 k 1 [0,0,17,0] 0 [2]",
                          "18496 k 1 [0,0,0,17,0] 0 [2] [0:0]", "18496 k 1 [0,0,0,17,0 0 [2]",
                          "18496 k1 1 [0,0,0,17,0] 0 [2]", "18496 k 1 [0,0,0,x,0] 0 [2]",
                          "18496 k 1 [0,0,0,17,0] -1 [2]", "18496 k 1 [0,0,0,17,0] 0 [0]"}) {
    CHECK_THROWS_AS(parse_cremona_line(bad), DomainError);
  }
}

TEST_CASE("Cremona verification") {
  CHECK(check_line("18496 k 1 [0,0,0,17,0] 0 [2] [0:0:1]") == Status::ok);
  CHECK(check_line("32 a 2 [0,0,0,-1,0] 0 [2,2]") == Status::ok);
  CHECK(check_line("800 x 1 [0,0,0,-25,0] 1 [2,2] [-4:6:1]") == Status::ok);
  // (9/16, 411/64) on y^2 = x^3 + 73x.
  CHECK(check_line("9344 x 1 [0,0,0,73,0] 2 [2] [36:411:64]") == Status::ok);
  // No 2-torsion, so only the generator and torsion are checked.
  CHECK(check_line("5077 a 1 [0,0,1,-7,6] 3 []") == Status::skipped);
  CHECK(check_line("3888 x 1 [0,0,0,0,17] 2 [] [-1:4:1] [2:5:1]") == Status::ok);

  CHECK(check_line("18496 k 1 [0,0,0,17,0] 0 [3] [0:0:1]") == Status::mismatch);
  CHECK(check_line("18496 k 1 [0,0,0,17,0] 3 [2] [0:0:1]") == Status::mismatch);
  CHECK(check_line("18496 k 1 [0,0,0,17,0] 0 [2] [1:1:1]") == Status::mismatch);
  CHECK(check_line("18496 k 1 [0,0,0,17,0] 0 [2] [0:0:0]") == Status::mismatch);
  CHECK(check_line("1 x 1 [0,0,0,0,0] 0 []") == Status::mismatch);
  CHECK(check_line("11 a 3 [0,-1,1,0,0] 0 [5]") == Status::skipped);

  const CremonaCheck c = verify_cremona(parse_cremona_line("18496 k 1 [0,0,0,17,0] 0 [2] [0:0:1]"));
  REQUIRE(c.messages.size() == 3);
  CHECK(c.messages[2] == "rank 0 in [0, 2] confirmed");
}
