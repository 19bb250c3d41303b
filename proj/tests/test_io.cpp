#include <doctest.h>

#include <cmath>
#include <sstream>

#include "decaylab/io.hpp"

using namespace decaylab;

namespace {

void check_same(const DecayRecord& a, const DecayRecord& b) {
  CHECK(a.n1 == b.n1);
  CHECK(a.n2 == b.n2);
  CHECK(a.min_detsq == b.min_detsq);
  CHECK(a.min_detsq_float == b.min_detsq_float);
  CHECK(a.witness1 == b.witness1);
  CHECK(a.witness2 == b.witness2);
  CHECK(a.orbit_reduced_count == b.orbit_reduced_count);
  CHECK(a.visited_pairs == b.visited_pairs);
}

}  // namespace

TEST_CASE("decay CSV round trip") {
  const auto recs = decay_series(3, SeriesMode::fixed_second);
  std::stringstream ss;
  write_decay_csv(ss, recs);
  const std::string text = ss.str();
  CHECK(text.rfind(std::string(kDecayCsvHeader) + "\n", 0) == 0);
  CHECK(text.find("1,1,26,-16,") != std::string::npos);

  const auto back = read_decay_csv(ss);
  REQUIRE(back.size() == recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    check_same(back[k], recs[k]);
    CHECK(std::abs(back[k].wall_time - recs[k].wall_time) <= 1e-6);  // written with 6 decimals
  }
}

TEST_CASE("decay JSON round trip") {
  const auto recs = decay_series(2, SeriesMode::equal);
  std::stringstream ss;
  write_decay_json(ss, recs);
  const Json j = Json::parse(ss.str());
  REQUIRE(j.is_array());
  CHECK(j[0]["detsq_p"] == "26");
  CHECK(j[0]["detsq_q"] == "-16");
  CHECK(j[0]["w1"]["a"] == "-1");
  std::stringstream again(ss.str());
  const auto back = read_decay_json(again);
  REQUIRE(back.size() == recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) {
    check_same(back[k], recs[k]);
    CHECK(back[k].exact_confirmations == recs[k].exact_confirmations);
  }
}

TEST_CASE("malformed decay input") {
  std::stringstream bad_header("n1,n2\n1,1\n");
  CHECK_THROWS_AS(read_decay_csv(bad_header), FormatError);
  std::stringstream short_row(std::string(kDecayCsvHeader) + "\n1,1,26\n");
  CHECK_THROWS_AS(read_decay_csv(short_row), FormatError);
  std::stringstream not_json("{oops");
  CHECK_THROWS_AS(read_decay_json(not_json), FormatError);
}

TEST_CASE("sequence CSV round trip") {
  const auto rows = table_rows();
  std::stringstream ss;
  write_sequence_csv(ss, rows);
  CHECK(ss.str().find(",219602,1.732,") != std::string::npos);
  const auto back = read_sequence_csv(ss);
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(back[k].n == rows[k].n);
    CHECK(back[k].m == rows[k].m);
    CHECK(back[k].x1 == rows[k].x1);
    CHECK(back[k].x2 == rows[k].x2);
    CHECK(back[k].z == rows[k].z);
    CHECK(back[k].factors == rows[k].factors);
    CHECK(back[k].detsq == rows[k].detsq);
    CHECK(format_delta(back[k].delta_estimate) == format_delta(rows[k].delta_estimate));
  }
}

TEST_CASE("sequence JSON") {
  const SequenceRecord row = table_row(5);
  const Json j = to_json(row);
  CHECK(j["m"] == "38");
  CHECK(j["delta"] == "1.889");
  const SequenceRecord back = sequence_from_json(j);
  CHECK(back.x1 == row.x1);
  CHECK(back.factors.size() == row.factors.size());
}

TEST_CASE("ring element JSON") {
  const RingElem x{BigInt("123456789012345678901234567890"), -1, 0, 7};
  CHECK(ring_from_json(to_json(x)) == x);
  CHECK_THROWS(ring_from_json(Json::parse(R"({"a":"1"})")));
}

TEST_CASE("point files") {
  std::stringstream two_col("N,D\n1,0.5\n2,0.25\n");
  const auto pts = read_points_csv(two_col);
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].first == 2);
  CHECK(pts[1].second == 0.25);

  const auto recs = decay_series(2, SeriesMode::fixed_second);
  std::stringstream ss;
  write_decay_csv(ss, recs);
  const auto from_records = read_points_csv(ss);
  REQUIRE(from_records.size() == 2);
  CHECK(from_records[0].second == doctest::Approx(recs[0].decay_value()));

  std::stringstream junk("x,y,z\n1,2,3\n");
  CHECK_THROWS_AS(read_points_csv(junk), FormatError);
}

TEST_CASE("delta formatting") {
  CHECK(format_delta(1.88949) == "1.889");
  CHECK(format_delta(2.0) == "2.000");
}
