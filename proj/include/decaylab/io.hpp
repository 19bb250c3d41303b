#pragma once

// CSV and JSON forms of search records, sequence rows and reports. Exact
// integers are always written as decimal strings; float columns are extra.

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "decaylab/bounds.hpp"
#include "decaylab/decay_search.hpp"
#include "decaylab/sequences.hpp"

namespace decaylab {

using Json = nlohmann::ordered_json;

/// Thrown on malformed CSV/JSON input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decay records. CSV columns:
// n1,n2,detsq_p,detsq_q,detsq_float,w1_a,w1_b,w1_c,w1_d,w2_a,w2_b,w2_c,w2_d,visited_pairs,wall_time_s
// orbit_reduced_count is rebuilt from (n1, n2) on read; exact_confirmations
// is carried by JSON only.
extern const char* const kDecayCsvHeader;
void write_decay_csv(std::ostream& os, std::span<const DecayRecord> records);
std::vector<DecayRecord> read_decay_csv(std::istream& is);
Json to_json(const DecayRecord& r);
DecayRecord decay_from_json(const Json& j);
void write_decay_json(std::ostream& os, std::span<const DecayRecord> records);
std::vector<DecayRecord> read_decay_json(std::istream& is);

// Sequence rows. CSV columns:
// n,a_n,b_n,m,delta,detsq_p,detsq_q,x1_a,x1_b,x1_c,x1_d,x2_a,x2_b,x2_c,x2_d,z,factors
// with z and factors in the "a+bi+cτ+diτ" text form, factors ';'-separated.
extern const char* const kSequenceCsvHeader;
void write_sequence_csv(std::ostream& os, std::span<const SequenceRecord> rows);
std::vector<SequenceRecord> read_sequence_csv(std::istream& is);
Json to_json(const SequenceRecord& r);
SequenceRecord sequence_from_json(const Json& j);
void write_sequence_json(std::ostream& os, std::span<const SequenceRecord> rows);

/// δ as printed in tables: fixed, 3 decimals.
std::string format_delta(double delta);

Json to_json(const RingElem& x);
RingElem ring_from_json(const Json& j);
Json to_json(const QuadInt& x);
Json to_json(const Convergent& c);
Json to_json(const ExponentFit& f);
Json to_json(const BoundsReport& rep, std::span<const DecayRecord> records);
Json to_json(const DmtQuery& q, const DmtResult& res);
Json to_json(const UnbalancedSplit& p);

/// (N, D) pairs for exponent fitting. Accepts either a two-column file with
/// header "n,d" (any case) or a decay-record CSV, where N = max(n1, n2) and
/// D = sqrt(detsq_float).
std::vector<std::pair<double, double>> read_points_csv(std::istream& is);

}  // namespace decaylab
