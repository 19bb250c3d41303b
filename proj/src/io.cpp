#include "decaylab/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace decaylab {

const char* const kDecayCsvHeader =
    "n1,n2,detsq_p,detsq_q,detsq_float,w1_a,w1_b,w1_c,w1_d,w2_a,w2_b,w2_c,w2_d,visited_pairs,"
    "wall_time_s";

const char* const kSequenceCsvHeader =
    "n,a_n,b_n,m,delta,detsq_p,detsq_q,x1_a,x1_b,x1_c,x1_d,x2_a,x2_b,x2_c,x2_d,z,factors";

namespace {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

BigInt parse_big(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  const std::string_view digits = (!t.empty() && t[0] == '-') ? std::string_view(t).substr(1) : t;
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw FormatError("expected an integer, got '" + s + "'");
  }
  return BigInt(t);
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw FormatError("trailing characters in number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw FormatError("expected a number, got '" + s + "'");
  }
}

int parse_int(const std::string& s) {
  const BigInt v = parse_big(s);
  if (!v.fits_sint_p()) throw FormatError("integer out of range: " + s);
  return static_cast<int>(v.get_si());
}

std::uint64_t parse_u64(const std::string& s) {
  const BigInt v = parse_big(s);
  if (v < 0) throw FormatError("expected a nonnegative count, got " + s);
  return std::stoull(v.get_str());
}

Json coords_json(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
  return Json{{"a", a.get_str()}, {"b", b.get_str()}, {"c", c.get_str()}, {"d", d.get_str()}};
}

BigInt big_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_string()) return parse_big(v.get<std::string>());
  if (v.is_number_integer()) return BigInt(v.dump());
  throw FormatError(std::string("field '") + key + "' is not an integer");
}

UserCoords user_from_json(const Json& j) {
  return {big_field(j, "a"), big_field(j, "b"), big_field(j, "c"), big_field(j, "d")};
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

// ---------------------------------------------------------- decay records

void write_decay_csv(std::ostream& os, std::span<const DecayRecord> records) {
  os << kDecayCsvHeader << '\n';
  for (const DecayRecord& r : records) {
    os << r.n1 << ',' << r.n2 << ',' << r.min_detsq.p.get_str() << ',' << r.min_detsq.q.get_str()
       << ',' << format_g17(r.min_detsq_float);
    for (const UserCoords* w : {&r.witness1, &r.witness2}) {
      os << ',' << w->a.get_str() << ',' << w->b.get_str() << ',' << w->c.get_str() << ','
         << w->d.get_str();
    }
    os << ',' << r.visited_pairs << ',' << format_fixed(r.wall_time, 6) << '\n';
  }
}

std::vector<DecayRecord> read_decay_csv(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw FormatError("empty decay CSV");
  if (line != kDecayCsvHeader) throw FormatError("unexpected decay CSV header: " + line);
  std::vector<DecayRecord> out;
  while (next_line(is, line)) {
    const auto f = split(line, ',');
    if (f.size() != 15) throw FormatError("decay CSV row needs 15 fields: " + line);
    DecayRecord r;
    r.n1 = parse_int(f[0]);
    r.n2 = parse_int(f[1]);
    r.min_detsq = {parse_big(f[2]), parse_big(f[3])};
    r.min_detsq_float = parse_double(f[4]);
    r.witness1 = {parse_big(f[5]), parse_big(f[6]), parse_big(f[7]), parse_big(f[8])};
    r.witness2 = {parse_big(f[9]), parse_big(f[10]), parse_big(f[11]), parse_big(f[12])};
    r.visited_pairs = parse_u64(f[13]);
    r.wall_time = parse_double(f[14]);
    if (r.n1 >= 1 && r.n2 >= 1) r.orbit_reduced_count = reduced_pair_count(r.n1, r.n2);
    out.push_back(std::move(r));
  }
  return out;
}

Json to_json(const DecayRecord& r) {
  return Json{
      {"n1", r.n1},
      {"n2", r.n2},
      {"detsq_p", r.min_detsq.p.get_str()},
      {"detsq_q", r.min_detsq.q.get_str()},
      {"detsq_float", r.min_detsq_float},
      {"w1", coords_json(r.witness1.a, r.witness1.b, r.witness1.c, r.witness1.d)},
      {"w2", coords_json(r.witness2.a, r.witness2.b, r.witness2.c, r.witness2.d)},
      {"orbit_reduced_count", r.orbit_reduced_count},
      {"visited_pairs", r.visited_pairs},
      {"exact_confirmations", r.exact_confirmations},
      {"wall_time_s", r.wall_time},
  };
}

DecayRecord decay_from_json(const Json& j) {
  try {
    DecayRecord r;
    r.n1 = j.at("n1").get<int>();
    r.n2 = j.at("n2").get<int>();
    r.min_detsq = {big_field(j, "detsq_p"), big_field(j, "detsq_q")};
    r.min_detsq_float = j.at("detsq_float").get<double>();
    r.witness1 = user_from_json(j.at("w1"));
    r.witness2 = user_from_json(j.at("w2"));
    r.orbit_reduced_count = j.value("orbit_reduced_count", std::uint64_t{0});
    r.visited_pairs = j.at("visited_pairs").get<std::uint64_t>();
    r.exact_confirmations = j.value("exact_confirmations", std::uint64_t{0});
    r.wall_time = j.at("wall_time_s").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad decay record JSON: ") + e.what());
  }
}

void write_decay_json(std::ostream& os, std::span<const DecayRecord> records) {
  Json arr = Json::array();
  for (const DecayRecord& r : records) arr.push_back(to_json(r));
  os << arr.dump(2) << '\n';
}

std::vector<DecayRecord> read_decay_json(std::istream& is) {
  Json arr;
  try {
    arr = Json::parse(is);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad JSON: ") + e.what());
  }
  if (!arr.is_array()) throw FormatError("decay JSON must be an array of records");
  std::vector<DecayRecord> out;
  for (const Json& j : arr) out.push_back(decay_from_json(j));
  return out;
}

// ---------------------------------------------------------- sequence rows

std::string format_delta(double delta) { return format_fixed(delta, 3); }

void write_sequence_csv(std::ostream& os, std::span<const SequenceRecord> rows) {
  os << kSequenceCsvHeader << '\n';
  for (const SequenceRecord& r : rows) {
    os << r.n << ',' << r.a_n.get_str() << ',' << r.b_n.get_str() << ',' << r.m.get_str() << ','
       << format_delta(r.delta_estimate) << ',' << r.detsq.p.get_str() << ','
       << r.detsq.q.get_str();
    for (const RingElem* x : {&r.x1, &r.x2}) {
      os << ',' << x->a.get_str() << ',' << x->b.get_str() << ',' << x->c.get_str() << ','
         << x->d.get_str();
    }
    os << ',' << to_string(r.z) << ',';
    for (std::size_t k = 0; k < r.factors.size(); ++k) {
      if (k != 0) os << ';';
      os << to_string(r.factors[k]);
    }
    os << '\n';
  }
}

std::vector<SequenceRecord> read_sequence_csv(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw FormatError("empty sequence CSV");
  if (line != kSequenceCsvHeader) throw FormatError("unexpected sequence CSV header: " + line);
  std::vector<SequenceRecord> out;
  while (next_line(is, line)) {
    const auto f = split(line, ',');
    if (f.size() != 17) throw FormatError("sequence CSV row needs 17 fields: " + line);
    SequenceRecord r;
    r.n = static_cast<unsigned>(parse_int(f[0]));
    r.a_n = parse_big(f[1]);
    r.b_n = parse_big(f[2]);
    r.m = parse_big(f[3]);
    r.delta_estimate = parse_double(f[4]);
    r.detsq = {parse_big(f[5]), parse_big(f[6])};
    r.x1 = {parse_big(f[7]), parse_big(f[8]), parse_big(f[9]), parse_big(f[10])};
    r.x2 = {parse_big(f[11]), parse_big(f[12]), parse_big(f[13]), parse_big(f[14])};
    try {
      r.z = parse_ring_elem(f[15]);
      for (const std::string& t : split(f[16], ';')) r.factors.push_back(parse_ring_elem(t));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

Json to_json(const RingElem& x) { return coords_json(x.a, x.b, x.c, x.d); }

RingElem ring_from_json(const Json& j) {
  return {big_field(j, "a"), big_field(j, "b"), big_field(j, "c"), big_field(j, "d")};
}

Json to_json(const QuadInt& x) { return Json{{"p", x.p.get_str()}, {"q", x.q.get_str()}}; }

Json to_json(const SequenceRecord& r) {
  Json factors = Json::array();
  for (const RingElem& f : r.factors) factors.push_back(to_json(f));
  return Json{
      {"n", r.n},
      {"a_n", r.a_n.get_str()},
      {"b_n", r.b_n.get_str()},
      {"z", to_json(r.z)},
      {"factors", std::move(factors)},
      {"x1", to_json(r.x1)},
      {"x2", to_json(r.x2)},
      {"m", r.m.get_str()},
      {"detsq_p", r.detsq.p.get_str()},
      {"detsq_q", r.detsq.q.get_str()},
      {"detsq_float", r.detsq.to_double()},
      {"delta", format_delta(r.delta_estimate)},
  };
}

SequenceRecord sequence_from_json(const Json& j) {
  try {
    SequenceRecord r;
    r.n = j.at("n").get<unsigned>();
    r.a_n = big_field(j, "a_n");
    r.b_n = big_field(j, "b_n");
    r.z = ring_from_json(j.at("z"));
    for (const Json& f : j.at("factors")) r.factors.push_back(ring_from_json(f));
    r.x1 = ring_from_json(j.at("x1"));
    r.x2 = ring_from_json(j.at("x2"));
    r.m = big_field(j, "m");
    r.detsq = {big_field(j, "detsq_p"), big_field(j, "detsq_q")};
    r.delta_estimate = parse_double(j.at("delta").get<std::string>());
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad sequence record JSON: ") + e.what());
  }
}

void write_sequence_json(std::ostream& os, std::span<const SequenceRecord> rows) {
  Json arr = Json::array();
  for (const SequenceRecord& r : rows) arr.push_back(to_json(r));
  os << arr.dump(2) << '\n';
}

// ---------------------------------------------------------------- reports

Json to_json(const Convergent& c) {
  return Json{{"h", c.h.get_str()}, {"k", c.k.get_str()}, {"quality", c.quality}};
}

Json to_json(const ExponentFit& f) {
  return Json{{"delta", f.delta},
              {"constant", f.constant},
              {"residual", f.residual},
              {"sample_count", f.sample_count}};
}

Json to_json(const BoundsReport& rep, std::span<const DecayRecord> records) {
  auto box = [&](std::size_t idx) { return Json{{"n1", records[idx].n1}, {"n2", records[idx].n2}}; };
  Json out{
      {"record_count", records.size()},
      {"all_positive", rep.all_positive},
      {"k_emp", rep.k_emp},
      {"k_emp_attained_at", box(rep.k_emp_index)},
  };
  if (rep.c_emp) {
    out["c_emp"] = *rep.c_emp;
    out["c_emp_attained_at"] = box(rep.c_emp_index);
  } else {
    out["c_emp"] = nullptr;
  }
  Json w = Json::array();
  for (const WitnessPoint& p : rep.witnesses) {
    w.push_back(Json{{"n", p.n},
                     {"size1", p.size1},
                     {"size2", p.size2},
                     {"abs_det", p.abs_det},
                     {"size_product_times_det", p.scaled},
                     {"exponent", p.exponent}});
  }
  out["sequence_witnesses"] = std::move(w);
  return out;
}

Json to_json(const DmtQuery& q, const DmtResult& res) {
  const bool theoretical = q.mode == DeltaMode::theoretical_2r;
  Json out{
      {"r", to_string(q.r)},
      {"r_float", q.r.get_d()},
      {"delta_mode", theoretical ? "theoretical_2r" : "empirical"},
  };
  if (!theoretical) out["empirical_delta"] = to_string(q.empirical_delta);
  out["lhs"] = to_string(res.lhs);
  out["lhs_float"] = res.lhs.get_d();
  out["rhs"] = to_string(res.rhs);
  out["rhs_float"] = res.rhs.get_d();
  out["condition_satisfied"] = res.optimal;
  return out;
}

Json to_json(const UnbalancedSplit& p) {
  return Json{{"n", p.n},
              {"x1", to_json(p.x1)},
              {"x2", to_json(p.x2)},
              {"size1", p.size1.get_str()},
              {"size2", p.size2.get_str()},
              {"detsq_p", p.detsq.p.get_str()},
              {"detsq_q", p.detsq.q.get_str()},
              {"detsq_float", p.detsq.to_double()},
              {"log_size_ratio", p.log_size_ratio}};
}

std::vector<std::pair<double, double>> read_points_csv(std::istream& is) {
  std::string header;
  if (!next_line(is, header)) throw FormatError("empty points CSV");
  if (header == kDecayCsvHeader) {
    std::stringstream rest;
    rest << header << '\n' << is.rdbuf();
    const auto records = read_decay_csv(rest);
    return decay_points(records);
  }
  const auto cols = split(lower(header), ',');
  if (cols.size() != 2 || cols[0] != "n" || cols[1] != "d") {
    throw FormatError("points CSV needs header 'n,d' or a decay-record header, got: " + header);
  }
  std::vector<std::pair<double, double>> out;
  std::string line;
  while (next_line(is, line)) {
    const auto f = split(line, ',');
    if (f.size() != 2) throw FormatError("points CSV row needs 2 fields: " + line);
    out.emplace_back(parse_double(f[0]), parse_double(f[1]));
  }
  return out;
}

}  // namespace decaylab
