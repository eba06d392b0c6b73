#pragma once

#include "bpchain/homology.hpp"
#include "bpchain/pseries.hpp"
#include "bpchain/report.hpp"

#include <sstream>
#include <string>

namespace bpchain {

enum class Format { table, json, csv };

inline Format parse_format(const std::string& s) {
  if (s == "table") return Format::table;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw Error("unknown format " + s);
}

namespace detail {

inline std::string join_exponents(const std::vector<int>& e) {
  std::string s;
  for (int x : e) s += (s.empty() ? "" : ";") + std::to_string(x);
  return s;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace detail

inline nlohmann::json pseries_document(const PSeriesTable& t, const PSeriesReport& checks) {
  nlohmann::json j{{"table", t.to_json()}, {"checks", nlohmann::json::array()}};
  for (const auto& c : checks.checks)
    j["checks"].push_back({{"name", c.name}, {"verdict", c.pass ? "PASS" : "FAIL"}, {"value", c.detail}});
  return j;
}

inline std::string render(const PSeriesTable& t, const PSeriesReport& checks, Format f) {
  std::ostringstream os;
  if (f == Format::json) return pseries_document(t, checks).dump(2) + "\n";
  if (f == Format::csv) {
    os << "i,degree,coefficient\n";
    for (std::size_t i = 0; i < t.size(); ++i)
      os << i << ',' << 2 * i << ',' << detail::csv_field(render(t.generators(), t.a(i))) << '\n';
    return os.str();
  }
  os << "# pseries p=" << t.prime().value() << " degree_bound=" << t.degree_bound() << " scheme=" << t.scheme()
     << "\n";
  os << "i | degree | a_i\n";
  for (std::size_t i = 0; i < t.size(); ++i) os << i << " | " << 2 * i << " | " << render(t.generators(), t.a(i)) << '\n';
  for (const auto& c : checks.checks) os << (c.pass ? "PASS " : "FAIL ") << c.name << '\n';
  return os.str();
}

/// The plain table has one row per degree, listing the odd counts that
/// contribute; with `bigraded` it has one row per nonzero (degree, odd_count).
/// A degree with trivial homology shows "-" and "0".
inline std::string render(const HomologyTable& t, Format f, bool bigraded = false) {
  std::ostringstream os;
  const Prime p(t.p);
  if (f == Format::json) return t.to_json().dump(2) + "\n";
  if (f == Format::csv) {
    os << "degree,odd_count,exponents,free_rank\n";
    const nlohmann::json doc = t.to_json();
    for (const auto& r : doc.at("rows"))
      os << r.at("degree").get<int>() << ',' << r.at("odd_count").get<int>() << ','
         << detail::join_exponents(r.at("exponents").get<std::vector<int>>()) << ','
         << r.value("free_rank", std::size_t{0}) << '\n';
    return os.str();
  }
  os << "# homology p=" << t.p << " n=" << t.n << " model=" << t.model << " degree_bound=" << t.degree_bound << "\n";
  os << "# valid degrees " << t.min_degree << ".." << t.max_degree << "\n";
  os << "degree | odd_count | invariants\n";
  for (int d = t.min_degree; d <= t.max_degree; ++d) {
    std::vector<int> ks;
    for (int k = 0; k <= static_cast<int>(t.n); ++k)
      if (!t.at(d, k).is_trivial()) ks.push_back(k);
    if (ks.empty()) {
      os << d << " | - | " << t.at(d).render(p) << '\n';
      continue;
    }
    if (bigraded) {
      for (int k : ks) os << d << " | " << k << " | " << t.at(d, k).render(p) << '\n';
      continue;
    }
    std::string list;
    for (int k : ks) list += (list.empty() ? "" : ",") + std::to_string(k);
    os << d << " | " << list << " | " << t.at(d).render(p) << '\n';
  }
  return os.str();
}

inline std::string render(const VerificationReport& r, Format f) {
  std::ostringstream os;
  if (f == Format::json) return r.to_json().dump(2) + "\n";
  const Prime p(r.parameters.value("p", 2ul));
  auto bucket = [](const ReportCell& c) { return c.bucket ? std::to_string(*c.bucket) : std::string("-"); };
  if (f == Format::csv) {
    os << "degree,bucket,kind,lhs,rhs,verdict,note\n";
    for (const auto& c : r.cells)
      os << c.degree << ',' << bucket(c) << ',' << c.kind << ',' << detail::csv_field(c.lhs.render(p)) << ','
         << detail::csv_field(c.rhs.render(p)) << ',' << to_string(c.verdict) << ',' << detail::csv_field(c.note)
         << '\n';
    return os.str();
  }
  if (r.conjecture_probe) os << "# CONJECTURE PROBE (p=2): experimental comparison, not a verification\n";
  os << "# report " << r.name;
  for (const auto& [k, v] : r.parameters.items()) os << ' ' << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
  os << "\n# valid degrees " << r.min_degree << ".." << r.max_degree << "\n";
  os << "degree | bucket | kind | lhs | rhs | verdict | note\n";
  for (const auto& c : r.cells)
    os << c.degree << " | " << bucket(c) << " | " << c.kind << " | " << c.lhs.render(p) << " | " << c.rhs.render(p)
       << " | " << to_string(c.verdict) << " | " << c.note << '\n';
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  os << "verdict: " << to_string(r.overall()) << " (" << r.count(Verdict::pass) << " pass, " << r.count(Verdict::fail)
     << " fail, " << r.count(Verdict::vacuous) << " vacuous, " << r.count(Verdict::inconclusive) << " inconclusive)\n";
  return os.str();
}

}  // namespace bpchain
