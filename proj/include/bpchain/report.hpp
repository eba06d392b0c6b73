#pragma once

#include "bpchain/finite_group.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bpchain {

/// Degreewise isomorphism types, optionally split by a second grading.
struct StructureTable {
  int min_degree = 0;
  int max_degree = -1;
  std::map<int, FinitePGroup> total;
  std::map<std::pair<int, int>, FinitePGroup> graded;  // (degree, bucket); trivial cells omitted

  bool covers(int d) const { return d >= min_degree && d <= max_degree; }

  FinitePGroup at(int d) const {
    if (!covers(d)) throw Error("StructureTable: degree " + std::to_string(d) + " outside the window");
    auto it = total.find(d);
    return it == total.end() ? FinitePGroup() : it->second;
  }
  FinitePGroup at(int d, int bucket) const {
    if (!covers(d)) throw Error("StructureTable: degree " + std::to_string(d) + " outside the window");
    auto it = graded.find({d, bucket});
    return it == graded.end() ? FinitePGroup() : it->second;
  }

  void add(int d, const FinitePGroup& g) {
    if (!g.is_trivial()) total[d] += g;
  }
  void add(int d, int bucket, const FinitePGroup& g) {
    if (g.is_trivial()) return;
    total[d] += g;
    graded[{d, bucket}] += g;
  }

  friend bool operator==(const StructureTable& a, const StructureTable& b) {
    return a.min_degree == b.min_degree && a.max_degree == b.max_degree && a.total == b.total &&
           a.graded == b.graded;
  }
};

enum class Verdict { pass, fail, vacuous, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    case Verdict::vacuous:
      return "VACUOUS";
    case Verdict::inconclusive:
      return "INCONCLUSIVE";
  }
  return "FAIL";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "PASS") return Verdict::pass;
  if (s == "FAIL") return Verdict::fail;
  if (s == "VACUOUS") return Verdict::vacuous;
  if (s == "INCONCLUSIVE") return Verdict::inconclusive;
  throw Error("unknown verdict " + s);
}

inline Verdict equality_verdict(const FinitePGroup& lhs, const FinitePGroup& rhs) {
  return lhs == rhs ? Verdict::pass : Verdict::fail;
}

/// One comparison. `kind` names what is compared ("total", "level",
/// "kunneth", ...); bucket is the second grading where one applies.
struct ReportCell {
  int degree = 0;
  std::optional<int> bucket;
  std::string kind = "total";
  FinitePGroup lhs;
  FinitePGroup rhs;
  Verdict verdict = Verdict::fail;
  std::string note;
};

struct VerificationReport {
  std::string name;
  nlohmann::json parameters = nlohmann::json::object();
  int min_degree = 0;
  int max_degree = -1;
  bool conjecture_probe = false;
  std::vector<ReportCell> cells;
  std::vector<std::string> notes;

  /// FAIL if any cell fails; otherwise INCONCLUSIVE if any cell is; VACUOUS
  /// if nothing was actually tested; PASS otherwise.
  Verdict overall() const {
    bool any_pass = false, any_inconclusive = false;
    for (const auto& c : cells) {
      if (c.verdict == Verdict::fail) return Verdict::fail;
      if (c.verdict == Verdict::inconclusive) any_inconclusive = true;
      if (c.verdict == Verdict::pass) any_pass = true;
    }
    if (any_inconclusive) return Verdict::inconclusive;
    return any_pass ? Verdict::pass : Verdict::vacuous;
  }

  std::size_t count(Verdict v) const {
    std::size_t n = 0;
    for (const auto& c : cells) n += c.verdict == v;
    return n;
  }

  void merge(const VerificationReport& other) {
    cells.insert(cells.end(), other.cells.begin(), other.cells.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["report"] = name;
    j["parameters"] = parameters;
    j["valid_degrees"] = {min_degree, max_degree};
    if (conjecture_probe) j["label"] = "conjecture probe";
    j["verdict"] = to_string(overall());
    j["cells"] = nlohmann::json::array();
    for (const auto& c : cells) {
      nlohmann::json cell{{"degree", c.degree},
                          {"bucket", c.bucket ? nlohmann::json(*c.bucket) : nlohmann::json(nullptr)},
                          {"kind", c.kind},
                          {"lhs", c.lhs.exponents()},
                          {"rhs", c.rhs.exponents()},
                          {"verdict", to_string(c.verdict)}};
      if (c.lhs.free_rank() || c.rhs.free_rank())
        cell["free_rank"] = {c.lhs.free_rank(), c.rhs.free_rank()};
      if (!c.note.empty()) cell["note"] = c.note;
      j["cells"].push_back(std::move(cell));
    }
    j["notes"] = notes;
    return j;
  }

  static VerificationReport from_json(const nlohmann::json& j) {
    try {
      VerificationReport r;
      r.name = j.at("report").get<std::string>();
      r.parameters = j.at("parameters");
      r.min_degree = j.at("valid_degrees").at(0).get<int>();
      r.max_degree = j.at("valid_degrees").at(1).get<int>();
      r.conjecture_probe = j.contains("label");
      for (const auto& c : j.at("cells")) {
        ReportCell cell;
        cell.degree = c.at("degree").get<int>();
        if (!c.at("bucket").is_null()) cell.bucket = c.at("bucket").get<int>();
        cell.kind = c.at("kind").get<std::string>();
        std::size_t lf = 0, rf = 0;
        if (c.contains("free_rank")) {
          lf = c["free_rank"].at(0).get<std::size_t>();
          rf = c["free_rank"].at(1).get<std::size_t>();
        }
        cell.lhs = FinitePGroup(c.at("lhs").get<std::vector<int>>(), lf);
        cell.rhs = FinitePGroup(c.at("rhs").get<std::vector<int>>(), rf);
        cell.verdict = verdict_from_string(c.at("verdict").get<std::string>());
        cell.note = c.value("note", "");
        r.cells.push_back(std::move(cell));
      }
      r.notes = j.at("notes").get<std::vector<std::string>>();
      return r;
    } catch (const nlohmann::json::exception& ex) {
      throw Error(std::string("VerificationReport: malformed document: ") + ex.what());
    }
  }
};

}  // namespace bpchain
