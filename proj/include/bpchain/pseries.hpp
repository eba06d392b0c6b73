#pragma once

#include "bpchain/series.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace bpchain {

/// The coefficients a_0, a_1, ... of [p](x) = sum_i a_i x^{1+i}, each a
/// homogeneous element of BP_* of degree 2i, for 2i <= D.
class PSeriesTable {
 public:
  static constexpr int kSchema = 1;

  PSeriesTable(GeneratorTable table, std::string scheme, std::vector<GradedPolynomial> a)
      : table_(std::move(table)), scheme_(std::move(scheme)), a_(std::move(a)) {
    if (a_.size() != static_cast<std::size_t>(table_.degree_bound() / 2 + 1))
      throw Error("PSeriesTable: coefficient count does not match the degree bound");
  }

  Prime prime() const { return table_.prime(); }
  int degree_bound() const { return table_.degree_bound(); }
  const std::string& scheme() const { return scheme_; }
  const GeneratorTable& generators() const { return table_; }
  const std::vector<GradedPolynomial>& coefficients() const { return a_; }
  std::size_t size() const { return a_.size(); }

  const GradedPolynomial& a(std::size_t i) const {
    if (i >= a_.size()) throw Error("PSeriesTable: a_" + std::to_string(i) + " lies beyond the bound");
    return a_[i];
  }

  /// Copy with one coefficient replaced (for negative controls).
  PSeriesTable with_coefficient(std::size_t i, GradedPolynomial c) const {
    PSeriesTable out = *this;
    out.a_.at(i) = std::move(c);
    return out;
  }

  /// The same table as if computed with a smaller bound.
  PSeriesTable restricted(int bound) const {
    if (bound > degree_bound()) throw Error("PSeriesTable: cannot restrict upwards");
    GeneratorTable small(prime(), bound, table_.scalars_only());
    std::vector<GradedPolynomial> a;
    for (std::size_t i = 0; 2 * static_cast<int>(i) <= bound; ++i) {
      GradedPolynomial c(a_[i].degree());
      for (const auto& [e, x] : a_[i].terms()) {
        Exponents shorter(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(small.size()));
        for (std::size_t j = small.size(); j < e.size(); ++j)
          if (e[j] != 0) throw Error("PSeriesTable: monomial outside the restricted table");
        c.add_term(shorter, x);
      }
      a.push_back(std::move(c));
    }
    return PSeriesTable(std::move(small), scheme_, std::move(a));
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["p"] = prime().value();
    j["degree_bound"] = degree_bound();
    j["scheme"] = scheme_;
    j["a"] = nlohmann::json::array();
    for (std::size_t i = 0; i < a_.size(); ++i) {
      nlohmann::json terms = nlohmann::json::array();
      for (auto it = a_[i].terms().rbegin(); it != a_[i].terms().rend(); ++it)
        terms.push_back({{"exps", it->first},
                         {"num", it->second.get_num().get_str()},
                         {"den", it->second.get_den().get_str()}});
      j["a"].push_back({{"i", i}, {"terms", terms}});
    }
    return j;
  }

  static PSeriesTable from_json(const nlohmann::json& j) {
    try {
      if (j.at("schema").get<int>() != kSchema) throw Error("PSeriesTable: unknown schema");
      const auto scheme = j.at("scheme").get<std::string>();
      GeneratorTable table(Prime(j.at("p").get<unsigned long>()), j.at("degree_bound").get<int>(),
                           scheme == "singular");
      std::vector<GradedPolynomial> a;
      for (const auto& entry : j.at("a")) {
        const auto i = entry.at("i").get<std::size_t>();
        if (i != a.size()) throw Error("PSeriesTable: coefficients out of order");
        GradedPolynomial c(2 * static_cast<int>(i));
        for (const auto& term : entry.at("terms")) {
          auto e = term.at("exps").get<Exponents>();
          if (table.degree(e) != c.degree()) throw Error("PSeriesTable: inhomogeneous term");
          PLocalScalar x(Integer(term.at("num").get<std::string>()),
                         Integer(term.at("den").get<std::string>()));
          x.canonicalize();
          c.add_term(e, x);
        }
        a.push_back(std::move(c));
      }
      return PSeriesTable(std::move(table), scheme, std::move(a));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(std::string("PSeriesTable: malformed document: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
      throw Error(std::string("PSeriesTable: malformed number: ") + ex.what());
    }
  }

  friend bool operator==(const PSeriesTable& x, const PSeriesTable& y) {
    return x.prime() == y.prime() && x.degree_bound() == y.degree_bound() &&
           x.scheme_ == y.scheme_ && x.a_ == y.a_;
  }

 private:
  GeneratorTable table_;
  std::string scheme_;
  std::vector<GradedPolynomial> a_;
};

/// [p](x) = exp(p * log x) with Hazewinkel generators, truncated at
/// x^{floor(D/2)+1}. A coefficient with negative p-valuation is a hard error.
inline PSeriesTable compute_p_series(Prime p, int degree_bound) {
  GeneratorTable t(p, degree_bound);
  const std::size_t order = static_cast<std::size_t>(degree_bound / 2) + 1;
  const auto ell = compute_logarithm(t);
  const RationalSeries plog = log_series(t, ell, order) * PLocalScalar(p.value());
  const RationalSeries series = exp_series(t, ell, order).compose(plog);
  std::vector<GradedPolynomial> a;
  for (std::size_t i = 0; i + 1 <= order; ++i) {
    const GradedPolynomial& c = series[i + 1];
    if (c.min_valuation(p) < 0)
      throw Error("compute_p_series: a_" + std::to_string(i) + " is not p-integral");
    a.push_back(c);
  }
  return PSeriesTable(std::move(t), "hazewinkel", std::move(a));
}

/// The table a_0 = p, a_i = 0 for i > 0 over the scalars Z_(p), which turns
/// the chain model into the singular one.
inline PSeriesTable singular_table(Prime p, int degree_bound) {
  GeneratorTable t(p, degree_bound, true);
  std::vector<GradedPolynomial> a;
  for (int i = 0; 2 * i <= degree_bound; ++i) a.emplace_back(2 * i);
  a[0] = GradedPolynomial::scalar(t, PLocalScalar(p.value()));
  return PSeriesTable(std::move(t), "singular", std::move(a));
}

struct PropertyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PSeriesReport {
  std::vector<PropertyCheck> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

inline PSeriesReport check_p_series_properties(const PSeriesTable& table) {
  const Prime p = table.prime();
  const GeneratorTable& gens = table.generators();
  PSeriesReport report;

  const auto expected_a0 = GradedPolynomial::scalar(gens, PLocalScalar(p.value()));
  report.checks.push_back({"a_0 = p", table.a(0) == expected_a0, render(gens, table.a(0))});

  bool homogeneous = true, integral = true;
  std::string bad_degree, bad_integral;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& c = table.a(i);
    for (const auto& [e, x] : c.terms()) {
      if (gens.degree(e) != 2 * static_cast<int>(i)) {
        homogeneous = false;
        bad_degree = "a_" + std::to_string(i);
      }
      if (!is_p_local(x, p)) {
        integral = false;
        bad_integral = "a_" + std::to_string(i);
      }
    }
  }
  report.checks.push_back({"deg a_i = 2i", homogeneous, homogeneous ? "" : bad_degree});
  report.checks.push_back({"p-integral", integral, integral ? "" : bad_integral});

  Integer pm = p.value();
  for (std::size_t m = 1; m <= gens.size(); ++m, pm *= p.value()) {
    const std::size_t i = pm.get_ui() - 1;
    const auto reduced = reduce_mod_ideal(table.a(i), m, p);
    const ReducedPolynomial target{{gens.generator(m), 1ul}};
    std::string name = "a_" + std::to_string(i) + " = v_" + std::to_string(m) + " mod (p";
    for (std::size_t j = 1; j < m; ++j) name += ", v_" + std::to_string(j);
    name += ")";
    report.checks.push_back({name, reduced == target, render(gens, table.a(i))});
  }
  return report;
}

}  // namespace bpchain
