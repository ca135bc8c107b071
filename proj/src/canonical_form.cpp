#include "garside/canonical_form.hpp"

#include "garside/error.hpp"

namespace garside {

CanonicalForm::CanonicalForm(const GarsideStructure& g, std::int64_t inf, std::vector<Simple> factors)
    : g_(&g), inf_(inf), factors_(std::move(factors)) {
  if (inf_ < 0) throw ValidationError("canonical form: negative infimum");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Simple s = factors_[i];
    if (!g.owns(s)) throw ValidationError("canonical form: factor from another structure");
    if (s == g.identity() || s == g.delta()) {
      throw ValidationError("canonical form: factor " + std::to_string(i + 1) + " is not a proper simple");
    }
    if (i > 0 && !is_left_weighted(g, factors_[i - 1], s)) {
      throw ValidationError("canonical form: factors " + std::to_string(i) + " and " + std::to_string(i + 1) +
                            " are not left-weighted");
    }
  }
}

CanonicalForm CanonicalForm::trusted(const GarsideStructure& g, std::int64_t inf, std::vector<Simple> factors) {
  CanonicalForm x(g);
  x.inf_ = inf;
  x.factors_ = std::move(factors);
  return x;
}

Simple CanonicalForm::lambda(std::size_t i) const {
  if (i == 0 || i > factors_.size()) return g_->identity();
  return factors_[i - 1];
}

Simple CanonicalForm::rho(std::size_t i) const {
  if (i == 0 || i > factors_.size()) return g_->identity();
  return factors_[factors_.size() - i];
}

std::int64_t CanonicalForm::weighted_length() const {
  std::int64_t k = inf_ * g_->delta_length();
  for (Simple s : factors_) k += g_->length(s);
  return k;
}

AtomSet CanonicalForm::starting_set() const {
  if (inf_ > 0) return g_->all_atoms();
  if (factors_.empty()) return 0;
  return g_->starting_set(factors_.front());
}

nlohmann::json CanonicalForm::to_json() const {
  auto f = nlohmann::json::array();
  for (Simple s : factors_) f.push_back(g_->serialize(s));
  return {{"inf", inf_}, {"factors", std::move(f)}};
}

CanonicalForm CanonicalForm::from_json(const GarsideStructure& g, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("inf") || !j.contains("factors") || !j["inf"].is_number_integer() ||
      !j["factors"].is_array()) {
    throw ParseError("canonical form: expected {\"inf\": int, \"factors\": [...]}");
  }
  std::vector<Simple> factors;
  for (const auto& f : j["factors"]) factors.push_back(g.deserialize(f));
  return CanonicalForm(g, j["inf"].get<std::int64_t>(), std::move(factors));
}

std::string CanonicalForm::to_string() const {
  std::string s;
  if (inf_ != 0) s = "D^" + std::to_string(inf_);
  for (Simple f : factors_) {
    if (!s.empty()) s += ' ';
    s += g_->describe(f);
  }
  return s.empty() ? "1" : s;
}

}  // namespace garside
