#include "enumerate.hpp"

namespace oracle {

using namespace garside;

std::vector<Simple> proper_simples(const GarsideStructure& g) {
  std::vector<Simple> v;
  for (std::size_t i = 0; i < g.simple_count(); ++i) {
    Simple s = g.simple_at(i);
    if (s != g.identity() && s != g.delta()) v.push_back(s);
  }
  return v;
}

std::vector<CanonicalForm> forms_up_to(const GarsideStructure& g, std::size_t max_cl, std::int64_t inf) {
  std::vector<std::vector<Simple>> level{{}};
  std::vector<CanonicalForm> out{CanonicalForm(g, inf, {})};
  const auto proper = proper_simples(g);
  for (std::size_t c = 1; c <= max_cl; ++c) {
    std::vector<std::vector<Simple>> next;
    for (const auto& f : level) {
      for (auto s : proper) {
        if (!f.empty() && !is_left_weighted(g, f.back(), s)) continue;
        auto v = f;
        v.push_back(s);
        out.emplace_back(g, inf, v);
        next.push_back(std::move(v));
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace oracle
