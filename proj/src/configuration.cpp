#include "radhf/configuration.hpp"

#include "radhf/errors.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace radhf {

std::string to_string(Model model) { return model == Model::rhf ? "rhf" : "uhf"; }
std::string to_string(Spin spin) { return spin == Spin::alpha ? "alpha" : "beta"; }

int Configuration::electron_count() const {
  int n = 0;
  for (const auto &s : shells)
    n += (model == Model::rhf ? 2 : 1) * (2 * s.l + 1);
  return n;
}

int Configuration::max_l() const {
  int m = 0;
  for (const auto &s : shells)
    m = std::max(m, s.l);
  return m;
}

Configuration Configuration::without_shell(int i) const {
  if (i < 0 || i >= static_cast<int>(shells.size()))
    throw Error(fmt::format("shell index {} out of range (0..{})", i,
                            static_cast<int>(shells.size()) - 1));
  Configuration c = *this;
  c.shells.erase(c.shells.begin() + i);
  return c;
}

std::vector<int> Configuration::channel_members(int i) const {
  std::vector<int> members;
  const auto &key = shells.at(i);
  for (int j = 0; j < static_cast<int>(shells.size()); ++j) {
    if (shells[j].l != key.l)
      continue;
    if (model == Model::uhf && shells[j].spin != key.spin)
      continue;
    members.push_back(j);
  }
  return members;
}

void Configuration::validate() const {
  if (!(Z > 0.0) || !std::isfinite(Z))
    throw ConfigError("Z", "must be a positive number");
  if (shells.empty())
    throw ConfigError("shells", "at least one shell is required");
  for (std::size_t i = 0; i < shells.size(); ++i)
    if (shells[i].l < 0)
      throw ConfigError(fmt::format("shells[{}].l", i), "must be a non-negative integer");
}

} // namespace radhf
