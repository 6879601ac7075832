#pragma once

#include <string>
#include <vector>

namespace radhf {

enum class Model { rhf, uhf };
enum class Spin { alpha, beta };

std::string to_string(Model model);
std::string to_string(Spin spin);

// One prescribed shell. RHF shells ignore the spin tag.
struct ShellSpec {
  int l = 0;
  Spin spin = Spin::alpha;

  bool operator==(const ShellSpec &) const = default;
};

struct Configuration {
  double Z = 1.0;
  Model model = Model::rhf;
  std::vector<ShellSpec> shells;

  // RHF: sum 2(2l+1); UHF: sum (2l+1) over both spin channels.
  int electron_count() const;
  int max_l() const;

  // Occupancy weight of shell i in the direct/exchange sums: 2l+1.
  int degeneracy(int i) const { return 2 * shells[i].l + 1; }

  Configuration without_shell(int i) const;

  // Indices of the shells sharing the channel of shell i: same l, and same
  // spin for UHF. Ordered as in shells.
  std::vector<int> channel_members(int i) const;

  // Throws ConfigError for negative l, non-positive Z or an empty shell list.
  void validate() const;
};

} // namespace radhf
