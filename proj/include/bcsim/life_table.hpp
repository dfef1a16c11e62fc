#pragma once

#include <string>
#include <vector>

namespace bcsim {

// Annual all-cause death probabilities by integer age, loaded from a
// two-column CSV (age, annual death probability) with a header row.
// Ages must be contiguous.
class LifeTable {
 public:
  LifeTable() = default;
  LifeTable(int first_age, std::vector<double> annual_q);

  static LifeTable load_csv(const std::string& path);

  // Throws ConfigError when the table has no row for `age`.
  double annual_q(int age) const;

  bool covers(int age) const { return age >= first_age_ && age <= last_age(); }
  int first_age() const { return first_age_; }
  int last_age() const { return first_age_ + static_cast<int>(q_.size()) - 1; }
  bool empty() const { return q_.empty(); }

 private:
  int first_age_ = 0;
  std::vector<double> q_;
};

}  // namespace bcsim
