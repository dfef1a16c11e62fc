#include "bcsim/life_table.hpp"

#include "bcsim/csv.hpp"
#include "bcsim/errors.hpp"

namespace bcsim {

LifeTable::LifeTable(int first_age, std::vector<double> annual_q)
    : first_age_(first_age), q_(std::move(annual_q)) {
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (!(q_[i] >= 0.0 && q_[i] <= 1.0))
      throw ConfigError("life table: probability for age " +
                        std::to_string(first_age_ + static_cast<int>(i)) + " out of [0,1]");
  }
}

LifeTable LifeTable::load_csv(const std::string& path) {
  std::vector<std::string> header;
  const auto rows = csv::read_file(path, &header);
  if (header.size() != 2)
    throw ConfigError(path + ": expected two columns (age, annual death probability)");
  if (rows.empty()) throw ConfigError(path + ": no data rows");

  int first_age = 0;
  std::vector<double> q;
  int expected = 0;
  for (const auto& row : rows) {
    const std::string where = path + ":" + std::to_string(row.line_number);
    if (row.fields.size() != 2) throw ConfigError(where + ": expected 2 fields");
    const int age = static_cast<int>(csv::parse_int(row.fields[0], where));
    const double prob = csv::parse_double(row.fields[1], where);
    if (q.empty()) {
      first_age = age;
    } else if (age != expected) {
      throw ConfigError(where + ": ages must be contiguous, expected " +
                        std::to_string(expected));
    }
    expected = age + 1;
    q.push_back(prob);
  }
  return LifeTable(first_age, std::move(q));
}

double LifeTable::annual_q(int age) const {
  if (!covers(age))
    throw ConfigError("life table has no row for age " + std::to_string(age) +
                      " (covers " + std::to_string(first_age_) + ".." +
                      std::to_string(last_age()) + ")");
  return q_[static_cast<std::size_t>(age - first_age_)];
}

}  // namespace bcsim
