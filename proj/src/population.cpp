#include "bcsim/population.hpp"

#include <cmath>
#include <numeric>

#include "bcsim/csv.hpp"
#include "bcsim/errors.hpp"
#include "bcsim/hazard.hpp"

namespace bcsim {

namespace {

// Top band ("85+") is open-ended; ages are sampled uniformly up to this cap.
constexpr int kOpenBandAgeCap = 99;

AgeBand parse_band(const std::string& text, const std::string& where) {
  const auto plus = text.find('+');
  if (plus != std::string::npos) {
    const int low = static_cast<int>(csv::parse_int(text.substr(0, plus), where));
    return {low, kOpenBandAgeCap, 0};
  }
  const auto dash = text.find('-');
  if (dash == std::string::npos)
    throw ConfigError(where + ": bad age band '" + text + "' (want 'LO-HI' or 'LO+')");
  const int low = static_cast<int>(csv::parse_int(text.substr(0, dash), where));
  const int high = static_cast<int>(csv::parse_int(text.substr(dash + 1), where));
  return {low, high, 0};
}

std::int64_t scale_half_up(std::int64_t count, double fraction) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(count) * fraction + 0.5));
}

}  // namespace

AgeBandTable AgeBandTable::load_csv(const std::string& path) {
  std::vector<std::string> header;
  const auto rows = csv::read_file(path, &header);
  if (header.size() != 2) throw ConfigError(path + ": expected columns: age_band,women");
  AgeBandTable table;
  for (const auto& row : rows) {
    const std::string where = path + ":" + std::to_string(row.line_number);
    if (row.fields.size() != 2) throw ConfigError(where + ": expected 2 fields");
    AgeBand band = parse_band(row.fields[0], where);
    band.count = csv::parse_int(row.fields[1], where);
    table.bands.push_back(band);
  }
  table.validate();
  return table;
}

std::int64_t AgeBandTable::total() const {
  return std::accumulate(bands.begin(), bands.end(), std::int64_t{0},
                         [](std::int64_t acc, const AgeBand& b) { return acc + b.count; });
}

void AgeBandTable::validate() const {
  if (bands.empty()) throw ConfigError("age table: no bands");
  if (bands.front().low != 25)
    throw ConfigError("age table: first band must start at age 25");
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto& b = bands[i];
    if (b.count < 0) throw ConfigError("age table: negative count in band " + std::to_string(i));
    if (b.high < b.low) throw ConfigError("age table: empty band " + std::to_string(i));
    if (i > 0 && b.low != bands[i - 1].high + 1)
      throw ConfigError("age table: bands must be contiguous (band " + std::to_string(i) + ")");
  }
}

InitialDiseaseTable InitialDiseaseTable::load_csv(const std::string& path) {
  std::vector<std::string> header;
  const auto rows = csv::read_file(path, &header);
  if (header.size() != 9)
    throw ConfigError(path +
                      ": expected columns: age_band,diagnosed_1..4,undiagnosed_1..4");
  InitialDiseaseTable table;
  for (const auto& row : rows) {
    const std::string where = path + ":" + std::to_string(row.line_number);
    if (row.fields.size() != 9) throw ConfigError(where + ": expected 9 fields");
    Row r;
    for (int s = 0; s < kNumStages; ++s) {
      r.diagnosed[s] = csv::parse_int(row.fields[1 + s], where);
      r.undiagnosed[s] = csv::parse_int(row.fields[5 + s], where);
      if (r.diagnosed[s] < 0 || r.undiagnosed[s] < 0)
        throw ConfigError(where + ": negative count");
    }
    table.rows.push_back(r);
  }
  return table;
}

void InitialDiseaseTable::validate_against(const AgeBandTable& ages) const {
  if (rows.size() != ages.bands.size())
    throw ConfigError("disease table: row count does not match the age table bands");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::int64_t diseased =
        std::accumulate(r.diagnosed.begin(), r.diagnosed.end(), std::int64_t{0}) +
        std::accumulate(r.undiagnosed.begin(), r.undiagnosed.end(), std::int64_t{0});
    if (diseased > ages.bands[i].count)
      throw ConfigError("disease table: band " + std::to_string(i) +
                        " has more diseased persons than its population");
    if (r.undiagnosed[0] != r.diagnosed[0])
      throw ConfigError("disease table: band " + std::to_string(i) +
                        ": undiagnosed stage-1 count must equal the diagnosed stage-1 count");
  }
}

std::vector<Person> build_initial_cohort(const AgeBandTable& ages,
                                         const InitialDiseaseTable& disease,
                                         double fraction, rng::SplitMix64& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ConfigError("population fraction must lie in (0,1]");
  ages.validate();
  disease.validate_against(ages);

  std::vector<Person> cohort;
  for (std::size_t i = 0; i < ages.bands.size(); ++i) {
    const AgeBand& band = ages.bands[i];
    const std::int64_t band_n = scale_half_up(band.count, fraction);

    std::vector<HealthState> states;
    states.reserve(static_cast<std::size_t>(band_n));
    const auto& row = disease.rows[i];
    for (int s = 1; s <= kNumStages; ++s)
      states.insert(states.end(), scale_half_up(row.diagnosed[s - 1], fraction),
                    diagnosed_stage(s));
    for (int s = 1; s <= kNumStages; ++s)
      states.insert(states.end(), scale_half_up(row.undiagnosed[s - 1], fraction),
                    undiagnosed_stage(s));
    if (static_cast<std::int64_t>(states.size()) > band_n)
      throw ConfigError("band " + std::to_string(band.low) +
                        ": scaled disease counts exceed the scaled band population");
    states.resize(static_cast<std::size_t>(band_n), HealthState::Healthy);

    const auto span = static_cast<std::uint64_t>(band.high - band.low + 1);
    for (HealthState st : states) {
      Person p;
      p.age = band.low + static_cast<std::int32_t>(rng.next_below(span));
      p.state = st;
      p.cycles_in_state = 0;
      cohort.push_back(p);
    }
  }
  return cohort;
}

void advance_ages(std::vector<Person>& cohort, int cycle_index) {
  if (cycle_index <= 0 || cycle_index % kCyclesPerYear != 0) return;
  for (Person& p : cohort)
    if (is_alive(p.state)) ++p.age;
}

}  // namespace bcsim
