#pragma once

#include <cstdint>
#include <stdexcept>

namespace bcsim {

// The ten disease states. Cancer stages follow the AJCC I..IV convention,
// split by whether the disease has been diagnosed. Deceased is absorbing.
enum class HealthState : std::uint8_t {
  Healthy = 0,
  UndiagnosedStage1 = 1,
  UndiagnosedStage2 = 2,
  UndiagnosedStage3 = 3,
  UndiagnosedStage4 = 4,
  DiagnosedStage1 = 5,
  DiagnosedStage2 = 6,
  DiagnosedStage3 = 7,
  DiagnosedStage4 = 8,
  Deceased = 9,
};

inline constexpr int kNumHealthStates = 10;
inline constexpr int kNumStages = 4;

constexpr bool is_undiagnosed(HealthState s) {
  return s >= HealthState::UndiagnosedStage1 && s <= HealthState::UndiagnosedStage4;
}

constexpr bool is_diagnosed(HealthState s) {
  return s >= HealthState::DiagnosedStage1 && s <= HealthState::DiagnosedStage4;
}

constexpr bool is_cancer(HealthState s) { return is_undiagnosed(s) || is_diagnosed(s); }

constexpr bool is_alive(HealthState s) { return s != HealthState::Deceased; }

// 1..4 for cancer states, 0 otherwise.
constexpr int stage_of(HealthState s) {
  if (is_undiagnosed(s)) return static_cast<int>(s);
  if (is_diagnosed(s)) return static_cast<int>(s) - 4;
  return 0;
}

constexpr HealthState undiagnosed_stage(int stage) {
  if (stage < 1 || stage > kNumStages) throw std::domain_error("stage out of 1..4");
  return static_cast<HealthState>(stage);
}

constexpr HealthState diagnosed_stage(int stage) {
  if (stage < 1 || stage > kNumStages) throw std::domain_error("stage out of 1..4");
  return static_cast<HealthState>(stage + 4);
}

constexpr const char* to_string(HealthState s) {
  switch (s) {
    case HealthState::Healthy: return "healthy";
    case HealthState::UndiagnosedStage1: return "undiagnosed_1";
    case HealthState::UndiagnosedStage2: return "undiagnosed_2";
    case HealthState::UndiagnosedStage3: return "undiagnosed_3";
    case HealthState::UndiagnosedStage4: return "undiagnosed_4";
    case HealthState::DiagnosedStage1: return "diagnosed_1";
    case HealthState::DiagnosedStage2: return "diagnosed_2";
    case HealthState::DiagnosedStage3: return "diagnosed_3";
    case HealthState::DiagnosedStage4: return "diagnosed_4";
    case HealthState::Deceased: return "deceased";
  }
  return "?";
}

}  // namespace bcsim
