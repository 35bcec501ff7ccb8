#include "suc/fleet.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace suc {

const char* to_string(UnitTech t) {
  switch (t) {
    case UnitTech::NUC:
      return "NUC";
    case UnitTech::COAL:
      return "COAL";
    case UnitTech::CCGT:
      return "CCGT";
    case UnitTech::OCGT:
      return "OCGT";
  }
  return "?";
}

UnitTech tech_from_string(const std::string& s) {
  if (s == "NUC") return UnitTech::NUC;
  if (s == "COAL") return UnitTech::COAL;
  if (s == "CCGT") return UnitTech::CCGT;
  if (s == "OCGT") return UnitTech::OCGT;
  throw std::invalid_argument("unknown unit tech: " + s);
}

int duration_steps(double minutes, double delta_t_hours) {
  if (minutes < 0) throw std::invalid_argument("negative duration");
  if (delta_t_hours <= 0) throw std::invalid_argument("non-positive delta_t");
  const double steps = minutes / (60.0 * delta_t_hours);
  return static_cast<int>(std::ceil(steps - 1e-9));
}

UnitClass UnitClass::defaults(UnitTech tech) {
  UnitClass c;
  c.tech = tech;
  switch (tech) {
    case UnitTech::NUC:
      c.dt_on_min = 600;
      c.dt_off_min = 60;
      c.t_on_min = 1440;
      c.t_off_min = 1440;
      c.t_flat = 90;
      break;
    case UnitTech::COAL:
      c.dt_on_min = 480;
      c.dt_off_min = 15;
      c.t_on_min = 480;
      c.t_off_min = 480;
      c.t_flat = 15;
      break;
    case UnitTech::CCGT:
      c.dt_on_min = 180;
      c.dt_off_min = 15;
      c.t_on_min = 180;
      c.t_off_min = 120;
      c.t_flat = 15;
      break;
    case UnitTech::OCGT:
      c.dt_on_min = 15;
      c.dt_off_min = 15;
      c.t_on_min = 60;
      c.t_off_min = 30;
      c.t_flat = 15;
      c.t_on_max = 480;
      c.n_on_max = 2;
      break;
  }
  return c;
}

void UnitClass::validate() const {
  if (dt_on_min < 0 || dt_off_min < 0 || t_on_min < 0 || t_off_min < 0 ||
      t_flat < 0)
    throw std::invalid_argument("unit class durations must be >= 0");
  const bool is_ocgt = tech == UnitTech::OCGT;
  if (t_on_max.has_value() != is_ocgt || n_on_max.has_value() != is_ocgt)
    throw std::invalid_argument(
        "t_on_max/n_on_max must be set exactly for OCGT classes");
  if (t_on_max && *t_on_max < 0)
    throw std::invalid_argument("t_on_max must be >= 0");
  if (n_on_max && *n_on_max < 0)
    throw std::invalid_argument("n_on_max must be >= 0");
}

void UnitSpec::validate() const {
  cls.validate();
  if (id.empty()) throw std::invalid_argument("unit id must not be empty");
  if (!(0 <= p_min && p_min <= p_max))
    throw std::invalid_argument("unit " + id + ": need 0 <= p_min <= p_max");
  if (startup_cost < 0 || variable_cost < 0)
    throw std::invalid_argument("unit " + id + ": costs must be >= 0");
  if (!(dp_min > 0 && dp_min <= p_max))
    throw std::invalid_argument("unit " + id + ": need 0 < dp_min <= p_max");
}

void validate_fleet(const Fleet& fleet) {
  std::set<std::string> ids;
  for (const auto& u : fleet) {
    u.validate();
    if (!ids.insert(u.id).second)
      throw std::invalid_argument("duplicate unit id: " + u.id);
  }
}

void StageSets::validate(int n_units) const {
  std::set<int> fs(first_stage.begin(), first_stage.end());
  std::set<int> ss(second_stage.begin(), second_stage.end());
  for (int u : fs)
    if (ss.count(u))
      throw std::invalid_argument("unit in both first and second stage");
  if (static_cast<int>(fs.size() + ss.size()) != n_units)
    throw std::invalid_argument("stage sets must cover all thermal units");
  for (int u : first_stage)
    if (u < 0 || u >= n_units) throw std::invalid_argument("bad unit index");
  for (int u : second_stage)
    if (u < 0 || u >= n_units) throw std::invalid_argument("bad unit index");
}

}  // namespace suc
