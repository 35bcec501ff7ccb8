#include "suc/state_plan.hpp"

#include <sstream>
#include <stdexcept>

#include "suc/duration_rules.hpp"

namespace suc {

namespace {

void add(std::vector<Violation>& out, int u, int t, const char* rule,
         std::string detail) {
  out.push_back(Violation{u, t, rule, std::move(detail)});
}

}  // namespace

std::vector<Violation> validate_plan(const StatePlan& plan, const Fleet& fleet,
                                     const TimeGrid& grid) {
  if (plan.n_units != static_cast<int>(fleet.size()))
    throw std::invalid_argument("plan unit count does not match fleet");
  if (plan.n_steps != grid.horizon_steps)
    throw std::invalid_argument("plan step count does not match grid horizon");

  std::vector<Violation> out;
  const int T = plan.n_steps;
  const double dt = grid.delta_t_hours;

  for (int u = 0; u < plan.n_units; ++u) {
    const UnitSpec& spec = fleet[u];
    const int flat_steps = duration_steps(spec.cls.t_flat, dt);
    const int on_steps = duration_steps(spec.cls.t_on_min, dt);
    const int off_steps = duration_steps(spec.cls.t_off_min, dt);

    // Initial-state rules. A unit that was OFF before the horizon can only
    // enter at OU (just started) or stay OFF; a unit that was ON cannot pay
    // a boundary start, which leaves its first state unrestricted.
    const State first = plan.at(u, 0);
    if (!spec.initially_on && first != State::OU && first != State::OFF)
      add(out, u, 0, "initial-state",
          std::string("unit starting from OFF cannot open in ") +
              to_string(first));

    for (int t = 0; t + 1 < T; ++t) {
      const State a = plan.at(u, t);
      const State b = plan.at(u, t + 1);
      if (!transition_allowed(a, b))
        add(out, u, t, "table1",
            std::string(to_string(a)) + " -> " + to_string(b) + " forbidden");
      else if (consecutive_variation_forbidden(a, b))
        add(out, u, t, "consecutive-variation",
            std::string("consecutive ") + to_string(a) + " forbidden");
    }

    // FLAT hold after entering OFL from a variation.
    for (int t = 0; t + 1 < T; ++t) {
      const State a = plan.at(u, t);
      if ((a == State::OU || a == State::OD) &&
          plan.at(u, t + 1) == State::OFL) {
        const StepWindow w = flat_hold(t, flat_steps).clipped(T);
        for (int s = w.begin; s <= w.end; ++s)
          if (plan.at(u, s) != State::OFL) {
            add(out, u, s, "flat",
                "must stay OFL after the variation ending at step " +
                    std::to_string(t + 1));
            break;
          }
      }
    }

    // Minimum ON after a start; boundary start included.
    auto check_min_on = [&](int slot) {
      const StepWindow w = min_on_hold(slot, on_steps).clipped(T);
      for (int s = w.begin; s <= w.end; ++s)
        if (plan.off(u, s)) {
          add(out, u, s, "min-on",
              "OFF within the minimum ON hold of the start at slot " +
                  std::to_string(slot));
          break;
        }
    };
    if (!spec.initially_on && first == State::OU) check_min_on(-1);
    for (int t = 0; t + 1 < T; ++t)
      if (plan.off(u, t) && plan.at(u, t + 1) == State::OU) check_min_on(t);

    // Minimum OFF after a shutdown; boundary shutdown included.
    auto check_min_off = [&](int slot) {
      const StepWindow w = min_off_hold(slot, off_steps).clipped(T);
      for (int s = w.begin; s <= w.end; ++s)
        if (!plan.off(u, s)) {
          add(out, u, s, "min-off",
              "ON within the minimum OFF hold of the shutdown at slot " +
                  std::to_string(slot));
          break;
        }
    };
    if (spec.initially_on && first == State::OFF) check_min_off(-1);
    for (int t = 0; t + 1 < T; ++t)
      if (!plan.off(u, t) && plan.off(u, t + 1)) check_min_off(t);

    // Maximum ON duration: no visible ON run longer than the cap.
    if (spec.cls.t_on_max) {
      const int cap = duration_steps(*spec.cls.t_on_max, dt);
      int run = 0;
      for (int t = 0; t < T; ++t) {
        run = plan.off(u, t) ? 0 : run + 1;
        if (run == cap + 1) {
          add(out, u, t, "max-on",
              "ON run longer than " + std::to_string(cap) + " steps");
        }
      }
    }

    // Maximum number of start-ups.
    if (spec.cls.n_on_max) {
      int starts = (!spec.initially_on && first == State::OU) ? 1 : 0;
      for (int t = 0; t + 1 < T; ++t)
        if (plan.off(u, t) && plan.at(u, t + 1) == State::OU) ++starts;
      if (starts > *spec.cls.n_on_max)
        add(out, u, T - 1, "max-starts",
            std::to_string(starts) + " start-ups exceed the cap of " +
                std::to_string(*spec.cls.n_on_max));
    }
  }
  return out;
}

std::string format_violations(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (const auto& v : violations)
    os << "unit " << v.unit << " step " << v.step << " [" << v.rule << "] "
       << v.detail << "\n";
  return os.str();
}

}  // namespace suc
