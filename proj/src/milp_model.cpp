#include "suc/milp_model.hpp"

#include <cctype>
#include <set>
#include <stdexcept>
#include <tuple>

namespace suc {

namespace {

std::string sanitize(const std::string& id) {
  std::string out;
  for (char c : id)
    out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

}  // namespace

std::string coord_name(const VarCoord& c,
                       const std::vector<std::string>& unit_ids) {
  auto unit = [&]() {
    return (c.unit >= 0 && c.unit < static_cast<int>(unit_ids.size()))
               ? sanitize(unit_ids[c.unit])
               : "u" + std::to_string(c.unit);
  };
  const std::string scen =
      c.scenario >= 0 ? "_s" + std::to_string(c.scenario) : "";
  switch (c.role) {
    case VarRole::StateVar:
      return "E_" + unit() + scen + "_t" + std::to_string(c.step) + "_" +
             to_string(c.from);
    case VarRole::Transition:
      return "T_" + unit() + scen + "_t" + std::to_string(c.step) + "_" +
             to_string(c.from) + "_" + to_string(c.to);
    case VarRole::InitTransition:
      return "T0_" + unit() + scen + "_" + std::string(to_string(c.from)) +
             "_" + to_string(c.to);
    case VarRole::Power:
      return "p_" + unit() + scen + "_t" + std::to_string(c.step);
    case VarRole::Dns:
      return "dns" + scen + "_t" + std::to_string(c.step);
    case VarRole::Spill:
      return "spill" + scen + "_t" + std::to_string(c.step);
    case VarRole::Other:
      break;
  }
  return "x" + std::to_string(c.unit) + "_" + std::to_string(c.step);
}

int MilpModel::add_var(std::string name, VarKind kind, double lb, double ub,
                       const VarCoord& coord, double obj) {
  MilpVar v;
  v.name = std::move(name);
  v.kind = kind;
  v.lb = lb;
  v.ub = ub;
  v.coord = coord;
  vars.push_back(std::move(v));
  objective.push_back(obj);
  name_index_.clear();
  return n_vars() - 1;
}

int MilpModel::add_var(VarKind kind, double lb, double ub,
                       const VarCoord& coord, double obj) {
  return add_var(coord_name(coord, unit_ids), kind, lb, ub, coord, obj);
}

MilpRow& MilpModel::add_row(std::string name, RowSense sense, double rhs) {
  MilpRow r;
  r.name = std::move(name);
  r.sense = sense;
  r.rhs = rhs;
  rows.push_back(std::move(r));
  return rows.back();
}

void MilpModel::set_objective(int var, double coefficient) {
  objective[var] = coefficient;
}

const std::unordered_map<std::string, int>& MilpModel::name_index() const {
  if (name_index_.empty() && !vars.empty()) {
    for (int j = 0; j < n_vars(); ++j) name_index_.emplace(vars[j].name, j);
  }
  return name_index_;
}

int MilpModel::var_by_name(const std::string& name) const {
  const auto& index = name_index();
  auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

int MilpModel::n_binaries() const {
  int n = 0;
  for (const auto& v : vars) n += v.kind == VarKind::Binary;
  return n;
}

int MilpModel::n_free_binaries() const {
  int n = 0;
  for (const auto& v : vars)
    n += v.kind == VarKind::Binary && v.ub - v.lb > 0.5;
  return n;
}

void MilpModel::check() const {
  if (objective.size() != vars.size())
    throw std::logic_error("objective size mismatch");
  using Key = std::tuple<int, int, int, int, int, int>;
  std::set<Key> coords;
  std::set<std::string> names;
  for (const auto& v : vars) {
    if (v.lb > v.ub + 1e-12)
      throw std::logic_error("variable " + v.name + " has crossed bounds");
    if (v.kind == VarKind::Binary && (v.lb < -1e-12 || v.ub > 1 + 1e-12))
      throw std::logic_error("binary " + v.name + " outside [0,1]");
    if (!names.insert(v.name).second)
      throw std::logic_error("duplicate variable name " + v.name);
    if (v.coord.role != VarRole::Other) {
      Key key{static_cast<int>(v.coord.role), v.coord.unit, v.coord.step,
              v.coord.scenario, static_cast<int>(v.coord.from),
              static_cast<int>(v.coord.to)};
      if (!coords.insert(key).second)
        throw std::logic_error("duplicate coordinate for " + v.name);
    }
  }
  for (const auto& r : rows)
    for (const auto& [j, coef] : r.terms) {
      if (j < 0 || j >= n_vars())
        throw std::logic_error("row " + r.name + " references unknown var");
      (void)coef;
    }
}

}  // namespace suc
