#include "gsk/model_io.hpp"

#include <fstream>
#include <set>

namespace gsk {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ModelError("model file: unknown key '" + it.key() + "' in " + where);
  }
}

Complex complex_from(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ModelError("model file: " + where + " must be {re, im}");
  check_keys(obj, {"re", "im"}, where);
  if (!obj.contains("re") || !obj.contains("im"))
    throw ModelError("model file: " + where + " must have both re and im");
  return Complex(obj["re"].get<double>(), obj["im"].get<double>());
}

Expr expr_from(const json& value, const std::string& where) {
  if (!value.is_string())
    throw ModelError("model file: " + where + " must be an expression string");
  return parse_expr(value.get<std::string>());
}

}  // namespace

ModelSpec model_from_json(const json& doc) {
  if (!doc.is_object()) throw ModelError("model file: top level must be an object");
  check_keys(doc,
             {"q", "gamma", "p", "F", "g", "phi", "F_is_phi_times_exp_g", "quad_order",
              "contour", "xdep_family", "conventions"},
             "the model");

  for (const char* key : {"q", "gamma", "p"})
    if (!doc.contains(key)) throw ModelError(std::string("model file: missing key '") + key + "'");

  double q = doc["q"].get<double>();
  Complex gamma = complex_from(doc["gamma"], "gamma");
  Expr p = expr_from(doc["p"], "p");
  Expr g = doc.contains("g") ? expr_from(doc["g"], "g") : Expr::number(0.0);

  bool phi_flag = doc.contains("F_is_phi_times_exp_g") &&
                  doc["F_is_phi_times_exp_g"].get<bool>();
  ModelSpec model = [&] {
    if (phi_flag) {
      if (!doc.contains("phi"))
        throw ModelError("model file: F_is_phi_times_exp_g requires 'phi'");
      if (doc.contains("F"))
        throw ModelError("model file: give either F or phi with the flag, not both");
      return ModelSpec::with_phi(q, gamma, p, expr_from(doc["phi"], "phi"), g);
    }
    if (doc.contains("phi"))
      throw ModelError("model file: 'phi' requires F_is_phi_times_exp_g = true");
    if (!doc.contains("F")) throw ModelError("model file: missing key 'F'");
    return ModelSpec(q, gamma, p, expr_from(doc["F"], "F"), g);
  }();

  if (doc.contains("quad_order")) {
    int order = doc["quad_order"].get<int>();
    if (order < 1) throw ModelError("model file: quad_order must be >= 1");
    model.set_quad_order(order);
  }
  if (doc.contains("contour")) {
    const json& c = doc["contour"];
    check_keys(c, {"delta", "nodes_per_side"}, "contour");
    ContourParams params = model.contour();
    if (c.contains("delta")) params.delta = c["delta"].get<double>();
    if (c.contains("nodes_per_side")) params.nodes_per_side = c["nodes_per_side"].get<int>();
    model.set_contour(params);
  }
  if (doc.contains("xdep_family")) {
    const json& f = doc["xdep_family"];
    check_keys(f, {"a", "b", "v", "c"}, "xdep_family");
    for (const char* key : {"a", "b", "v", "c"})
      if (!f.contains(key))
        throw ModelError(std::string("model file: xdep_family missing '") + key + "'");
    XDepParams params{expr_from(f["a"], "xdep a"), expr_from(f["b"], "xdep b"),
                      expr_from(f["v"], "xdep v"), f["c"].get<double>()};
    model.set_xdep(std::move(params));
  }
  if (doc.contains("conventions")) {
    const json& c = doc["conventions"];
    check_keys(c, {"nu0_squared", "index_convention"}, "conventions");
    Conventions conv = model.conventions();
    if (c.contains("nu0_squared")) conv.nu0_squared = c["nu0_squared"].get<bool>();
    if (c.contains("index_convention")) {
      std::string idx = c["index_convention"].get<std::string>();
      if (idx == "as_printed") {
        conv.index_convention = Conventions::IndexConvention::kAsPrinted;
      } else if (idx == "shifted") {
        conv.index_convention = Conventions::IndexConvention::kShifted;
      } else {
        throw ModelError("model file: index_convention must be as_printed or shifted");
      }
    }
    model.set_conventions(conv);
  }
  return model;
}

ModelSpec load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ModelError("model file '" + path + "': " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace gsk
