// gsklab: numerical laboratory for the generalized sine kernel determinant,
// its large-x expansion terms, and the associated cyclic integrals.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gsk/asymptotics.hpp"
#include "gsk/cyclic.hpp"
#include "gsk/extraction.hpp"
#include "gsk/kernel.hpp"
#include "gsk/model_io.hpp"
#include "gsk/verify.hpp"
#include "gsk/xdep.hpp"

using nlohmann::json;

namespace {

json complex_json(gsk::Complex v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

json convention_json(const gsk::ConventionChoice& conv) {
  return json{{"s_p", complex_json(conv.s_p)},
              {"s_g", complex_json(conv.s_g)},
              {"calibrated", conv.calibrated},
              {"g_defaulted", conv.g_defaulted},
              {"separation_lead", conv.separation_lead},
              {"separation_g", conv.separation_g}};
}

json prediction_json(const gsk::AsymptoticPrediction& pred, double x) {
  json terms = json::array();
  for (const auto& t : pred.terms) {
    terms.push_back(json{{"label", t.label},
                         {"x_power", t.x_power},
                         {"lnx_power", t.lnx_power},
                         {"m", t.m},
                         {"amplitude", complex_json(t.amplitude)},
                         {"source", t.source}});
  }
  return json{{"terms", terms},
              {"omega", complex_json(pred.omega)},
              {"nu_plus", complex_json(pred.nu_plus)},
              {"nu_minus", complex_json(pred.nu_minus)},
              {"osc_exponent_m_plus_1", complex_json(pred.osc_exponent(1))},
              {"convention", convention_json(pred.convention)},
              {"value_at_x", complex_json(pred.value_at(x))},
              {"notes", pred.notes}};
}

gsk::Conventions::IndexConvention index_convention_from(const std::string& name) {
  if (name == "as_printed") return gsk::Conventions::IndexConvention::kAsPrinted;
  if (name == "shifted") return gsk::Conventions::IndexConvention::kShifted;
  throw gsk::ModelError("index convention must be as_printed or shifted");
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized sine kernel laboratory"};
  app.require_subcommand(1);

  std::string model_path, terms_arg = "leading,g", suite = "all",
              basis = "default", csv_path = "samples.csv", m_arg = "0",
              index_convention_arg;
  double x = 20.0, xmin = 30.0, xmax = 120.0;
  int n = 1, big_n = 1, order = 0, count = 180;

  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", model_path, "model JSON file")->required();
  };

  CLI::App* detval = app.add_subcommand("detval", "ln det(I+V) at one x");
  add_model(detval);
  detval->add_option("--x", x)->required();
  detval->add_option("--order", order, "starting quadrature order");

  CLI::App* trace = app.add_subcommand("trace", "tr K^n");
  add_model(trace);
  trace->add_option("--x", x)->required();
  trace->add_option("--n", n)->required();

  CLI::App* cyc = app.add_subcommand("cyclic", "cyclic integral I_n, n in {1,2}");
  add_model(cyc);
  cyc->add_option("--x", x)->required();
  cyc->add_option("--n", n)->required();

  CLI::App* link = app.add_subcommand("link", "cyclic integral vs tr K^n");
  add_model(link);
  link->add_option("--x", x)->required();
  link->add_option("--n", n)->required();

  CLI::App* ae = app.add_subcommand("ae-eval", "asymptotic expansion terms");
  add_model(ae);
  ae->add_option("--x", x)->required();
  ae->add_option("--terms", terms_arg, "leading,g,osc0,lemma1:N,corr:n,N");

  CLI::App* prop = app.add_subcommand("prop-eval", "leading functional actions");
  add_model(prop);
  prop->add_option("--x", x)->required();
  prop->add_option("--n", n)->required();
  prop->add_option("--N", big_n)->required();
  prop->add_option("--m", m_arg, "0, +1 or -1");
  prop->add_option("--index-convention", index_convention_arg, "as_printed or shifted");

  CLI::App* fit = app.add_subcommand("fit", "sample lndet over a grid and fit");
  add_model(fit);
  fit->add_option("--xmin", xmin)->required();
  fit->add_option("--xmax", xmax)->required();
  fit->add_option("--count", count)->required();
  fit->add_option("--basis", basis, "default or deep");
  fit->add_option("--csv", csv_path, "samples CSV output path");

  CLI::App* verify = app.add_subcommand("verify", "run module invariant suites");
  verify->add_option("--suite", suite, "all|kernel|asymptotics|cyclic|xdep");
  verify->add_option("--model", model_path, "model JSON file (default: built-in smoke model)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*detval) {
      gsk::ModelSpec model = gsk::load_model(model_path);
      if (order > 0) model.set_quad_order(order);
      auto [value, used] = gsk::log_fredholm_det_converged(model, x);
      emit(json{{"re", value.real()}, {"im", value.imag()}, {"order_used", used}});
    } else if (*trace) {
      gsk::ModelSpec model = gsk::load_model(model_path);
      gsk::Complex t = gsk::trace_power(gsk::assemble(model, x), n);
      emit(json{{"n", n}, {"trace", complex_json(t)}});
    } else if (*cyc) {
      gsk::ModelSpec model = gsk::load_model(model_path);
      gsk::Expr phi = model.f_is_phi_exp_g()
                          ? *model.phi()
                          : (model.g().is_zero_literal() ? model.F() : gsk::Expr::number(1.0));
      gsk::Expr g = model.f_is_phi_exp_g() || model.g().is_zero_literal()
                        ? model.g()
                        : gsk::Expr::number(0.0);
      gsk::PureProductFn fn(phi, g, n);
      gsk::CyclicTrail trail;
      gsk::Complex value = gsk::cyclic_integral(fn, model, x, n, &trail);
      json steps = json::array();
      for (const auto& s : trail.steps)
        steps.push_back(json{{"nodes_per_side", s.nodes_per_side},
                             {"segment_order", s.segment_order},
                             {"value", complex_json(s.value)}});
      emit(json{{"n", n}, {"value", complex_json(value)}, {"trail", steps}});
    } else if (*link) {
      gsk::ModelSpec model = gsk::load_model(model_path);
      gsk::LinkReport rep = gsk::link_check(model, x, n);
      emit(json{{"n", n},
                {"cyclic", complex_json(rep.lhs)},
                {"trace", complex_json(rep.rhs)},
                {"rel_err", rep.rel_err}});
    } else if (*ae) {
      gsk::ModelSpec model = gsk::load_model(model_path);
      gsk::ConventionChoice conv = gsk::calibrate_convention(model);
      gsk::AsymptoticPrediction pred = gsk::leading_terms(model, x, conv);
      std::stringstream ss(terms_arg);
      std::string item;
      json extra = json::array();
      while (std::getline(ss, item, ',')) {
        if (item == "leading" || item == "g" || item.empty()) continue;  // always included
        if (item == "osc0") {
          extra.push_back(json{
              {"term", "osc0"},
              {"value", complex_json(gsk::first_oscillating_term(model, x))},
              {"note", "x^-2 sum of both oscillating signs, evaluated at x"}});
          continue;
        }
        if (item.rfind("lemma1:", 0) == 0) {
          int nn = std::stoi(item.substr(7));
          extra.push_back(json{{"term", item},
                               {"value", complex_json(gsk::lemma1_term(model, nn))}});
          continue;
        }
        if (item.rfind("corr:", 0) == 0) {
          // corr:n,N -- the comma splits list items, so N is the next item.
          int cn = std::stoi(item.substr(5));
          if (!std::getline(ss, item, ','))
            throw gsk::ModelError("term selector corr:n,N is missing N");
          int cN = std::stoi(item);
          extra.push_back(json{
              {"term", "corr_nonosc(n=" + std::to_string(cn) + ",N=" + std::to_string(cN) + ")"},
              {"value", complex_json(gsk::corollary_nonosc(model, cn, cN))}});
          for (int sigma : {1, -1}) {
            extra.push_back(json{
                {"term", "corr_osc(n=" + std::to_string(cn) + ",N=" + std::to_string(cN) +
                             ",sigma=" + (sigma == 1 ? std::string("+1") : std::string("-1")) +
                             ")"},
                {"value",
                 complex_json(gsk::corollary_osc(model, x, cn, cN, sigma,
                                                 model.conventions().index_convention))}});
          }
          continue;
        }
        throw gsk::ModelError("unknown term selector '" + item + "'");
      }
      json doc = prediction_json(pred, x);
      doc["extra_terms"] = extra;
      emit(doc);
    } else if (*prop) {
      gsk::ModelSpec model = gsk::load_model(model_path);
      if (!model.xdep())
        throw gsk::ModelError("prop-eval requires an xdep_family block in the model file");
      gsk::XDepFamily family = gsk::XDepFamily::from_params(*model.xdep());
      gsk::Conventions::IndexConvention idx =
          index_convention_arg.empty() ? model.conventions().index_convention
                                       : index_convention_from(index_convention_arg);
      json doc{{"n", n},
               {"N", big_n},
               {"m", m_arg},
               {"nu0_squared", model.conventions().nu0_squared},
               {"index_convention",
                idx == gsk::Conventions::IndexConvention::kAsPrinted ? "as_printed" : "shifted"}};
      if (m_arg == "0") {
        gsk::Complex value = gsk::prop_nonosc_action(family, model, x, n, big_n);
        doc["value"] = complex_json(value);
        // Both printed variants, reported side by side.
        gsk::ModelSpec other = model;
        gsk::Conventions conv = model.conventions();
        conv.nu0_squared = !conv.nu0_squared;
        other.set_conventions(conv);
        doc["value_other_nu0_variant"] =
            complex_json(gsk::prop_nonosc_action(family, other, x, n, big_n));
      } else if (m_arg == "+1" || m_arg == "-1") {
        int m = (m_arg == "+1") ? 1 : -1;
        doc["sigma"] = "taken equal to m (frequency pairing)";
        doc["value"] = complex_json(gsk::prop_osc_action(family, model, x, n, big_n, m, idx));
      } else {
        throw gsk::ModelError("--m must be 0, +1 or -1");
      }
      emit(doc);
    } else if (*fit) {
      gsk::ModelSpec model = gsk::load_model(model_path);
      auto samples = gsk::sample_lndet(model, {xmin, xmax, count});
      std::ofstream csv(csv_path);
      if (!csv) throw gsk::ModelError("cannot write CSV file '" + csv_path + "'");
      csv << "x,re_lndet,im_lndet\n";
      char line[128];
      for (const auto& s : samples) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s.x, s.lndet.real(),
                      s.lndet.imag());
        csv << line;
      }
      gsk::FitSpec spec = gsk::make_fit_spec(model, basis, /*oscillating=*/true);
      gsk::FitResult result = gsk::fit_expansion(samples, spec);
      gsk::ConventionChoice conv = gsk::calibrate_convention(model);
      gsk::AsymptoticPrediction pred = gsk::prediction_for_fit(model, conv);
      auto rows = gsk::compare_to_prediction(result, pred);
      json fitted = json::object();
      for (const auto& t : result.terms) fitted[t.term.label] = complex_json(t.amplitude);
      json comparison = json::array();
      for (const auto& r : rows)
        comparison.push_back(json{{"label", r.label},
                                  {"fitted", complex_json(r.fitted)},
                                  {"predicted", complex_json(r.predicted)},
                                  {"rel_deviation", r.rel_deviation}});
      emit(json{{"csv", csv_path},
                {"fitted", fitted},
                {"max_residual", result.max_residual},
                {"condition", result.condition},
                {"condition_warning", result.condition_warning},
                {"comparison", comparison},
                {"convention", convention_json(conv)}});
    } else if (*verify) {
      gsk::ModelSpec model =
          model_path.empty() ? gsk::smoke_model() : gsk::load_model(model_path);
      auto results = gsk::run_suite(suite, model);
      bool all_pass = true;
      json rows = json::array();
      for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        rows.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        std::fprintf(stderr, "[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                     r.detail.c_str());
      }
      emit(json{{"suite", suite}, {"pass", all_pass}, {"checks", rows}});
      return all_pass ? 0 : 4;
    }
  } catch (const gsk::NumericError& e) {
    std::fprintf(stderr, "numerical precondition: %s\n", e.what());
    return 3;
  } catch (const gsk::ModelError& e) {
    std::fprintf(stderr, "model error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
