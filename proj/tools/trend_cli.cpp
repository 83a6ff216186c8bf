#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "trend/dlr.hpp"
#include "trend/model.hpp"
#include "trend/reason.hpp"
#include "trend/render.hpp"
#include "trend/semantics.hpp"
#include "trend/state.hpp"
#include "trend/text.hpp"
#include "trend/verbal.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;  // violations / counterexample / no witness
constexpr int kUsage = 2;

bool color_enabled() {
  const char* env = std::getenv("TREND_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "always") return true;
  if (mode == "never") return false;
  return isatty(fileno(stdout));
}

std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return out.good();
}

void print_diagnostics(const std::vector<trend::Diagnostic>& diags,
                       bool json) {
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : diags) {
      nlohmann::json e;
      e["code"] = d.code;
      e["message"] = d.message;
      if (d.span) {
        e["line"] = d.span->line;
        e["column"] = d.span->column;
      }
      arr.push_back(std::move(e));
    }
    std::cout << arr.dump(2) << "\n";
    return;
  }
  for (const auto& d : diags)
    std::cout << paint(trend::format_diagnostic(d), "31") << "\n";
}

void print_violations(const std::vector<trend::Violation>& violations,
                      bool json) {
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : violations) {
      nlohmann::json e;
      e["rule"] = v.rule;
      e["elements"] = v.elements;
      e["time"] = v.times.empty() ? 0 : v.times.front();
      e["message"] = v.message;
      arr.push_back(std::move(e));
    }
    std::cout << arr.dump(2) << "\n";
    return;
  }
  for (const auto& v : violations) {
    const std::string line = trend::format_violation(v);
    std::cout << paint(v.rule, "31") << line.substr(v.rule.size()) << "\n";
  }
}

std::optional<trend::Schema> load_schema(const std::string& path, bool json,
                                         int& exit_code) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "cannot read '" << path << "'\n";
    exit_code = kUsage;
    return std::nullopt;
  }
  trend::ParseResult result = trend::parse_schema(*text);
  if (!result.ok()) {
    print_diagnostics(result.diagnostics, json);
    exit_code = kFindings;
    return std::nullopt;
  }
  return result.schema;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TREND temporal conceptual data modelling toolkit"};
  app.require_subcommand(1);

  std::string file, state_file, out_path, candidate, element, sub, sup;
  std::string style_name = "chg-ext", variant_name = "target", flow_name = "N";
  bool json = false, ascii = false;
  trend::reason::Bounds bounds;

  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--max-objects", bounds.max_objects, "object bound");
    cmd->add_option("--max-horizon", bounds.max_horizon, "time-point bound");
    cmd->add_option("--max-values", bounds.max_domain_values,
                    "domain-value bound");
    cmd->add_option("--flow", flow_name, "time flow label: N or Z");
  };
  auto add_variant = [&](CLI::App* cmd) {
    cmd->add_option("--variant", variant_name,
                    "past-mandatory trigger: target or source");
  };

  CLI::App* check = app.add_subcommand("check", "parse and validate a schema");
  check->add_option("file", file)->required();
  check->add_flag("--json", json, "machine-readable diagnostics");

  CLI::App* state_check =
      app.add_subcommand("state-check", "decide legality of a state");
  state_check->add_option("file", file)->required();
  state_check->add_option("state", state_file)->required();
  state_check->add_flag("--json", json);
  add_variant(state_check);

  CLI::App* to_dlr = app.add_subcommand("to-dlr", "translate to a DLR_US KB");
  to_dlr->add_option("file", file)->required();
  to_dlr->add_option("-o,--output", out_path);
  add_variant(to_dlr);

  CLI::App* verbalize = app.add_subcommand("verbalize", "controlled natural language");
  verbalize->add_option("file", file)->required();
  verbalize->add_option("--style", style_name, "dev-dex or chg-ext");

  CLI::App* render = app.add_subcommand("render", "emit a DOT diagram");
  render->add_option("file", file)->required();
  render->add_option("-o,--output", out_path);
  render->add_option("--labels", style_name, "dev-dex or chg-ext");
  render->add_flag("--ascii", ascii, "ASCII markers only");

  CLI::App* sat = app.add_subcommand("sat", "bounded satisfiability");
  sat->add_option("file", file)->required();
  sat->add_option("--element", element)->required();
  add_bounds(sat);
  add_variant(sat);

  CLI::App* subsume = app.add_subcommand("subsume", "bounded subsumption");
  subsume->add_option("file", file)->required();
  subsume->add_option("--sub", sub)->required();
  subsume->add_option("--sup", sup)->required();
  add_bounds(subsume);
  add_variant(subsume);

  CLI::App* implies = app.add_subcommand("implies", "bounded implication");
  implies->add_option("file", file)->required();
  implies->add_option("--constraint", candidate, "candidate statement")
      ->required();
  add_bounds(implies);
  add_variant(implies);

  CLI::App* fmt = app.add_subcommand("fmt", "canonical reprint");
  fmt->add_option("file", file)->required();
  fmt->add_option("--labels", style_name, "dev-dex or chg-ext");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::stringstream out;
    int code = app.exit(e, out, out);
    std::cerr << out.str();
    return code == 0 ? kOk : kUsage;
  }

  auto style = style_name == "dev-dex" ? trend::KeywordStyle::DevDex
                                       : trend::KeywordStyle::ChgExt;
  auto variant = variant_name == "source"
                     ? trend::SemanticsVariant::SourceTriggered
                     : trend::SemanticsVariant::TargetTriggered;
  bounds.time_flow = flow_name == "Z" ? trend::reason::TimeFlow::Integers
                                      : trend::reason::TimeFlow::Naturals;

  int exit_code = kOk;
  try {
    if (check->parsed()) {
      auto text = read_file(file);
      if (!text) {
        std::cerr << "cannot read '" << file << "'\n";
        return kUsage;
      }
      trend::ParseResult result = trend::parse_schema(*text);
      print_diagnostics(result.diagnostics, json);
      return result.ok() ? kOk : kFindings;
    }

    if (state_check->parsed()) {
      auto schema = load_schema(file, json, exit_code);
      if (!schema) return exit_code;
      auto text = read_file(state_file);
      if (!text) {
        std::cerr << "cannot read '" << state_file << "'\n";
        return kUsage;
      }
      trend::TemporalState state = trend::parse_state_json(*text, *schema);
      auto violations = trend::check_state(*schema, state, variant);
      print_violations(violations, json);
      return violations.empty() ? kOk : kFindings;
    }

    if (to_dlr->parsed()) {
      auto schema = load_schema(file, false, exit_code);
      if (!schema) return exit_code;
      auto kb = trend::dlr::translate(*schema, variant);
      if (!write_output(out_path, trend::dlr::kb_to_text(kb))) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return kUsage;
      }
      return kOk;
    }

    if (verbalize->parsed()) {
      auto schema = load_schema(file, false, exit_code);
      if (!schema) return exit_code;
      for (const auto& s : trend::verbal::verbalize(*schema, style))
        std::cout << s << "\n";
      return kOk;
    }

    if (render->parsed()) {
      auto schema = load_schema(file, false, exit_code);
      if (!schema) return exit_code;
      trend::render::Options options{style, ascii};
      if (!write_output(out_path, trend::render::to_dot(*schema, options))) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return kUsage;
      }
      return kOk;
    }

    if (sat->parsed()) {
      auto schema = load_schema(file, false, exit_code);
      if (!schema) return exit_code;
      auto result = trend::reason::find_witness(*schema, element, bounds, variant);
      if (const auto* witness = std::get_if<trend::reason::Witness>(&result)) {
        std::cout << "witness: '" << element << "' nonempty at t=" << witness->t
                  << "\n";
        std::cout << trend::state_to_json(witness->state, *schema);
        return kOk;
      }
      const auto& lattice = std::get<trend::reason::ExhaustedBounds>(result).lattice;
      std::cout << "no witness up to bounds "
                << trend::reason::lattice_text(lattice) << "\n";
      return kFindings;
    }

    if (subsume->parsed()) {
      auto schema = load_schema(file, false, exit_code);
      if (!schema) return exit_code;
      auto result = trend::reason::check_subsumption(*schema, sub, sup, bounds, variant);
      if (const auto* holds =
              std::get_if<trend::reason::HoldsUpToBounds>(&result)) {
        std::cout << "subsumption holds up to bounds "
                  << trend::reason::lattice_text(holds->lattice) << "\n";
        return kOk;
      }
      const auto& cex = std::get<trend::reason::CounterExample>(result);
      std::cout << "counterexample: " << cex.instance << " at t=" << cex.t
                << " (" << cex.note << ")\n";
      std::cout << trend::state_to_json(cex.state, *schema);
      return kFindings;
    }

    if (implies->parsed()) {
      auto schema = load_schema(file, false, exit_code);
      if (!schema) return exit_code;
      auto result =
          trend::reason::check_implication(*schema, candidate, bounds, variant);
      if (const auto* holds =
              std::get_if<trend::reason::HoldsUpToBounds>(&result)) {
        std::cout << "implication holds up to bounds "
                  << trend::reason::lattice_text(holds->lattice) << "\n";
        return kOk;
      }
      const auto& cex = std::get<trend::reason::CounterExample>(result);
      std::cout << "counterexample: " << cex.instance << " at t=" << cex.t
                << " (" << cex.note << ")\n";
      std::cout << trend::state_to_json(cex.state, *schema);
      return kFindings;
    }

    if (fmt->parsed()) {
      auto schema = load_schema(file, false, exit_code);
      if (!schema) return exit_code;
      std::cout << trend::serialize_schema(*schema, style);
      return kOk;
    }
  } catch (const trend::Error& e) {
    std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
