#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tk/expression.hpp"
#include "tk/factorization.hpp"
#include "tk/format.hpp"
#include "tk/halfplane.hpp"
#include "tk/kernels.hpp"
#include "tk/multipliers.hpp"
#include "tk/oracle.hpp"
#include "tk/verify.hpp"

namespace tk::cli {

using json = nlohmann::ordered_json;

// JSON building blocks. Every printed value has a full-precision "_raw" twin.

inline json raw(Complex c) { return json::array({c.real(), c.imag()}); }

inline json raw_roots(const std::vector<Root>& roots) {
  json out = json::array();
  for (const auto& r : roots) out.push_back({{"value", raw(r.value)}, {"multiplicity", r.multiplicity}});
  return out;
}

inline json raw(const RationalFunction& r) {
  return {{"gain", raw(r.gain())}, {"zeros", raw_roots(r.zeros())}, {"poles", raw_roots(r.poles())}};
}

inline void put(json& obj, const std::string& key, const RationalFunction& r, const char* var = "z") {
  obj[key] = format_rational(r, var);
  obj[key + "_raw"] = raw(r);
}

inline void put(json& obj, const std::string& key, Complex c) {
  obj[key] = format_complex(c);
  obj[key + "_raw"] = raw(c);
}

inline void put(json& obj, const std::string& key, const std::vector<RationalFunction>& fs) {
  json printed = json::array(), raws = json::array();
  for (const auto& f : fs) {
    printed.push_back(format_rational(f));
    raws.push_back(raw(f));
  }
  obj[key] = std::move(printed);
  obj[key + "_raw"] = std::move(raws);
}

inline void put(json& obj, const std::string& key, const BlaschkeProduct& b) {
  put(obj, key, b.to_rational());
  obj[key + "_zeros"] = raw_roots(b.zeros());
  put(obj, key + "_constant", b.constant());
}

/// Envelope keys; the error object replaces the whole document.
inline const std::vector<std::string>& envelope_keys() {
  static const std::vector<std::string> keys{"command", "inputs", "result", "warnings", "tolerances", "seed"};
  return keys;
}

/// Structural check of a report against the documented envelope.
inline std::vector<std::string> validate_envelope(const json& doc) {
  std::vector<std::string> problems;
  if (!doc.is_object()) return {"document is not an object"};
  for (const auto& k : envelope_keys())
    if (!doc.contains(k)) problems.push_back("missing key '" + k + "'");
  if (!problems.empty()) return problems;
  if (!doc["command"].is_string()) problems.push_back("command is not a string");
  if (!doc["inputs"].is_object()) problems.push_back("inputs is not an object");
  else
    for (const auto& [k, v] : doc["inputs"].items())
      if (!v.is_string()) problems.push_back("input '" + k + "' is not a string");
  if (!doc["result"].is_object()) problems.push_back("result is not an object");
  if (!doc["warnings"].is_array()) problems.push_back("warnings is not an array");
  else
    for (const auto& w : doc["warnings"])
      if (!w.is_string()) problems.push_back("warning is not a string");
  if (!doc["tolerances"].is_object()) problems.push_back("tolerances is not an object");
  else
    for (const auto& [k, v] : doc["tolerances"].items())
      if (!v.is_number()) problems.push_back("tolerance '" + k + "' is not a number");
  if (!doc["seed"].is_number_integer()) problems.push_back("seed is not an integer");
  return problems;
}

enum class LogLevel { Off, Warn, Info, Debug };

inline LogLevel log_level_from_env() {
  const char* v = std::getenv("TK_LOG");
  if (!v) return LogLevel::Warn;
  const std::string s(v);
  if (s == "off" || s == "0") return LogLevel::Off;
  if (s == "info") return LogLevel::Info;
  if (s == "debug") return LogLevel::Debug;
  return LogLevel::Warn;
}

namespace detail {

struct Context {
  std::ostream& err;
  LogLevel level;
  json inputs = json::object();
  json inputs_raw = json::object();
  std::vector<std::string> warnings;
  bool verify_inline = false;
  bool mismatch = false;

  void log(LogLevel at, const std::string& msg) const {
    if (at > level || level == LogLevel::Off) return;
    static const char* names[] = {"", "warn", "info", "debug"};
    err << "tk [" << names[static_cast<int>(at)] << "] " << msg << '\n';
  }

  void warn(const std::string& msg) {
    warnings.push_back(msg);
    log(LogLevel::Warn, msg);
  }

  RationalFunction function(const std::string& flag, const std::string& text, const char* var = "z") {
    log(LogLevel::Debug, "parsing --" + flag + " \"" + text + "\"");
    auto f = expr::parse_rational(text);
    inputs[flag] = format_rational(f, var);
    inputs_raw[flag] = raw(f);
    for (const auto& w : classification_warnings(f)) warn("--" + flag + ": " + w);
    return f;
  }

  ToeplitzSymbol symbol(const std::string& flag, const std::string& text) {
    return ToeplitzSymbol(function(flag, text));
  }

  BlaschkeProduct blaschke(const std::string& flag, const std::string& text) {
    auto b = as_blaschke(function(flag, text));
    if (!b) throw Error(ErrorCode::PreconditionViolation, "--" + flag + " is not a finite Blaschke product");
    return *b;
  }

  /// Oracle cross-check attached to kernel-valued results when --verify-inline is set.
  void attach_oracle(json& result, const ToeplitzKernel& k) {
    if (!verify_inline) return;
    const auto cmp = oracle::compare_kernel(k);
    result["oracle"] = {{"dimension", cmp.numeric_dimension},
                        {"principal_angle", cmp.principal_angle},
                        {"gap_ratio", cmp.gap_ratio}};
    for (const auto& w : cmp.warnings) warn(w);
    if (cmp.numeric_dimension != cmp.symbolic_dimension || cmp.principal_angle >= 1e-6) {
      mismatch = true;
      warn("numeric oracle disagrees with the symbolic kernel");
    }
  }
};

inline json kernel_result(const ToeplitzKernel& k) {
  json r = {{"dimension", k.dimension}};
  if (const auto w = k.symbol.winding()) r["winding"] = *w;
  put(r, "basis", k.basis);
  return r;
}

inline json error_object(const Error& e) {
  json out = {{"error", to_string(e.code())}, {"message", e.message()}};
  if (e.position()) out["position"] = *e.position();
  return out;
}

inline void render_text(const json& value, const std::string& prefix, std::ostream& out) {
  if (value.is_object()) {
    for (const auto& [k, v] : value.items()) {
      if (k.size() > 4 && k.ends_with("_raw")) continue;
      render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else if (value.is_array() && !value.empty() && value.front().is_structured()) {
    for (std::size_t i = 0; i < value.size(); ++i)
      render_text(value[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

}  // namespace detail

/// Runs one command line (without the program name). Standard output gets one
/// document; logs go to err. Returns the process exit code.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toeplitz kernels, maximal vectors and multipliers on rational symbols", "tk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("--help", "print help");  // -h would collide with --h

  bool text_mode = false, json_mode = false;
  double tolerance = 1e-8;
  std::uint64_t seed = 42;
  std::string report_path;
  bool verify_inline = false;
  app.add_flag("--json", json_mode, "JSON report on standard output (default)");
  app.add_flag("--text", text_mode, "human-readable report");
  app.add_option("--tol", tolerance, "verification tolerance")->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--report", report_path, "also write the JSON document to PATH");
  app.add_flag("--verify-inline", verify_inline, "cross-check kernels with the numeric oracle");

  std::map<std::string, std::string> opt;
  auto option = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option("--" + name, opt[name], help)->required();
  };
  using Handler = std::function<json(detail::Context&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto command = [&](const std::string& name, const std::string& help,
                     std::vector<std::pair<std::string, std::string>> flags, Handler h) {
    auto* sub = app.add_subcommand(name, help);
    for (const auto& [f, d] : flags) option(sub, f, d);
    commands.emplace_back(sub, std::move(h));
    return sub;
  };

  command("kernel", "basis of ker T_g", {{"symbol", "symbol expression"}}, [&](detail::Context& c) {
    const auto k = kernel(c.symbol("symbol", opt["symbol"]));
    auto r = detail::kernel_result(k);
    c.attach_oracle(r, k);
    return r;
  });

  command("dim", "dimension of ker T_g", {{"symbol", "symbol expression"}}, [&](detail::Context& c) {
    const auto k = kernel(c.symbol("symbol", opt["symbol"]));
    json r = {{"dimension", k.dimension}, {"winding", *k.symbol.winding()}};
    c.attach_oracle(r, k);
    return r;
  });

  command("minkernel", "minimal kernel containing a vector", {{"vector", "H^2 function"}},
          [&](detail::Context& c) {
            const auto mk = minimal_kernel(c.function("vector", opt["vector"]));
            json r = json::object();
            put(r, "symbol", mk.symbol.value());
            r.update(detail::kernel_result(mk.kernel));
            c.attach_oracle(r, mk.kernel);
            return r;
          });

  command("maximal", "maximality certificate of a vector in ker T_g",
          {{"vector", "kernel element"}, {"symbol", "symbol expression"}}, [&](detail::Context& c) {
            const auto k = c.function("vector", opt["vector"]);
            const auto cert = is_maximal(k, c.symbol("symbol", opt["symbol"]));
            json r = {{"is_maximal", cert.is_maximal}};
            put(r, "certificate", cert.certificate);
            if (cert.failure_witness) put(r, "witness_zero", *cert.failure_witness);
            else r["witness_zero"] = nullptr;
            return r;
          });

  auto* factor = command("factor", "inner-outer or Wiener-Hopf factorization", {{"f", "function or symbol"}},
                         [&](detail::Context& c) {
                           json r = {{"mode", opt["mode"]}};
                           if (opt["mode"] == "inner-outer") {
                             const auto io = inner_outer(c.function("f", opt["f"]));
                             put(r, "inner", io.inner);
                             put(r, "outer", io.outer);
                           } else {
                             const auto wh = wiener_hopf(c.symbol("f", opt["f"]));
                             put(r, "minus", wh.minus);
                             r["index"] = wh.index;
                             put(r, "plus", wh.plus);
                           }
                           return r;
                         });
  factor->add_option("--mode", opt["mode"], "inner-outer | wiener-hopf")
      ->required()
      ->check(CLI::IsMember({"inner-outer", "wiener-hopf"}));

  command("mult", "is w a multiplier from ker T_g to ker T_h",
          {{"w", "multiplier"}, {"g", "source symbol"}, {"h", "target symbol"}}, [&](detail::Context& c) {
            const auto w = c.function("w", opt["w"]);
            const auto g = c.symbol("g", opt["g"]);
            const auto h = c.symbol("h", opt["h"]);
            const auto routes = multiplier_routes(w, g, h);
            if (routes.maximal_vector != routes.smirnov)
              throw Error(ErrorCode::VerificationMismatch, "maximal-vector and Smirnov multiplier tests disagree");
            return json{{"is_multiplier", routes.maximal_vector},
                        {"routes",
                         {{"analytic", routes.analytic},
                          {"carleson", routes.carleson},
                          {"maximal_vector", routes.maximal_vector},
                          {"smirnov", routes.smirnov}}}};
          });

  auto space_result = [](detail::Context& c, const MultiplierSpace& m) {
    auto r = detail::kernel_result(m.space);
    put(r, "test_symbol", m.test_symbol.value());
    r["carleson_filtered"] = m.carleson_filtered;
    r["bounded_checked"] = m.bounded_checked;
    c.attach_oracle(r, kernel(m.test_symbol));
    return r;
  };

  command("m2", "L^2 multiplier space", {{"g", "source symbol"}, {"h", "target symbol"}},
          [&](detail::Context& c) {
            return space_result(c, multiplier_space(c.symbol("g", opt["g"]), c.symbol("h", opt["h"])));
          });

  command("minf", "bounded multiplier space", {{"g", "source symbol"}, {"h", "target symbol"}},
          [&](detail::Context& c) {
            return space_result(c, multiplier_space_bounded(c.symbol("g", opt["g"]), c.symbol("h", opt["h"])));
          });

  command("include", "ker T_g contained in ker T_h", {{"g", "symbol"}, {"h", "symbol"}},
          [&](detail::Context& c) {
            return json{{"includes", includes(c.symbol("g", opt["g"]), c.symbol("h", opt["h"]))}};
          });

  command("equal", "ker T_g equals ker T_h", {{"g", "symbol"}, {"h", "symbol"}}, [&](detail::Context& c) {
    return json{{"equals", equals(c.symbol("g", opt["g"]), c.symbol("h", opt["h"]))}};
  });

  command("equiv", "Wiener-Hopf equivalence of two symbols", {{"g1", "symbol"}, {"g2", "symbol"}},
          [&](detail::Context& c) {
            const auto w = is_equivalent(c.symbol("g1", opt["g1"]), c.symbol("g2", opt["g2"]));
            json r = {{"equivalent", w.has_value()}};
            if (w) {
              put(r, "h_minus", w->h_minus);
              put(r, "h_plus", w->h_plus);
            }
            return r;
          });

  command("crofoot", "companion inner function of a Crofoot multiplier",
          {{"w", "outer multiplier"}, {"theta", "finite Blaschke product"}}, [&](detail::Context& c) {
            const auto w = c.function("w", opt["w"]);
            const auto cc = crofoot_companion(c.blaschke("theta", opt["theta"]), w);
            json r = {{"exists", cc.has_value()}};
            if (cc) {
              put(r, "phi", cc->phi);
              put(r, "alpha", cc->alpha);
            }
            return r;
          });

  command("surjective", "does w map ker T_g onto ker T_h",
          {{"w", "multiplier"}, {"g", "source symbol"}, {"h", "target symbol"}}, [&](detail::Context& c) {
            const auto w = c.function("w", opt["w"]);
            const auto rep = is_surjective_multiplier(w, c.symbol("g", opt["g"]), c.symbol("h", opt["h"]));
            return json{{"holds", rep.holds},
                        {"outer_ok", rep.outer_ok},
                        {"carleson_forward_ok", rep.carleson_forward_ok},
                        {"carleson_inverse_ok", rep.carleson_inverse_ok},
                        {"symbol_identity_ok", rep.symbol_identity_ok}};
          });

  command("rigid", "is an outer H^2 function rigid", {{"p", "outer function"}}, [&](detail::Context& c) {
    return json{{"rigid", is_rigid(c.function("p", opt["p"]))}};
  });

  auto* cayley = command("cayley", "transfer from the upper half-plane to the disc",
                         {{"f", "function of s"}}, [&](detail::Context& c) {
                           const HalfPlaneRational f{c.function("f", opt["f"], "s")};
                           json r = {{"mode", opt["mode"]}};
                           if (opt["mode"] == "function") {
                             put(r, "result", cayley_function(f));
                             const auto norms = cayley_norms(f);
                             r["line_norm"] = norms.line;
                             r["circle_norm"] = norms.circle;
                           } else {
                             put(r, "result", cayley_symbol(f).value());
                           }
                           return r;
                         });
  cayley->add_option("--mode", opt["mode"], "function | symbol")
      ->required()
      ->check(CLI::IsMember({"function", "symbol"}));

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", opt["suite"], "suite name")->required()->check(CLI::IsMember(verify::suite_names()));
  commands.emplace_back(verify, [&](detail::Context& c) {
    c.inputs["suite"] = opt["suite"];
    const auto rep = verify::run_suite(opt["suite"], seed, tolerance);
    json checks = json::array();
    for (const auto& ch : rep.checks) {
      checks.push_back({{"id", ch.id}, {"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
      if (!ch.passed) c.warn("check failed: " + ch.name + ": " + ch.detail);
    }
    c.mismatch = !rep.ok();
    return json{{"suite", rep.suite}, {"passed", rep.passed()}, {"failed", rep.failed()}, {"checks", checks}};
  });

  const LogLevel level = log_level_from_env();
  auto emit = [&](const json& doc) {
    if (text_mode && !json_mode) detail::render_text(doc, "", out);
    else out << doc.dump(2) << '\n';
    if (!report_path.empty()) {
      std::ofstream file(report_path);
      if (!file) err << "tk: cannot write report to " << report_path << '\n';
      file << doc.dump(2) << '\n';
    }
  };
  auto fail = [&](const Error& e) {
    err << "tk: " << to_string(e.code()) << ": " << e.message() << '\n';
    emit(detail::error_object(e));
    return e.code() == ErrorCode::VerificationMismatch ? 1 : 2;
  };

  std::vector<const char*> argv{"tk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(Error(ErrorCode::UsageError, e.what()));
  }

  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    detail::Context ctx{err, level};
    ctx.verify_inline = verify_inline;
    try {
      ctx.log(LogLevel::Info, "running " + sub->get_name());
      json result = handler(ctx);
      json doc = {{"command", sub->get_name()},
                  {"inputs", ctx.inputs},
                  {"result", std::move(result)},
                  {"warnings", ctx.warnings},
                  {"tolerances",
                   {{"verification", tolerance},
                    {"circle", tol::circle},
                    {"root", tol::root},
                    {"cluster", tol::cluster},
                    {"svd_null", 1e-8}}},
                  {"seed", seed},
                  {"inputs_raw", ctx.inputs_raw}};
      emit(doc);
      return ctx.mismatch ? 1 : 0;
    } catch (const Error& e) {
      return fail(e);
    }
  }
  return fail(Error(ErrorCode::UsageError, "no subcommand"));
}

}  // namespace tk::cli
