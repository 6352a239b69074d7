// khat: check, run and verify scenario files.
//
//   khat check <file> [--print]
//   khat run <file> [--tol X] [--seed N]
//   khat suite [--seed N] [--bound-coords K] [--bound-rank R] [--bound-degree D]
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "khat/khat.h"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct StringDeleter {
  void operator()(char* s) const { khat_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct ScenarioDeleter {
  void operator()(khat_scenario* s) const { khat_scenario_free(s); }
};
struct ReportDeleter {
  void operator()(khat_report* r) const { khat_report_free(r); }
};

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

const char* category_name(khat_error_category c) {
  switch (c) {
    case KHAT_ERROR_LEXICAL: return "lexical";
    case KHAT_ERROR_SYNTAX: return "syntax";
    case KHAT_ERROR_SEMANTIC: return "semantic";
    default: return "none";
  }
}

int usage_error(const std::string& message, bool json) {
  if (json) std::cout << "{\"error\": \"" << json_escape(message) << "\"}\n";
  std::cerr << "khat: " << message << "\n";
  return kUsage;
}

// Parses the file; on failure prints the diagnostic and returns null.
std::unique_ptr<khat_scenario, ScenarioDeleter> load(const std::string& path, bool json) {
  std::string text;
  if (!read_file(path, text)) {
    usage_error("cannot read " + path, json);
    return nullptr;
  }
  khat_scenario* s = nullptr;
  khat_error err;
  if (khat_scenario_parse(text.c_str(), &s, &err) != KHAT_OK) {
    if (json) {
      std::cout << "{\"file\": \"" << json_escape(path) << "\", \"ok\": false, \"category\": \""
                << category_name(err.category) << "\", \"line\": " << err.line << ", \"column\": " << err.column
                << ", \"message\": \"" << json_escape(err.message) << "\"}\n";
    }
    std::cerr << path << ":" << (err.category == KHAT_ERROR_NONE ? khat_last_error() : err.message) << "\n";
    return nullptr;
  }
  return std::unique_ptr<khat_scenario, ScenarioDeleter>(s);
}

int emit(khat_status st, khat_report* raw, bool json) {
  std::unique_ptr<khat_report, ReportDeleter> report(raw);
  if (st != KHAT_OK) return usage_error(khat_last_error(), json);
  char* out = nullptr;
  if (khat_report_render(report.get(), json ? KHAT_FORMAT_JSON : KHAT_FORMAT_TEXT, &out) != KHAT_OK)
    return usage_error(khat_last_error(), json);
  CString text(out);
  std::cout << text.get();
  return khat_report_count(report.get(), KHAT_FAIL) > 0 ? kFail : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured bundles, Chern-Simons classes and K-hat: scenario checker"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  khat_run_options opts;
  khat_run_options_default(&opts);

  std::string check_file;
  auto* check = app.add_subcommand("check", "Parse and type-check a scenario file");
  check->add_option("file", check_file, "Scenario file")->required();
  bool print = false;
  check->add_flag("--print", print, "Print the scenario in canonical form");

  std::string run_file;
  auto* run = app.add_subcommand("run", "Run the tasks of a scenario file");
  run->add_option("file", run_file, "Scenario file")->required();
  run->add_option("--tol", opts.tol, "Holonomy tolerance")->check(CLI::PositiveNumber);
  run->add_option("--seed", opts.seed, "Seed for suite tasks");

  auto* suite = app.add_subcommand("suite", "Run the seeded invariant battery");
  suite->add_option("--seed", opts.seed, "Generator seed");
  suite->add_option("--bound-coords", opts.bound_coords, "Max a + b of sampled bases")->check(CLI::Range(1, 6));
  suite->add_option("--bound-rank", opts.bound_rank, "Max bundle rank")->check(CLI::Range(1, 4));
  suite->add_option("--bound-degree", opts.bound_degree, "Max polynomial degree")->check(CLI::Range(0, 4));

  for (auto* sub : {check, run, suite})
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  const bool json = format == "json";

  if (check->parsed()) {
    auto s = load(check_file, json);
    if (!s) return kUsage;
    const int tasks = khat_scenario_task_count(s.get());
    if (print) {
      char* out = nullptr;
      if (khat_scenario_render(s.get(), &out) != KHAT_OK) return usage_error(khat_last_error(), json);
      CString text(out);
      std::cout << text.get();
      return kPass;
    }
    if (json)
      std::cout << "{\"file\": \"" << json_escape(check_file) << "\", \"ok\": true, \"tasks\": " << tasks << "}\n";
    else
      std::cout << check_file << ": ok (" << tasks << " task" << (tasks == 1 ? "" : "s") << ")\n";
    return kPass;
  }
  if (run->parsed()) {
    auto s = load(run_file, json);
    if (!s) return kUsage;
    khat_report* r = nullptr;
    const khat_status st = khat_scenario_run(s.get(), &opts, &r);
    return emit(st, r, json);
  }
  khat_report* r = nullptr;
  const khat_status st = khat_suite_run(&opts, &r);
  return emit(st, r, json);
}
