#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <limits>
#include <set>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cuc/analysis.hpp"
#include "cuc/denot.hpp"
#include "cuc/error.hpp"
#include "cuc/invariant.hpp"
#include "cuc/parser.hpp"
#include "report_json.hpp"

namespace cuc::cli {

namespace {

/// Input problem that has already been explained on stderr.
struct InputFailure {};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Value parse_value(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error("not a value (expected true, false or an integer): '" + text + "'");
  }
  return v;
}

void print_diagnostics(const ValidationReport& r, const std::string& path, std::ostream& os) {
  for (const auto& d : r.errors) os << path << ": error: " << d.location << ": " << d.message << "\n";
  for (const auto& d : r.warnings) os << path << ": warning: " << d.location << ": " << d.message << "\n";
}

CodeTree load_program(const std::string& path, std::ostream& err) {
  std::string text = read_file(path);
  CodeTree code = [&] {
    try {
      return parse(text);
    } catch (const ParseError& e) {
      err << path << ":" << e.what() << "\n";
      throw InputFailure{};
    }
  }();
  ValidationReport report = validate(code);
  print_diagnostics(report, path, err);
  if (!report.ok) throw InputFailure{};
  return code;
}

InvariantFile load_invariants(const std::string& path, std::ostream& err) {
  std::string text = read_file(path);
  try {
    return parse_invariant_file(text);
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    throw InputFailure{};
  }
}

Label lowest_label(const CodeTree& code) {
  Label best = std::numeric_limits<Label>::max();
  for (const auto& li : leaves(code)) best = std::min(best, li.label);
  return best;
}

void print_states(const StateSet& s, std::ostream& out, const char* indent = "") {
  for (const auto& c : s) out << indent << to_string(c) << "\n";
}

void print_flag(std::ostream& out, const char* name, bool v) {
  out << name << ": " << (v ? "true" : "false") << "\n";
}

void print_invariant_report(const InvariantReport& r, std::ostream& out, const std::string& prefix = "") {
  print_flag(out, (prefix + "holds").c_str(), r.holds);
  print_flag(out, (prefix + "exhaustive").c_str(), r.exhaustive);
  print_flag(out, (prefix + "frontier_truncated").c_str(), r.frontier_truncated);
  out << prefix << "states_checked: " << r.states_checked << "\n";
  if (r.counterexample) out << prefix << "counterexample: " << to_string(*r.counterexample) << "\n";
}

int verdict(bool holds, bool exhaustive) {
  if (!holds) return kCheckFailed;
  return exhaustive ? kOk : kNotExhaustive;
}

struct Options {
  RunConfig run;
  std::vector<std::string> store_flags;
  std::uint64_t kleene = 0;
  std::uint64_t seed = 0;
  std::string inv_path;
  std::string split = "root";
  std::string pred;
};

// Store bindings: those of the .inv file first, overridden per variable by --store.
StateSet initial_set(const Options& opt, const CodeTree& code, const InvariantFile* inv) {
  std::vector<std::pair<std::string, std::vector<Value>>> bindings;
  if (inv) bindings = inv->init_store;
  for (const auto& flag : opt.store_flags) {
    auto b = parse_store_binding(flag);
    auto it = std::find_if(bindings.begin(), bindings.end(),
                           [&](const auto& p) { return p.first == b.first; });
    if (it != bindings.end()) {
      it->second = std::move(b.second);
    } else {
      bindings.push_back(std::move(b));
    }
  }
  Label pc = opt.run.pc ? *opt.run.pc : (inv && inv->init_pc ? *inv->init_pc : lowest_label(code));
  return initial_states(bindings, pc);
}

CodeTree maybe_restructure(const CodeTree& code, const Options& opt) {
  if (!opt.run.seed) return code;
  return restructure(flatten(code), *opt.run.seed);
}

const InvariantSpec& select_invariant(const InvariantFile& file, const Options& opt) {
  if (opt.pred.empty()) return file.checked();
  if (const auto* p = file.find(opt.pred)) return *p;
  throw Error("predicate '" + opt.pred + "' is not declared in " + opt.inv_path);
}

void require_welltyped(const InvariantSpec& inv, const StateSet& s0, std::ostream& err) {
  if (s0.empty()) return;
  std::map<std::string, Type> vars;
  for (const auto& [k, v] : s0.begin()->store) vars[k] = type_of(v);
  auto errors = typecheck(inv, vars);
  // Variables first bound by the program are not known from S0; only
  // genuine type conflicts are fatal here.
  bool fatal = false;
  for (const auto& e : errors) {
    if (e.find("unknown variable") != std::string::npos) continue;
    err << "invariant " << inv.name << ": " << e << "\n";
    fatal = true;
  }
  if (fatal) throw InputFailure{};
}

std::pair<CodeTree, CodeTree> split_program(const CodeTree& code, const std::string& spec) {
  if (spec == "root") {
    if (code.is_leaf()) throw Error("cannot split a single-instruction program at the root");
    return {code.left(), code.right()};
  }
  std::set<Label> chosen;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Label l = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), l);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw Error("split spec must be 'root' or a comma-separated label list, got '" + spec + "'");
    }
    chosen.insert(l);
  }
  std::vector<LabeledInstruction> first, second;
  for (auto& li : leaves(code)) (chosen.count(li.label) ? first : second).push_back(std::move(li));
  if (first.empty() || second.empty()) {
    throw Error("split spec '" + spec + "' must leave instructions on both sides");
  }
  auto chain = [](const std::vector<LabeledInstruction>& ls) {
    CodeTree t = CodeTree::leaf(ls.back());
    for (auto it = ls.rbegin() + 1; it != ls.rend(); ++it) t = CodeTree::seq(CodeTree::leaf(*it), t);
    return t;
  };
  return {chain(first), chain(second)};
}

int cmd_check(const Options& opt, std::ostream& out, std::ostream& err) {
  std::string text = read_file(opt.run.program_path);
  CodeTree code = [&] {
    try {
      return parse(text);
    } catch (const ParseError& e) {
      err << opt.run.program_path << ":" << e.what() << "\n";
      throw InputFailure{};
    }
  }();
  ValidationReport r = validate(code);
  if (opt.run.json) {
    out << Json(to_json(r)).dump(2) << "\n";
  } else {
    print_diagnostics(r, opt.run.program_path, out);
    out << (r.ok ? "ok" : "invalid") << " (" << r.errors.size() << " errors, " << r.warnings.size()
        << " warnings)\n";
  }
  return r.ok ? kOk : kCheckFailed;
}

int cmd_fmt(const Options& opt, std::ostream& out, std::ostream& err) {
  std::string text = read_file(opt.run.program_path);
  try {
    out << render(parse(text));
  } catch (const ParseError& e) {
    err << opt.run.program_path << ":" << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

int cmd_reach(const Options& opt, std::ostream& out, std::ostream& err) {
  CodeTree code = load_program(opt.run.program_path, err);
  ReachReport r = multistep(flatten(code), initial_set(opt, code, nullptr), opt.run.bounds);
  if (opt.run.json) {
    Json j = {{"command", "reach"}};
    j.update(to_json(r));
    out << j.dump(2) << "\n";
  } else {
    print_states(r.states, out);
    out << "states: " << r.states.size() << "\n";
    print_flag(out, "saturated", r.saturated);
    out << "steps_used: " << r.steps_used << "\n";
    print_flag(out, "frontier_truncated", r.frontier_truncated);
    print_flag(out, "state_limit_hit", r.state_limit_hit);
  }
  return r.saturated ? kOk : kNotExhaustive;
}

int cmd_denote(const Options& opt, std::ostream& out, std::ostream& err) {
  CodeTree code = maybe_restructure(load_program(opt.run.program_path, err), opt);
  StateSet s0 = initial_set(opt, code, nullptr);
  DenotReport r = denote(code, s0, opt.run.bounds);
  std::vector<StateSet> chain;
  if (opt.kleene > 0) chain = kleene_trace(code, s0, opt.kleene, opt.run.bounds);
  if (opt.run.json) {
    Json j = {{"command", "denote"}};
    j.update(to_json(r));
    if (opt.kleene > 0) {
      Json rounds = Json::array();
      for (std::size_t i = 0; i < chain.size(); ++i) {
        rounds.push_back({{"round", i + 1}, {"state_count", chain[i].size()}, {"states", to_json(chain[i])}});
      }
      j["kleene"] = rounds;
    }
    out << j.dump(2) << "\n";
  } else {
    print_states(r.states, out);
    out << "states: " << r.states.size() << "\n";
    print_flag(out, "fixpoint_reached", r.fixpoint_reached);
    out << "iterations: " << r.iterations << "\n";
    print_flag(out, "frontier_truncated", r.frontier_truncated);
    print_flag(out, "state_limit_hit", r.state_limit_hit);
    for (std::size_t i = 0; i < chain.size(); ++i) {
      StateSet added;
      for (const auto& c : chain[i]) {
        if (i == 0 || !chain[i - 1].count(c)) added.insert(c);
      }
      out << "kleene round " << i + 1 << ": " << chain[i].size() << " states, " << added.size()
          << " new\n";
      print_states(added, out, "  ");
    }
  }
  return r.fixpoint_reached ? kOk : kNotExhaustive;
}

int cmd_conform(const Options& opt, std::ostream& out, std::ostream& err) {
  CodeTree code = maybe_restructure(load_program(opt.run.program_path, err), opt);
  ConformanceReport r = check_conformance(code, initial_set(opt, code, nullptr), opt.run.bounds);
  if (opt.run.json) {
    Json j = {{"command", "conform"}};
    j.update(to_json(r));
    out << j.dump(2) << "\n";
  } else {
    print_flag(out, "equal", r.equal);
    print_flag(out, "exhaustive", r.exhaustive);
    out << "denotational_states: " << r.denotational.states.size() << "\n";
    out << "operational_states: " << r.operational.states.size() << "\n";
    if (!r.only_denotational.empty()) {
      out << "only_denotational:\n";
      print_states(r.only_denotational, out, "  ");
    }
    if (!r.only_operational.empty()) {
      out << "only_operational:\n";
      print_states(r.only_operational, out, "  ");
    }
  }
  // Under a budget the two engines explore different amounts, so a
  // difference means nothing until both have saturated.
  if (!r.exhaustive) return kNotExhaustive;
  return r.equal ? kOk : kCheckFailed;
}

int cmd_prefix(const Options& opt, std::ostream& out, std::ostream& err) {
  CodeTree code = maybe_restructure(load_program(opt.run.program_path, err), opt);
  InvariantReport r = check_prefix_closure(code, initial_set(opt, code, nullptr), opt.run.bounds);
  if (opt.run.json) {
    Json j = {{"command", "prefix"}, {"check", "prefix closure (instance check)"}};
    j.update(to_json(r));
    out << j.dump(2) << "\n";
  } else {
    out << "prefix closure (instance check)\n";
    print_invariant_report(r, out);
  }
  return verdict(r.holds, r.exhaustive);
}

int cmd_inv(const Options& opt, std::ostream& out, std::ostream& err) {
  CodeTree code = maybe_restructure(load_program(opt.run.program_path, err), opt);
  InvariantFile file = load_invariants(opt.inv_path, err);
  const InvariantSpec& inv = select_invariant(file, opt);
  StateSet s0 = initial_set(opt, code, &file);
  require_welltyped(inv, s0, err);
  InvariantReport r = check_invariant(code, inv, s0, opt.run.bounds);
  if (opt.run.json) {
    Json j = {{"command", "inv"}, {"check", "invariant (instance check)"}, {"invariant", inv.name}};
    j.update(to_json(r));
    out << j.dump(2) << "\n";
  } else {
    out << "invariant " << inv.name << " (instance check at " << s0.size() << " initial states)\n";
    print_invariant_report(r, out);
  }
  return verdict(r.holds, r.exhaustive);
}

int cmd_invoplus(const Options& opt, std::ostream& out, std::ostream& err) {
  CodeTree code = load_program(opt.run.program_path, err);
  InvariantFile file = load_invariants(opt.inv_path, err);
  const InvariantSpec& inv = select_invariant(file, opt);
  auto [first, second] = split_program(code, opt.split);
  StateSet s0 = initial_set(opt, code, &file);
  require_welltyped(inv, s0, err);
  InvOplusReport r = check_inv_oplus(first, second, inv, s0, opt.run.bounds);
  if (opt.run.json) {
    Json j = {{"command", "invoplus"}, {"check", "INV (+) rule (instance check)"}, {"invariant", inv.name}};
    j.update(to_json(r));
    out << j.dump(2) << "\n";
  } else {
    out << "invariant " << inv.name << " over (+) (instance check)\n";
    out << "first component:\n" << render(first);
    out << "second component:\n" << render(second);
    print_invariant_report(r.first, out, "premise_first.");
    print_invariant_report(r.second, out, "premise_second.");
    print_invariant_report(r.conclusion, out, "conclusion.");
    print_flag(out, "holds", r.holds);
    print_flag(out, "exhaustive", r.exhaustive);
    print_flag(out, "rule_consistent", r.rule_consistent);
  }
  if (!r.rule_consistent) err << "internal error: premises held but the conclusion failed\n";
  return verdict(r.holds, r.exhaustive);
}

}  // namespace

std::pair<std::string, std::vector<Value>> parse_store_binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error("--store expects name=v1,v2,..., got '" + text + "'");
  }
  std::pair<std::string, std::vector<Value>> out{text.substr(0, eq), {}};
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) out.second.push_back(parse_value(item));
  if (out.second.empty()) throw Error("--store " + out.first + " lists no values");
  return out;
}

StateSet initial_states(const std::vector<std::pair<std::string, std::vector<Value>>>& store,
                        Label pc) {
  StateSet out;
  std::vector<Store> stores{Store{}};
  for (const auto& [name, values] : store) {
    std::vector<Store> next;
    for (const auto& s : stores) {
      for (const auto& v : values) {
        Store t = s;
        t[name] = v;
        next.push_back(std::move(t));
      }
    }
    stores = std::move(next);
  }
  for (auto& s : stores) out.insert(Config{{}, std::move(s), pc});
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cuc: operational and denotational semantics of communicating unstructured code"};
  app.require_subcommand(1);
  Options opt;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("program", opt.run.program_path, "CUC program (.cuc)")->required();
  };
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--pc", opt.run.pc, "initial program counter (default: lowest label)");
    sub->add_option("--store", opt.store_flags, "initial values, name=v1,v2 (repeatable)");
    sub->add_option("--max-steps", opt.run.bounds.max_steps, "step / Kleene round budget");
    sub->add_option("--trace-len", opt.run.bounds.max_trace_len, "maximum trace length");
    sub->add_option("--max-states", opt.run.bounds.max_states, "state budget")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "evaluate the structure of this rank instead of the parsed one");
    sub->add_flag("--json", opt.run.json, "JSON output");
  };

  auto* check = app.add_subcommand("check", "validate a program");
  add_file(check);
  check->add_flag("--json", opt.run.json, "JSON output");

  auto* fmt = app.add_subcommand("fmt", "print a program in canonical form");
  add_file(fmt);

  auto* reach = app.add_subcommand("reach", "bounded multistep closure of the flattened program");
  add_file(reach);
  add_run_flags(reach);

  auto* den = app.add_subcommand("denote", "bounded denotation of the structured program");
  add_file(den);
  add_run_flags(den);
  den->add_option("--kleene", opt.kleene, "also print the first N elements of the Kleene chain");

  auto* conform = app.add_subcommand("conform", "compare denotational and operational state sets");
  add_file(conform);
  add_run_flags(conform);

  auto* prefix = app.add_subcommand("prefix", "check that the denotation is trace-prefix-closed");
  add_file(prefix);
  add_run_flags(prefix);

  auto* inv = app.add_subcommand("inv", "instance check of an invariant");
  add_file(inv);
  inv->add_option("invariants", opt.inv_path, "invariant file (.inv)")->required();
  inv->add_option("--pred", opt.pred, "predicate to check (default: the file's `check`)");
  add_run_flags(inv);

  auto* invoplus = app.add_subcommand("invoplus", "instance check of the INV (+) rule");
  add_file(invoplus);
  invoplus->add_option("split", opt.split, "'root' or the labels of the first component, e.g. 1 or 2,3")
      ->required();
  invoplus->add_option("invariants", opt.inv_path, "invariant file (.inv)")->required();
  invoplus->add_option("--pred", opt.pred, "predicate to check (default: the file's `check`)");
  add_run_flags(invoplus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  for (auto* sub : {reach, den, conform, prefix, inv, invoplus}) {
    if (sub->parsed() && sub->count("--seed")) opt.run.seed = opt.seed;
  }

  try {
    if (check->parsed()) return cmd_check(opt, out, err);
    if (fmt->parsed()) return cmd_fmt(opt, out, err);
    if (reach->parsed()) return cmd_reach(opt, out, err);
    if (den->parsed()) return cmd_denote(opt, out, err);
    if (conform->parsed()) return cmd_conform(opt, out, err);
    if (prefix->parsed()) return cmd_prefix(opt, out, err);
    if (inv->parsed()) return cmd_inv(opt, out, err);
    if (invoplus->parsed()) return cmd_invoplus(opt, out, err);
  } catch (const InputFailure&) {
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kInputError;
  } catch (const EvalError& e) {
    err << "evaluation error " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace cuc::cli
