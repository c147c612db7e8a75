#include "cuc/traceset.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>

#include "cuc/error.hpp"
#include "spec_parser.hpp"

namespace cuc {

TracePattern TracePattern::epsilon() { return TracePattern{}; }

TracePattern TracePattern::atom(std::string channel, ValuePattern value) {
  TracePattern p;
  p.kind = Kind::Atom;
  p.channel = std::move(channel);
  p.value = std::move(value);
  return p;
}

TracePattern TracePattern::concat(std::vector<TracePattern> parts) {
  TracePattern p;
  p.kind = Kind::Concat;
  p.parts = std::move(parts);
  return p;
}

TracePattern TracePattern::alt(std::vector<TracePattern> parts) {
  TracePattern p;
  p.kind = Kind::Alt;
  p.parts = std::move(parts);
  return p;
}

TracePattern TracePattern::star(TracePattern body) {
  TracePattern p;
  p.kind = Kind::Star;
  p.parts.push_back(std::move(body));
  return p;
}

TracePattern TracePattern::scope(TracePattern body) {
  TracePattern p;
  p.kind = Kind::Scope;
  p.parts.push_back(std::move(body));
  return p;
}

namespace {

std::string render_value(const ValuePattern& v) {
  switch (v.kind) {
    case ValuePattern::Kind::Literal: return to_string(v.values.at(0));
    case ValuePattern::Kind::Any: return "_";
    case ValuePattern::Kind::Bind: return "$" + v.binder;
    case ValuePattern::Kind::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < v.values.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v.values[i]);
      }
      return out + "}";
    }
  }
  return "?";
}

}  // namespace

std::string render(const TracePattern& p) {
  using K = TracePattern::Kind;
  switch (p.kind) {
    case K::Epsilon: return "eps";
    case K::Atom: return p.channel + "." + render_value(p.value);
    case K::Concat: {
      std::string out;
      for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) out += " ";
        bool paren = p.parts[i].kind == K::Alt || p.parts[i].kind == K::Concat;
        out += paren ? "(" + render(p.parts[i]) + ")" : render(p.parts[i]);
      }
      return p.parts.empty() ? "eps" : out;
    }
    case K::Alt: {
      std::string out;
      for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i) out += " | ";
        out += render(p.parts[i]);
      }
      return "(" + out + ")";
    }
    case K::Star: return "(" + render(p.parts[0]) + ")*";
    case K::Scope: return "(" + render(p.parts[0]) + ")";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Binder expansion

namespace {

using Env = std::map<std::string, Value>;

void free_binders(const TracePattern& p, std::set<std::string>& out) {
  using K = TracePattern::Kind;
  if (p.kind == K::Atom && p.value.kind == ValuePattern::Kind::Bind) out.insert(p.value.binder);
  if (p.kind == K::Star || p.kind == K::Scope) return;
  for (const auto& q : p.parts) free_binders(q, out);
}

TracePattern expand(const TracePattern& p, const Env& env, const std::vector<Value>& universe);

TracePattern expand_scope(const TracePattern& body, const Env& env,
                          const std::vector<Value>& universe) {
  std::set<std::string> names;
  free_binders(body, names);
  if (names.empty()) return expand(body, env, universe);
  std::vector<std::string> binders(names.begin(), names.end());
  std::vector<TracePattern> alternatives;
  std::vector<std::size_t> digit(binders.size(), 0);
  if (universe.empty()) return TracePattern::alt({});
  for (;;) {
    Env inner = env;
    for (std::size_t i = 0; i < binders.size(); ++i) inner[binders[i]] = universe[digit[i]];
    alternatives.push_back(expand(body, inner, universe));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == universe.size()) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return TracePattern::alt(std::move(alternatives));
}

TracePattern expand(const TracePattern& p, const Env& env, const std::vector<Value>& universe) {
  using K = TracePattern::Kind;
  switch (p.kind) {
    case K::Epsilon: return p;
    case K::Atom: {
      if (p.value.kind != ValuePattern::Kind::Bind) return p;
      auto it = env.find(p.value.binder);
      if (it == env.end()) throw Error("unbound binder $" + p.value.binder);
      return TracePattern::atom(p.channel, ValuePattern{ValuePattern::Kind::Literal, {it->second}, {}});
    }
    case K::Concat:
    case K::Alt: {
      TracePattern out;
      out.kind = p.kind;
      for (const auto& q : p.parts) out.parts.push_back(expand(q, env, universe));
      return out;
    }
    case K::Star: return TracePattern::star(expand_scope(p.parts[0], env, universe));
    case K::Scope: return expand_scope(p.parts[0], env, universe);
  }
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Thompson NFA

struct TraceSetSpec::Nfa {
  struct State {
    std::vector<int> eps;
    bool has_symbol = false;
    std::string channel;
    bool any_value = false;
    std::set<Value> values;
    int next = -1;
  };
  std::vector<State> states;
  int start = 0;
  int accept = 0;

  int add() {
    states.emplace_back();
    return static_cast<int>(states.size()) - 1;
  }

  // Returns (entry, exit) of the fragment for p.
  std::pair<int, int> build(const TracePattern& p) {
    using K = TracePattern::Kind;
    int s = add();
    int e = add();
    switch (p.kind) {
      case K::Epsilon:
        states[s].eps.push_back(e);
        break;
      case K::Atom:
        states[s].has_symbol = true;
        states[s].channel = p.channel;
        states[s].any_value = p.value.kind == ValuePattern::Kind::Any;
        states[s].values.insert(p.value.values.begin(), p.value.values.end());
        states[s].next = e;
        break;
      case K::Concat: {
        int cur = s;
        for (const auto& q : p.parts) {
          auto [qs, qe] = build(q);
          states[cur].eps.push_back(qs);
          cur = qe;
        }
        states[cur].eps.push_back(e);
        break;
      }
      case K::Alt:
        for (const auto& q : p.parts) {
          auto [qs, qe] = build(q);
          states[s].eps.push_back(qs);
          states[qe].eps.push_back(e);
        }
        break;
      case K::Star:
      case K::Scope: {
        auto [bs, be] = build(p.parts[0]);
        states[s].eps.push_back(bs);
        states[be].eps.push_back(e);
        if (p.kind == K::Star) {
          states[s].eps.push_back(e);
          states[be].eps.push_back(bs);
        }
        break;
      }
    }
    return {s, e};
  }

  std::vector<bool> closure(std::vector<int> work) const {
    std::vector<bool> in(states.size(), false);
    for (int w : work) in[w] = true;
    while (!work.empty()) {
      int q = work.back();
      work.pop_back();
      for (int r : states[q].eps) {
        if (!in[r]) {
          in[r] = true;
          work.push_back(r);
        }
      }
    }
    return in;
  }

  bool accepts(const Trace& tr) const {
    auto current = closure({start});
    for (const auto& ev : tr) {
      std::vector<int> moved;
      for (std::size_t q = 0; q < states.size(); ++q) {
        const auto& st = states[q];
        if (!current[q] || !st.has_symbol || st.channel != ev.channel) continue;
        if (st.any_value || st.values.count(ev.value)) moved.push_back(st.next);
      }
      if (moved.empty()) return false;
      current = closure(std::move(moved));
    }
    return current[accept];
  }
};

TraceSetSpec::TraceSetSpec(TracePattern pattern, std::vector<Value> universe)
    : pattern_(std::move(pattern)), universe_(std::move(universe)) {
  auto nfa = std::make_shared<Nfa>();
  auto [s, e] = nfa->build(expand_scope(pattern_, {}, universe_));
  nfa->start = s;
  nfa->accept = e;
  nfa_ = std::move(nfa);
}

bool TraceSetSpec::contains(const Trace& tr) const { return nfa_->accepts(tr); }

bool trace_in_spec(const Trace& tr, const TraceSetSpec& spec) { return spec.contains(tr); }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

Value parse_value_literal(TokenStream& ts) {
  if (ts.accept_keyword("true")) return true;
  if (ts.accept_keyword("false")) return false;
  bool negative = ts.accept(Tok::Minus);
  Token t = ts.expect(Tok::Int, "as value literal");
  std::uint64_t magnitude = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
  constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  if (ec != std::errc{} || magnitude > kMax + (negative ? 1 : 0)) {
    throw ParseError(t.line, t.column, "integer literal out of range: " + t.text);
  }
  if (!negative) return static_cast<std::int64_t>(magnitude);
  if (magnitude == kMax + 1) return std::numeric_limits<std::int64_t>::min();
  return -static_cast<std::int64_t>(magnitude);
}

namespace {

using Named = std::map<std::string, TracePattern>;

TracePattern parse_alt(TokenStream& ts, const Named& named);

bool starts_atom(const TokenStream& ts) { return ts.at(Tok::LParen) || ts.at(Tok::Ident); }

ValuePattern parse_value_pattern(TokenStream& ts) {
  ValuePattern v;
  if (ts.at_keyword("_")) {
    ts.next();
    v.kind = ValuePattern::Kind::Any;
  } else if (ts.accept(Tok::Dollar)) {
    v.kind = ValuePattern::Kind::Bind;
    v.binder = ts.expect(Tok::Ident, "as binder name").text;
  } else if (ts.accept(Tok::LBrace)) {
    v.kind = ValuePattern::Kind::Set;
    do {
      v.values.push_back(parse_value_literal(ts));
    } while (ts.accept(Tok::Comma));
    ts.expect(Tok::RBrace, "to close value set");
  } else {
    v.kind = ValuePattern::Kind::Literal;
    v.values.push_back(parse_value_literal(ts));
  }
  return v;
}

TracePattern parse_atom(TokenStream& ts, const Named& named) {
  if (ts.accept(Tok::LParen)) {
    TracePattern p = parse_alt(ts, named);
    ts.expect(Tok::RParen, "to close trace pattern group");
    return p;
  }
  if (ts.accept_keyword("eps")) return TracePattern::epsilon();
  Token name = ts.expect(Tok::Ident, "in trace pattern");
  if (ts.accept(Tok::Dot)) return TracePattern::atom(name.text, parse_value_pattern(ts));
  auto it = named.find(name.text);
  if (it == named.end()) {
    throw ParseError(name.line, name.column, "unknown trace set '" + name.text + "'");
  }
  return TracePattern::scope(it->second);
}

TracePattern parse_post(TokenStream& ts, const Named& named) {
  TracePattern p = parse_atom(ts, named);
  while (ts.accept(Tok::Star)) p = TracePattern::star(std::move(p));
  return p;
}

TracePattern parse_cat(TokenStream& ts, const Named& named) {
  std::vector<TracePattern> parts;
  parts.push_back(parse_post(ts, named));
  while (starts_atom(ts)) parts.push_back(parse_post(ts, named));
  if (parts.size() == 1) return std::move(parts[0]);
  return TracePattern::concat(std::move(parts));
}

TracePattern parse_alt(TokenStream& ts, const Named& named) {
  std::vector<TracePattern> parts;
  parts.push_back(parse_cat(ts, named));
  while (ts.accept(Tok::Bar)) parts.push_back(parse_cat(ts, named));
  if (parts.size() == 1) return std::move(parts[0]);
  return TracePattern::alt(std::move(parts));
}

}  // namespace

TracePattern parse_trace_pattern(TokenStream& ts, const Named& named) { return parse_alt(ts, named); }

}  // namespace detail

TracePattern parse_trace_pattern(std::string_view text,
                                 const std::map<std::string, TracePattern>& named) {
  detail::TokenStream ts(detail::tokenize(text));
  TracePattern p = detail::parse_trace_pattern(ts, named);
  if (!ts.at(detail::Tok::End)) ts.fail("unexpected '" + ts.peek().text + "' after trace pattern");
  return p;
}

}  // namespace cuc
