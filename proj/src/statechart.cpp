#include "tagweaver/statechart.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "tagweaver/lexer.hpp"

namespace tagweaver {
namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  if (path.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    std::size_t dot = path.find('.', start);
    out.emplace_back(path.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

std::string join_path(std::span<const std::string> parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "." : "") + parts[i];
  return out;
}

const StateDef* find_in(const std::vector<StateDef>& states, std::span<const std::string> path) {
  if (path.empty()) return nullptr;
  auto it = std::find_if(states.begin(), states.end(), [&](const StateDef& s) { return s.name == path.front(); });
  if (it == states.end()) return nullptr;
  return path.size() == 1 ? &*it : find_in(it->substates, path.subspan(1));
}

/// State lookup relative to `owner` first, then from the root. Returns the full path.
std::optional<std::string> resolve_state_path(const StatechartModel& model, const std::vector<std::string>& owner,
                                              const std::vector<std::string>& ref) {
  if (!owner.empty()) {
    std::vector<std::string> full = owner;
    full.insert(full.end(), ref.begin(), ref.end());
    if (model.find_state(full)) return join_path(full);
  }
  if (model.find_state(ref)) return join_path(ref);
  return std::nullopt;
}

class StatechartParser {
 public:
  explicit StatechartParser(std::string_view text) : lex_(text) {}

  StatechartModel parse() {
    StatechartModel model;
    if (lex_.accept("package")) {
      model.package = lex_.qualified_name("package name");
      lex_.expect(";");
    }
    lex_.expect("statechart");
    model.name = lex_.expect_identifier("statechart name").text;
    lex_.expect("{");
    std::vector<std::string> owner;
    body(model.states, nullptr, owner, model.transitions);
    lex_.expect("}");
    if (!lex_.peek().is_end()) lex_.fail(lex_.peek(), "expected end of input");

    for (auto& t : model.transitions) {
      auto owner_path = split_path(t.owner);
      auto src = resolve_state_path(model, owner_path, split_path(t.source));
      if (!src) {
        throw Error(ErrorCode::UnresolvedTransitionEndpoint, "transition source '" + t.source + "' is not a state",
                    t.where);
      }
      auto tgt = resolve_state_path(model, owner_path, split_path(t.target));
      if (!tgt) {
        throw Error(ErrorCode::UnresolvedTransitionEndpoint, "transition target '" + t.target + "' is not a state",
                    t.where);
      }
      t.source_path = *src;
      t.target_path = *tgt;
    }
    return model;
  }

 private:
  void body(std::vector<StateDef>& states, StateDef* enclosing, std::vector<std::string>& owner,
            std::vector<TransitionDef>& transitions) {
    for (;;) {
      const Token& tok = lex_.peek();
      if (tok.is_punct("}") || tok.is_end()) return;
      if (tok.is_punct("...")) {
        lex_.next();
      } else if (tok.is_keyword("initial") || tok.is_keyword("final") || tok.is_keyword("state")) {
        StateDef state = state_decl(owner, transitions);
        if (std::any_of(states.begin(), states.end(), [&](const StateDef& s) { return s.name == state.name; })) {
          throw Error(ErrorCode::DuplicateSiblingState, "state '" + state.name + "' is declared twice at this level",
                      state.where);
        }
        states.push_back(std::move(state));
      } else if (tok.is_punct("[")) {
        SourceLocation at = lex_.next().where;
        if (!enclosing) throw Error(ErrorCode::ParseError, "invariants are only allowed inside states", at);
        std::string expr = lex_.raw_until_matching('[', ']', at);
        lex_.expect(";");
        enclosing->invariants_src.push_back(std::move(expr));
      } else if (tok.kind == TokenKind::Identifier) {
        transitions.push_back(transition(owner));
      } else {
        lex_.fail(tok, "expected state, invariant or transition");
      }
    }
  }

  StateDef state_decl(std::vector<std::string>& owner, std::vector<TransitionDef>& transitions) {
    StateDef state;
    state.where = lex_.here();
    for (;;) {
      bool* flag = nullptr;
      if (lex_.peek().is_keyword("initial")) {
        flag = &state.initial;
      } else if (lex_.peek().is_keyword("final")) {
        flag = &state.final;
      } else {
        break;
      }
      auto tok = lex_.next();
      if (*flag) throw Error(ErrorCode::InvalidModifiers, "repeated modifier '" + tok.text + "'", tok.where);
      *flag = true;
    }
    if (state.initial && state.final) {
      throw Error(ErrorCode::InvalidModifiers, "a state cannot be both initial and final", state.where);
    }
    lex_.expect("state");
    state.name = lex_.expect_identifier("state name").text;
    if (lex_.accept(";")) return state;
    lex_.expect("{");
    owner.push_back(state.name);
    body(state.substates, &state, owner, transitions);
    owner.pop_back();
    lex_.expect("}");
    return state;
  }

  TransitionDef transition(const std::vector<std::string>& owner) {
    TransitionDef t;
    t.where = lex_.here();
    t.owner = join_path(owner);
    t.source = lex_.qualified_name("transition source");
    lex_.expect("->");
    t.target = lex_.qualified_name("transition target");
    if (lex_.accept(":")) {
      std::string event = lex_.raw_until(';');
      if (!event.empty()) t.event = std::move(event);
    }
    lex_.expect(";");
    return t;
  }

  Lexer lex_;
};

void print_states(const StatechartModel& model, const std::vector<StateDef>& states, const std::string& owner,
                  int depth, std::string& out) {
  std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
  for (const auto& s : states) {
    std::string path = owner.empty() ? s.name : owner + "." + s.name;
    out += indent;
    if (s.initial) out += "initial ";
    if (s.final) out += "final ";
    out += "state " + s.name;
    bool has_transitions = std::any_of(model.transitions.begin(), model.transitions.end(),
                                       [&](const TransitionDef& t) { return t.owner == path; });
    if (s.substates.empty() && s.invariants_src.empty() && !has_transitions) {
      out += ";\n";
      continue;
    }
    out += " {\n";
    for (const auto& inv : s.invariants_src) out += indent + "    [" + inv + "];\n";
    print_states(model, s.substates, path, depth + 1, out);
    for (const auto& t : model.transitions) {
      if (t.owner != path) continue;
      out += indent + "    " + t.source + " -> " + t.target + (t.event ? " : " + *t.event : "") + ";\n";
    }
    out += indent + "}\n";
  }
}

std::string transition_path(std::string_view source_path, std::string_view target_path) {
  return "[" + std::string(source_path) + " -> " + std::string(target_path) + "]";
}

std::string invariant_path(std::string_view state_path, std::string_view expr) {
  return std::string(state_path) + "[" + normalize_fragment(expr) + "]";
}

void enumerate_states(const std::vector<StateDef>& states, const std::string& owner, std::vector<ElementHandle>& out) {
  for (const auto& s : states) {
    std::string path = owner.empty() ? s.name : owner + "." + s.name;
    out.push_back({path, std::string(element_types::kState)});
    for (const auto& inv : s.invariants_src) {
      out.push_back({invariant_path(path, inv), std::string(element_types::kInvariant)});
    }
    enumerate_states(s.substates, path, out);
  }
}

Resolution unresolved(ErrorCode code, std::string message) {
  Resolution r;
  r.failure = code;
  r.message = std::move(message);
  return r;
}

Resolution found(ElementHandle h) {
  Resolution r;
  r.handle = std::move(h);
  return r;
}

/// Path segments of a state context, or empty for the root / non-state contexts.
std::vector<std::string> context_segments(const ElementHandle* context) {
  if (!context || context->element_type != element_types::kState) return {};
  return split_path(context->path);
}

Resolution resolve_qualified(const StatechartModel& model, const std::vector<std::string>& path,
                             const ElementHandle* context) {
  auto owner = context_segments(context);
  if (!owner.empty()) {
    std::vector<std::string> full = owner;
    full.insert(full.end(), path.begin(), path.end());
    if (model.find_state(full)) return found({join_path(full), std::string(element_types::kState)});
  }
  std::vector<ElementHandle> matches;
  if (path.front() == model.name) {
    if (path.size() == 1) {
      matches.push_back({model.name, std::string(element_types::kStatechart)});
    } else if (std::span<const std::string> rest(path.begin() + 1, path.end()); model.find_state(rest)) {
      matches.push_back({join_path(rest), std::string(element_types::kState)});
    }
  }
  if (model.find_state(path)) {
    ElementHandle h{join_path(path), std::string(element_types::kState)};
    if (std::find(matches.begin(), matches.end(), h) == matches.end()) matches.push_back(std::move(h));
  }
  if (matches.size() == 1) return found(matches.front());
  if (matches.size() > 1) {
    return unresolved(ErrorCode::AmbiguousElement, "'" + join_path(path) + "' names both the statechart and a state");
  }
  return unresolved(ErrorCode::UnresolvedElement,
                    "'" + join_path(path) + "' does not name an element of statechart " + model.name);
}

std::optional<std::vector<std::string>> as_qualified_name(std::span<const Token> tokens) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i % 2 == 0) {
      if (tokens[i].kind != TokenKind::Identifier) return std::nullopt;
      parts.push_back(tokens[i].text);
    } else if (!tokens[i].is_punct(".")) {
      return std::nullopt;
    }
  }
  if (parts.empty() || tokens.size() % 2 == 0) return std::nullopt;
  return parts;
}

std::optional<Resolution> resolve_transition(const StatechartModel& model, const std::vector<Token>& tokens,
                                             const ElementHandle* context) {
  auto arrow = std::find_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_punct("->"); });
  if (arrow == tokens.end()) return std::nullopt;
  auto src = as_qualified_name(std::span<const Token>(tokens.begin(), arrow));
  auto tgt = as_qualified_name(std::span<const Token>(arrow + 1, tokens.end()));
  if (!src || !tgt) return std::nullopt;
  auto owner = context_segments(context);
  auto src_path = resolve_state_path(model, owner, *src);
  auto tgt_path = resolve_state_path(model, owner, *tgt);
  if (!src_path || !tgt_path) return std::nullopt;
  auto count = std::count_if(model.transitions.begin(), model.transitions.end(), [&](const TransitionDef& t) {
    return t.source_path == *src_path && t.target_path == *tgt_path;
  });
  if (count == 0) return std::nullopt;
  std::string path = transition_path(*src_path, *tgt_path);
  if (count > 1) {
    return unresolved(ErrorCode::AmbiguousTransition, "more than one transition matches " + path);
  }
  return found({path, std::string(element_types::kTransition)});
}

void collect_invariants(const std::vector<StateDef>& states, const std::string& owner, const std::string& normalized,
                        std::vector<ElementHandle>& out) {
  for (const auto& s : states) {
    std::string path = owner.empty() ? s.name : owner + "." + s.name;
    for (const auto& inv : s.invariants_src) {
      if (normalize_fragment(inv) == normalized) {
        out.push_back({invariant_path(path, inv), std::string(element_types::kInvariant)});
      }
    }
    collect_invariants(s.substates, path, normalized, out);
  }
}

std::optional<Resolution> resolve_invariant(const StatechartModel& model, std::string_view raw,
                                            const ElementHandle* context) {
  std::string normalized = normalize_fragment(raw);
  auto owner = context_segments(context);
  if (const StateDef* state = owner.empty() ? nullptr : model.find_state(owner)) {
    for (const auto& inv : state->invariants_src) {
      if (normalize_fragment(inv) == normalized) {
        return found({invariant_path(context->path, inv), std::string(element_types::kInvariant)});
      }
    }
  }
  std::vector<ElementHandle> matches;
  collect_invariants(model.states, "", normalized, matches);
  if (matches.empty()) return std::nullopt;
  if (matches.size() > 1) {
    return unresolved(ErrorCode::AmbiguousElement, "invariant [" + normalized + "] occurs in more than one state");
  }
  return found(matches.front());
}

}  // namespace

std::string StatechartModel::qualified_name() const { return package.empty() ? name : package + "." + name; }

const StateDef* StatechartModel::find_state(std::span<const std::string> path) const { return find_in(states, path); }

StatechartModel parse_statechart(std::string_view source_text) { return StatechartParser(source_text).parse(); }

std::string print_statechart(const StatechartModel& model) {
  std::string out;
  if (!model.package.empty()) out += "package " + model.package + ";\n\n";
  out += "statechart " + model.name + " {\n";
  print_states(model, model.states, "", 1, out);
  for (const auto& t : model.transitions) {
    if (!t.owner.empty()) continue;
    out += "    " + t.source + " -> " + t.target + (t.event ? " : " + *t.event : "") + ";\n";
  }
  out += "}\n";
  return out;
}

std::vector<Diagnostic> statechart_warnings(const StatechartModel& model) {
  std::vector<Diagnostic> out;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& t : model.transitions) {
    if (!seen.emplace(t.source_path, t.target_path, t.event.value_or("")).second) {
      out.push_back({Condition::DuplicateTransitionWarning, Severity::Warning, t.where,
                     "transition " + transition_path(t.source_path, t.target_path) +
                         " is declared more than once; bracket identifiers for it are ambiguous",
                     {}});
    }
  }
  return out;
}

Resolution try_resolve_element(const StatechartModel& model, const ElementIdentifier& ident,
                               const ElementHandle* context) {
  if (ident.kind == ElementIdentifier::Kind::QualifiedName) {
    if (ident.path.empty()) return unresolved(ErrorCode::UnresolvedElement, "empty element identifier");
    return resolve_qualified(model, ident.path, context);
  }

  std::vector<Token> tokens;
  try {
    tokens = tokenize(ident.raw_text);
  } catch (const Error& e) {
    return unresolved(ErrorCode::UnresolvedElement, e.detail());
  }
  std::vector<std::string> rules = ident.bracket_rules;
  if (rules.empty()) rules = {std::string(element_types::kTransition), std::string(element_types::kInvariant)};
  for (const auto& rule : rules) {
    std::optional<Resolution> r;
    if (rule == element_types::kTransition) {
      r = resolve_transition(model, tokens, context);
    } else if (rule == element_types::kInvariant) {
      r = resolve_invariant(model, ident.raw_text, context);
    }
    if (r) return *r;
  }
  return unresolved(ErrorCode::UnresolvedElement,
                    "'" + ident.str() + "' does not name an element of statechart " + model.name);
}

ElementHandle resolve_element(const StatechartModel& model, const ElementIdentifier& ident,
                              const ElementHandle* context) {
  Resolution r = try_resolve_element(model, ident, context);
  if (!r) throw Error(r.failure, r.message, ident.where);
  return *r.handle;
}

std::vector<ElementHandle> enumerate_elements(const StatechartModel& model) {
  std::vector<ElementHandle> out;
  out.push_back({model.name, std::string(element_types::kStatechart)});
  enumerate_states(model.states, "", out);
  for (const auto& t : model.transitions) {
    out.push_back({transition_path(t.source_path, t.target_path), std::string(element_types::kTransition)});
  }
  return out;
}

}  // namespace tagweaver
