#include "tagweaver/conformance.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

namespace tagweaver {
namespace {

std::string_view value_kind(const TagValue& v) {
  if (std::holds_alternative<SimpleValue>(v)) return "no value";
  if (std::holds_alternative<ValuedValue>(v)) return "a string value";
  return "a complex value";
}

std::optional<NormalizedValue> parse_native(NativeType type, const std::string& raw) {
  switch (type) {
    case NativeType::String:
      return StringValue{raw};
    case NativeType::Boolean:
      if (raw == "true") return true;
      if (raw == "false") return false;
      return std::nullopt;
    case NativeType::Int: {
      std::string_view digits = raw;
      if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
      }
      std::int64_t out = 0;
      auto [end, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
      if (ec != std::errc() || end != raw.data() + raw.size()) return std::nullopt;  // out of 64-bit range
      return out;
    }
  }
  return std::nullopt;
}

Diagnostic error(Condition c, SourceLocation where, std::string message) {
  return {c, Severity::Error, where, std::move(message), {}};
}

DomainCheck check_native(const TagValue& value, NativeType type, const std::string& label, SourceLocation where) {
  DomainCheck out;
  const auto* valued = std::get_if<ValuedValue>(&value);
  if (!valued) {
    out.diagnostics.push_back(error(Condition::E3_3_DomainMismatch, where,
                                    "'" + label + "' expects a " + std::string(to_string(type)) + " value but has " +
                                        std::string(value_kind(value))));
    return out;
  }
  out.value = parse_native(type, valued->raw);
  if (!out.value) {
    out.diagnostics.push_back(error(Condition::E3_3_DomainMismatch, where,
                                    quote(valued->raw) + " is not a valid " + std::string(to_string(type)) +
                                        " value for '" + label + "'"));
  }
  return out;
}

DomainCheck check_complex(const TagValue& value, const TagTypeDef& tag_type, const ComplexDomain& domain,
                          const TagSchema& schema, SourceLocation where) {
  DomainCheck out;
  const auto* complex = std::get_if<ComplexValue>(&value);
  if (!complex) {
    out.diagnostics.push_back(error(Condition::E3_3_DomainMismatch, where,
                                    "'" + tag_type.name + "' is a complex tag type but the tag has " +
                                        std::string(value_kind(value))));
    return out;
  }
  ComplexChildren children;
  std::vector<std::size_t> counts(domain.references.size(), 0);
  for (const auto& sub : complex->subtags) {
    auto ref = std::find_if(domain.references.begin(), domain.references.end(),
                            [&](const Reference& r) { return r.name == sub.name; });
    if (ref == domain.references.end()) {
      out.diagnostics.push_back(error(Condition::UnknownSubtagName, sub.where,
                                      "'" + sub.name + "' is not a reference of tag type '" + tag_type.name + "'"));
      continue;
    }
    ++counts[static_cast<std::size_t>(ref - domain.references.begin())];
    DomainCheck inner;
    std::string label = tag_type.name + "." + sub.name;
    if (ref->type.native) {
      inner = check_native(sub.value, *ref->type.native, label, sub.where);
    } else if (const TagTypeDef* named = schema.find(ref->type.named)) {
      inner = check_value_domain(sub.value, *named, schema, sub.where);
    } else {
      inner.diagnostics.push_back(error(Condition::E3_3_DomainMismatch, sub.where,
                                        "'" + label + "' refers to unknown tag type '" + ref->type.named + "'"));
    }
    out.diagnostics.insert(out.diagnostics.end(), inner.diagnostics.begin(), inner.diagnostics.end());
    if (inner.value) {
      bool repeated = ref->cardinality == Cardinality::Many || ref->cardinality == Cardinality::AtLeastOne;
      children.children.push_back({sub.name, repeated, std::move(*inner.value)});
    }
  }
  for (std::size_t i = 0; i < domain.references.size(); ++i) {
    const Reference& ref = domain.references[i];
    if (admits(ref.cardinality, counts[i])) continue;
    std::string expected;
    switch (ref.cardinality) {
      case Cardinality::Required: expected = "exactly one"; break;
      case Cardinality::Optional: expected = "at most one"; break;
      case Cardinality::AtLeastOne: expected = "at least one"; break;
      case Cardinality::Many: break;
    }
    out.diagnostics.push_back(error(Condition::CardinalityViolation, where,
                                    "'" + tag_type.name + "' needs " + expected + " '" + ref.name + "' but has " +
                                        std::to_string(counts[i])));
  }
  if (out.diagnostics.empty()) out.value = std::move(children);
  return out;
}

struct TypeEntry {
  const TagTypeDef* type;
  const TagSchema* schema;
};

class Checker {
 public:
  explicit Checker(const CheckInput& input) : in_(input) {}

  CheckResult run() {
    index_types();
    walk(in_.tag_model.body, nullptr);
    CheckResult result;
    result.diagnostics = std::move(diagnostics_);
    if (!has_errors(result.diagnostics)) {
      result.resolved = ResolvedTagging{in_.target.qualified_name(), std::move(attachments_)};
    }
    return result;
  }

 private:
  void index_types() {
    const auto& refs = in_.tag_model.conforms_to;
    for (std::size_t s = 0; s < in_.schemas.size(); ++s) {
      const TagSchema& schema = in_.schemas[s];
      // Point at the `conforms to` entry that brought this schema in.
      SourceLocation where = refs.empty() ? SourceLocation{} : refs.front().where;
      for (const auto& r : refs) {
        if (r.name == schema.qualified_name() || r.name == schema.name) where = r.where;
      }
      for (const auto& tt : schema.tag_types) {
        auto [it, inserted] = types_.try_emplace(tt.name, TypeEntry{&tt, &schema});
        if (!inserted) {
          diagnostics_.push_back(error(Condition::E2_DuplicateTagTypeName, where,
                                       "tag type '" + tt.name + "' is defined in both " +
                                           it->second.schema->qualified_name() + " and " + schema.qualified_name()));
        }
      }
    }
  }

  void walk(const std::vector<BodyItem>& body, const ElementHandle* context) {
    for (const auto& item : body) {
      if (const auto* ctx = std::get_if<Context>(&item.node)) {
        Resolution r = try_resolve_element(in_.target, ctx->identifier, context);
        if (!r) {
          diagnostics_.push_back(error(Condition::E1_UnresolvedElement, ctx->identifier.where,
                                       "context " + r.message));
          continue;
        }
        walk(ctx->body, &*r.handle);
      } else {
        statement(std::get<TagStatement>(item.node), context);
      }
    }
  }

  void statement(const TagStatement& st, const ElementHandle* context) {
    for (const auto& ident : st.elements) {
      Resolution r = try_resolve_element(in_.target, ident, context);
      for (const auto& tag : st.tags) {
        if (!r) {
          diagnostics_.push_back(error(Condition::E1_UnresolvedElement, ident.where, r.message));
          continue;
        }
        pair(*r.handle, tag);
      }
    }
  }

  void pair(const ElementHandle& element, const TagUse& tag) {
    auto it = types_.find(tag.name);
    if (it == types_.end()) {
      diagnostics_.push_back(error(Condition::E3_1_UnknownTagType, tag.where,
                                   "tag type '" + tag.name + "' used on '" + element.path +
                                       "' is not defined in any referenced schema"));
      return;
    }
    const TagTypeDef& tt = *it->second.type;
    const TagSchema& schema = *it->second.schema;
    std::size_t errors_before = error_count(diagnostics_);

    if (!in_scope(element, tt)) {
      std::string allowed;
      for (const auto& k : tt.scope.keywords) allowed += (allowed.empty() ? "" : ", ") + k.name;
      diagnostics_.push_back(error(Condition::E3_2_ScopeMismatch, tag.where,
                                   "tag type '" + tt.name + "' cannot be attached to " + element.element_type + " '" +
                                       element.path + "' (allowed: " + allowed + ")"));
    }
    DomainCheck domain = check_value_domain(tag.value, tt, schema, tag.where);
    diagnostics_.insert(diagnostics_.end(), domain.diagnostics.begin(), domain.diagnostics.end());
    if (tt.is_private) {
      diagnostics_.push_back(error(Condition::PrivateTopLevelUse, tag.where,
                                   "private tag type '" + tt.name + "' can only be used inside other tag types"));
    }
    if (error_count(diagnostics_) != errors_before || !domain.value) return;

    std::string key = element.path + "\n" + tt.name + "\n" + describe(*domain.value);
    if (!seen_.insert(key).second) {
      diagnostics_.push_back({Condition::DuplicateTagWarning, Severity::Warning, tag.where,
                              "'" + element.path + "' is already tagged with " + tt.name + " " +
                                  describe(*domain.value),
                              {}});
    }
    attachments_.push_back({element, tt, schema.qualified_name(), std::move(*domain.value), tag.where});
  }

  bool in_scope(const ElementHandle& element, const TagTypeDef& tt) const {
    if (tt.scope.any()) return true;
    auto type = in_.profile.canonical_scope(element.element_type);
    if (!type) return false;
    return std::any_of(tt.scope.keywords.begin(), tt.scope.keywords.end(),
                       [&](const QualifiedRef& k) { return in_.profile.canonical_scope(k.name) == type; });
  }

  const CheckInput& in_;
  std::map<std::string, TypeEntry, std::less<>> types_;
  std::vector<Diagnostic> diagnostics_;
  std::vector<Attachment> attachments_;
  std::set<std::string> seen_;
};

}  // namespace

std::string describe(const NormalizedValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, FlagValue>) {
          return "(flag)";
        } else if constexpr (std::is_same_v<V, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<V, StringValue> || std::is_same_v<V, EnumChoice>) {
          return quote(v.text);
        } else {
          std::string out = "{";
          for (std::size_t i = 0; i < v.children.size(); ++i) {
            out += (i ? ", " : "") + v.children[i].name + "=" + describe(v.children[i].value);
          }
          return out + "}";
        }
      },
      value);
}

DomainCheck check_value_domain(const TagValue& value, const TagTypeDef& tag_type, const TagSchema& schema,
                               SourceLocation where) {
  return std::visit(
      [&](const auto& domain) -> DomainCheck {
        using D = std::decay_t<decltype(domain)>;
        DomainCheck out;
        if constexpr (std::is_same_v<D, SimpleFlag>) {
          if (std::holds_alternative<SimpleValue>(value)) {
            out.value = FlagValue{};
          } else {
            out.diagnostics.push_back(error(Condition::E3_3_DomainMismatch, where,
                                            "'" + tag_type.name + "' is a flag and takes no value, but has " +
                                                std::string(value_kind(value))));
          }
        } else if constexpr (std::is_same_v<D, NativeDomain>) {
          out = check_native(value, domain.type, tag_type.name, where);
        } else if constexpr (std::is_same_v<D, EnumDomain>) {
          const auto* valued = std::get_if<ValuedValue>(&value);
          if (valued && std::find(domain.values.begin(), domain.values.end(), valued->raw) != domain.values.end()) {
            out.value = EnumChoice{valued->raw};
          } else {
            std::string allowed;
            for (const auto& v : domain.values) allowed += (allowed.empty() ? "" : "|") + quote(v);
            std::string got = valued ? quote(valued->raw) : std::string(value_kind(value));
            out.diagnostics.push_back(error(Condition::E3_3_DomainMismatch, where,
                                            got + " is not in the domain [" + allowed + "] of '" + tag_type.name +
                                                "'"));
          }
        } else {
          out = check_complex(value, tag_type, domain, schema, where);
        }
        return out;
      },
      tag_type.domain);
}

CheckResult check(const CheckInput& input) { return Checker(input).run(); }

}  // namespace tagweaver
