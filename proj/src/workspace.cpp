#include "tagweaver/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "tagweaver/error.hpp"
#include "tagweaver/manifest.hpp"
#include "tagweaver/profile_json.hpp"

namespace tagweaver {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

template <typename T, typename Parse>
Loaded<T> load(const fs::path& path, Parse&& parse) {
  std::string text = read_file(path);
  try {
    return {path.string(), parse(text)};
  } catch (const Error& e) {
    throw e.in_file(path.string());
  }
}

LanguageProfile load_profile(const std::optional<fs::path>& manifest) {
  if (!manifest) return statechart_profile();
  std::string text = read_file(*manifest);
  try {
    if (manifest->extension() == ".json") return parse_profile(text);
    return derive_profile(parse_manifest(text));
  } catch (const Error& e) {
    throw e.in_file(manifest->string());
  }
}

std::string qualify(const std::string& ref, const std::string& package) {
  if (ref.find('.') != std::string::npos || package.empty()) return ref;
  return package + "." + ref;
}

template <typename T>
const Loaded<T>* lookup(const std::vector<Loaded<T>>& docs, const std::string& qualified, ErrorCode missing,
                        std::string_view kind, const QualifiedRef& ref, const std::string& file) {
  const Loaded<T>* hit = nullptr;
  for (const auto& d : docs) {
    if (d.document.qualified_name() != qualified) continue;
    if (hit) {
      throw Error(ErrorCode::AmbiguousReference,
                  std::string(kind) + " '" + qualified + "' is defined in both " + hit->file + " and " + d.file,
                  ref.where, file);
    }
    hit = &d;
  }
  if (!hit) {
    throw Error(missing, "no supplied " + std::string(kind) + " file defines '" + qualified + "'", ref.where, file);
  }
  return hit;
}

ordered_json value_json(const NormalizedValue& value);

std::string_view kind_of(const NormalizedValue& value) {
  return std::visit(
      [](const auto& v) -> std::string_view {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, FlagValue>) return "flag";
        else if constexpr (std::is_same_v<V, std::int64_t>) return "int";
        else if constexpr (std::is_same_v<V, bool>) return "bool";
        else if constexpr (std::is_same_v<V, StringValue>) return "string";
        else if constexpr (std::is_same_v<V, EnumChoice>) return "enum";
        else return "complex";
      },
      value);
}

ordered_json typed_json(const NormalizedValue& value) {
  ordered_json j;
  j["kind"] = std::string(kind_of(value));
  j["value"] = value_json(value);
  return j;
}

ordered_json value_json(const NormalizedValue& value) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, FlagValue>) {
          return nullptr;
        } else if constexpr (std::is_same_v<V, std::int64_t> || std::is_same_v<V, bool>) {
          return v;
        } else if constexpr (std::is_same_v<V, StringValue> || std::is_same_v<V, EnumChoice>) {
          return v.text;
        } else {
          ordered_json obj = ordered_json::object();
          for (const auto& child : v.children) {
            if (child.repeated) {
              if (!obj.contains(child.name)) obj[child.name] = ordered_json::array();
              obj[child.name].push_back(typed_json(child.value));
            } else {
              obj[child.name] = typed_json(child.value);
            }
          }
          return obj;
        }
      },
      value);
}

ordered_json diagnostic_json(const Diagnostic& d) {
  ordered_json j;
  j["file"] = d.file;
  j["line"] = d.where.line;
  j["column"] = d.where.column;
  j["severity"] = std::string(to_string(d.severity));
  j["condition"] = std::string(to_string(d.condition));
  j["message"] = d.message;
  return j;
}

void report_failure(const Error& e, std::ostream& err) {
  std::string location = e.file().empty() ? "<input>" : e.file();
  if (e.where().known()) location += ":" + e.where().str();
  err << location << ": error[" << to_string(e.code()) << "]: " << e.detail() << "\n";
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read file", {}, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write file", {}, path.string());
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed", {}, path.string());
}

LoadedWorkspace load_workspace(const Workspace& ws) {
  LoadedWorkspace out;
  out.profile = load_profile(ws.manifest_file);
  for (const auto& p : ws.model_files) out.models.push_back(load<StatechartModel>(p, parse_statechart));
  for (const auto& p : ws.schema_files) {
    out.schemas.push_back(load<TagSchema>(p, [&](std::string_view t) { return parse_tag_schema(t, out.profile); }));
  }
  for (const auto& p : ws.tag_files) {
    out.tag_models.push_back(load<TagModel>(p, [&](std::string_view t) { return parse_tag_model(t, out.profile); }));
  }
  return out;
}

Binding bind(const LoadedWorkspace& ws, const Loaded<TagModel>& tag_model) {
  Binding b;
  b.tags = &tag_model;
  const TagModel& tm = tag_model.document;
  for (const auto& ref : tm.conforms_to) {
    const auto* schema =
        lookup(ws.schemas, qualify(ref.name, tm.package), ErrorCode::UnknownSchema, "tagschema", ref, tag_model.file);
    b.schemas.push_back(schema->document);
  }
  b.target = lookup(ws.models, qualify(tm.target_model.name, tm.package), ErrorCode::UnknownModel, "model",
                    tm.target_model, tag_model.file);
  return b;
}

WorkspaceCheck check_workspace(const LoadedWorkspace& ws) {
  WorkspaceCheck out;
  for (const auto& m : ws.models) {
    for (auto d : statechart_warnings(m.document)) {
      d.file = m.file;
      out.diagnostics.push_back(std::move(d));
    }
  }
  for (const auto& tm : ws.tag_models) {
    Binding b = bind(ws, tm);
    CheckResult r = check({tm.document, b.target->document, b.schemas, ws.profile});
    for (auto& d : r.diagnostics) {
      d.file = tm.file;
      out.diagnostics.push_back(std::move(d));
    }
    if (r.resolved) out.resolved.push_back(std::move(*r.resolved));
  }
  if (!out.ok()) out.resolved.clear();
  return out;
}

ExportReport build_export(const LoadedWorkspace& ws, const WorkspaceCheck& checked) {
  ExportReport report;
  for (std::size_t i = 0; i < checked.resolved.size(); ++i) {
    const auto& tagging = checked.resolved[i];
    if (report.target_model.empty()) {
      report.target_model = tagging.target_model;
    } else if (report.target_model != tagging.target_model) {
      throw Error(ErrorCode::AmbiguousReference, "tag models target different models (" + report.target_model +
                                                     ", " + tagging.target_model + "); export one target at a time");
    }
    const std::string& file = ws.tag_models[i].file;
    for (const auto& a : tagging.attachments) {
      report.attachments.push_back(
          {a.element.path, a.element.element_type, a.tag_type.name, a.schema, a.value, file, a.where});
    }
  }
  if (report.target_model.empty() && !ws.models.empty()) report.target_model = ws.models.front().document.qualified_name();
  std::stable_sort(report.attachments.begin(), report.attachments.end(),
                   [](const ExportRecord& a, const ExportRecord& b) {
                     return std::tie(a.element_path, a.tag_type, a.file, a.where.line, a.where.column) <
                            std::tie(b.element_path, b.tag_type, b.file, b.where.line, b.where.column);
                   });
  return report;
}

std::string export_to_json(const ExportReport& report) {
  ordered_json doc;
  doc["targetModel"] = report.target_model;
  doc["attachments"] = ordered_json::array();
  for (const auto& r : report.attachments) {
    ordered_json j;
    j["elementPath"] = r.element_path;
    j["elementType"] = r.element_type;
    j["tagType"] = r.tag_type;
    j["schema"] = r.schema;
    j["kind"] = std::string(kind_of(r.value));
    j["value"] = value_json(r.value);
    j["source"] = {{"file", r.file}, {"line", r.where.line}, {"column", r.where.column}};
    doc["attachments"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

int cmd_check(const Workspace& workspace, DiagnosticFormat format, bool color, std::ostream& out, std::ostream& err) {
  WorkspaceCheck checked;
  try {
    checked = check_workspace(load_workspace(workspace));
  } catch (const Error& e) {
    report_failure(e, err);
    return exit_code::kFailure;
  }
  if (format == DiagnosticFormat::Json) {
    ordered_json doc;
    doc["errors"] = error_count(checked.diagnostics);
    doc["warnings"] = checked.diagnostics.size() - error_count(checked.diagnostics);
    doc["diagnostics"] = ordered_json::array();
    for (const auto& d : checked.diagnostics) doc["diagnostics"].push_back(diagnostic_json(d));
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& d : checked.diagnostics) out << format_diagnostic(d, color) << "\n";
  }
  return checked.ok() ? exit_code::kOk : exit_code::kConformanceErrors;
}

int cmd_derive(const fs::path& manifest_file, const std::optional<fs::path>& report_file,
               const std::optional<fs::path>& profile_dir, std::ostream& out, std::ostream& err) {
  try {
    LanguageProfile profile;
    try {
      profile = derive_profile(parse_manifest(read_file(manifest_file)));
    } catch (const Error& e) {
      throw e.file().empty() ? e.in_file(manifest_file.string()) : e;
    }
    fs::path dir = profile_dir ? *profile_dir : manifest_file.parent_path();
    write_file(dir / (profile.grammar_name + ".profile.json"), serialize_profile(profile));
    std::string report = render_derived_grammar(profile);
    if (report_file) {
      write_file(*report_file, report);
    } else {
      out << report;
    }
  } catch (const Error& e) {
    report_failure(e, err);
    return exit_code::kFailure;
  }
  return exit_code::kOk;
}

int cmd_export(const Workspace& workspace, const std::optional<fs::path>& out_file, std::ostream& out,
               std::ostream& err) {
  try {
    LoadedWorkspace ws = load_workspace(workspace);
    WorkspaceCheck checked = check_workspace(ws);
    if (!checked.ok()) {
      for (const auto& d : checked.diagnostics) err << format_diagnostic(d) << "\n";
      err << "export refused: " << error_count(checked.diagnostics) << " conformance error(s)\n";
      return exit_code::kConformanceErrors;
    }
    std::string json = export_to_json(build_export(ws, checked));
    if (out_file) {
      write_file(*out_file, json);
    } else {
      out << json;
    }
  } catch (const Error& e) {
    report_failure(e, err);
    return exit_code::kFailure;
  }
  return exit_code::kOk;
}

}  // namespace tagweaver
