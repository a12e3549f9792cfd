#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tagweaver/conformance.hpp"
#include "tagweaver/derivation.hpp"
#include "tagweaver/statechart.hpp"
#include "tagweaver/tag_model.hpp"
#include "tagweaver/tag_schema.hpp"

namespace tagweaver {

/// The files one command operates on. Without a manifest the built-in
/// Statechart profile is used; a manifest may be a `.glang` file or a
/// `.profile.json` sidecar.
struct Workspace {
  std::vector<std::filesystem::path> model_files;
  std::vector<std::filesystem::path> tag_files;
  std::vector<std::filesystem::path> schema_files;
  std::optional<std::filesystem::path> manifest_file;
};

template <typename T>
struct Loaded {
  std::string file;
  T document;
};

struct LoadedWorkspace {
  LanguageProfile profile;
  std::vector<Loaded<StatechartModel>> models;
  std::vector<Loaded<TagModel>> tag_models;
  std::vector<Loaded<TagSchema>> schemas;
};

/// Reads and parses every file. Throws tagweaver::Error; parse errors are
/// rethrown with the file name prefixed to the message.
LoadedWorkspace load_workspace(const Workspace& workspace);

/// A tag model together with the documents its `conforms to` and `for`
/// references name.
struct Binding {
  const Loaded<TagModel>* tags = nullptr;
  const Loaded<StatechartModel>* target = nullptr;
  std::vector<TagSchema> schemas;
};

/// Resolves a tag model's references. `p.N` names the document with package
/// `p` and name `N`; unqualified names default to the tag model's package.
/// Throws Error(UnknownSchema | UnknownModel | AmbiguousReference).
Binding bind(const LoadedWorkspace& workspace, const Loaded<TagModel>& tag_model);

struct WorkspaceCheck {
  std::vector<Diagnostic> diagnostics;
  /// One entry per tag model; all present iff there are no errors.
  std::vector<ResolvedTagging> resolved;

  bool ok() const { return !has_errors(diagnostics); }
};

WorkspaceCheck check_workspace(const LoadedWorkspace& workspace);

struct ExportRecord {
  std::string element_path;
  std::string element_type;
  std::string tag_type;
  std::string schema;
  NormalizedValue value;
  std::string file;
  SourceLocation where;

  bool operator==(const ExportRecord&) const = default;
};

struct ExportReport {
  std::string target_model;
  std::vector<ExportRecord> attachments;
};

/// Merges resolved taggings for one target and sorts by element path, tag
/// type, then source position. Throws Error(AmbiguousReference) when the
/// tag models target different models.
ExportReport build_export(const LoadedWorkspace& workspace, const WorkspaceCheck& checked);

/// Export JSON document:
///
///   { "targetModel": "mobile.Mobile",
///     "attachments": [ { "elementPath": "Active", "elementType": "State",
///                        "tagType": "Monitored", "schema": "loggingschema.StatechartTagSchema",
///                        "kind": "flag", "value": null,
///                        "source": { "file": "...", "line": 12, "column": 20 } } ] }
///
/// kind is one of flag|int|string|bool|enum|complex. A complex value is an
/// object mapping each subtag name to `{ "kind", "value" }`, or to an array of
/// those when the reference is declared with `*` or `+`.
std::string export_to_json(const ExportReport& report);

enum class DiagnosticFormat { Text, Json };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kConformanceErrors = 1;
inline constexpr int kFailure = 2;  // unreadable input, parse errors, broken references, usage
}  // namespace exit_code

int cmd_check(const Workspace& workspace, DiagnosticFormat format, bool color, std::ostream& out, std::ostream& err);

/// Prints the derived grammar report to `out` (or `report_file`) and writes
/// `<grammar>.profile.json` next to the manifest, or into `profile_dir` when given.
int cmd_derive(const std::filesystem::path& manifest_file, const std::optional<std::filesystem::path>& report_file,
               const std::optional<std::filesystem::path>& profile_dir, std::ostream& out, std::ostream& err);

int cmd_export(const Workspace& workspace, const std::optional<std::filesystem::path>& out_file, std::ostream& out,
               std::ostream& err);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace tagweaver
