// tagweaver: derive tagging languages, check tag models, export attachments.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tagweaver/workspace.hpp"

namespace {

namespace fs = std::filesystem;

struct WorkspaceFlags {
  std::vector<std::string> models;
  std::vector<std::string> tags;
  std::vector<std::string> schemas;
  std::string manifest;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", models, "Statechart model file (.sc); repeatable");
    cmd->add_option("--tags", tags, "Tag model file (.tag); repeatable");
    cmd->add_option("--schema", schemas, "Tag schema file (.tagschema); repeatable");
    cmd->add_option("--manifest", manifest, "Grammar manifest (.glang) or profile (.profile.json)");
  }

  tagweaver::Workspace workspace() const {
    tagweaver::Workspace ws;
    for (const auto& m : models) ws.model_files.emplace_back(m);
    for (const auto& t : tags) ws.tag_files.emplace_back(t);
    for (const auto& s : schemas) ws.schema_files.emplace_back(s);
    if (!manifest.empty()) ws.manifest_file = fs::path(manifest);
    return ws;
  }
};

bool color_enabled() {
  const char* v = std::getenv("TAGWEAVER_COLOR");
  return v && std::string(v) == "1";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tagweaver - DSL-specific tagging languages"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Check tag models against their schemas and target models");
  WorkspaceFlags check_flags;
  check_flags.attach(check);
  std::string format = "text";
  check->add_option("--format", format, "Diagnostic format")->check(CLI::IsMember({"text", "json"}));

  auto* derive = app.add_subcommand("derive", "Derive tag and tagschema language profiles from a grammar manifest");
  std::string derive_manifest;
  std::string derive_out;
  std::string profile_dir;
  derive->add_option("--manifest", derive_manifest, "Grammar manifest (.glang)")->required();
  derive->add_option("--out", derive_out, "Write the derived grammar report here instead of stdout");
  derive->add_option("--profile-dir", profile_dir, "Directory for <grammar>.profile.json (default: next to manifest)");

  auto* exp = app.add_subcommand("export", "Export resolved tag attachments as JSON");
  WorkspaceFlags export_flags;
  export_flags.attach(exp);
  std::string export_out;
  exp->add_option("--out", export_out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tagweaver::exit_code::kFailure;
  }

  if (*check) {
    auto fmt = format == "json" ? tagweaver::DiagnosticFormat::Json : tagweaver::DiagnosticFormat::Text;
    return tagweaver::cmd_check(check_flags.workspace(), fmt, color_enabled(), std::cout, std::cerr);
  }
  if (*derive) {
    auto out = derive_out.empty() ? std::nullopt : std::optional<fs::path>(derive_out);
    auto dir = profile_dir.empty() ? std::nullopt : std::optional<fs::path>(profile_dir);
    return tagweaver::cmd_derive(derive_manifest, out, dir, std::cout, std::cerr);
  }
  auto out = export_out.empty() ? std::nullopt : std::optional<fs::path>(export_out);
  return tagweaver::cmd_export(export_flags.workspace(), out, std::cout, std::cerr);
}
