#include "hazcast/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hazcast/canonical.hpp"
#include "hazcast/errors.hpp"
#include "hazcast/hazards.hpp"
#include "hazcast/render.hpp"
#include "hazcast/stats/study_io.hpp"
#include "hazcast/text_parser.hpp"
#include "text_util.hpp"

#ifndef HAZCAST_DEFAULT_DATA_DIR
#define HAZCAST_DEFAULT_DATA_DIR "data"
#endif

namespace hazcast::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError(fmt::format("cannot read {}: no such file", path.string()));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot write {}", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw InputError(fmt::format("cannot write {}", path.string()));
}

void emit(std::ostream& out, const std::string& path, std::string_view content) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

bool looks_canonical(std::string_view text) {
  const auto t = detail::trim(text);
  return !t.empty() && t.front() == '{';
}

ParseResult parse_any(const std::string& text, std::string_view source_id) {
  if (looks_canonical(text)) return parse_canonical(text);
  return parse_forecast(text, source_id);
}

void report_diagnostics(std::ostream& err, const std::string& path, const std::string& text, const ParseResult& r) {
  for (const auto& d : r.diagnostics) {
    if (d.severity == Severity::note) continue;
    err << path << ':' << format_diagnostic(text, d) << '\n';
  }
}

std::size_t error_count(const ParseResult& r) {
  return static_cast<std::size_t>(std::count_if(r.diagnostics.begin(), r.diagnostics.end(),
                                                [](const Diagnostic& d) { return d.severity == Severity::error; }));
}

ForecastDocument load_document(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path);
  const auto result = parse_any(text, fs::path(path).stem().string());
  report_diagnostics(err, path, text, result);
  if (result.has_errors()) throw InputError(fmt::format("{}: {} parse error(s)", path, error_count(result)));
  return *result.document;
}

LayoutCondition require_condition(const std::string& text) {
  if (const auto c = condition_from_string(text)) return *c;
  throw InputError(
      fmt::format("unknown condition \"{}\" (valid: baseline, summary-last, icons, per-day-icons)", text));
}

RenderFormat require_format(const std::string& text) {
  if (const auto f = format_from_string(text)) return *f;
  throw InputError(fmt::format("unknown format \"{}\" (valid: svg, html, plain)", text));
}

IconMode require_mode(const std::string& text) {
  if (text == "overall") return IconMode::overall;
  if (text == "per-period" || text == "per_period") return IconMode::per_period;
  throw InputError(fmt::format("unknown mode \"{}\" (valid: overall, per-period)", text));
}

std::string gust_text(const HazardIcon& icon) {
  return icon.gust_mph ? detail::format_number(*icon.gust_mph) : std::string("-");
}

struct Options {
  std::string tables = HAZCAST_DEFAULT_DATA_DIR "/scales";
  std::string glyphs = HAZCAST_DEFAULT_DATA_DIR "/glyphs";

  std::vector<std::string> inputs;
  std::string out;
  std::string source_id;
  std::string condition;
  std::string format;
  std::string mode = "overall";
  std::string triad;
  std::string manifest;
  std::string responses;
  std::string participants;
  bool plot = false;
};

int cmd_parse(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string& path = o.inputs.front();
  const std::string text = read_file(path);
  const std::string source_id = o.source_id.empty() ? fs::path(path).stem().string() : o.source_id;
  const auto result = parse_forecast(text, source_id);
  report_diagnostics(err, path, text, result);
  if (result.has_errors()) throw InputError(fmt::format("{}: {} parse error(s)", path, error_count(result)));
  emit(out, o.out, emit_canonical(*result.document));
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load_document(o.inputs.front(), err);
  const HazardEngine engine(load_hazard_tables(o.tables));
  const auto mode = require_mode(o.mode);
  std::optional<TriadThresholds> thresholds;
  if (!o.triad.empty()) thresholds = parse_triad_thresholds(read_file(o.triad));

  std::string listing = fmt::format("# {} ({})\n", doc.source_id, mode == IconMode::overall ? "overall" : "per-period");
  const auto sets = engine.derive_document_icons(doc, mode);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string scope = mode == IconMode::overall ? "overall" : fmt::format("p{}", i + 1);
    const std::string label = mode == IconMode::overall ? std::string(kWorstCaseLabel) : doc.periods[i].label;
    if (sets[i].empty()) listing += fmt::format("none\t{}\t{}\n", scope, label);
    for (const auto& icon : sets[i]) {
      listing += fmt::format("icon\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", scope, to_string(icon.kind), icon.level, icon.tag,
                             icon.color, gust_text(icon), icon_description(icon));
    }
  }
  if (thresholds) {
    for (std::size_t i = 0; i < doc.periods.size(); ++i) {
      const auto advisory = triad_advisory(doc.periods[i], *thresholds);
      std::string factors;
      for (auto f : advisory.factors_dangerous) factors += (factors.empty() ? "" : ",") + std::string(to_string(f));
      listing += fmt::format("triad\tp{}\t{}\t{}\t{}\n", i + 1, doc.periods[i].label, to_string(advisory.verdict),
                             factors.empty() ? "-" : factors);
    }
  }
  emit(out, o.out, listing);
  return kExitOk;
}

int cmd_render(const Options& o, std::ostream& out, std::ostream& err) {
  const auto condition = require_condition(o.condition);
  const auto format = require_format(o.format);
  const auto doc = load_document(o.inputs.front(), err);
  const HazardEngine engine(load_hazard_tables(o.tables));
  const Renderer renderer(engine, GlyphSet::load(o.glyphs));
  const auto rendered = renderer.render(doc, condition, format);
  emit(out, o.out, rendered.payload);
  if (!o.manifest.empty()) write_file(o.manifest, manifest_json(rendered, doc.source_id, condition));
  return kExitOk;
}

int cmd_stimuli(const Options& o, std::ostream& out, std::ostream& err) {
  const auto condition = require_condition(o.condition);
  const auto format = require_format(o.format);
  std::vector<ForecastDocument> docs;
  for (const auto& path : o.inputs) docs.push_back(load_document(path, err));
  const HazardEngine engine(load_hazard_tables(o.tables));
  const Renderer renderer(engine, GlyphSet::load(o.glyphs));
  const auto set = renderer.render_stimulus_set(docs, condition, format);

  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError(fmt::format("cannot create output directory {}", dir.string()));
  for (std::size_t i = 0; i < set.documents.size(); ++i) {
    write_file(dir / set.file_names[i], set.documents[i].payload);
    write_file(dir / (set.file_names[i] + ".manifest.json"), manifest_json(set.documents[i], docs[i].source_id, condition));
  }
  write_file(dir / "index.json", set.index);
  out << fmt::format("wrote {} stimuli to {}\n", set.documents.size(), dir.string());
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out, std::ostream&) {
  const std::string responses = read_file(o.responses);
  const std::string participants = read_file(o.participants);
  const auto records = stats::read_study(responses, participants, o.responses, o.participants);
  const auto report = stats::analyze_study(records);
  if (o.out.empty()) {
    out << stats::report_text(report);
    return kExitOk;
  }
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError(fmt::format("cannot create output directory {}", dir.string()));
  write_file(dir / "report.json", stats::report_json(report));
  write_file(dir / "report.txt", stats::report_text(report));
  if (o.plot) write_file(dir / "plot.json", stats::plot_json(report));
  return kExitOk;
}

int cmd_validate_tables(const Options& o, std::ostream& out, std::ostream&) {
  std::size_t failures = 0;
  std::vector<std::string> glyph_ids;
  for (auto kind : kHazardOrder) {
    const fs::path path = fs::path(o.tables) / std::string(table_file_name(kind));
    std::vector<std::string> problems;
    try {
      const auto table = parse_scale_table(read_file(path), path.string());
      if (table.kind != kind) {
        problems.push_back(fmt::format("declares kind {}, expected {}", to_string(table.kind), to_string(kind)));
      }
      for (auto& p : integrity_problems(table)) problems.push_back(std::move(p));
      glyph_ids.push_back(table.glyph_id);
      if (problems.empty()) {
        out << fmt::format("ok\t{}\t{}\t{} bands\n", path.string(), to_string(kind), table.bands.size());
      }
    } catch (const InputError& e) {
      problems.emplace_back(e.what());
    }
    for (const auto& p : problems) out << fmt::format("fail\t{}\t{}\n", path.string(), p);
    failures += problems.size();
  }
  const auto glyphs = GlyphSet::load(o.glyphs);
  for (const auto& id : glyph_ids) {
    if (!glyphs.contains(id)) {
      out << fmt::format("fail\t{}\tno glyph \"{}\"\n", o.glyphs, id);
      ++failures;
    }
  }
  if (failures > 0) throw InputError(fmt::format("{} scale table problem(s) in {}", failures, o.tables));
  out << "tables valid\n";
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Hazard icons and layouts for mountain forecasts", "hazcast"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tables", o.tables, "scale table directory");
  app.add_option("--glyphs", o.glyphs, "glyph art directory");

  auto* parse = app.add_subcommand("parse", "raw forecast text to the canonical form");
  parse->add_option("input", o.inputs, "forecast text file")->required()->expected(1);
  parse->add_option("--out", o.out, "output file (default stdout)");
  parse->add_option("--source-id", o.source_id, "source id (default: input file stem)");

  auto* classify = app.add_subcommand("classify", "list hazard icons");
  classify->add_option("input", o.inputs, "forecast file")->required()->expected(1);
  classify->add_option("--mode", o.mode, "overall | per-period");
  classify->add_option("--triad-thresholds", o.triad, "thresholds file enabling the go/caution/no-go advisory");
  classify->add_option("--out", o.out, "output file (default stdout)");

  auto* render = app.add_subcommand("render", "render one forecast");
  render->add_option("input", o.inputs, "forecast file")->required()->expected(1);
  render->add_option("--condition", o.condition, "baseline | summary-last | icons | per-day-icons")->required();
  render->add_option("--format", o.format, "svg | html | plain")->required();
  render->add_option("--out", o.out, "output file (default stdout)");
  render->add_option("--manifest", o.manifest, "write the element manifest here");

  auto* stimuli = app.add_subcommand("stimuli", "render a stimulus set");
  stimuli->add_option("inputs", o.inputs, "forecast files")->required();
  stimuli->add_option("--condition", o.condition, "baseline | summary-last | icons | per-day-icons")->required();
  stimuli->add_option("--format", o.format, "svg | html | plain")->required();
  stimuli->add_option("--out", o.out, "output directory")->required();

  auto* stats = app.add_subcommand("stats", "analyse study responses");
  stats->add_option("--responses", o.responses, "responses CSV")->required();
  stats->add_option("--participants", o.participants, "participants CSV")->required();
  stats->add_option("--out", o.out, "output directory (default: text report on stdout)");
  stats->add_flag("--plot", o.plot, "also write plot.json");

  auto* validate = app.add_subcommand("validate-tables", "check the scale tables");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hazcast: error[usage]: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (parse->parsed()) return cmd_parse(o, out, err);
    if (classify->parsed()) return cmd_classify(o, out, err);
    if (render->parsed()) return cmd_render(o, out, err);
    if (stimuli->parsed()) return cmd_stimuli(o, out, err);
    if (stats->parsed()) return cmd_stats(o, out, err);
    if (validate->parsed()) return cmd_validate_tables(o, out, err);
    throw InvariantError("no subcommand dispatched");
  } catch (...) {
    return report_failure(std::current_exception(), err);
  }
}

int report_failure(std::exception_ptr failure, std::ostream& err) {
  try {
    std::rethrow_exception(failure);
  } catch (const InputError& e) {
    err << "hazcast: error[input]: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "hazcast: error[input]: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvariantError& e) {
    err << "hazcast: error[internal]: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "hazcast: error[internal]: " << e.what() << '\n';
    return kExitInternal;
  } catch (...) {
    err << "hazcast: error[internal]: unknown exception\n";
    return kExitInternal;
  }
}

}  // namespace hazcast::cli
