#pragma once

// Renders a forecast under one of the four layout conditions:
//
//   baseline       summary, then the four period blocks; no icons
//   summary_last   period blocks, then the summary; no icons
//   icons          baseline order with one worst-case icon row above the summary
//   per_day_icons  summary_last order with an icon row inside every period block
//
// Output formats are a standalone SVG, a self-contained HTML page (inline
// stylesheet and inline SVG icons) and plain text. Every render carries a
// manifest linking each element id to the forecast field it shows. Icons only
// add to the text; every field is always rendered.

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hazcast/forecast.hpp"
#include "hazcast/hazards.hpp"

namespace hazcast {

enum class LayoutCondition { baseline, summary_last, icons, per_day_icons };
enum class RenderFormat { svg, html, plain };

inline constexpr std::array<LayoutCondition, 4> kAllConditions{LayoutCondition::baseline, LayoutCondition::summary_last,
                                                               LayoutCondition::icons, LayoutCondition::per_day_icons};
inline constexpr std::array<RenderFormat, 3> kAllFormats{RenderFormat::svg, RenderFormat::html, RenderFormat::plain};

/// "baseline", "summary-last", "icons", "per-day-icons".
[[nodiscard]] std::string_view to_string(LayoutCondition condition);
[[nodiscard]] std::string_view to_string(RenderFormat format);
/// Accepts the hyphenated names and their underscore spellings.
[[nodiscard]] std::optional<LayoutCondition> condition_from_string(std::string_view text);
[[nodiscard]] std::optional<RenderFormat> format_from_string(std::string_view text);
/// "svg", "html", "txt".
[[nodiscard]] std::string_view file_extension(RenderFormat format);

struct ManifestEntry {
  std::string element_id;
  std::string source_field;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct RenderedDocument {
  RenderFormat format{RenderFormat::plain};
  std::string payload;
  std::vector<ManifestEntry> manifest;
};

/// Vector glyphs keyed by id (the file stem of each .svg in the art set).
class GlyphSet {
 public:
  [[nodiscard]] static GlyphSet load(const std::filesystem::path& dir);

  void add(std::string id, std::string inner_svg);
  [[nodiscard]] bool contains(std::string_view id) const;
  /// Inner markup of the glyph's <svg> element. Throws InputError for an unknown id.
  [[nodiscard]] const std::string& art(std::string_view id) const;

 private:
  std::map<std::string, std::string, std::less<>> glyphs_;
};

struct StimulusSet {
  std::vector<RenderedDocument> documents;
  std::vector<std::string> file_names;  // parallel to documents
  std::string index;                    // JSON index for study administration
};

class Renderer {
 public:
  Renderer(const HazardEngine& engine, GlyphSet glyphs);

  /// Throws InputError for an invalid document.
  [[nodiscard]] RenderedDocument render(const ForecastDocument& doc, LayoutCondition condition,
                                        RenderFormat format) const;

  /// One icon as a standalone fragment: an <svg> element for svg and html,
  /// "[WIND F11]"-style text for plain. Throws InputError for an unknown glyph.
  [[nodiscard]] std::string render_icon(const HazardIcon& icon, RenderFormat format) const;

  /// Renders every document under the same condition and format.
  [[nodiscard]] StimulusSet render_stimulus_set(std::span<const ForecastDocument> docs, LayoutCondition condition,
                                                RenderFormat format) const;

 private:
  const HazardEngine& engine_;
  GlyphSet glyphs_;
};

/// The render manifest as JSON text (trailing newline included).
[[nodiscard]] std::string manifest_json(const RenderedDocument& doc, std::string_view source_id,
                                        LayoutCondition condition);

/// Accessible description of an icon, e.g. "Beaufort level 11: Violent storm".
[[nodiscard]] std::string icon_description(const HazardIcon& icon);
/// Plain-text token, e.g. "[WIND F11 G110]" or "[FREEZING]".
[[nodiscard]] std::string icon_plain_text(const HazardIcon& icon);

}  // namespace hazcast
