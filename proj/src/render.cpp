#include "hazcast/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "hazcast/errors.hpp"
#include "json.hpp"
#include "text_util.hpp"

namespace hazcast {

namespace {

constexpr std::string_view kTitle = "Higher Summits Forecast";
constexpr std::string_view kStyleVersion = "hazcast forecast style 1";

constexpr int kPageWidth = 720;
constexpr int kMargin = 24;
constexpr int kSectionGap = 12;
constexpr int kIconSize = 48;
constexpr int kIconGap = 8;
constexpr int kIconRowHeight = kIconSize + 12;
constexpr std::size_t kWrapColumns = 86;

constexpr std::string_view kHtmlStyle =
    "body{margin:0;background:#FFFFFF;color:#1A1A1A;font-family:Helvetica,Arial,sans-serif;}\n"
    ".forecast{max-width:720px;margin:0 auto;padding:24px;}\n"
    "h1{font-size:20px;margin:0 0 4px 0;}\n"
    ".issued{font-size:13px;color:#555555;margin:0 0 12px 0;}\n"
    ".summary{font-size:14px;line-height:20px;margin:0 0 12px 0;}\n"
    ".period{margin:0 0 12px 0;}\n"
    ".period h2{font-size:16px;margin:0 0 4px 0;}\n"
    ".field,.note{font-size:14px;line-height:20px;margin:0;}\n"
    ".icon-row{display:flex;gap:8px;margin:4px 0 8px 0;}\n"
    ".icon{display:block;width:48px;height:48px;}\n";

constexpr std::string_view kSvgStyle =
    "text{font-family:Helvetica,Arial,sans-serif;fill:#1A1A1A;}\n"
    ".title{font-size:20px;font-weight:bold;}\n"
    ".issued{font-size:13px;fill:#555555;}\n"
    ".summary,.field,.note{font-size:14px;}\n"
    ".label{font-size:16px;font-weight:bold;}\n"
    ".gust{font-size:10px;font-weight:bold;}\n";

struct Metrics {
  int size;
  int line_height;
};

Metrics metrics_for(std::string_view css_class) {
  if (css_class == "title") return {20, 28};
  if (css_class == "issued") return {13, 20};
  if (css_class == "label") return {16, 24};
  return {14, 20};
}

struct Item {
  enum class Kind { text, icon_row } kind{Kind::text};
  std::string id;
  std::string source;
  std::string css_class;
  std::string text;
  // icon rows
  IconSet icons;
  std::string icon_source;  // "derived:periods[0]" or "derived:worst_case"
  std::string row_caption;  // plain-text lead-in and aria label
};

struct Section {
  std::string id;  // empty: no wrapping element
  std::string source;
  std::string css_class;
  std::vector<Item> items;
};

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&#39;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> wrap(std::string_view text, std::size_t columns) {
  std::vector<std::string> lines;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j == i) break;
    const std::string_view word = text.substr(i, j - i);
    if (!current.empty() && current.size() + 1 + word.size() > columns) {
      lines.push_back(std::move(current));
      current.clear();
    }
    if (!current.empty()) current.push_back(' ');
    current += word;
    i = j;
  }
  if (!current.empty() || lines.empty()) lines.push_back(std::move(current));
  return lines;
}

std::string format_range(const ValueRange& r, std::string_view suffix) {
  if (r.low == r.high) return fmt::format("{}{}", detail::format_number(r.low), suffix);
  return fmt::format("{} to {}{}", detail::format_number(r.low), detail::format_number(r.high), suffix);
}

std::string precip_phrase(const PrecipEvent& e) {
  std::string_view name;
  switch (e.kind) {
    case PrecipKind::snow:
      name = "snow";
      break;
    case PrecipKind::sleet:
      name = "sleet";
      break;
    case PrecipKind::freezing_rain:
      name = "freezing rain";
      break;
    case PrecipKind::rain:
      name = "rain";
      break;
    case PrecipKind::mixed:
      name = "mixed precipitation";
      break;
  }
  switch (e.certainty) {
    case Certainty::mentioned:
      return std::string(name);
    case Certainty::likely:
      return fmt::format("{} likely", name);
    case Certainty::chance:
      return fmt::format("chance of {}", name);
  }
  return std::string(name);
}

std::string issued_text(std::chrono::sys_seconds t) {
  std::string iso = format_timestamp(t);  // YYYY-MM-DDTHH:MM:SSZ
  const std::string date = iso.substr(0, 10);
  std::string time = iso.substr(11, 8);
  if (time.substr(5) == ":00") time = time.substr(0, 5);
  return fmt::format("Issued {} {} UTC", date, time);
}

std::string kind_slug(HazardKind kind) {
  std::string s(to_string(kind));
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

/// Foreground that stays readable on the icon background.
std::string_view foreground_for(std::string_view hex) {
  auto channel = [&](std::size_t at) {
    const int v = std::stoi(std::string(hex.substr(at, 2)), nullptr, 16);
    const double c = v / 255.0;
    return c <= 0.03928 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
  };
  const double luminance = 0.2126 * channel(1) + 0.7152 * channel(3) + 0.0722 * channel(5);
  return luminance < 0.25 ? "#FFFFFF" : "#1A1A1A";
}

Item text_item(std::string id, std::string source, std::string css_class, std::string text) {
  Item it;
  it.id = std::move(id);
  it.source = std::move(source);
  it.css_class = std::move(css_class);
  it.text = std::move(text);
  return it;
}

Item icon_row(std::string id, std::string source, IconSet icons, std::string caption) {
  Item it;
  it.kind = Item::Kind::icon_row;
  it.id = std::move(id);
  it.icon_source = source;
  it.source = std::move(source);
  it.css_class = "icon-row";
  it.icons = std::move(icons);
  it.row_caption = std::move(caption);
  return it;
}

std::string icon_element_id(const Item& row, const HazardIcon& icon) {
  return fmt::format("{}-{}", row.id, kind_slug(icon.kind));
}

}  // namespace

std::string_view to_string(LayoutCondition condition) {
  switch (condition) {
    case LayoutCondition::baseline:
      return "baseline";
    case LayoutCondition::summary_last:
      return "summary-last";
    case LayoutCondition::icons:
      return "icons";
    case LayoutCondition::per_day_icons:
      return "per-day-icons";
  }
  return "baseline";
}

std::string_view to_string(RenderFormat format) {
  switch (format) {
    case RenderFormat::svg:
      return "svg";
    case RenderFormat::html:
      return "html";
    case RenderFormat::plain:
      return "plain";
  }
  return "plain";
}

std::optional<LayoutCondition> condition_from_string(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '_', '-');
  for (auto c : kAllConditions) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

std::optional<RenderFormat> format_from_string(std::string_view text) {
  for (auto f : kAllFormats) {
    if (text == to_string(f)) return f;
  }
  return std::nullopt;
}

std::string_view file_extension(RenderFormat format) {
  switch (format) {
    case RenderFormat::svg:
      return "svg";
    case RenderFormat::html:
      return "html";
    case RenderFormat::plain:
      return "txt";
  }
  return "txt";
}

GlyphSet GlyphSet::load(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw InputError(fmt::format("glyph directory {} not found", dir.string()));
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".svg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  GlyphSet set;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto open = text.find("<svg");
    const auto open_end = open == std::string::npos ? std::string::npos : text.find('>', open);
    const auto close = text.rfind("</svg>");
    if (open_end == std::string::npos || close == std::string::npos || close < open_end) {
      throw InputError(fmt::format("{}: not an <svg> document", path.string()));
    }
    const std::string_view inner = detail::trim(std::string_view(text).substr(open_end + 1, close - open_end - 1));
    // Fold line breaks so each icon renders on a single line.
    std::string flat;
    bool space = false;
    for (char c : inner) {
      if (c == '\n' || c == '\r') {
        space = true;
        continue;
      }
      if (space && !flat.empty()) flat.push_back(' ');
      space = false;
      flat.push_back(c);
    }
    set.add(path.stem().string(), std::move(flat));
  }
  return set;
}

void GlyphSet::add(std::string id, std::string inner_svg) { glyphs_[std::move(id)] = std::move(inner_svg); }

bool GlyphSet::contains(std::string_view id) const { return glyphs_.find(id) != glyphs_.end(); }

const std::string& GlyphSet::art(std::string_view id) const {
  const auto it = glyphs_.find(id);
  if (it == glyphs_.end()) throw InputError(fmt::format("unknown glyph id \"{}\"", id));
  return it->second;
}

std::string icon_description(const HazardIcon& icon) {
  std::string text = fmt::format("{} level {}: {}", icon.scale_name, icon.level, icon.label);
  if (icon.gust_mph) text += fmt::format(", gusts to {} mph", detail::format_number(*icon.gust_mph));
  return text;
}

std::string icon_plain_text(const HazardIcon& icon) {
  std::string text = "[" + icon.plain_name;
  if (icon.tag != "-") text += " " + icon.tag;
  if (icon.gust_mph) text += " G" + detail::format_number(std::round(*icon.gust_mph));
  return text + "]";
}

namespace {

/// Lays out a document as sections, then serialises them in one format.
class DocumentWriter {
 public:
  DocumentWriter(const GlyphSet& glyphs, RenderFormat format) : glyphs_(glyphs), format_(format) {}

  RenderedDocument write(const std::vector<Section>& sections) {
    RenderedDocument out;
    out.format = format_;
    for (const auto& s : sections) {
      if (!s.id.empty()) out.manifest.push_back({s.id, s.source});
      for (const auto& it : s.items) {
        out.manifest.push_back({it.id, it.source});
        if (it.kind == Item::Kind::icon_row) {
          for (const auto& icon : it.icons) {
            out.manifest.push_back({icon_element_id(it, icon), fmt::format("{}.{}", it.icon_source, to_string(icon.kind))});
          }
        }
      }
    }
    switch (format_) {
      case RenderFormat::plain:
        out.payload = plain(sections);
        break;
      case RenderFormat::html:
        out.payload = html(sections);
        break;
      case RenderFormat::svg:
        out.payload = svg(sections);
        break;
    }
    return out;
  }

  std::string icon_fragment(const HazardIcon& icon, std::string_view id, std::optional<int> x) const {
    const std::string& art = glyphs_.art(icon.glyph_id);
    const std::string label = xml_escape(icon_description(icon));
    const auto fg = foreground_for(icon.color);
    std::string gust;
    if (icon.gust_mph) {
      gust = fmt::format("<text class=\"gust\" x=\"45\" y=\"45\" text-anchor=\"end\" style=\"fill:{}\">G{}</text>", fg,
                         detail::format_number(std::round(*icon.gust_mph)));
    }
    const std::string id_attr = id.empty() ? std::string{} : fmt::format(" id=\"{}\"", id);
    const std::string body = fmt::format(
        "<title>{}</title><rect width=\"{}\" height=\"{}\" rx=\"6\" fill=\"{}\"/><g color=\"{}\">{}</g>{}", label,
        kIconSize, kIconSize, icon.color, fg, art, gust);
    if (x) {
      return fmt::format("<g{} class=\"icon\" transform=\"translate({},0)\" role=\"img\" aria-label=\"{}\">{}</g>", id_attr,
                         *x, label, body);
    }
    return fmt::format(
        "<svg{} class=\"icon\" xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" width=\"{}\" height=\"{}\" "
        "role=\"img\" aria-label=\"{}\">{}</svg>",
        id_attr, kIconSize, kIconSize, kIconSize, kIconSize, label, body);
  }

 private:
  std::string plain(const std::vector<Section>& sections) const {
    std::string out;
    for (std::size_t s = 0; s < sections.size(); ++s) {
      if (s > 0) out += "\n";
      for (const auto& it : sections[s].items) {
        if (it.kind == Item::Kind::text) {
          out += it.text + "\n";
          continue;
        }
        out += it.row_caption + ":";
        if (it.icons.empty()) out += " none";
        for (const auto& icon : it.icons) {
          static_cast<void>(glyphs_.art(icon.glyph_id));  // unknown glyphs are an error in every format
          out += " " + icon_plain_text(icon);
        }
        out += "\n";
      }
    }
    return out;
  }

  std::string html(const std::vector<Section>& sections) const {
    std::string out;
    out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    out += fmt::format("<title>{}</title>\n", kTitle);
    out += fmt::format("<style>\n/* {} */\n{}</style>\n", kStyleVersion, kHtmlStyle);
    out += "</head>\n<body>\n<main class=\"forecast\">\n";
    for (const auto& s : sections) {
      if (!s.id.empty()) out += fmt::format("<section id=\"{}\" class=\"{}\">\n", s.id, s.css_class);
      for (const auto& it : s.items) {
        if (it.kind == Item::Kind::icon_row) {
          out += fmt::format("<div id=\"{}\" class=\"icon-row\" role=\"list\" aria-label=\"{}\">", it.id,
                             xml_escape(it.row_caption));
          if (!it.icons.empty()) out += "\n";
          for (const auto& icon : it.icons) {
            out += fmt::format("<div role=\"listitem\">{}</div>\n", icon_fragment(icon, icon_element_id(it, icon), std::nullopt));
          }
          out += "</div>\n";
          continue;
        }
        std::string_view tag = "p";
        if (it.css_class == "title") tag = "h1";
        if (it.css_class == "label") tag = "h2";
        out += fmt::format("<{} id=\"{}\" class=\"{}\">{}</{}>\n", tag, it.id, it.css_class, xml_escape(it.text), tag);
      }
      if (!s.id.empty()) out += "</section>\n";
    }
    out += "</main>\n</body>\n</html>\n";
    return out;
  }

  std::string svg(const std::vector<Section>& sections) const {
    std::string body;
    int y = kMargin;
    for (std::size_t s = 0; s < sections.size(); ++s) {
      const auto& sec = sections[s];
      if (s > 0) y += kSectionGap;
      if (!sec.id.empty()) body += fmt::format("<g id=\"{}\" class=\"{}\">\n", sec.id, sec.css_class);
      for (const auto& it : sec.items) {
        if (it.kind == Item::Kind::icon_row) {
          if (it.icons.empty()) {
            body += fmt::format("<g id=\"{}\" class=\"icon-row\" aria-label=\"{}\"/>\n", it.id, xml_escape(it.row_caption));
            continue;
          }
          body += fmt::format("<g id=\"{}\" class=\"icon-row\" aria-label=\"{}\" transform=\"translate({},{})\">\n", it.id,
                              xml_escape(it.row_caption), kMargin, y + 4);
          int x = 0;
          for (const auto& icon : it.icons) {
            body += icon_fragment(icon, icon_element_id(it, icon), x) + "\n";
            x += kIconSize + kIconGap;
          }
          body += "</g>\n";
          y += kIconRowHeight;
          continue;
        }
        const auto m = metrics_for(it.css_class);
        const auto lines = wrap(it.text, kWrapColumns);
        body += fmt::format("<text id=\"{}\" class=\"{}\">\n", it.id, it.css_class);
        for (const auto& line : lines) {
          y += m.line_height;
          body += fmt::format("<tspan x=\"{}\" y=\"{}\">{}</tspan>\n", kMargin, y - (m.line_height - m.size) / 2,
                              xml_escape(line));
        }
        body += "</text>\n";
      }
      if (!sec.id.empty()) body += "</g>\n";
    }
    const int height = y + kMargin;

    std::string out;
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" role=\"document\" "
        "aria-label=\"{2}\">\n",
        kPageWidth, height, kTitle);
    out += fmt::format("<style>\n/* {} */\n{}</style>\n", kStyleVersion, kSvgStyle);
    out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"#FFFFFF\"/>\n", kPageWidth, height);
    out += body;
    out += "</svg>\n";
    return out;
  }

  const GlyphSet& glyphs_;
  RenderFormat format_;
};

std::vector<Section> layout(const ForecastDocument& doc, LayoutCondition condition, const HazardEngine& engine) {
  Section header{"", "static:header", "masthead", {}};
  header.items.push_back(text_item("title", "static:title", "title", std::string(kTitle)));
  header.items.push_back(text_item("issued", "issued_at", "issued", issued_text(doc.issued_at)));
  if (condition == LayoutCondition::icons) {
    auto overall = engine.derive_document_icons(doc, IconMode::overall).front();
    header.items.push_back(icon_row("icons-overall", "derived:worst_case", std::move(overall), "Hazards (next 48 hours)"));
  }

  Section summary{"", "summary_text", "summary", {}};
  summary.items.push_back(text_item("summary", "summary_text", "summary", doc.summary_text));

  const bool per_day = condition == LayoutCondition::per_day_icons;
  const auto per_period = per_day ? engine.derive_document_icons(doc, IconMode::per_period) : std::vector<IconSet>{};

  std::vector<Section> periods;
  for (std::size_t i = 0; i < doc.periods.size(); ++i) {
    const auto& p = doc.periods[i];
    const std::string id = fmt::format("p{}", i + 1);
    const std::string src = fmt::format("periods[{}]", i);
    Section sec{id, src, "period", {}};
    sec.items.push_back(text_item(id + "-label", src + ".label", "label", p.label));
    if (per_day) sec.items.push_back(icon_row(id + "-icons", "derived:" + src, per_period[i], "Hazards"));
    sec.items.push_back(
        text_item(id + "-temperature", src + ".temperature", "field", "Temperatures: " + format_range(p.temperature, "\xC2\xB0" "F")));
    std::string winds = "Winds: ";
    if (p.wind.direction) winds += std::string(to_string(*p.wind.direction)) + " ";
    winds += format_range(p.wind.sustained, " mph");
    if (p.wind.gust_high) winds += fmt::format(", gusts to {} mph", detail::format_number(*p.wind.gust_high));
    sec.items.push_back(text_item(id + "-wind", src + ".wind", "field", winds));
    if (p.wind_chill) {
      sec.items.push_back(
          text_item(id + "-wind-chill", src + ".wind_chill", "field", "Wind chill: " + format_range(*p.wind_chill, "\xC2\xB0" "F")));
    }
    if (!p.precip_events.empty()) {
      std::string text = "Precipitation: ";
      for (std::size_t k = 0; k < p.precip_events.size(); ++k) {
        if (k > 0) text += ", ";
        text += precip_phrase(p.precip_events[k]);
      }
      sec.items.push_back(text_item(id + "-precip", src + ".precip_events", "field", text));
    }
    for (std::size_t k = 0; k < p.extra_hazard_notes.size(); ++k) {
      sec.items.push_back(text_item(fmt::format("{}-note-{}", id, k + 1), fmt::format("{}.extra_hazard_notes[{}]", src, k),
                                    "note", p.extra_hazard_notes[k]));
    }
    periods.push_back(std::move(sec));
  }

  std::vector<Section> out;
  out.push_back(std::move(header));
  const bool summary_first = condition == LayoutCondition::baseline || condition == LayoutCondition::icons;
  if (summary_first) out.push_back(summary);
  for (auto& p : periods) out.push_back(std::move(p));
  if (!summary_first) out.push_back(summary);
  return out;
}

std::string sanitize_file_stem(std::string_view id) {
  std::string out;
  for (char c : id) {
    if (detail::is_alpha(c) || detail::is_digit(c) || c == '-' || c == '_' || c == '.') {
      out.push_back(c);
    } else {
      out.push_back('_');
    }
  }
  while (!out.empty() && out.front() == '.') out.erase(out.begin());
  return out;
}

}  // namespace

Renderer::Renderer(const HazardEngine& engine, GlyphSet glyphs) : engine_(engine), glyphs_(std::move(glyphs)) {
  for (auto kind : kHazardOrder) {
    const auto& id = engine_.tables().for_kind(kind).glyph_id;
    if (!glyphs_.contains(id)) throw InputError(fmt::format("glyph \"{}\" for {} is missing from the art set", id, to_string(kind)));
  }
}

RenderedDocument Renderer::render(const ForecastDocument& doc, LayoutCondition condition, RenderFormat format) const {
  require_valid(doc);
  return DocumentWriter(glyphs_, format).write(layout(doc, condition, engine_));
}

std::string Renderer::render_icon(const HazardIcon& icon, RenderFormat format) const {
  DocumentWriter writer(glyphs_, format);
  if (format == RenderFormat::plain) {
    static_cast<void>(glyphs_.art(icon.glyph_id));  // unknown glyphs are an error in every format
    return icon_plain_text(icon);
  }
  return writer.icon_fragment(icon, {}, std::nullopt);
}

StimulusSet Renderer::render_stimulus_set(std::span<const ForecastDocument> docs, LayoutCondition condition,
                                          RenderFormat format) const {
  StimulusSet set;
  nlohmann::ordered_json index;
  index["condition"] = to_string(condition);
  index["format"] = to_string(format);
  index["count"] = docs.size();
  auto stimuli = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto rendered = render(docs[i], condition, format);
    std::string stem = sanitize_file_stem(docs[i].source_id);
    if (stem.empty()) stem = "forecast";
    std::string file = fmt::format("{:02}-{}.{}", i + 1, stem, file_extension(format));
    // Icon rows map to "derived:<scope>", single icons to "derived:<scope>.<kind>".
    const auto icons_shown = std::count_if(rendered.manifest.begin(), rendered.manifest.end(), [](const ManifestEntry& e) {
      return e.source_field.rfind("derived:", 0) == 0 && e.source_field.find('.') != std::string::npos;
    });
    stimuli.push_back(nlohmann::ordered_json{{"position", i + 1},
                                             {"file", file},
                                             {"source_id", docs[i].source_id},
                                             {"issued_at", format_timestamp(docs[i].issued_at)},
                                             {"icons_shown", icons_shown}});
    set.file_names.push_back(std::move(file));
    set.documents.push_back(std::move(rendered));
  }
  index["stimuli"] = std::move(stimuli);
  set.index = index.dump(2) + "\n";
  return set;
}

std::string manifest_json(const RenderedDocument& doc, std::string_view source_id, LayoutCondition condition) {
  nlohmann::ordered_json out;
  out["source_id"] = source_id;
  out["condition"] = to_string(condition);
  out["format"] = to_string(doc.format);
  auto elements = nlohmann::ordered_json::array();
  for (const auto& e : doc.manifest) elements.push_back(nlohmann::ordered_json{{"id", e.element_id}, {"source", e.source_field}});
  out["elements"] = std::move(elements);
  return out.dump(2) + "\n";
}

}  // namespace hazcast
