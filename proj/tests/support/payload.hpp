#pragma once

// Reading rendered payloads back the way a person would: visible text with
// markup removed, and the text of each identified element.

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hazcast/render.hpp"

namespace hazcast::testing {

/// Markup stripped, entities decoded, whitespace collapsed to single spaces.
std::string visible_text(std::string_view payload, RenderFormat format);

/// Element id -> visible text for svg and html; line -> count for plain.
std::map<std::string, std::string> element_texts(std::string_view payload, RenderFormat format);

/// Sentences ending in . ! or ? followed by whitespace or the end.
std::vector<std::string> sentences(std::string_view text);

std::string read_text(const std::filesystem::path& path);

std::filesystem::path source_dir();
std::filesystem::path fixture_dir();
std::filesystem::path golden_dir();
std::filesystem::path data_dir();

inline constexpr std::array<std::string_view, 5> kFixtureNames{"severe-day", "deep-freeze", "flood-thaw", "high-wind-fog",
                                                               "mixed-snow"};

}  // namespace hazcast::testing
