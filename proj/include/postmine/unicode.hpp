#pragma once

#include <string>
#include <string_view>

// Thin ICU-backed helpers. All strings crossing this boundary are UTF-8.
namespace postmine::unicode {

bool is_valid_utf8(std::string_view s);

/// Canonical composition, full lowercase mapping, and removal of combining
/// marks: "TRANSFORMACIÓN" -> "transformacion". Idempotent.
std::string fold(std::string_view s);

/// Invalid sequences decode to U+FFFD.
std::u32string to_u32(std::string_view s);
std::string to_utf8(std::u32string_view s);

bool is_letter(char32_t c);
bool is_digit_like(char32_t c);   // any Unicode number category
bool is_mark(char32_t c);         // Mn / Mc / Me
bool is_enclosing_mark(char32_t c);
bool is_symbol(char32_t c);       // Sm / Sc / Sk / So
bool is_punctuation(char32_t c);  // P*
bool is_space(char32_t c);
bool is_format_or_control(char32_t c);  // Cf / Cc / Co / Cn / Cs
bool is_pictographic(char32_t c);

}  // namespace postmine::unicode
