#include "postmine/unicode.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace postmine::unicode {

namespace {

const icu::Normalizer2& nfc() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
    return *n;
}

const icu::Normalizer2& nfd() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFD normalizer unavailable");
    return *n;
}

int8_t category(char32_t c) { return static_cast<int8_t>(u_charType(static_cast<UChar32>(c))); }

}  // namespace

bool is_valid_utf8(std::string_view s) {
    const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
    const int32_t len = static_cast<int32_t>(s.size());
    int32_t i = 0;
    while (i < len) {
        UChar32 c;
        U8_NEXT(bytes, i, len, c);
        if (c < 0) return false;
    }
    return true;
}

std::u32string to_u32(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
    const int32_t len = static_cast<int32_t>(s.size());
    int32_t i = 0;
    while (i < len) {
        UChar32 c;
        U8_NEXT(bytes, i, len, c);
        out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
    }
    return out;
}

std::string to_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t c : s) {
        uint8_t buf[4];
        int32_t n = 0;
        UBool error = false;
        U8_APPEND(buf, n, 4, static_cast<UChar32>(c), error);
        if (error) {
            out += "\xEF\xBF\xBD";
        } else {
            out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
        }
    }
    return out;
}

std::string fold(std::string_view s) {
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString text = icu::UnicodeString::fromUTF8(
        icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    icu::UnicodeString composed = nfc().normalize(text, status);
    composed.toLower(icu::Locale::getRoot());
    icu::UnicodeString decomposed = nfd().normalize(composed, status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");

    icu::UnicodeString stripped;
    for (int32_t i = 0; i < decomposed.length();) {
        const UChar32 c = decomposed.char32At(i);
        if (u_charType(c) != U_NON_SPACING_MARK) stripped.append(c);
        i += U16_LENGTH(c);
    }
    icu::UnicodeString result = nfc().normalize(stripped, status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");
    std::string out;
    result.toUTF8String(out);
    return out;
}

bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)) != 0; }

bool is_digit_like(char32_t c) {
    const auto t = category(c);
    return t == U_DECIMAL_DIGIT_NUMBER || t == U_LETTER_NUMBER || t == U_OTHER_NUMBER;
}

bool is_mark(char32_t c) {
    const auto t = category(c);
    return t == U_NON_SPACING_MARK || t == U_COMBINING_SPACING_MARK || t == U_ENCLOSING_MARK;
}

bool is_enclosing_mark(char32_t c) { return category(c) == U_ENCLOSING_MARK; }

bool is_symbol(char32_t c) {
    const auto t = category(c);
    return t == U_MATH_SYMBOL || t == U_CURRENCY_SYMBOL || t == U_MODIFIER_SYMBOL ||
           t == U_OTHER_SYMBOL;
}

bool is_punctuation(char32_t c) { return u_ispunct(static_cast<UChar32>(c)) != 0; }

bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0; }

bool is_format_or_control(char32_t c) {
    const auto t = category(c);
    return t == U_FORMAT_CHAR || t == U_CONTROL_CHAR || t == U_PRIVATE_USE_CHAR ||
           t == U_UNASSIGNED || t == U_SURROGATE;
}

bool is_pictographic(char32_t c) {
    return u_hasBinaryProperty(static_cast<UChar32>(c), UCHAR_EXTENDED_PICTOGRAPHIC) != 0;
}

}  // namespace postmine::unicode
