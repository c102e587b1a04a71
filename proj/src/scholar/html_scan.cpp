#include "scholar/html_scan.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace scholar::html {

namespace {

bool is_ascii_space(char c) noexcept
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_alpha(char c) noexcept
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char lower(char c) noexcept
{
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), lower);
    return out;
}

bool iequals_at(std::string_view haystack, std::size_t pos, std::string_view needle) noexcept
{
    if (pos + needle.size() > haystack.size())
        return false;
    for (std::size_t i = 0; i < needle.size(); ++i) {
        if (lower(haystack[pos + i]) != lower(needle[i]))
            return false;
    }
    return true;
}

// Elements whose content is not markup.
bool is_raw_text_element(std::string_view name) noexcept
{
    return name == "script" || name == "style" || name == "textarea" || name == "title" ||
           name == "xmp" || name == "noembed";
}

void append_utf8(std::string& out, std::uint32_t cp)
{
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
        cp = 0xFFFD;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

struct NamedEntity {
    std::string_view name;
    std::uint32_t code_point;
};

// Markup-significant entities, the Latin-1 block and common punctuation.
constexpr std::array kNamedEntities = std::to_array<NamedEntity>({
    {"amp", '&'}, {"lt", '<'}, {"gt", '>'}, {"quot", '"'}, {"apos", '\''},
    {"nbsp", 0xA0}, {"iexcl", 0xA1}, {"cent", 0xA2}, {"pound", 0xA3}, {"curren", 0xA4},
    {"yen", 0xA5}, {"brvbar", 0xA6}, {"sect", 0xA7}, {"uml", 0xA8}, {"copy", 0xA9},
    {"ordf", 0xAA}, {"laquo", 0xAB}, {"not", 0xAC}, {"shy", 0xAD}, {"reg", 0xAE},
    {"macr", 0xAF}, {"deg", 0xB0}, {"plusmn", 0xB1}, {"sup2", 0xB2}, {"sup3", 0xB3},
    {"acute", 0xB4}, {"micro", 0xB5}, {"para", 0xB6}, {"middot", 0xB7}, {"cedil", 0xB8},
    {"sup1", 0xB9}, {"ordm", 0xBA}, {"raquo", 0xBB}, {"frac14", 0xBC}, {"frac12", 0xBD},
    {"frac34", 0xBE}, {"iquest", 0xBF}, {"Agrave", 0xC0}, {"Aacute", 0xC1}, {"Acirc", 0xC2},
    {"Atilde", 0xC3}, {"Auml", 0xC4}, {"Aring", 0xC5}, {"AElig", 0xC6}, {"Ccedil", 0xC7},
    {"Egrave", 0xC8}, {"Eacute", 0xC9}, {"Ecirc", 0xCA}, {"Euml", 0xCB}, {"Igrave", 0xCC},
    {"Iacute", 0xCD}, {"Icirc", 0xCE}, {"Iuml", 0xCF}, {"ETH", 0xD0}, {"Ntilde", 0xD1},
    {"Ograve", 0xD2}, {"Oacute", 0xD3}, {"Ocirc", 0xD4}, {"Otilde", 0xD5}, {"Ouml", 0xD6},
    {"times", 0xD7}, {"Oslash", 0xD8}, {"Ugrave", 0xD9}, {"Uacute", 0xDA}, {"Ucirc", 0xDB},
    {"Uuml", 0xDC}, {"Yacute", 0xDD}, {"THORN", 0xDE}, {"szlig", 0xDF}, {"agrave", 0xE0},
    {"aacute", 0xE1}, {"acirc", 0xE2}, {"atilde", 0xE3}, {"auml", 0xE4}, {"aring", 0xE5},
    {"aelig", 0xE6}, {"ccedil", 0xE7}, {"egrave", 0xE8}, {"eacute", 0xE9}, {"ecirc", 0xEA},
    {"euml", 0xEB}, {"igrave", 0xEC}, {"iacute", 0xED}, {"icirc", 0xEE}, {"iuml", 0xEF},
    {"eth", 0xF0}, {"ntilde", 0xF1}, {"ograve", 0xF2}, {"oacute", 0xF3}, {"ocirc", 0xF4},
    {"otilde", 0xF5}, {"ouml", 0xF6}, {"divide", 0xF7}, {"oslash", 0xF8}, {"ugrave", 0xF9},
    {"uacute", 0xFA}, {"ucirc", 0xFB}, {"uuml", 0xFC}, {"yacute", 0xFD}, {"thorn", 0xFE},
    {"yuml", 0xFF}, {"OElig", 0x152}, {"oelig", 0x153}, {"Scaron", 0x160}, {"scaron", 0x161},
    {"Yuml", 0x178}, {"ensp", 0x2002}, {"emsp", 0x2003}, {"thinsp", 0x2009}, {"zwnj", 0x200C},
    {"zwj", 0x200D}, {"ndash", 0x2013}, {"mdash", 0x2014}, {"lsquo", 0x2018}, {"rsquo", 0x2019},
    {"sbquo", 0x201A}, {"ldquo", 0x201C}, {"rdquo", 0x201D}, {"bdquo", 0x201E}, {"hellip", 0x2026},
    {"euro", 0x20AC}, {"trade", 0x2122},
});

std::optional<std::uint32_t> lookup_entity(std::string_view name)
{
    for (const auto& entity : kNamedEntities) {
        if (entity.name == name)
            return entity.code_point;
    }
    return std::nullopt;
}

// Parses one character reference starting at text[pos] == '&'. On success
// appends the decoded text and returns the index just past the ';'.
std::optional<std::size_t> decode_reference(std::string_view text, std::size_t pos, std::string& out)
{
    const auto semi = text.find(';', pos + 1);
    if (semi == std::string_view::npos || semi - pos > 12)
        return std::nullopt;
    const std::string_view body = text.substr(pos + 1, semi - pos - 1);
    if (body.empty())
        return std::nullopt;

    if (body[0] == '#') {
        std::string_view digits = body.substr(1);
        int base = 10;
        if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
            base = 16;
            digits.remove_prefix(1);
        }
        if (digits.empty())
            return std::nullopt;
        std::uint32_t cp = 0;
        for (char c : digits) {
            int v = -1;
            if (c >= '0' && c <= '9')
                v = c - '0';
            else if (base == 16 && c >= 'a' && c <= 'f')
                v = c - 'a' + 10;
            else if (base == 16 && c >= 'A' && c <= 'F')
                v = c - 'A' + 10;
            if (v < 0)
                return std::nullopt;
            cp = cp * static_cast<std::uint32_t>(base) + static_cast<std::uint32_t>(v);
            if (cp > 0x10FFFF)
                cp = 0x110000; // saturate; append_utf8 maps it to U+FFFD
        }
        append_utf8(out, cp);
        return semi + 1;
    }

    if (const auto cp = lookup_entity(body)) {
        append_utf8(out, *cp);
        return semi + 1;
    }
    return std::nullopt;
}

class Tokenizer {
public:
    explicit Tokenizer(std::string_view doc) : doc_(doc) {}

    std::vector<Token> run()
    {
        while (pos_ < doc_.size()) {
            const auto lt = doc_.find('<', pos_);
            if (lt == std::string_view::npos) {
                emit_text(doc_.substr(pos_));
                break;
            }
            if (lt > pos_)
                emit_text(doc_.substr(pos_, lt - pos_));
            pos_ = lt;
            if (!consume_markup())
                emit_text(doc_.substr(pos_++, 1));
        }
        return std::move(tokens_);
    }

private:
    void emit_text(std::string_view text)
    {
        if (text.empty())
            return;
        if (!tokens_.empty() && tokens_.back().kind == Token::Kind::Text) {
            tokens_.back().text.append(text);
            return;
        }
        Token t;
        t.kind = Token::Kind::Text;
        t.text = std::string(text);
        tokens_.push_back(std::move(t));
    }

    // Returns false if the '<' at pos_ does not start markup.
    bool consume_markup()
    {
        const std::string_view rest = doc_.substr(pos_);
        if (rest.starts_with("<!--")) {
            const auto end = doc_.find("-->", pos_ + 4);
            pos_ = end == std::string_view::npos ? doc_.size() : end + 3;
            return true;
        }
        if (rest.size() >= 2 && (rest[1] == '!' || rest[1] == '?')) {
            const auto end = doc_.find('>', pos_);
            pos_ = end == std::string_view::npos ? doc_.size() : end + 1;
            return true;
        }
        if (rest.size() >= 3 && rest[1] == '/' && is_alpha(rest[2])) {
            std::size_t i = pos_ + 2;
            const std::size_t name_start = i;
            while (i < doc_.size() && !is_ascii_space(doc_[i]) && doc_[i] != '>' && doc_[i] != '/')
                ++i;
            Token t;
            t.kind = Token::Kind::EndTag;
            t.name = to_lower(doc_.substr(name_start, i - name_start));
            const auto end = doc_.find('>', i);
            pos_ = end == std::string_view::npos ? doc_.size() : end + 1;
            tokens_.push_back(std::move(t));
            return true;
        }
        if (rest.size() >= 2 && is_alpha(rest[1])) {
            consume_start_tag();
            return true;
        }
        return false;
    }

    void consume_start_tag()
    {
        std::size_t i = pos_ + 1;
        const std::size_t name_start = i;
        while (i < doc_.size() && !is_ascii_space(doc_[i]) && doc_[i] != '>' && doc_[i] != '/')
            ++i;
        Token t;
        t.kind = Token::Kind::StartTag;
        t.name = to_lower(doc_.substr(name_start, i - name_start));

        while (i < doc_.size()) {
            while (i < doc_.size() && (is_ascii_space(doc_[i]) || doc_[i] == '/')) {
                if (doc_[i] == '/' && i + 1 < doc_.size() && doc_[i + 1] == '>')
                    t.self_closing = true;
                ++i;
            }
            if (i >= doc_.size() || doc_[i] == '>')
                break;
            const std::size_t attr_start = i;
            while (i < doc_.size() && !is_ascii_space(doc_[i]) && doc_[i] != '>' && doc_[i] != '=' &&
                   !(doc_[i] == '/' && i + 1 < doc_.size() && doc_[i + 1] == '>'))
                ++i;
            std::string attr_name = to_lower(doc_.substr(attr_start, i - attr_start));
            if (attr_name.empty()) {
                ++i; // stray '=' or similar
                continue;
            }
            while (i < doc_.size() && is_ascii_space(doc_[i]))
                ++i;
            std::string value;
            if (i < doc_.size() && doc_[i] == '=') {
                ++i;
                while (i < doc_.size() && is_ascii_space(doc_[i]))
                    ++i;
                if (i < doc_.size() && (doc_[i] == '"' || doc_[i] == '\'')) {
                    const char quote = doc_[i];
                    const auto close = doc_.find(quote, i + 1);
                    const auto stop = close == std::string_view::npos ? doc_.size() : close;
                    value = decode_entities(doc_.substr(i + 1, stop - i - 1));
                    i = close == std::string_view::npos ? doc_.size() : close + 1;
                } else {
                    const std::size_t value_start = i;
                    while (i < doc_.size() && !is_ascii_space(doc_[i]) && doc_[i] != '>')
                        ++i;
                    value = decode_entities(doc_.substr(value_start, i - value_start));
                }
            }
            t.attributes.emplace_back(std::move(attr_name), std::move(value));
        }
        pos_ = i < doc_.size() ? i + 1 : doc_.size();

        const bool raw = is_raw_text_element(t.name) && !t.self_closing;
        const std::string name = t.name;
        tokens_.push_back(std::move(t));
        if (raw)
            consume_raw_text(name);
    }

    void consume_raw_text(const std::string& name)
    {
        std::size_t search = pos_;
        while (true) {
            const auto lt = doc_.find("</", search);
            if (lt == std::string_view::npos) {
                emit_text(doc_.substr(pos_));
                pos_ = doc_.size();
                return;
            }
            const std::size_t after = lt + 2 + name.size();
            if (iequals_at(doc_, lt + 2, name) &&
                (after >= doc_.size() || doc_[after] == '>' || is_ascii_space(doc_[after]) || doc_[after] == '/')) {
                emit_text(doc_.substr(pos_, lt - pos_));
                Token end;
                end.kind = Token::Kind::EndTag;
                end.name = name;
                const auto gt = doc_.find('>', after);
                pos_ = gt == std::string_view::npos ? doc_.size() : gt + 1;
                tokens_.push_back(std::move(end));
                return;
            }
            search = lt + 2;
        }
    }

    std::string_view doc_;
    std::size_t pos_ = 0;
    std::vector<Token> tokens_;
};

void append_collapsed(std::string& out, std::string_view decoded, bool& pending_space)
{
    for (char c : decoded) {
        if (is_ascii_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space && !out.empty())
            out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
}

} // namespace

const std::string* Token::attribute(std::string_view attr_name) const
{
    for (const auto& [key, value] : attributes) {
        if (key == attr_name)
            return &value;
    }
    return nullptr;
}

std::vector<Token> tokenize(std::string_view document)
{
    return Tokenizer(document).run();
}

std::string decode_entities(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '&') {
            if (const auto next = decode_reference(text, i, out)) {
                i = *next;
                continue;
            }
        }
        out.push_back(text[i++]);
    }
    return out;
}

std::optional<std::span<const Token>> element_by_id(std::span<const Token> tokens, std::string_view id)
{
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token& open = tokens[i];
        if (open.kind != Token::Kind::StartTag)
            continue;
        const std::string* value = open.attribute("id");
        if (value == nullptr || *value != id)
            continue;
        if (open.self_closing)
            return tokens.subspan(i + 1, 0);

        int depth = 1;
        for (std::size_t j = i + 1; j < tokens.size(); ++j) {
            const Token& t = tokens[j];
            if (t.name != open.name)
                continue;
            if (t.kind == Token::Kind::StartTag && !t.self_closing)
                ++depth;
            else if (t.kind == Token::Kind::EndTag && --depth == 0)
                return tokens.subspan(i + 1, j - i - 1);
        }
        return tokens.subspan(i + 1);
    }
    return std::nullopt;
}

std::string text_content(std::span<const Token> tokens)
{
    std::string out;
    bool pending_space = false;
    for (const Token& t : tokens) {
        if (t.kind == Token::Kind::Text)
            append_collapsed(out, decode_entities(t.text), pending_space);
    }
    return out;
}

std::vector<std::vector<std::string>> table_rows(std::span<const Token> tokens)
{
    std::vector<std::vector<std::string>> rows;
    bool in_row = false;
    bool in_cell = false;
    bool pending_space = false;

    const auto open_row = [&] {
        rows.emplace_back();
        in_row = true;
        in_cell = false;
    };

    for (const Token& t : tokens) {
        switch (t.kind) {
        case Token::Kind::StartTag:
            if (t.name == "tr") {
                open_row();
            } else if (t.name == "td" || t.name == "th") {
                if (!in_row)
                    open_row();
                rows.back().emplace_back();
                in_cell = true;
                pending_space = false;
            }
            break;
        case Token::Kind::EndTag:
            if (t.name == "td" || t.name == "th") {
                in_cell = false;
            } else if (t.name == "tr") {
                in_row = false;
                in_cell = false;
            }
            break;
        case Token::Kind::Text:
            if (in_cell)
                append_collapsed(rows.back().back(), decode_entities(t.text), pending_space);
            break;
        }
    }
    return rows;
}

} // namespace scholar::html
