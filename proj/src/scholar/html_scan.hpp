#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Lenient HTML scanning: a flat token stream plus a few lookups over it.
// No tree is built and no well-formedness is required; unclosed elements
// simply extend to the end of the document.
namespace scholar::html {

struct Token {
    enum class Kind { Text, StartTag, EndTag };

    Kind kind = Kind::Text;
    std::string name; // lower-cased tag name; empty for text
    std::vector<std::pair<std::string, std::string>> attributes; // names lower-cased, values decoded
    std::string text; // raw (undecoded) character data for Text tokens
    bool self_closing = false;

    const std::string* attribute(std::string_view attr_name) const;
};

std::vector<Token> tokenize(std::string_view document);

/// Decodes named and numeric character references. Unknown or unterminated
/// references are kept verbatim.
std::string decode_entities(std::string_view text);

/// Tokens strictly inside the first element whose `id` attribute equals `id`
/// (case-sensitive). Missing end tag: runs to the end of the stream.
std::optional<std::span<const Token>> element_by_id(std::span<const Token> tokens, std::string_view id);

/// Decoded text of the given tokens with runs of ASCII whitespace collapsed
/// to one space and trimmed. Non-breaking spaces are preserved.
std::string text_content(std::span<const Token> tokens);

/// Cells of each <tr> inside `tokens`, as decoded, collapsed text. Cells are
/// opened by <td>/<th> and closed by their end tag or by the next cell/row.
std::vector<std::vector<std::string>> table_rows(std::span<const Token> tokens);

} // namespace scholar::html
