#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace arminer::csv {

using Row = std::vector<std::string>;

struct Record {
  std::size_t line;  // 1-based line on which the record starts
  Row fields;
};

// Splits RFC-4180 CSV text into records. LF and CRLF line endings are both
// accepted; a trailing line break does not produce an extra record. Rows may
// have differing field counts. Throws EncodingError on invalid UTF-8 and
// ParseError (with line number) on malformed quoting.
std::vector<Record> parse(std::string_view content);

// Throws EncodingError naming the byte offset of the first invalid sequence.
void validate_utf8(std::string_view content);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string format_row(const Row& fields);

}  // namespace arminer::csv
