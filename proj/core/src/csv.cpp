#include "arminer/csv.hpp"

#include <cstdint>

#include "arminer/error.hpp"

namespace arminer::csv {

void validate_utf8(std::string_view content) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(content.data());
  const std::size_t n = content.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char lead = bytes[i];
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (lead < 0x80) {
      ++i;
      continue;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      throw EncodingError("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if (i + k >= n || (bytes[i + k] & 0xC0) != 0x80) {
        throw EncodingError("invalid UTF-8 continuation at offset " + std::to_string(i));
      }
      cp = (cp << 6) | (bytes[i + k] & 0x3F);
    }
    static constexpr std::uint32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw EncodingError("invalid UTF-8 code point at offset " + std::to_string(i));
    }
    i += extra + 1;
  }
}

std::vector<Record> parse(std::string_view content) {
  validate_utf8(content);

  std::vector<Record> records;
  Record current{1, {}};
  std::string field;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = content.size();
  bool row_open = false;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(current));
    current = Record{line, {}};
    row_open = false;
  };

  while (i < n) {
    row_open = true;
    const char c = content[i];
    if (c == '"') {
      if (!field.empty()) {
        throw ParseError(line, "quote inside unquoted field");
      }
      const std::size_t quote_line = line;
      ++i;
      bool closed = false;
      while (i < n) {
        const char q = content[i];
        if (q == '"') {
          if (i + 1 < n && content[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        if (q == '\n') ++line;
        field.push_back(q);
        ++i;
      }
      if (!closed) {
        throw ParseError(quote_line, "unterminated quoted field");
      }
      if (i < n && content[i] != ',' && content[i] != '\n' &&
          !(content[i] == '\r' && i + 1 < n && content[i + 1] == '\n') &&
          !(content[i] == '\r' && i + 1 == n)) {
        throw ParseError(line, "unexpected character after closing quote");
      }
      continue;
    }
    if (c == ',') {
      end_field();
      ++i;
      continue;
    }
    if (c == '\r' && (i + 1 == n || content[i + 1] == '\n')) {
      ++i;
      continue;
    }
    if (c == '\n') {
      ++line;
      end_record();
      ++i;
      continue;
    }
    field.push_back(c);
    ++i;
  }
  if (row_open) {
    end_record();
  }
  return records;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_row(const Row& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace arminer::csv
