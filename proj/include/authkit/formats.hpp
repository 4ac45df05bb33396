#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "authkit/authcode.hpp"
#include "authkit/design.hpp"
#include "authkit/threshold.hpp"

namespace authkit {

// Line-oriented text formats, '#' to end of line is a comment. Emission is
// byte-deterministic: ascending ids, sorted cells, single spaces, rationals
// canonical; parse(emit(x)) == x for every well-formed object.

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ": " + message), line(line_) {}
};

struct BaseBlocks {
    int n = 0;  // group order, points 0..n-1
    int u = 0;  // cells per base row
    int c = 0;  // points per cell
    std::vector<Row> bases;

    bool operator==(const BaseBlocks&) const = default;
};

enum class FileKind { design, baseblocks, authcode, threshold };

/// Kind from the %HEADER tag of the first significant line.
FileKind sniff_kind(std::string_view text);

OrderedDesign parse_design(std::string_view text);
BaseBlocks parse_baseblocks(std::string_view text);
AuthCode parse_authcode(std::string_view text);
ThresholdScheme parse_threshold(std::string_view text);

using ParsedFile = std::variant<OrderedDesign, BaseBlocks, AuthCode, ThresholdScheme>;
ParsedFile parse_any(std::string_view text);

std::string emit_design(const OrderedDesign& d);  // requires one common cell size
std::string emit_baseblocks(const BaseBlocks& b);
std::string emit_authcode(const AuthCode& code);
std::string emit_threshold(const ThresholdScheme& scheme);

}  // namespace authkit
