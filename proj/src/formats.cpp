#include "authkit/formats.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

namespace authkit {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++number;
        if (size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::istringstream stream{std::string(raw)};
        std::string token;
        while (stream >> token) line.tokens.push_back(token);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

int parse_int(const std::string& token, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line, "expected an integer, got '" + token + "'");
    return value;
}

// "key=value ..." header fields; every listed key required exactly once.
std::map<std::string, int> parse_header(const Line& line, const std::string& tag,
                                        const std::vector<std::string>& keys) {
    std::map<std::string, int> out;
    for (size_t i = 1; i < line.tokens.size(); ++i) {
        const std::string& token = line.tokens[i];
        size_t eq = token.find('=');
        if (eq == std::string::npos) throw ParseError(line.number, "expected key=value, got '" + token + "'");
        std::string key = token.substr(0, eq);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ParseError(line.number, "unknown " + tag + " field '" + key + "'");
        if (out.count(key)) throw ParseError(line.number, "duplicate field '" + key + "'");
        out[key] = parse_int(token.substr(eq + 1), line.number);
    }
    for (const std::string& key : keys)
        if (!out.count(key)) throw ParseError(line.number, tag + " header is missing '" + key + "'");
    return out;
}

const Line& header_line(const std::vector<Line>& lines, const std::string& tag) {
    if (lines.empty()) throw ParseError(1, "empty file, expected a " + tag + " header");
    if (lines[0].tokens[0] != tag)
        throw ParseError(lines[0].number, "expected header '" + tag + "', got '" + lines[0].tokens[0] + "'");
    return lines[0];
}

// cells separated by '|' tokens; points validated against 0..v-1
Row parse_cells(const Line& line, size_t first_token, int v) {
    Row row;
    Cell cell;
    for (size_t i = first_token; i < line.tokens.size(); ++i) {
        if (line.tokens[i] == "|") {
            if (cell.empty()) throw ParseError(line.number, "empty cell");
            row.push_back(std::move(cell));
            cell = {};
            continue;
        }
        int p = parse_int(line.tokens[i], line.number);
        if (p < 0 || p >= v)
            throw ParseError(line.number, "point " + std::to_string(p) + " out of range 0.." + std::to_string(v - 1));
        cell.push_back(p);
    }
    if (cell.empty()) throw ParseError(line.number, "empty cell");
    row.push_back(std::move(cell));
    for (Cell& c : row) {
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end())
            throw ParseError(line.number, "repeated point within a cell");
    }
    return row;
}

void check_row_shape(const Line& line, const Row& row, int u, int c) {
    if (static_cast<int>(row.size()) != u)
        throw ParseError(line.number,
                         "row has " + std::to_string(row.size()) + " cells, header says u=" + std::to_string(u));
    for (const Cell& cell : row)
        if (static_cast<int>(cell.size()) != c)
            throw ParseError(line.number, "cell has " + std::to_string(cell.size()) +
                                              " points, header says c=" + std::to_string(c));
}

Rational parse_rational(const std::string& token, int line) {
    try {
        return Rational::parse(token);
    } catch (const std::exception& e) {
        throw ParseError(line, e.what());
    }
}

std::string cells_text(const Row& row) {
    std::string out;
    for (size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out += " |";
        for (int p : row[i]) out += " " + std::to_string(p);
    }
    return out;
}

int uniform_cell_size(const std::vector<Row>& rows, const char* what) {
    int c = static_cast<int>(rows.at(0).at(0).size());
    for (const Row& row : rows)
        for (const Cell& cell : row)
            if (static_cast<int>(cell.size()) != c)
                throw std::invalid_argument(std::string(what) + ": cells vary in size, cannot emit a c= header");
    return c;
}

}  // namespace

FileKind sniff_kind(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "empty file");
    const std::string& tag = lines[0].tokens[0];
    if (tag == "%DESIGN") return FileKind::design;
    if (tag == "%BASEBLOCKS") return FileKind::baseblocks;
    if (tag == "%AUTHCODE") return FileKind::authcode;
    if (tag == "%THRESHOLD22") return FileKind::threshold;
    throw ParseError(lines[0].number, "unknown header '" + tag + "'");
}

OrderedDesign parse_design(std::string_view text) {
    auto lines = tokenize(text);
    auto header = parse_header(header_line(lines, "%DESIGN"), "%DESIGN", {"v", "u", "c"});
    OrderedDesign d;
    d.v = header["v"];
    d.u = header["u"];
    int c = header["c"];
    if (d.v < 1 || d.u < 1 || c < 1) throw ParseError(lines[0].number, "v, u, c must be positive");
    for (size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] == "sources") continue;  // cosmetic naming line
        if (line.tokens[0] != "row") throw ParseError(line.number, "expected 'row', got '" + line.tokens[0] + "'");
        Row row = parse_cells(line, 1, d.v);
        check_row_shape(line, row, d.u, c);
        d.rows.push_back(std::move(row));
    }
    if (d.rows.empty()) throw ParseError(lines[0].number, "design has no rows");
    try {
        require_well_formed(d);
    } catch (const std::invalid_argument& e) {
        throw ParseError(lines[0].number, e.what());
    }
    return d;
}

BaseBlocks parse_baseblocks(std::string_view text) {
    auto lines = tokenize(text);
    auto header = parse_header(header_line(lines, "%BASEBLOCKS"), "%BASEBLOCKS", {"n", "u", "c"});
    BaseBlocks out;
    out.n = header["n"];
    out.u = header["u"];
    out.c = header["c"];
    if (out.n < 1 || out.u < 1 || out.c < 1) throw ParseError(lines[0].number, "n, u, c must be positive");
    for (size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] != "base") throw ParseError(line.number, "expected 'base', got '" + line.tokens[0] + "'");
        Row row = parse_cells(line, 1, out.n);
        check_row_shape(line, row, out.u, out.c);
        std::vector<char> seen(static_cast<size_t>(out.n), 0);
        for (const Cell& cell : row)
            for (int p : cell) {
                if (seen[static_cast<size_t>(p)])
                    throw ParseError(line.number, "point " + std::to_string(p) + " appears in two cells");
                seen[static_cast<size_t>(p)] = 1;
            }
        out.bases.push_back(std::move(row));
    }
    if (out.bases.empty()) throw ParseError(lines[0].number, "no base blocks");
    return out;
}

AuthCode parse_authcode(std::string_view text) {
    auto lines = tokenize(text);
    auto header = parse_header(header_line(lines, "%AUTHCODE"), "%AUTHCODE", {"v", "b", "u"});
    const int v = header["v"], b = header["b"], u = header["u"];
    if (v < 1 || b < 1 || u < 1) throw ParseError(lines[0].number, "v, b, u must be positive");
    std::vector<Row> rows(static_cast<size_t>(b));
    std::vector<char> have(static_cast<size_t>(b), 0);
    std::optional<Distribution> sources;
    for (size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] == "sources") continue;
        if (line.tokens[0] == "sourcedist") {
            if (sources) throw ParseError(line.number, "duplicate sourcedist line");
            if (static_cast<int>(line.tokens.size()) - 1 != u)
                throw ParseError(line.number, "sourcedist needs " + std::to_string(u) + " weights");
            std::vector<Rational> w;
            for (size_t t = 1; t < line.tokens.size(); ++t) w.push_back(parse_rational(line.tokens[t], line.number));
            if (auto err = distribution_error(w)) throw ParseError(line.number, *err);
            sources = Distribution::from_weights(std::move(w));
            continue;
        }
        if (line.tokens[0] != "key") throw ParseError(line.number, "expected 'key', got '" + line.tokens[0] + "'");
        if (line.tokens.size() < 2 || line.tokens[1].empty() || line.tokens[1].back() != ':')
            throw ParseError(line.number, "expected 'key <id>:'");
        int id = parse_int(line.tokens[1].substr(0, line.tokens[1].size() - 1), line.number);
        if (id < 0 || id >= b) throw ParseError(line.number, "key id " + std::to_string(id) + " out of range");
        if (have[static_cast<size_t>(id)]) throw ParseError(line.number, "duplicate key " + std::to_string(id));
        have[static_cast<size_t>(id)] = 1;
        Row row = parse_cells(line, 2, v);
        if (static_cast<int>(row.size()) != u)
            throw ParseError(line.number,
                             "key has " + std::to_string(row.size()) + " cells, header says u=" + std::to_string(u));
        rows[static_cast<size_t>(id)] = std::move(row);
    }
    for (int id = 0; id < b; ++id)
        if (!have[static_cast<size_t>(id)])
            throw ParseError(lines[0].number, "missing key " + std::to_string(id));
    OrderedDesign matrix{v, u, std::move(rows)};
    try {
        return sources ? make_authcode(std::move(matrix), *sources) : make_authcode(std::move(matrix));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lines[0].number, e.what());
    }
}

ThresholdScheme parse_threshold(std::string_view text) {
    auto lines = tokenize(text);
    auto header = parse_header(header_line(lines, "%THRESHOLD22"), "%THRESHOLD22", {"s", "a1", "a2"});
    const int s = header["s"], a1 = header["a1"], a2 = header["a2"];
    if (s < 1 || a1 < 1 || a2 < 1) throw ParseError(lines[0].number, "s, a1, a2 must be positive");
    std::optional<Distribution> secrets;
    std::vector<DistributionRule> rules;
    for (size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] == "secretdist") {
            if (secrets) throw ParseError(line.number, "duplicate secretdist line");
            if (static_cast<int>(line.tokens.size()) - 1 != s)
                throw ParseError(line.number, "secretdist needs " + std::to_string(s) + " weights");
            std::vector<Rational> w;
            for (size_t t = 1; t < line.tokens.size(); ++t) w.push_back(parse_rational(line.tokens[t], line.number));
            if (auto err = distribution_error(w)) throw ParseError(line.number, *err);
            secrets = Distribution::from_weights(std::move(w));
            continue;
        }
        if (line.tokens[0] != "rule") throw ParseError(line.number, "expected 'rule', got '" + line.tokens[0] + "'");
        if (line.tokens.size() != 5) throw ParseError(line.number, "expected 'rule <v1> <v2> <s> <weight>'");
        DistributionRule r;
        r.share1 = parse_int(line.tokens[1], line.number);
        r.share2 = parse_int(line.tokens[2], line.number);
        r.secret = parse_int(line.tokens[3], line.number);
        r.weight = parse_rational(line.tokens[4], line.number);
        if (r.share1 < 0 || r.share1 >= a1 || r.share2 < 0 || r.share2 >= a2 || r.secret < 0 || r.secret >= s)
            throw ParseError(line.number, "rule ids out of range");
        rules.push_back(std::move(r));
    }
    try {
        return secrets ? make_scheme(s, a1, a2, *secrets, std::move(rules))
                       : make_scheme(s, a1, a2, std::move(rules));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lines[0].number, e.what());
    }
}

ParsedFile parse_any(std::string_view text) {
    switch (sniff_kind(text)) {
        case FileKind::design:
            return parse_design(text);
        case FileKind::baseblocks:
            return parse_baseblocks(text);
        case FileKind::authcode:
            return parse_authcode(text);
        case FileKind::threshold:
            return parse_threshold(text);
    }
    throw std::logic_error("unreachable");
}

std::string emit_design(const OrderedDesign& d) {
    require_well_formed(d);
    if (d.rows.empty()) throw std::invalid_argument("emit_design: no rows");
    int c = uniform_cell_size(d.rows, "emit_design");
    std::string out = "%DESIGN v=" + std::to_string(d.v) + " u=" + std::to_string(d.u) + " c=" + std::to_string(c) +
                      "\n";
    for (const Row& row : d.rows) out += "row" + cells_text(row) + "\n";
    return out;
}

std::string emit_baseblocks(const BaseBlocks& b) {
    if (b.bases.empty()) throw std::invalid_argument("emit_baseblocks: no base blocks");
    std::string out = "%BASEBLOCKS n=" + std::to_string(b.n) + " u=" + std::to_string(b.u) +
                      " c=" + std::to_string(b.c) + "\n";
    for (const Row& row : b.bases) out += "base" + cells_text(row) + "\n";
    return out;
}

std::string emit_authcode(const AuthCode& code) {
    std::string out = "%AUTHCODE v=" + std::to_string(code.v()) + " b=" + std::to_string(code.b()) +
                      " u=" + std::to_string(code.u()) + "\n";
    if (!code.sources.is_uniform()) {
        out += "sourcedist";
        for (const Rational& w : code.sources.weights()) out += " " + w.str();
        out += "\n";
    }
    for (int key = 0; key < code.b(); ++key)
        out += "key " + std::to_string(key) + ":" + cells_text(code.matrix.rows[static_cast<size_t>(key)]) + "\n";
    return out;
}

std::string emit_threshold(const ThresholdScheme& scheme) {
    std::string out = "%THRESHOLD22 s=" + std::to_string(scheme.secret_count) +
                      " a1=" + std::to_string(scheme.share1_count) + " a2=" + std::to_string(scheme.share2_count) +
                      "\n";
    if (!scheme.secrets.is_uniform()) {
        out += "secretdist";
        for (const Rational& w : scheme.secrets.weights()) out += " " + w.str();
        out += "\n";
    }
    for (const DistributionRule& r : scheme.rules)
        out += "rule " + std::to_string(r.share1) + " " + std::to_string(r.share2) + " " + std::to_string(r.secret) +
               " " + r.weight.str() + "\n";
    return out;
}

}  // namespace authkit
