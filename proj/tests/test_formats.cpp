#include "doctest.h"

#include <fstream>
#include <sstream>

#include "authkit/formats.hpp"
#include "authkit/transform.hpp"
#include "fixtures.hpp"

using namespace authkit;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("authcode emission is canonical and byte-stable") {
    const std::string text = emit_authcode(fixtures::fano());
    CHECK(text ==
          "%AUTHCODE v=7 b=7 u=3\n"
          "key 0: 0 | 1 | 3\n"
          "key 1: 1 | 2 | 4\n"
          "key 2: 2 | 3 | 5\n"
          "key 3: 3 | 4 | 6\n"
          "key 4: 4 | 5 | 0\n"
          "key 5: 5 | 6 | 1\n"
          "key 6: 6 | 0 | 2\n");
    CHECK(parse_authcode(text) == fixtures::fano());
    CHECK(emit_authcode(parse_authcode(text)) == text);
}

TEST_CASE("parsing tolerates comments, blank lines, key order and naming lines") {
    const std::string text =
        "# seven keys, three sources\n"
        "%AUTHCODE v=7 b=2 u=3\n"
        "sources s1 s2 s3\n"
        "\n"
        "key 1: 1 | 2 | 4   # shifted once\n"
        "key 0: 0 | 1 | 3\n";
    AuthCode code = parse_authcode(text);
    CHECK(code.b() == 2);
    CHECK(code.matrix.rows[0] == Row{{0}, {1}, {3}});
    CHECK(code.matrix.rows[1] == Row{{1}, {2}, {4}});
}

TEST_CASE("non-canonical rationals are canonicalized on emission") {
    const std::string text =
        "%AUTHCODE v=3 b=2 u=2\n"
        "sourcedist 2/4 3/6\n"
        "key 0: 0 | 1\n"
        "key 1: 1 | 2\n";
    AuthCode code = parse_authcode(text);
    CHECK(code.sources[0] == rat(1, 2));
    // a uniform sourcedist is the default, so it is omitted on emission
    CHECK(emit_authcode(code).find("sourcedist") == std::string::npos);

    const std::string skewed =
        "%AUTHCODE v=3 b=2 u=2\n"
        "sourcedist 2/8 6/8\n"
        "key 0: 0 | 1\n"
        "key 1: 1 | 2\n";
    CHECK(emit_authcode(parse_authcode(skewed)).find("sourcedist 1/4 3/4\n") != std::string::npos);
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_authcode(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(line_of("%AUTHCODE v=7 b=1 u=3\nkey 0: 0 1 3\n") == 2);          // missing '|'
    CHECK(line_of("%AUTHCODE v=7 b=1 u=3\nkey 0: 0 | 1 | 9\n") == 2);      // message out of range
    CHECK(line_of("%AUTHCODE v=7 b=1\nkey 0: 0 | 1 | 3\n") == 1);          // missing header field
    CHECK(line_of("%AUTHCODE v=7 b=1 u=3 v=7\nkey 0: 0 | 1 | 3\n") == 1);  // duplicate field
    CHECK(line_of("%DESIGN v=7 u=3 c=1\nrow 0 | 1 | 3\n") == 1);           // wrong header kind
    CHECK(line_of("%AUTHCODE v=7 b=2 u=3\nkey 0: 0 | 1 | 3\nkey 0: 1 | 2 | 4\n") == 3);  // duplicate key
    CHECK(line_of("%AUTHCODE v=7 b=2 u=3\nkey 0: 0 | 1 | 3\n") == 1);      // missing key line
    CHECK(line_of("%AUTHCODE v=7 b=1 u=2\nsourcedist 1/2\nkey 0: 0 | 1\n") == 2);  // weight count
    CHECK(line_of("%AUTHCODE v=7 b=1 u=2\nsourcedist 1/2 1/3\nkey 0: 0 | 1\n") == 2);  // total not 1
    CHECK(line_of("") == 1);
}

TEST_CASE("overlapping cells in one key line are reported with the row") {
    const std::string text =
        "%AUTHCODE v=7 b=1 u=2\n"
        "key 0: 0 1 | 1 2\n";
    try {
        parse_authcode(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("row 0") != std::string::npos);
    }
}

TEST_CASE("design and baseblock files round-trip") {
    OrderedDesign d = develop(Row{{0, 1}, {2, 4}, {12, 20}}, 25);
    const std::string text = emit_design(d);
    CHECK(parse_design(text) == d);
    CHECK(emit_design(parse_design(text)) == text);
    CHECK(text.substr(0, 22) == "%DESIGN v=25 u=3 c=2\nr");

    BaseBlocks bases{19, 3, 3, {Row{{1, 7, 11}, {4, 6, 9}, {5, 16, 17}}}};
    const std::string base_text = emit_baseblocks(bases);
    CHECK(base_text ==
          "%BASEBLOCKS n=19 u=3 c=3\n"
          "base 1 7 11 | 4 6 9 | 5 16 17\n");
    CHECK(parse_baseblocks(base_text) == bases);
}

TEST_CASE("design emission needs one cell size for the header") {
    OrderedDesign ragged{4, 2, {Row{{0, 1}, {2}}}};
    CHECK_THROWS_AS(emit_design(ragged), std::invalid_argument);
}

TEST_CASE("threshold files round-trip") {
    ThresholdScheme scheme = authcode_to_threshold(fixtures::fano());
    const std::string text = emit_threshold(scheme);
    CHECK(parse_threshold(text) == scheme);
    CHECK(emit_threshold(parse_threshold(text)) == text);
    CHECK(text.substr(0, 26) == "%THRESHOLD22 s=3 a1=7 a2=7");
    // 21 rule lines, sorted by share pair
    CHECK(text.find("rule 0 0 0 1/7\n") != std::string::npos);
    CHECK(text.find("rule 0 1 1 1/7\n") != std::string::npos);
    CHECK(text.find("rule 0 3 2 1/7\n") != std::string::npos);

    auto bad = [](const std::string& t) {
        try {
            parse_threshold(t);
            return -1;
        } catch (const ParseError& e) {
            return e.line;
        }
    };
    CHECK(bad("%THRESHOLD22 s=1 a1=1 a2=1\nrule 0 0 0 1/2\n") == 1);  // mass not 1, reported on header
    CHECK(bad("%THRESHOLD22 s=1 a1=1 a2=1\nrule 0 0 0\n") == 2);
    CHECK(bad("%THRESHOLD22 s=1 a1=1 a2=1\nrule 0 0 0 1/0\n") == 2);
}

TEST_CASE("hostile input fails with a parse error, never a crash") {
    for (const char* text : {"", "#only a comment\n", "%AUTHCODE", "%AUTHCODE v=x b=1 u=1\n",
                             "%AUTHCODE v=1 b=1 u=1\nnonsense\n", "%DESIGN v=3 u=1 c=1\nrow |\n",
                             "%DESIGN v=3 u=1 c=1\nrow 1 |\n", "%THRESHOLD22 s=1 a1=1 a2=1\nrule 0 0 0 one\n",
                             "%BASEBLOCKS n=0 u=1 c=1\nbase 0\n", "%AUTHCODE v=-2 b=1 u=1\nkey 0: 0\n"}) {
        CHECK_THROWS_AS(parse_any(text), ParseError);
    }
}

TEST_CASE("kind sniffing dispatches on the header tag") {
    CHECK(sniff_kind("%DESIGN v=1 u=1 c=1\n") == FileKind::design);
    CHECK(sniff_kind("# c\n%BASEBLOCKS n=1 u=1 c=1\n") == FileKind::baseblocks);
    CHECK(sniff_kind("%AUTHCODE v=1 b=1 u=1\n") == FileKind::authcode);
    CHECK(sniff_kind("%THRESHOLD22 s=1 a1=1 a2=1\n") == FileKind::threshold);
    CHECK_THROWS_AS(sniff_kind("%NOPE\n"), ParseError);
}

TEST_CASE("the shipped data files parse into the reference objects") {
    CHECK(parse_authcode(slurp("fano.authcode")) == fixtures::fano());
    BaseBlocks fano_base = parse_baseblocks(slurp("fano.baseblocks"));
    CHECK(make_authcode(develop(fano_base.bases, fano_base.n)) == fixtures::fano());
    BaseBlocks edf_base = parse_baseblocks(slurp("edf19.baseblocks"));
    CHECK(make_authcode(develop(edf_base.bases, edf_base.n)) == fixtures::edf19());
    BaseBlocks split_base = parse_baseblocks(slurp("split25.baseblocks"));
    CHECK(make_authcode(develop(split_base.bases, split_base.n)) == fixtures::split25());
    BaseBlocks bibd_base = parse_baseblocks(slurp("bibd13.baseblocks"));
    CHECK(bibd_base.bases.size() == 2);
    CHECK_THROWS_AS(parse_authcode(slurp("bad_overlap.authcode")), ParseError);
}
