#include <doctest.h>

#include "rigidconv/convolution.hpp"
#include "rigidconv/systemio.hpp"

using namespace rigidconv;

TEST_CASE("parse the worked rank-one system") {
    auto f = parse_system(R"({"rank":1,"points":["0","1"],"residues":[[["1/2"]],[["1/3"]]]})");
    CHECK(f.rank == 1);
    CHECK(f.points == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(f.residues[0].at(0, 0) == Rational(1, 2));
    CHECK(f.residues[1].at(0, 0) == Rational(1, 3));
}

TEST_CASE("parse errors carry field paths") {
    try {
        parse_system(R"({"rank":1,"points":["0","1"],"residues":[[["1/0"]],[["1/3"]]]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.path() == "residues[0][0][0]");
    }
    try {
        parse_system(R"({"rank":1,"points":["0","0"],"residues":[[["1"]],[["2"]]]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.path() == "points[1]");
        CHECK(std::string(e.what()).find("DuplicatePoints") != std::string::npos);
    }
    try {
        parse_system(R"({"rank":2,"points":["0"],"residues":[[["1","2"]]]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("ShapeMismatch") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_system("not json"), ParseError);
    CHECK_THROWS_AS(parse_system(R"({"rank":0,"points":[],"residues":[]})"), ParseError);
}

TEST_CASE("canonical round trip on the corpus") {
    for (const auto& doc : corpus()) {
        std::string once = emit_document(doc);
        SystemDocument reparsed = parse_document(once);
        std::string twice = emit_document(reparsed);
        CHECK(once == twice);
        CHECK(reparsed.system.rank == doc.system.rank);
        CHECK(reparsed.system.points == doc.system.points);
        CHECK(reparsed.system.residues == doc.system.residues);
    }
}

TEST_CASE("canonicalization reduces fractions") {
    auto doc = parse_document(R"({"rank":1,"points":["2/4"],"residues":[[["-6/4"]]]})");
    std::string out = emit_document(doc);
    CHECK(out.find("\"1/2\"") != std::string::npos);
    CHECK(out.find("\"-3/2\"") != std::string::npos);
}

TEST_CASE("corpus entries are what they claim to be") {
    CHECK(corpus_names().size() == 7);
    CHECK(corpus_get("kummer-half").system.rank == 1);
    CHECK(corpus_get("mc-worked").system.rank == 2);
    CHECK_THROWS_AS(corpus_get("no-such-entry"), DomainError);

    // the worked entry really is the lambda=1/6 convolution of the pair
    const auto& pair = corpus_get("rank1-pair").system;
    auto built = middle_convolution(pair, Rational(1, 6)).first;
    CHECK(built.residues == corpus_get("mc-worked").system.residues);

    // hypergeometric family instance is rigid and non-resonant
    const auto& hyp = corpus_get("hypergeometric").system;
    CHECK(is_absolutely_irreducible(hyp));
    CHECK(is_non_resonant(hyp));
    CHECK(rigidity_index(hyp) == 2);

    // the non-rigid entry has index 0
    CHECK(rigidity_index(corpus_get("nonrigid-4pt").system) == 0);
    CHECK(is_absolutely_irreducible(corpus_get("nonrigid-4pt").system));
}
