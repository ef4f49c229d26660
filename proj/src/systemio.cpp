#include "rigidconv/systemio.hpp"

#include "rigidconv/convolution.hpp"

namespace rigidconv {

using nlohmann::json;

namespace {

Rational parse_rational_at(const json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a rational string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const DomainError& e) {
        throw ParseError(path, e.what());
    }
}

} // namespace

SystemDocument parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", e.what());
    }
    if (!j.is_object()) throw ParseError("", "document must be a JSON object");

    SystemDocument doc;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("name", "expected a string");
        doc.name = j["name"].get<std::string>();
    }
    if (j.contains("description")) {
        if (!j["description"].is_string()) throw ParseError("description", "expected a string");
        doc.description = j["description"].get<std::string>();
    }
    if (!j.contains("rank") || !j["rank"].is_number_integer() || j["rank"].get<long>() <= 0)
        throw ParseError("rank", "expected a positive integer");
    doc.system.rank = (int)j["rank"].get<long>();

    if (!j.contains("points") || !j["points"].is_array())
        throw ParseError("points", "expected an array of rational strings");
    for (size_t i = 0; i < j["points"].size(); i++) {
        std::string path = "points[" + std::to_string(i) + "]";
        Rational q = parse_rational_at(j["points"][i], path);
        for (const auto& prev : doc.system.points)
            if (prev == q) throw ParseError(path, "DuplicatePoints: " + q.str() + " repeats");
        doc.system.points.push_back(q);
    }

    if (!j.contains("residues") || !j["residues"].is_array())
        throw ParseError("residues", "expected an array of matrices");
    if (j["residues"].size() != doc.system.points.size())
        throw ParseError("residues", "count differs from points count");
    int n = doc.system.rank;
    for (size_t k = 0; k < j["residues"].size(); k++) {
        const json& mat = j["residues"][k];
        std::string mpath = "residues[" + std::to_string(k) + "]";
        if (!mat.is_array() || (int)mat.size() != n)
            throw ParseError(mpath, "ShapeMismatch: expected " + std::to_string(n) + " rows");
        MatQ a(n, n);
        for (int i = 0; i < n; i++) {
            const json& row = mat[i];
            std::string rpath = mpath + "[" + std::to_string(i) + "]";
            if (!row.is_array() || (int)row.size() != n)
                throw ParseError(rpath,
                                 "ShapeMismatch: expected " + std::to_string(n) + " entries");
            for (int c = 0; c < n; c++)
                a.at(i, c) = parse_rational_at(row[c], rpath + "[" + std::to_string(c) + "]");
        }
        doc.system.residues.push_back(std::move(a));
    }
    validate(doc.system);
    return doc;
}

FuchsianSystem parse_system(const std::string& text) {
    return parse_document(text).system;
}

json system_json(const FuchsianSystem& f) {
    json j;
    j["rank"] = f.rank;
    json pts = json::array();
    for (const auto& q : f.points) pts.push_back(q.str());
    j["points"] = pts;
    json res = json::array();
    for (const auto& a : f.residues) {
        json mat = json::array();
        for (int i = 0; i < f.rank; i++) {
            json row = json::array();
            for (int c = 0; c < f.rank; c++) row.push_back(a.at(i, c).str());
            mat.push_back(row);
        }
        res.push_back(mat);
    }
    j["residues"] = res;
    return j;
}

json document_json(const SystemDocument& doc) {
    json j = system_json(doc.system);
    if (!doc.name.empty()) j["name"] = doc.name;
    if (!doc.description.empty()) j["description"] = doc.description;
    return j;
}

std::string emit_document(const SystemDocument& doc) {
    return document_json(doc).dump(2) + "\n";
}

FuchsianSystem hypergeometric_family(const Rational& e0, const Rational& e1,
                                     const Rational& lambda) {
    FuchsianSystem base;
    base.rank = 1;
    base.points = {Rational(0), Rational(1)};
    MatQ a(1, 1), b(1, 1);
    a.at(0, 0) = e0;
    b.at(0, 0) = e1;
    base.residues = {a, b};
    return middle_convolution(base, lambda).first;
}

namespace {

MatQ mat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    MatQ m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

std::vector<SystemDocument> build_corpus() {
    std::vector<SystemDocument> out;

    {
        SystemDocument d;
        d.name = "kummer-half";
        d.description = "rank-one system at 0 with exponent 1/2, solution t^(1/2)";
        d.system = kummer(Rational(0), Rational(1, 2));
        out.push_back(d);
    }
    {
        SystemDocument d;
        d.name = "kummer-third";
        d.description = "rank-one system at 0 with exponent 1/3, solution t^(1/3)";
        d.system = kummer(Rational(0), Rational(1, 3));
        out.push_back(d);
    }
    {
        SystemDocument d;
        d.name = "rank1-pair";
        d.description = "rank-one system on {0,1} with exponents 1/2 and 1/3";
        d.system.rank = 1;
        d.system.points = {Rational(0), Rational(1)};
        MatQ a(1, 1), b(1, 1);
        a.at(0, 0) = Rational(1, 2);
        b.at(0, 0) = Rational(1, 3);
        d.system.residues = {a, b};
        out.push_back(d);
    }
    {
        SystemDocument d;
        d.name = "mc-worked";
        d.description =
            "rank-2 rigid system on {0,1}: the lambda=1/6 convolution of rank1-pair";
        d.system.rank = 2;
        d.system.points = {Rational(0), Rational(1)};
        d.system.residues = {
            mat2(Rational(2, 3), Rational(1, 3), Rational(0), Rational(0)),
            mat2(Rational(0), Rational(0), Rational(1, 2), Rational(1, 2)),
        };
        out.push_back(d);
    }
    {
        SystemDocument d;
        d.name = "nilpotent-rigid";
        d.description =
            "rank-2 rigid system on {0,1} with nilpotent residues; resonant at infinity";
        d.system.rank = 2;
        d.system.points = {Rational(0), Rational(1)};
        d.system.residues = {
            mat2(Rational(0), Rational(1), Rational(0), Rational(0)),
            mat2(Rational(0), Rational(0), Rational(1), Rational(0)),
        };
        out.push_back(d);
    }
    {
        SystemDocument d;
        d.name = "nonrigid-4pt";
        d.description =
            "rank-2 system with four singular points counting infinity; rigidity index 0";
        d.system.rank = 2;
        d.system.points = {Rational(0), Rational(1), Rational(2)};
        d.system.residues = {
            mat2(Rational(0), Rational(1), Rational(0), Rational(0)),
            mat2(Rational(0), Rational(0), Rational(1), Rational(0)),
            mat2(Rational(3, 4), Rational(0), Rational(0), Rational(-3, 4)),
        };
        out.push_back(d);
    }
    {
        SystemDocument d;
        d.name = "hypergeometric";
        d.description =
            "rank-2 rigid hypergeometric-type system: exponents (1/3, 1/5), parameter 2/7";
        d.system = hypergeometric_family(Rational(1, 3), Rational(1, 5), Rational(2, 7));
        out.push_back(d);
    }
    return out;
}

} // namespace

const std::vector<SystemDocument>& corpus() {
    static const std::vector<SystemDocument> c = build_corpus();
    return c;
}

const SystemDocument& corpus_get(const std::string& name) {
    for (const auto& d : corpus())
        if (d.name == name) return d;
    throw DomainError(Errc::unknown_point, "no corpus entry named '" + name + "'");
}

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& d : corpus()) out.push_back(d.name);
    return out;
}

} // namespace rigidconv
