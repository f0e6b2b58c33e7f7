#include "sheafcoh/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sheafcoh {

using nlohmann::json;

std::string contentDigest(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

CoefficientRing parseRing(const std::string& text)
{
    if (text == "Z" || text == "z") return CoefficientRing::integers();
    if (text == "Q" || text == "q") return CoefficientRing::rationals();
    if (text.rfind("Fp:", 0) == 0 || text.rfind("fp:", 0) == 0) {
        long p = std::stol(text.substr(3));
        return CoefficientRing::primeField(p);
    }
    if (text.rfind("F", 0) == 0 || text.rfind("f", 0) == 0) {
        long p = std::stol(text.substr(1));
        return CoefficientRing::primeField(p);
    }
    throw std::invalid_argument("unknown ring '" + text + "' (expected Z, Q, or Fp:<p>)");
}

InputDocument parseInputText(const std::string& text, const std::string& name)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(name + ": not valid JSON: " + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument(name + ": top level must be an object");

    InputDocument out;
    out.path = name;
    out.digest = contentDigest(text);

    if (doc.contains("facets")) {
        if (!doc["facets"].is_array())
            throw std::invalid_argument(name + ": 'facets' must be an array of vertex lists");
        std::vector<std::vector<VertexId>> facets;
        for (const auto& f : doc["facets"]) {
            if (!f.is_array())
                throw std::invalid_argument(name + ": each facet must be an array");
            std::vector<VertexId> verts;
            for (const auto& v : f) {
                if (!v.is_number_integer())
                    throw std::invalid_argument(name + ": vertex ids must be integers");
                verts.push_back(v.get<VertexId>());
            }
            facets.push_back(std::move(verts));
        }
        out.poset = SimplicialPoset::fromFacets(facets);
    } else if (doc.contains("cells")) {
        if (!doc["cells"].is_array())
            throw std::invalid_argument(name + ": 'cells' must be an array");
        std::vector<CellSpec> cells;
        for (const auto& c : doc["cells"]) {
            CellSpec spec;
            if (!c.is_object() || !c.contains("vertices"))
                throw std::invalid_argument(name + ": each cell needs a 'vertices' list");
            for (const auto& v : c["vertices"]) spec.vertices.push_back(v.get<VertexId>());
            if (c.contains("facets"))
                for (const auto& f : c["facets"]) spec.facets.push_back(f.get<ElementId>());
            cells.push_back(std::move(spec));
        }
        out.poset = SimplicialPoset::fromCells(cells);
    } else {
        throw std::invalid_argument(name + ": need either 'facets' or 'cells'");
    }

    if (doc.contains("omega") || doc.contains("lambda")) {
        if (!doc.contains("omega") || !doc.contains("lambda"))
            throw std::invalid_argument(name + ": 'lambda' and 'omega' must appear together");
        CharacteristicFunction cf;
        cf.lambda = doc["lambda"].get<int>();
        if (cf.lambda < 1)
            throw std::invalid_argument(name + ": lambda must be positive");
        for (const auto& [key, value] : doc["omega"].items()) {
            VertexId v = std::stoi(key);
            std::vector<Int> vec;
            for (const auto& x : value) {
                if (!x.is_number_integer())
                    throw std::invalid_argument(name + ": omega entries must be integers");
                vec.push_back(Int(x.get<long>()));
            }
            if (static_cast<int>(vec.size()) != cf.lambda)
                throw std::invalid_argument(name + ": omega vector at vertex " + key +
                                            " has length " + std::to_string(vec.size()) +
                                            ", expected " + std::to_string(cf.lambda));
            cf.omega[v] = std::move(vec);
        }
        // every vertex of the poset must have a vector
        for (VertexId v : out.poset.vertexIds())
            if (!cf.omega.count(v))
                throw std::invalid_argument(name + ": omega is missing vertex " +
                                            std::to_string(v));
        // and every named vertex must exist
        std::vector<VertexId> known = out.poset.vertexIds();
        for (const auto& [v, vec] : cf.omega)
            if (std::find(known.begin(), known.end(), v) == known.end())
                throw std::invalid_argument(name + ": omega names unknown vertex " +
                                            std::to_string(v));
        out.charfun = std::move(cf);
    }
    return out;
}

InputDocument parseInput(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseInputText(buf.str(), path);
}

}  // namespace sheafcoh
