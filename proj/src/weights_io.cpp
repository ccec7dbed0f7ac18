#include "qmms/weights_io.hpp"

#include <json.hpp>

#include <utility>

namespace qmms {
namespace {

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

std::string weighting_to_json(const WeightFunction& f) {
    const GeometryContext& ctx = f.context();
    nlohmann::ordered_json doc;
    doc["n"] = ctx.n();
    doc["q"] = ctx.q();
    if (!ctx.field().modulus().empty()) doc["modulus"] = ctx.field().modulus();
    auto& weights = doc["weights"] = nlohmann::ordered_json::array();
    for (const Rational& v : f.values()) {
        weights.push_back({boost::multiprecision::numerator(v).str(),
                           boost::multiprecision::denominator(v).str()});
    }
    return doc.dump(2) + "\n";
}

LoadedWeighting weighting_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        auto [line, col] = line_and_column(text, err.byte > 0 ? err.byte - 1 : 0);
        throw std::invalid_argument("JSON syntax error at line " + std::to_string(line) +
                                    ", column " + std::to_string(col) + ": " + err.what());
    }

    if (!doc.is_object()) throw std::invalid_argument("weighting document must be a JSON object");
    for (const char* key : {"n", "q", "weights"})
        if (!doc.contains(key))
            throw std::invalid_argument(std::string("missing required key \"") + key + "\"");
    if (!doc["n"].is_number_integer() || !doc["q"].is_number_integer())
        throw std::invalid_argument("\"n\" and \"q\" must be integers");

    int n = doc["n"].get<int>();
    int q = doc["q"].get<int>();
    std::shared_ptr<GeometryContext> ctx;
    if (doc.contains("modulus")) {
        if (!doc["modulus"].is_array())
            throw std::invalid_argument("\"modulus\" must be an array of coefficients");
        std::vector<int> modulus;
        for (const auto& c : doc["modulus"]) {
            if (!c.is_number_integer())
                throw std::invalid_argument("\"modulus\" coefficients must be integers");
            modulus.push_back(c.get<int>());
        }
        ctx = std::make_shared<GeometryContext>(FiniteField(q, modulus), n);
    } else {
        ctx = std::make_shared<GeometryContext>(FiniteField(q), n);
    }

    const auto& weights = doc["weights"];
    if (!weights.is_array())
        throw std::invalid_argument("\"weights\" must be an array of [num, den] pairs");
    if (static_cast<int>(weights.size()) != ctx->num_points())
        throw std::invalid_argument("\"weights\" has " + std::to_string(weights.size()) +
                                    " entries but the geometry has " +
                                    std::to_string(ctx->num_points()) + " points");
    std::vector<Rational> values;
    values.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const auto& entry = weights[i];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_string())
            throw std::invalid_argument("weights[" + std::to_string(i) +
                                        "]: expected a [\"num\", \"den\"] string pair");
        try {
            BigInt num(entry[0].get<std::string>());
            BigInt den(entry[1].get<std::string>());
            if (den == 0)
                throw std::invalid_argument("zero denominator");
            values.emplace_back(num, den);
        } catch (const SumZeroError&) {
            throw;
        } catch (const std::exception& err) {
            throw std::invalid_argument("weights[" + std::to_string(i) +
                                        "]: invalid rational: " + err.what());
        }
    }
    WeightFunction f = WeightFunction::from_values(*ctx, std::move(values));
    return LoadedWeighting{std::move(ctx), std::move(f)};
}

}  // namespace qmms
