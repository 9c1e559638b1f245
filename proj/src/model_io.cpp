#include "json.hpp"

#include "airmia/error.hpp"
#include "airmia/tinynn.hpp"

namespace airmia::nn {

using nlohmann::json;

std::string model_to_json(const DenseNetwork& net, const rfsim::FeatureScaling& scaling)
{
    json doc;
    doc["version"] = kModelFormatVersion;
    doc["layer_dims"] = net.layer_dims();
    doc["output_head"] = to_string(net.head());
    json weights = json::array();
    json biases = json::array();
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        const auto w = net.weights(l);
        const auto b = net.biases(l);
        weights.push_back(std::vector<double>(w.begin(), w.end()));
        biases.push_back(std::vector<double>(b.begin(), b.end()));
    }
    doc["weights"] = std::move(weights);
    doc["biases"] = std::move(biases);
    doc["scaling"] = {{"phase_scale", scaling.phase_scale}, {"power_scale", scaling.power_scale}};
    return doc.dump(1) + "\n";
}

ModelDocument model_from_json(const std::string& text, const std::string& origin)
{
    try {
        const json doc = json::parse(text);
        const int version = doc.at("version").get<int>();
        if (version != kModelFormatVersion) {
            throw LoadError(origin, "unsupported model version " + std::to_string(version));
        }
        ModelDocument out;
        out.network = DenseNetwork(doc.at("layer_dims").get<std::vector<std::size_t>>(),
                                   output_head_from_string(doc.at("output_head").get<std::string>()));
        const auto& weights = doc.at("weights");
        const auto& biases = doc.at("biases");
        if (weights.size() != out.network.layer_count() || biases.size() != out.network.layer_count()) {
            throw LoadError(origin, "layer count does not match layer_dims");
        }
        for (std::size_t l = 0; l < out.network.layer_count(); ++l) {
            const auto w = weights[l].get<std::vector<double>>();
            const auto b = biases[l].get<std::vector<double>>();
            auto dst_w = out.network.weights(l);
            auto dst_b = out.network.biases(l);
            if (w.size() != dst_w.size() || b.size() != dst_b.size()) {
                throw LoadError(origin, "parameter shape mismatch in layer " + std::to_string(l));
            }
            std::copy(w.begin(), w.end(), dst_w.begin());
            std::copy(b.begin(), b.end(), dst_b.begin());
        }
        out.scaling.phase_scale = doc.at("scaling").at("phase_scale").get<double>();
        out.scaling.power_scale = doc.at("scaling").at("power_scale").get<double>();
        return out;
    } catch (const LoadError&) {
        throw;
    } catch (const std::exception& e) {
        throw LoadError(origin, std::string("malformed model: ") + e.what());
    }
}

}  // namespace airmia::nn
