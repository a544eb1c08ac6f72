#include "qpr/checkpoint.hpp"

#include <nlohmann/json.hpp>

#include "qpr/errors.hpp"
#include "qpr/io.hpp"

namespace qpr {

std::string checkpoint_to_json(const ModelCheckpoint& c) {
    c.validate();
    nlohmann::ordered_json doc;
    doc["schema_version"] = kCheckpointSchemaVersion;
    doc["n_qubits"] = c.n_qubits;
    doc["layers"] = c.layers;
    doc["label_order"] = {kLabelOrder[0], kLabelOrder[1], kLabelOrder[2]};
    doc["theta_b64"] = doubles_to_base64(c.theta);
    doc["weights_b64"] = doubles_to_base64(c.head.weights);
    doc["bias_b64"] = doubles_to_base64(std::span<const double>(c.head.bias));
    doc["meta"] = {{"seed", c.meta.seed},
                   {"config_digest", c.meta.config_digest},
                   {"dataset_digest", c.meta.dataset_digest},
                   {"final_loss", c.meta.final_loss},
                   {"epochs", c.meta.epochs}};
    return doc.dump(1) + "\n";
}

ModelCheckpoint checkpoint_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("checkpoint: invalid JSON: ") + e.what());
    }
    ModelCheckpoint c;
    try {
        c.schema_version = doc.at("schema_version").get<int>();
        if (c.schema_version != kCheckpointSchemaVersion)
            throw CompatibilityError("checkpoint: schema version " +
                                     std::to_string(c.schema_version) + " unsupported");
        c.n_qubits = doc.at("n_qubits").get<int>();
        c.layers = doc.at("layers").get<int>();
        const auto order = doc.at("label_order").get<std::vector<std::string>>();
        for (int k = 0; k < 3; ++k)
            if (order.at(k) != kLabelOrder[k])
                throw CompatibilityError("checkpoint: unexpected label order");
        c.theta = base64_to_doubles(doc.at("theta_b64").get<std::string>());
        c.head.weights = base64_to_doubles(doc.at("weights_b64").get<std::string>());
        const auto bias = base64_to_doubles(doc.at("bias_b64").get<std::string>());
        if (bias.size() != 3) throw CompatibilityError("checkpoint: bias is not a 3-vector");
        for (int k = 0; k < 3; ++k) c.head.bias[static_cast<std::size_t>(k)] = bias[k];
        c.head.feature_dim = c.n_qubits * (c.n_qubits - 1) / 2;
        const auto& meta = doc.at("meta");
        c.meta.seed = meta.at("seed").get<std::uint64_t>();
        c.meta.config_digest = meta.at("config_digest").get<std::string>();
        c.meta.dataset_digest = meta.at("dataset_digest").get<std::string>();
        c.meta.final_loss = meta.at("final_loss").get<double>();
        c.meta.epochs = meta.at("epochs").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("checkpoint: missing or bad field: ") + e.what());
    }
    c.validate();
    return c;
}

void write_checkpoint(const ModelCheckpoint& c, const std::string& path) {
    write_text_file_atomic(path, checkpoint_to_json(c));
}

ModelCheckpoint load_checkpoint(const std::string& path) {
    return checkpoint_from_json(read_text_file(path));
}

}  // namespace qpr
