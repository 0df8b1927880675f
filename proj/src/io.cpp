#include "qmetro/io.hpp"

#include <fstream>
#include <sstream>

#include "qmetro/error.hpp"

namespace qmetro {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string &what) { throw Error(ErrorKind::Schema, what); }

template <typename T> T get_field(const json &doc, const char *key) {
    if (!doc.contains(key)) {
        schema_error(std::string("missing field '") + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception &e) {
        schema_error(std::string("field '") + key + "': " + e.what());
    }
}

const char *correction_name(Correction c) {
    return c == Correction::ParityZ ? "parity-z" : "none";
}

} // namespace

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        schema_error("matrix must be a non-empty array of rows");
    }
    const std::size_t dim = j.size();
    std::vector<cplx> entries;
    entries.reserve(dim * dim);
    for (const auto &row : j) {
        if (!row.is_array() || row.size() != dim) {
            schema_error("matrix must be square");
        }
        for (const auto &z : row) {
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                schema_error("matrix entries must be [re, im] pairs");
            }
            entries.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }
    return ComplexMatrix(dim, std::move(entries));
}

StateDescriptor parse_state_descriptor(const json &doc) {
    if (!doc.is_object()) {
        schema_error("state descriptor must be an object");
    }
    StateDescriptor d;
    d.kind = get_field<std::string>(doc, "kind");
    if (doc.contains("sign")) {
        d.sign = get_field<int>(doc, "sign");
        if (d.sign != 1 && d.sign != -1) {
            schema_error("sign must be 1 or -1");
        }
    }
    if (doc.contains("generator")) {
        const json &g = doc.at("generator");
        if (g.is_string()) {
            if (g.get<std::string>() != "phase") {
                schema_error("generator must be \"phase\" or {\"entries\": …}");
            }
        } else if (g.is_object() && g.contains("entries")) {
            d.generator = matrix_from_json(g.at("entries"));
        } else {
            schema_error("generator must be \"phase\" or {\"entries\": …}");
        }
    }
    if (d.kind == "werner") {
        d.n = get_field<std::size_t>(doc, "n");
        d.eta = get_field<double>(doc, "eta");
    } else if (d.kind == "nghz") {
        d.n = get_field<std::size_t>(doc, "n");
        d.eta = 1.0;
    } else if (d.kind == "bell") {
        d.n = 2;
        d.eta = 1.0;
    } else if (d.kind == "classical") {
        const json &t = doc.contains("table") ? doc.at("table") : json();
        if (!t.is_object()) {
            schema_error("classical state needs a 'table' object");
        }
        ClassicalTable table;
        table.probs = get_field<std::vector<double>>(t, "probs");
        std::size_t parties = 0;
        while ((std::size_t{1} << parties) < table.probs.size()) {
            ++parties;
        }
        table.parties = parties;
        if (t.contains("bases")) {
            for (const auto &b : t.at("bases")) {
                table.local_bases.push_back(matrix_from_json(b));
            }
        }
        d.n = parties;
        d.table = std::move(table);
    } else if (d.kind == "raw-matrix") {
        d.entries = matrix_from_json(doc.contains("entries") ? doc.at("entries") : json());
        std::size_t n = 0;
        while ((std::size_t{1} << n) < d.entries->dim()) {
            ++n;
        }
        d.n = n;
    } else {
        schema_error("unknown kind '" + d.kind + "'");
    }
    return d;
}

json to_json(const StateDescriptor &d) {
    json j;
    j["kind"] = d.kind;
    j["sign"] = d.sign;
    if (d.kind == "werner" || d.kind == "nghz") {
        j["n"] = d.n;
    }
    if (d.kind == "werner") {
        j["eta"] = d.eta;
    }
    if (d.table) {
        json bases = json::array();
        for (const auto &b : d.table->local_bases) {
            bases.push_back(matrix_to_json(b));
        }
        j["table"] = {{"probs", d.table->probs}, {"bases", bases}};
    }
    if (d.entries) {
        j["entries"] = matrix_to_json(*d.entries);
    }
    j["generator"] = d.generator ? json{{"entries", matrix_to_json(*d.generator)}} : json("phase");
    return j;
}

ProbeFamily build_family(const StateDescriptor &d) {
    DensityMatrix rho = [&] {
        if (d.kind == "werner") {
            return werner({d.n, d.eta});
        }
        if (d.kind == "nghz") {
            return nghz(d.n);
        }
        if (d.kind == "bell") {
            return bell00();
        }
        if (d.kind == "classical") {
            return classically_correlated(*d.table);
        }
        return DensityMatrix::from_matrix(*d.entries);
    }();
    ComplexMatrix h = d.generator ? *d.generator : phase_generator(rho.qubit_count());
    return ProbeFamily(std::move(rho), std::move(h), d.sign);
}

json to_json(const AdaptivePolicy &policy) {
    json steps = json::object();
    for (const auto &[history, step] : policy.steps) {
        steps[history] = {{"qubit", step.qubit},
                          {"theta", step.basis.theta},
                          {"varphi", step.basis.varphi}};
    }
    return {{"qubits", policy.qubits},
            {"correction", correction_name(policy.correction)},
            {"steps", steps}};
}

AdaptivePolicy parse_policy(const json &doc) {
    if (!doc.is_object()) {
        schema_error("policy must be an object");
    }
    AdaptivePolicy p;
    p.qubits = get_field<std::size_t>(doc, "qubits");
    const auto correction = doc.contains("correction") ? get_field<std::string>(doc, "correction")
                                                       : std::string("none");
    if (correction == "parity-z") {
        p.correction = Correction::ParityZ;
    } else if (correction == "none") {
        p.correction = Correction::None;
    } else {
        schema_error("correction must be \"none\" or \"parity-z\"");
    }
    const json &steps = doc.contains("steps") ? doc.at("steps") : json();
    if (!steps.is_object()) {
        schema_error("policy needs a 'steps' object");
    }
    for (const auto &[history, step] : steps.items()) {
        if (history.find_first_not_of("01") != std::string::npos) {
            schema_error("history keys must be strings over {0,1}");
        }
        PolicyStep s;
        s.qubit = get_field<std::size_t>(step, "qubit");
        s.basis.theta = get_field<double>(step, "theta");
        s.basis.varphi = get_field<double>(step, "varphi");
        p.steps[history] = s;
    }
    p.validate();
    return p;
}

std::string canonical_policy_text(const AdaptivePolicy &policy) {
    return to_json(policy).dump(2) + "\n";
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::Schema, path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw Error(ErrorKind::Io, "write failed for " + path.string());
    }
}

} // namespace qmetro
