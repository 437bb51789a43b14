#include "partsep/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace partsep::io {

namespace {

std::vector<int> settings_field(const json& entry, int n) {
    if (!entry.contains("settings") || !entry["settings"].is_array())
        throw parse_error("entry missing \"settings\" array");
    const auto& arr = entry["settings"];
    if (static_cast<int>(arr.size()) != n)
        throw validation_error("settings length does not match n");
    std::vector<int> settings;
    settings.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number_integer()) throw parse_error("settings must be integers");
        settings.push_back(v.get<int>());
    }
    return settings;
}

int int_field(const json& doc, const char* key) {
    if (!doc.contains(key)) throw parse_error(std::string("missing \"") + key + "\" field");
    if (!doc[key].is_number_integer())
        throw parse_error(std::string("\"") + key + "\" must be an integer");
    return doc[key].get<int>();
}

json settings_json(std::uint32_t code, int n) {
    json arr = json::array();
    for (int k = 0; k < n; ++k) arr.push_back((code >> k) & 1u ? 2 : 1);
    return arr;
}

} // namespace

json parse_document(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw parse_error("malformed JSON document");
    return doc;
}

json coefficients_to_json(const CoefficientTensor& coeffs,
                          const std::string& variant_label) {
    json doc;
    doc["n"] = coeffs.n();
    doc["variant"] = variant_label;
    doc["bound"] = 1ll << (coeffs.n() - 1);
    json entries = json::array();
    for (std::uint32_t code = 0; code < coeffs.size(); ++code) {
        json entry;
        entry["settings"] = settings_json(code, coeffs.n());
        entry["t"] = std::popcount(code);
        entry["sign"] = coeffs.sign(code);
        entries.push_back(std::move(entry));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

CoefficientTensor coefficients_from_json(const json& doc) {
    const int n = int_field(doc, "n");
    const std::size_t count = index_count(n);
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw parse_error("missing \"entries\" array");
    std::vector<std::int8_t> signs(count, 0);
    std::vector<bool> seen(count, false);
    for (const auto& entry : doc["entries"]) {
        const auto code = MultiIndex::from_settings(settings_field(entry, n)).code();
        if (seen[code]) throw validation_error("duplicate settings entry");
        seen[code] = true;
        if (!entry.contains("sign") || !entry["sign"].is_number_integer())
            throw parse_error("entry missing integer \"sign\"");
        const int sign = entry["sign"].get<int>();
        if (sign != 1 && sign != -1) throw validation_error("signs must be +1 or -1");
        signs[code] = static_cast<std::int8_t>(sign);
    }
    for (std::size_t code = 0; code < count; ++code)
        if (!seen[code])
            throw validation_error("missing settings entry at encoded index " +
                                   std::to_string(code));
    return CoefficientTensor(n, std::move(signs));
}

json correlation_to_json(const CorrelationTensor& corr) {
    json doc;
    doc["n"] = corr.n();
    json entries = json::array();
    for (std::uint32_t code = 0; code < corr.size(); ++code) {
        json entry;
        entry["settings"] = settings_json(code, corr.n());
        entry["value"] = corr.value(code);
        if (corr.has_std_errors()) entry["std_error"] = corr.std_error(code);
        entries.push_back(std::move(entry));
    }
    doc["entries"] = std::move(entries);
    return doc;
}

CorrelationTensor correlation_from_json(const json& doc) {
    const int n = int_field(doc, "n");
    const std::size_t count = index_count(n);
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw parse_error("missing \"entries\" array");
    std::vector<double> values(count, 0.0);
    std::vector<double> errors(count, 0.0);
    std::vector<bool> seen(count, false);
    bool any_errors = false, all_errors = true;
    for (const auto& entry : doc["entries"]) {
        const auto code = MultiIndex::from_settings(settings_field(entry, n)).code();
        if (seen[code]) throw validation_error("duplicate settings entry");
        seen[code] = true;
        if (!entry.contains("value") || !entry["value"].is_number())
            throw parse_error("entry missing numeric \"value\"");
        values[code] = entry["value"].get<double>();
        if (entry.contains("std_error")) {
            errors[code] = entry["std_error"].get<double>();
            any_errors = true;
        } else {
            all_errors = false;
        }
    }
    std::vector<std::size_t> missing;
    for (std::size_t code = 0; code < count; ++code)
        if (!seen[code]) missing.push_back(code);
    if (!missing.empty()) {
        std::ostringstream oss;
        oss << "missing settings entries at encoded indices:";
        for (std::size_t code : missing) oss << ' ' << code;
        throw validation_error(oss.str());
    }
    if (any_errors && !all_errors)
        throw validation_error("std_error must be present on all entries or none");
    if (any_errors)
        return CorrelationTensor(n, std::move(values), std::move(errors));
    return CorrelationTensor(n, std::move(values));
}

json angles_to_json(const AngleSettings& settings) {
    json doc;
    doc["n"] = settings.n;
    json rows = json::array();
    for (const auto& pair : settings.angles) rows.push_back({pair[0], pair[1]});
    doc["angles"] = std::move(rows);
    return doc;
}

AngleSettings angles_from_json(const json& doc) {
    const int n = int_field(doc, "n");
    if (!doc.contains("angles") || !doc["angles"].is_array())
        throw parse_error("missing \"angles\" array");
    const auto& rows = doc["angles"];
    if (static_cast<int>(rows.size()) != n)
        throw validation_error("angles must have one [a1, a2] row per particle");
    std::vector<std::array<double, 2>> angles;
    angles.reserve(n);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
            throw parse_error("each angles row must be [a1, a2]");
        angles.push_back({row[0].get<double>(), row[1].get<double>()});
    }
    return AngleSettings(n, std::move(angles));
}

namespace {

std::string setting_key(std::uint32_t code, int size) {
    std::string key(size, '1');
    for (int k = 0; k < size; ++k)
        if ((code >> k) & 1u) key[k] = '2';
    return key;
}

std::uint32_t setting_code_from_key(const std::string& key, int size) {
    if (key.size() != static_cast<std::size_t>(size))
        throw validation_error("setting key length must equal the cluster size");
    std::uint32_t code = 0;
    for (int k = 0; k < size; ++k) {
        if (key[k] == '2')
            code |= 1u << k;
        else if (key[k] != '1')
            throw validation_error("setting keys are strings over {1,2}");
    }
    return code;
}

json table_to_json(const std::vector<std::vector<double>>& table, int size) {
    json out;
    for (std::uint32_t s = 0; s < table.size(); ++s) {
        json row;
        for (std::uint32_t o = 0; o < table[s].size(); ++o)
            if (table[s][o] != 0.0) row[outcome_key(o, size)] = table[s][o];
        out[setting_key(s, size)] = std::move(row);
    }
    return out;
}

std::vector<std::vector<double>> table_from_json(const json& doc, int size) {
    if (!doc.is_object()) throw parse_error("conditional table must be an object");
    const std::size_t codes = std::size_t{1} << size;
    std::vector<std::vector<double>> table(codes, std::vector<double>(codes, 0.0));
    std::vector<bool> seen(codes, false);
    for (const auto& [key, row] : doc.items()) {
        const std::uint32_t s = setting_code_from_key(key, size);
        if (seen[s]) throw validation_error("duplicate setting key " + key);
        seen[s] = true;
        if (!row.is_object()) throw parse_error("outcome row must be an object");
        for (const auto& [okey, prob] : row.items()) {
            if (!prob.is_number()) throw parse_error("outcome probabilities must be numbers");
            table[s][outcome_code_from_key(okey, size)] = prob.get<double>();
        }
    }
    for (std::size_t s = 0; s < codes; ++s)
        if (!seen[s])
            throw validation_error("conditional table missing setting key " +
                                   setting_key(static_cast<std::uint32_t>(s), size));
    return table;
}

} // namespace

json model_to_json(const HybridModel& model) {
    json doc;
    doc["n"] = model.n;
    json subs = json::array();
    for (const auto& sub : model.subensembles) {
        json s;
        s["weight"] = sub.weight;
        s["partition"] = sub.partition.subset_a();
        const int p = sub.partition.p();
        const int q = model.n - p;
        json lambdas = json::array();
        for (const auto& lam : sub.lambdas) {
            json l;
            l["prob"] = lam.prob;
            l["q"] = table_to_json(lam.q, p);
            l["r"] = table_to_json(lam.r, q);
            lambdas.push_back(std::move(l));
        }
        s["lambdas"] = std::move(lambdas);
        subs.push_back(std::move(s));
    }
    doc["subensembles"] = std::move(subs);
    return doc;
}

HybridModel model_from_json(const json& doc) {
    HybridModel model;
    model.n = int_field(doc, "n");
    index_count(model.n);
    if (!doc.contains("subensembles") || !doc["subensembles"].is_array())
        throw parse_error("missing \"subensembles\" array");
    for (const auto& s : doc["subensembles"]) {
        if (!s.contains("weight") || !s["weight"].is_number())
            throw parse_error("subensemble missing numeric \"weight\"");
        if (!s.contains("partition") || !s["partition"].is_array())
            throw parse_error("subensemble missing \"partition\" array");
        std::vector<int> indices;
        for (const auto& v : s["partition"]) indices.push_back(v.get<int>());
        Subensemble sub{s["weight"].get<double>(),
                        Bipartition::from_indices(model.n, indices),
                        {}};
        // The document's q table belongs to the listed subset and r to its
        // complement; the canonical partition stores the particle-1 side as
        // subset_a, so the tables swap when the listed subset lacks particle 1.
        const bool swapped =
            std::find(indices.begin(), indices.end(), 1) == indices.end();
        const int listed = static_cast<int>(indices.size());
        const int other = model.n - listed;
        if (!s.contains("lambdas") || !s["lambdas"].is_array())
            throw parse_error("subensemble missing \"lambdas\" array");
        for (const auto& l : s["lambdas"]) {
            if (!l.contains("prob") || !l["prob"].is_number())
                throw parse_error("lambda missing numeric \"prob\"");
            HiddenVariable lam;
            lam.prob = l["prob"].get<double>();
            if (!l.contains("q") || !l.contains("r"))
                throw parse_error("lambda missing \"q\" or \"r\" table");
            auto q_table = table_from_json(l["q"], listed);
            auto r_table = table_from_json(l["r"], other);
            lam.q = swapped ? std::move(r_table) : std::move(q_table);
            lam.r = swapped ? std::move(q_table) : std::move(r_table);
            sub.lambdas.push_back(std::move(lam));
        }
        model.subensembles.push_back(std::move(sub));
    }
    return model;
}

json counts_to_json(const CountsDataset& data) {
    json doc;
    doc["n"] = data.n();
    doc["shots"] = data.shots();
    const std::size_t count = index_count(data.n());
    json rows = json::array();
    for (std::uint32_t s = 0; s < count; ++s) {
        json row;
        row["settings"] = settings_json(s, data.n());
        json bins;
        const auto& counts = data.counts(s);
        for (std::uint32_t o = 0; o < count; ++o)
            if (counts[o] != 0) bins[outcome_key(o, data.n())] = counts[o];
        row["counts"] = std::move(bins);
        rows.push_back(std::move(row));
    }
    doc["data"] = std::move(rows);
    return doc;
}

CountsDataset counts_from_json(const json& doc) {
    const int n = int_field(doc, "n");
    if (n < 1 || n > kMaxDatasetParticles)
        throw validation_error("counts datasets support 1 <= n <= 10");
    if (!doc.contains("shots") || !doc["shots"].is_number_integer())
        throw parse_error("missing integer \"shots\" field");
    const long long declared = doc["shots"].get<long long>();
    if (declared < 1) throw validation_error("shots must be >= 1");
    const std::uint64_t shots = static_cast<std::uint64_t>(declared);
    if (!doc.contains("data") || !doc["data"].is_array())
        throw parse_error("missing \"data\" array");
    const std::size_t count = index_count(n);
    std::vector<std::vector<std::uint64_t>> counts(count);
    std::vector<bool> seen(count, false);
    for (const auto& row : doc["data"]) {
        const auto code = MultiIndex::from_settings(settings_field(row, n)).code();
        if (seen[code]) throw validation_error("duplicate settings entry");
        seen[code] = true;
        if (!row.contains("counts") || !row["counts"].is_object())
            throw parse_error("data row missing \"counts\" object");
        std::vector<std::uint64_t> bins(count, 0);
        for (const auto& [key, value] : row["counts"].items()) {
            if (!value.is_number_integer() || value.get<long long>() < 0)
                throw validation_error("counts must be nonnegative integers");
            bins[outcome_code_from_key(key, n)] = value.get<std::uint64_t>();
        }
        counts[code] = std::move(bins);
    }
    std::vector<std::size_t> missing;
    for (std::size_t code = 0; code < count; ++code)
        if (!seen[code]) missing.push_back(code);
    if (!missing.empty()) {
        std::ostringstream oss;
        oss << "missing settings in counts data at encoded indices:";
        for (std::size_t code : missing) oss << ' ' << code;
        throw validation_error(oss.str());
    }
    return CountsDataset(n, shots, std::move(counts));
}

std::string coefficients_to_csv(const CoefficientTensor& coeffs) {
    std::ostringstream oss;
    for (int k = 1; k <= coeffs.n(); ++k) oss << 'i' << k << ',';
    oss << "t,sign\n";
    for (std::uint32_t code = 0; code < coeffs.size(); ++code) {
        for (int k = 0; k < coeffs.n(); ++k) oss << (((code >> k) & 1u) ? 2 : 1) << ',';
        oss << std::popcount(code) << ',' << (coeffs.sign(code) > 0 ? "+1" : "-1") << '\n';
    }
    return oss.str();
}

std::string correlation_to_csv(const CorrelationTensor& corr) {
    std::ostringstream oss;
    for (int k = 1; k <= corr.n(); ++k) oss << 'i' << k << ',';
    oss << "value";
    if (corr.has_std_errors()) oss << ",std_error";
    oss << '\n';
    oss.precision(17);
    for (std::uint32_t code = 0; code < corr.size(); ++code) {
        for (int k = 0; k < corr.n(); ++k) oss << (((code >> k) & 1u) ? 2 : 1) << ',';
        oss << corr.value(code);
        if (corr.has_std_errors()) oss << ',' << corr.std_error(code);
        oss << '\n';
    }
    return oss.str();
}

} // namespace partsep::io
