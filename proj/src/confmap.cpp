#include "ichfuse/confmap.hpp"

#include "ichfuse/errors.hpp"
#include "ichfuse/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ichfuse {

using util::format_double;
using util::parse_double;

int LabelSpace::index_of(const std::string& name) const {
    for (size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] == name) return static_cast<int>(i);
    }
    return -1;
}

double ConfidenceVector::max_prob() const {
    double m = 0.0;
    for (double v : p) m = std::max(m, v);
    return m;
}

size_t ConfidenceVector::argmax() const {
    size_t best = 0;
    for (size_t i = 1; i < p.size(); ++i) {
        if (p[i] > p[best]) best = i;
    }
    return best;
}

size_t Dataset::total_slices() const {
    size_t n = 0;
    for (const auto& s : scans) n += s.slices.size();
    return n;
}

std::vector<Violation> validate_dataset(const Dataset& d) {
    std::vector<Violation> out;
    const size_t C = d.label_space.size();

    if (C < 2) {
        out.push_back({"", "", "label_space.size",
                       "label space must have at least 2 classes, has " + std::to_string(C)});
    }
    {
        std::set<std::string> seen;
        for (const auto& c : d.label_space.classes) {
            if (!seen.insert(c).second) {
                out.push_back({"", "", "label_space.unique", "duplicate class identifier '" + c + "'"});
            }
        }
    }

    std::set<std::string> scan_ids;
    for (const auto& scan : d.scans) {
        if (!scan_ids.insert(scan.scan_id).second) {
            out.push_back({scan.scan_id, "", "scan_id.unique",
                           "duplicate scan_id '" + scan.scan_id + "'"});
        }
        if (scan.slices.empty()) {
            out.push_back({scan.scan_id, "", "scan.nonempty", "scan has no slices"});
        }
        if (scan.true_label && d.label_space.index_of(*scan.true_label) < 0) {
            out.push_back({scan.scan_id, "", "label.known",
                           "true_label '" + *scan.true_label + "' not in label space"});
        }
        std::set<std::string> slice_ids;
        for (const auto& slice : scan.slices) {
            if (!slice_ids.insert(slice.slice_id).second) {
                out.push_back({scan.scan_id, slice.slice_id, "slice_id.unique",
                               "duplicate slice_id within scan"});
            }
            const auto& p = slice.confidence.p;
            if (p.size() != C) {
                out.push_back({scan.scan_id, slice.slice_id, "confidence.width",
                               "confidence vector has " + std::to_string(p.size()) +
                                   " entries, label space has " + std::to_string(C)});
                continue;
            }
            double sum = 0.0;
            bool range_ok = true;
            for (double v : p) {
                if (!std::isfinite(v) || v < 0.0 || v > 1.0) range_ok = false;
                sum += v;
            }
            if (!range_ok) {
                out.push_back({scan.scan_id, slice.slice_id, "confidence.range",
                               "probability outside [0,1]"});
            }
            if (std::abs(sum - 1.0) > SIMPLEX_TOL) {
                out.push_back({scan.scan_id, slice.slice_id, "confidence.sum",
                               "probabilities sum to " + format_double(sum)});
            }
        }
    }
    return out;
}

ConfidenceVector normalize_confidence(const std::vector<double>& raw) {
    if (raw.empty()) throw DataError("degenerate vector: empty");
    double sum = 0.0;
    for (double v : raw) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DataError("negative or non-finite entry in raw confidence vector");
        }
        sum += v;
    }
    if (sum <= 0.0) throw DataError("degenerate vector: all entries zero");
    ConfidenceVector out;
    out.p.reserve(raw.size());
    for (double v : raw) out.p.push_back(v / sum);
    return out;
}

namespace {

bool dataset_has_labels(const Dataset& d) {
    return std::any_of(d.scans.begin(), d.scans.end(),
                       [](const ScanRecord& s) { return s.true_label.has_value(); });
}

}  // namespace

std::string dataset_to_csv(const Dataset& d) {
    const bool labeled = dataset_has_labels(d);
    std::ostringstream out;
    out << "scan_id,slice_id";
    for (const auto& c : d.label_space.classes) out << ",p_" << c;
    if (labeled) out << ",label";
    out << "\n";
    for (const auto& scan : d.scans) {
        for (const auto& slice : scan.slices) {
            out << scan.scan_id << ',' << slice.slice_id;
            for (double v : slice.confidence.p) out << ',' << format_double(v);
            if (labeled) out << ',' << (scan.true_label ? *scan.true_label : "");
            out << "\n";
        }
    }
    return out.str();
}

Dataset dataset_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DataError("confidence CSV is empty");

    const auto header = util::split_csv_line(line);
    if (header.size() < 3 || util::trim(header[0]) != "scan_id" || util::trim(header[1]) != "slice_id") {
        throw DataError("confidence CSV header must start with scan_id,slice_id");
    }
    LabelSpace labels;
    bool has_label_col = false;
    for (size_t i = 2; i < header.size(); ++i) {
        const std::string col = util::trim(header[i]);
        if (col.rfind("p_", 0) == 0) {
            if (has_label_col) throw DataError("probability column after label column in header");
            labels.classes.push_back(col.substr(2));
        } else if (col == "label" && i == header.size() - 1) {
            has_label_col = true;
        } else {
            throw DataError("unexpected confidence CSV column '" + col + "'");
        }
    }
    if (labels.classes.empty()) throw DataError("confidence CSV has no p_<class> columns");

    Dataset d{labels, {}};
    const size_t C = labels.size();
    std::map<std::string, size_t> scan_index;  // rows group by scan_id, first appearance wins
    size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (util::trim(line).empty()) continue;
        const auto fields = util::split_csv_line(line);
        const size_t expected = 2 + C + (has_label_col ? 1 : 0);
        if (fields.size() != expected) {
            throw DataError("row " + std::to_string(row) + ": expected " + std::to_string(expected) +
                            " fields, got " + std::to_string(fields.size()));
        }
        const std::string scan_id = util::trim(fields[0]);
        SliceRecord slice;
        slice.slice_id = util::trim(fields[1]);
        slice.confidence.p.reserve(C);
        for (size_t k = 0; k < C; ++k) {
            slice.confidence.p.push_back(
                parse_double(fields[2 + k], "row " + std::to_string(row) + " p_" + labels.classes[k]));
        }
        std::optional<std::string> label;
        if (has_label_col) {
            const std::string l = util::trim(fields.back());
            if (!l.empty()) label = l;
        }
        auto [it, inserted] = scan_index.try_emplace(scan_id, d.scans.size());
        if (inserted) d.scans.push_back(ScanRecord{scan_id, {}, {}});
        ScanRecord& scan = d.scans[it->second];
        if (label) {
            if (scan.true_label && *scan.true_label != *label) {
                throw DataError("row " + std::to_string(row) + ": scan '" + scan_id +
                                "' has conflicting labels");
            }
            scan.true_label = label;
        }
        scan.slices.push_back(std::move(slice));
    }
    return d;
}

std::string dataset_to_json(const Dataset& d) {
    nlohmann::json j;
    j["classes"] = d.label_space.classes;
    auto& scans = j["scans"] = nlohmann::json::array();
    for (const auto& scan : d.scans) {
        nlohmann::json js;
        js["scan_id"] = scan.scan_id;
        if (scan.true_label) js["label"] = *scan.true_label;
        auto& slices = js["slices"] = nlohmann::json::array();
        for (const auto& slice : scan.slices) {
            slices.push_back({{"slice_id", slice.slice_id}, {"p", slice.confidence.p}});
        }
        scans.push_back(std::move(js));
    }
    return j.dump(2) + "\n";
}

Dataset dataset_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad dataset JSON: ") + e.what());
    }
    try {
        Dataset d;
        d.label_space.classes = j.at("classes").get<std::vector<std::string>>();
        for (const auto& js : j.at("scans")) {
            ScanRecord scan;
            scan.scan_id = js.at("scan_id").get<std::string>();
            if (js.contains("label")) scan.true_label = js.at("label").get<std::string>();
            for (const auto& jl : js.at("slices")) {
                SliceRecord slice;
                slice.slice_id = jl.at("slice_id").get<std::string>();
                slice.confidence.p = jl.at("p").get<std::vector<double>>();
                scan.slices.push_back(std::move(slice));
            }
            d.scans.push_back(std::move(scan));
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad dataset JSON: ") + e.what());
    }
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Dataset load_dataset(const std::string& path) {
    const std::string text = util::read_file(path);
    return ends_with(path, ".json") ? dataset_from_json(text) : dataset_from_csv(text);
}

void save_dataset(const Dataset& d, const std::string& path) {
    util::atomic_write_file(path, ends_with(path, ".json") ? dataset_to_json(d) : dataset_to_csv(d));
}

}  // namespace ichfuse
