#pragma once

// Shared data model: class labels, per-slice confidence vectors, scans and
// datasets, plus the CSV/JSON confidence-map formats. Everything here is
// immutable after construction and safe to share across threads.

#include <optional>
#include <string>
#include <vector>

namespace ichfuse {

struct LabelSpace {
    std::vector<std::string> classes;

    static LabelSpace ich_subtypes() {
        return LabelSpace{{"EDH", "IPH", "IVH", "SAH", "SDH"}};
    }

    size_t size() const { return classes.size(); }
    // -1 if unknown
    int index_of(const std::string& name) const;
};

// Probability vector over the label space; entries in [0,1], sum 1 within
// SIMPLEX_TOL.
struct ConfidenceVector {
    std::vector<double> p;

    size_t size() const { return p.size(); }
    double max_prob() const;
    size_t argmax() const;  // ties break to the lowest class index
};

inline constexpr double SIMPLEX_TOL = 1e-9;

struct SliceRecord {
    std::string slice_id;
    ConfidenceVector confidence;
};

struct ScanRecord {
    std::string scan_id;
    std::vector<SliceRecord> slices;
    std::optional<std::string> true_label;

    size_t n_slices() const { return slices.size(); }
};

struct Dataset {
    LabelSpace label_space;
    std::vector<ScanRecord> scans;

    size_t total_slices() const;
};

struct Violation {
    std::string scan_id;   // empty when dataset-level
    std::string slice_id;  // empty when scan-level
    std::string rule;
    std::string message;
};

// Empty result iff every invariant of the data model holds. Violations are
// data, not faults: nothing throws here.
std::vector<Violation> validate_dataset(const Dataset& d);

// Scales a nonnegative vector onto the probability simplex. Throws DataError
// on an all-zero ("degenerate vector") or negative input.
ConfidenceVector normalize_confidence(const std::vector<double>& raw);

// CSV format: header scan_id,slice_id,p_<class>...[,label], one row per
// slice, UTF-8, '.' decimal point. Doubles round-trip exactly.
std::string dataset_to_csv(const Dataset& d);
Dataset dataset_from_csv(const std::string& text);

// JSON manifest mirroring the CSV schema.
std::string dataset_to_json(const Dataset& d);
Dataset dataset_from_json(const std::string& text);

Dataset load_dataset(const std::string& path);  // dispatches on extension
void save_dataset(const Dataset& d, const std::string& path);

}  // namespace ichfuse
