#pragma once

// Evaluation suite: confusion-matrix classification metrics with macro
// averaging, plus likelihood-based fit statistics for probability
// predictions.

#include "ichfuse/confmap.hpp"

#include <string>
#include <vector>

namespace ichfuse::metrics {

struct ConfusionMatrix {
    LabelSpace labels;
    std::vector<std::vector<long long>> counts;  // rows = true, cols = predicted

    long long total() const;
    long long trace() const;
};

ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const LabelSpace& labels);

struct PerClassMetrics {
    long long tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0, sensitivity = 0, specificity = 0, f1 = 0;
    // set when a denominator was zero; the value then contributes 0 to macros
    bool precision_undefined = false;
    bool sensitivity_undefined = false;
    bool specificity_undefined = false;
};

struct ClassificationMetrics {
    double accuracy = 0;
    double macro_precision = 0;
    double macro_sensitivity = 0;
    double macro_specificity = 0;
    double macro_f1 = 0;
    std::vector<PerClassMetrics> per_class;
};

ClassificationMetrics classification_metrics(const ConfusionMatrix& m);

enum class LikelihoodForm {
    Multiclass,      // LL = sum_i log p_hat[i, y_i]
    BinaryOneVsRest  // LL = sum_i sum_k [y log p + (1-y) log(1-p)]
};

struct FitStatistics {
    double r2_generalized = 0;  // 1 - exp((LL0 - LLM)/N)
    double r2_entropy = 0;      // (LL0 - LLM)/LL0
    double rase = 0;            // sqrt(mean squared deviation from one-hot, over N*C)
    double mad = 0;             // mean absolute deviation from one-hot, over N*C
    double log_likelihood = 0;  // LLM
    double null_log_likelihood = 0;
};

FitStatistics fit_statistics(const std::vector<int>& y_true,
                             const std::vector<ConfidenceVector>& y_prob,
                             LikelihoodForm form = LikelihoodForm::Multiclass);

struct EvalReport {
    ConfusionMatrix matrix;
    ClassificationMetrics classification;
    FitStatistics fit;
    bool has_fit = false;  // fit stats need probability predictions
};

std::string report_to_json(const EvalReport& r);
std::string report_to_table(const EvalReport& r);  // aligned text

}  // namespace ichfuse::metrics
