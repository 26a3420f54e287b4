#include "ichfuse/metrics.hpp"

#include "ichfuse/errors.hpp"
#include "ichfuse/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace ichfuse::metrics {

long long ConfusionMatrix::total() const {
    long long n = 0;
    for (const auto& row : counts)
        for (long long v : row) n += v;
    return n;
}

long long ConfusionMatrix::trace() const {
    long long n = 0;
    for (size_t i = 0; i < counts.size(); ++i) n += counts[i][i];
    return n;
}

ConfusionMatrix confusion(const std::vector<std::string>& y_true,
                          const std::vector<std::string>& y_pred,
                          const LabelSpace& labels) {
    if (y_true.size() != y_pred.size()) throw DataError("confusion: label list lengths differ");
    if (y_true.empty()) throw DataError("confusion: empty input");
    const size_t C = labels.size();
    ConfusionMatrix m{labels, std::vector<std::vector<long long>>(C, std::vector<long long>(C, 0))};
    for (size_t i = 0; i < y_true.size(); ++i) {
        const int t = labels.index_of(y_true[i]);
        const int p = labels.index_of(y_pred[i]);
        if (t < 0) throw DataError("confusion: unknown true label '" + y_true[i] + "'");
        if (p < 0) throw DataError("confusion: unknown predicted label '" + y_pred[i] + "'");
        ++m.counts[static_cast<size_t>(t)][static_cast<size_t>(p)];
    }
    return m;
}

ClassificationMetrics classification_metrics(const ConfusionMatrix& m) {
    const size_t C = m.counts.size();
    const long long N = m.total();
    if (N < 1) throw DataError("classification_metrics: empty confusion matrix");

    ClassificationMetrics out;
    out.per_class.resize(C);
    out.accuracy = static_cast<double>(m.trace()) / static_cast<double>(N);

    for (size_t i = 0; i < C; ++i) {
        PerClassMetrics& pc = out.per_class[i];
        long long row_sum = 0, col_sum = 0;
        for (size_t j = 0; j < C; ++j) {
            row_sum += m.counts[i][j];
            col_sum += m.counts[j][i];
        }
        pc.tp = m.counts[i][i];
        pc.fn = row_sum - pc.tp;
        pc.fp = col_sum - pc.tp;
        pc.tn = N - row_sum - pc.fp;

        if (pc.tp + pc.fp > 0) {
            pc.precision = static_cast<double>(pc.tp) / static_cast<double>(pc.tp + pc.fp);
        } else {
            pc.precision_undefined = true;
        }
        if (pc.tp + pc.fn > 0) {
            pc.sensitivity = static_cast<double>(pc.tp) / static_cast<double>(pc.tp + pc.fn);
        } else {
            pc.sensitivity_undefined = true;
        }
        if (pc.tn + pc.fp > 0) {
            pc.specificity = static_cast<double>(pc.tn) / static_cast<double>(pc.tn + pc.fp);
        } else {
            pc.specificity_undefined = true;
        }
        if (pc.precision + pc.sensitivity > 0) {
            pc.f1 = 2.0 * pc.precision * pc.sensitivity / (pc.precision + pc.sensitivity);
        }
        out.macro_precision += pc.precision;
        out.macro_sensitivity += pc.sensitivity;
        out.macro_specificity += pc.specificity;
        out.macro_f1 += pc.f1;
    }
    out.macro_precision /= static_cast<double>(C);
    out.macro_sensitivity /= static_cast<double>(C);
    out.macro_specificity /= static_cast<double>(C);
    out.macro_f1 /= static_cast<double>(C);
    return out;
}

FitStatistics fit_statistics(const std::vector<int>& y_true,
                             const std::vector<ConfidenceVector>& y_prob,
                             LikelihoodForm form) {
    if (y_true.empty()) throw DataError("fit_statistics: empty input");
    if (y_true.size() != y_prob.size()) throw DataError("fit_statistics: length mismatch");
    const size_t N = y_true.size();
    const size_t C = y_prob.front().size();
    constexpr double EPS = 1e-12;

    std::vector<double> class_freq(C, 0.0);
    for (size_t i = 0; i < N; ++i) {
        if (y_true[i] < 0 || static_cast<size_t>(y_true[i]) >= C) {
            throw DataError("fit_statistics: label index out of range");
        }
        if (y_prob[i].size() != C) throw DataError("fit_statistics: ragged probability vectors");
        class_freq[static_cast<size_t>(y_true[i])] += 1.0;
    }
    for (double& f : class_freq) f /= static_cast<double>(N);

    // Clip only where a log could blow up, so an exact prediction scores an
    // exact log-likelihood of zero.
    const auto log_lo = [&](double p) { return std::log(std::max(p, EPS)); };
    const auto log_hi = [&](double p) { return std::log(std::max(1.0 - p, EPS)); };

    FitStatistics out;
    double sq_sum = 0.0, abs_sum = 0.0;
    for (size_t i = 0; i < N; ++i) {
        const size_t y = static_cast<size_t>(y_true[i]);
        for (size_t k = 0; k < C; ++k) {
            const double target = (k == y) ? 1.0 : 0.0;
            const double diff = y_prob[i].p[k] - target;
            sq_sum += diff * diff;
            abs_sum += std::abs(diff);
        }
        if (form == LikelihoodForm::Multiclass) {
            out.log_likelihood += log_lo(y_prob[i].p[y]);
            out.null_log_likelihood += log_lo(class_freq[y]);
        } else {
            for (size_t k = 0; k < C; ++k) {
                const double p = y_prob[i].p[k];
                const double q = class_freq[k];
                if (k == y) {
                    out.log_likelihood += log_lo(p);
                    out.null_log_likelihood += log_lo(q);
                } else {
                    out.log_likelihood += log_hi(p);
                    out.null_log_likelihood += log_hi(q);
                }
            }
        }
    }
    const double denom = static_cast<double>(N) * static_cast<double>(C);
    out.rase = std::sqrt(sq_sum / denom);
    out.mad = abs_sum / denom;
    out.r2_generalized =
        1.0 - std::exp((out.null_log_likelihood - out.log_likelihood) / static_cast<double>(N));
    // (LL0 - LLM)/LL0: 0 at the null model, 1 at a perfect fit.
    out.r2_entropy = out.null_log_likelihood == 0.0
                         ? 0.0
                         : (out.null_log_likelihood - out.log_likelihood) / out.null_log_likelihood;
    return out;
}

std::string report_to_json(const EvalReport& r) {
    nlohmann::json j;
    j["classes"] = r.matrix.labels.classes;
    j["confusion"] = r.matrix.counts;
    j["n"] = r.matrix.total();
    j["accuracy"] = r.classification.accuracy;
    j["macro_precision"] = r.classification.macro_precision;
    j["macro_sensitivity"] = r.classification.macro_sensitivity;
    j["macro_specificity"] = r.classification.macro_specificity;
    j["macro_f1"] = r.classification.macro_f1;
    auto& pc = j["per_class"] = nlohmann::json::array();
    for (size_t i = 0; i < r.classification.per_class.size(); ++i) {
        const auto& c = r.classification.per_class[i];
        nlohmann::json jc{{"class", r.matrix.labels.classes[i]},
                          {"tp", c.tp},
                          {"fp", c.fp},
                          {"fn", c.fn},
                          {"tn", c.tn},
                          {"precision", c.precision},
                          {"sensitivity", c.sensitivity},
                          {"specificity", c.specificity},
                          {"f1", c.f1}};
        if (c.precision_undefined) jc["precision_undefined"] = true;
        if (c.sensitivity_undefined) jc["sensitivity_undefined"] = true;
        if (c.specificity_undefined) jc["specificity_undefined"] = true;
        pc.push_back(std::move(jc));
    }
    if (r.has_fit) {
        j["fit"] = {{"r2_generalized", r.fit.r2_generalized},
                    {"r2_entropy", r.fit.r2_entropy},
                    {"rase", r.fit.rase},
                    {"mad", r.fit.mad},
                    {"log_likelihood", r.fit.log_likelihood},
                    {"null_log_likelihood", r.fit.null_log_likelihood}};
    }
    return j.dump(2) + "\n";
}

std::string report_to_table(const EvalReport& r) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << "n=" << r.matrix.total() << "  accuracy=" << r.classification.accuracy << "\n\n";
    out << std::left << std::setw(8) << "class" << std::right << std::setw(10) << "precision"
        << std::setw(12) << "sensitivity" << std::setw(12) << "specificity" << std::setw(8) << "f1"
        << "\n";
    for (size_t i = 0; i < r.classification.per_class.size(); ++i) {
        const auto& c = r.classification.per_class[i];
        out << std::left << std::setw(8) << r.matrix.labels.classes[i] << std::right << std::setw(10)
            << c.precision << std::setw(12) << c.sensitivity << std::setw(12) << c.specificity
            << std::setw(8) << c.f1 << "\n";
    }
    out << std::left << std::setw(8) << "macro" << std::right << std::setw(10)
        << r.classification.macro_precision << std::setw(12) << r.classification.macro_sensitivity
        << std::setw(12) << r.classification.macro_specificity << std::setw(8)
        << r.classification.macro_f1 << "\n";
    if (r.has_fit) {
        out << "\nr2_generalized=" << r.fit.r2_generalized << "  r2_entropy=" << r.fit.r2_entropy
            << "  rase=" << r.fit.rase << "  mad=" << r.fit.mad << "  ll=" << r.fit.log_likelihood
            << "\n";
    }
    return out.str();
}

}  // namespace ichfuse::metrics
