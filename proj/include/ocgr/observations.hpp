#ifndef OCGR_OBSERVATIONS_HPP
#define OCGR_OBSERVATIONS_HPP

#include "ocgr/errors.hpp"
#include "ocgr/rational.hpp"
#include "ocgr/rng.hpp"
#include "ocgr/task.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ocgr {

/// Ordered sequence of operator labels with derived occurrence counts.
class ObservationSequence {
public:
    ObservationSequence() = default;
    explicit ObservationSequence(std::vector<std::string> labels)
        : labels_(std::move(labels)) {
        for (const std::string &label : labels_)
            ++occurrences_[label];
    }

    const std::vector<std::string> &labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }

    const std::map<std::string, int> &occurrences() const {
        return occurrences_;
    }

    int occurrences_of(const std::string &label) const {
        auto it = occurrences_.find(label);
        return it == occurrences_.end() ? 0 : it->second;
    }

    friend bool operator==(const ObservationSequence &a,
                           const ObservationSequence &b) {
        return a.labels_ == b.labels_;
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, int> occurrences_;
};

/// Sensor unreliability rating epsilon in [0, 1], kept exact as a rational
/// so the floor in Eq-style noise budgets never suffers float drift.
struct NoiseSpec {
    long long num = 0;
    long long den = 1;

    NoiseSpec() = default;
    NoiseSpec(long long n, long long d) : num(n), den(d) {
        if (den <= 0 || num < 0 || num > den)
            raise(ErrorKind::InvalidArgument, "epsilon must be in [0,1]");
        long long g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    /// Parse "0.2", ".5", "1", or "1/5".
    static NoiseSpec parse(const std::string &text) {
        if (text.empty())
            raise(ErrorKind::InvalidArgument, "empty epsilon");
        if (text.find('-') != std::string::npos)
            raise(ErrorKind::InvalidArgument, "epsilon must be nonnegative");
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            try {
                long long n = std::stoll(text.substr(0, slash));
                long long d = std::stoll(text.substr(slash + 1));
                return NoiseSpec(n, d);
            } catch (const std::exception &) {
                raise(ErrorKind::InvalidArgument, "bad epsilon '" + text + "'");
            }
        }
        auto dot = text.find('.');
        try {
            if (dot == std::string::npos)
                return NoiseSpec(std::stoll(text), 1);
            std::string whole = text.substr(0, dot);
            std::string frac = text.substr(dot + 1);
            if (frac.size() > 9)
                frac = frac.substr(0, 9);
            long long den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i)
                den *= 10;
            long long num = (whole.empty() ? 0 : std::stoll(whole)) * den +
                            (frac.empty() ? 0 : std::stoll(frac));
            return NoiseSpec(num, den);
        } catch (const Error &) {
            throw;
        } catch (const std::exception &) {
            raise(ErrorKind::InvalidArgument, "bad epsilon '" + text + "'");
        }
    }

    double value() const { return (double)num / (double)den; }
    bool is_zero() const { return num == 0; }

    std::string to_string() const {
        if (den == 1)
            return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

/// Number of observations the LP may leave unsatisfied: floor(|omega| * eps).
inline int max_ignorable(const ObservationSequence &omega,
                         const NoiseSpec &eps) {
    long long m = (long long)omega.size();
    return (int)((m * eps.num) / eps.den);
}

/*
  Compliance (the monotone-embedding test): omega complies with plan iff a
  strictly increasing index map embeds omega into the plan with matching
  labels. Greedy left-to-right matching is exact for this; the test suite
  cross-checks it against exhaustive enumeration of monotone maps.
*/
inline bool complies(const Plan &plan, const ObservationSequence &omega) {
    std::size_t next = 0;
    for (const std::string &step : plan.steps) {
        if (next < omega.size() && omega.labels()[next] == step)
            ++next;
    }
    return next == omega.size();
}

/// Order-preserving random subsequence of round(ratio * |plan|) steps
/// (round half up). ratio = 1 returns the plan verbatim.
inline ObservationSequence sample_observations(const Plan &plan, double ratio,
                                               Rng &rng) {
    if (!(ratio > 0.0) || ratio > 1.0)
        raise(ErrorKind::InvalidArgument, "observability ratio must be in (0,1]");
    if (plan.empty())
        raise(ErrorKind::EmptyPlan, "cannot sample observations from an empty plan");
    std::size_t n = plan.size();
    std::size_t m = (ratio == 1.0)
                        ? n
                        : (std::size_t)std::floor(ratio * (double)n + 0.5);
    if (m > n)
        m = n;
    // Partial Fisher-Yates over the index set, then restore order.
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i)
        indices[i] = i;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = i + (std::size_t)rng.below(n - i);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(m);
    std::sort(indices.begin(), indices.end());
    std::vector<std::string> labels;
    labels.reserve(m);
    for (std::size_t idx : indices)
        labels.push_back(plan.steps[idx]);
    return ObservationSequence(std::move(labels));
}

struct NoisyObservations {
    ObservationSequence sequence;
    std::vector<std::size_t> inserted_positions; // positions in `sequence`
};

/// Benchmark noise count for a clean sequence: ceil(0.2 * |omega|).
inline int default_noise_count(const ObservationSequence &omega) {
    return (int)((omega.size() + 4) / 5);
}

/*
  Insert `count` labels drawn uniformly from the operators that do not
  occur in `plan`, each at a uniformly random position (both ends
  included). The subsequence at the non-inserted positions is exactly the
  input sequence.
*/
inline NoisyObservations inject_noise_detail(const ObservationSequence &omega,
                                             const Task &task, const Plan &plan,
                                             Rng &rng, int count) {
    std::set<std::string> plan_labels(plan.steps.begin(), plan.steps.end());
    std::vector<std::string> candidates;
    for (const Operator &op : task.operators)
        if (!plan_labels.count(op.label))
            candidates.push_back(op.label);
    std::sort(candidates.begin(), candidates.end());
    if (candidates.empty() && count > 0)
        raise(ErrorKind::NoNoiseCandidates,
              "every operator occurs in the plan; nothing to inject");

    std::vector<std::string> labels = omega.labels();
    std::vector<bool> noisy(labels.size(), false);
    for (int i = 0; i < count; ++i) {
        const std::string &pick =
            candidates[(std::size_t)rng.below(candidates.size())];
        std::size_t pos = (std::size_t)rng.below(labels.size() + 1);
        labels.insert(labels.begin() + pos, pick);
        noisy.insert(noisy.begin() + pos, true);
    }
    NoisyObservations result;
    result.sequence = ObservationSequence(labels);
    for (std::size_t i = 0; i < noisy.size(); ++i)
        if (noisy[i])
            result.inserted_positions.push_back(i);
    return result;
}

inline ObservationSequence inject_noise(const ObservationSequence &omega,
                                        const Task &task, const Plan &plan,
                                        Rng &rng) {
    return inject_noise_detail(omega, task, plan, rng,
                               default_noise_count(omega))
        .sequence;
}

/// Observation file format: one label per line, ';' comment lines and
/// blank lines ignored, order significant.
inline ObservationSequence parse_observations(const std::string &text) {
    std::vector<std::string> labels;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == ';')
            continue;
        labels.push_back(normalize_label(line));
    }
    return ObservationSequence(std::move(labels));
}

inline std::string serialize_observations(const ObservationSequence &omega) {
    std::ostringstream out;
    for (const std::string &label : omega.labels())
        out << label << "\n";
    return out.str();
}

} // namespace ocgr

#endif
