#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace fpp {

// Streaming moment accumulator in sum / sum-of-squares form. Merging two
// summaries reproduces the summary of the concatenated sample; for
// integer-valued samples within double precision the merge is exact and
// order-independent.
class EstimatorSummary {
  public:
    void add(double x) {
        ++n_;
        sum_ += x;
        sumsq_ += x * x;
        if (x < min_) min_ = x;
        if (x > max_) max_ = x;
    }

    void merge(const EstimatorSummary& other) {
        n_ += other.n_;
        sum_ += other.sum_;
        sumsq_ += other.sumsq_;
        if (other.min_ < min_) min_ = other.min_;
        if (other.max_ > max_) max_ = other.max_;
        if (other.first_index_ < first_index_) first_index_ = other.first_index_;
        if (other.last_index_ > last_index_) last_index_ = other.last_index_;
    }

    void note_sample_index(std::uint64_t idx) {
        if (idx < first_index_) first_index_ = idx;
        if (idx > last_index_) last_index_ = idx;
    }

    std::uint64_t count() const { return n_; }
    double sum() const { return sum_; }
    double sum_squares() const { return sumsq_; }
    double min() const { return min_; }
    double max() const { return max_; }
    std::uint64_t first_index() const { return first_index_; }
    std::uint64_t last_index() const { return last_index_; }

    double mean() const {
        if (n_ == 0) throw std::logic_error("EstimatorSummary: empty");
        return sum_ / static_cast<double>(n_);
    }

    // Unbiased sample variance.
    double variance() const {
        if (n_ < 2) return 0.0;
        const double n = static_cast<double>(n_);
        const double v = (sumsq_ - sum_ * sum_ / n) / (n - 1.0);
        return v > 0.0 ? v : 0.0;
    }

    // 95% normal confidence half-width for the mean.
    double half_width() const {
        if (n_ == 0) return std::numeric_limits<double>::infinity();
        return 1.959963984540054 * std::sqrt(variance() / static_cast<double>(n_));
    }

    static EstimatorSummary from_raw(std::uint64_t n, double sum, double sumsq, double mn,
                                     double mx, std::uint64_t first, std::uint64_t last) {
        EstimatorSummary s;
        s.n_ = n;
        s.sum_ = sum;
        s.sumsq_ = sumsq;
        s.min_ = mn;
        s.max_ = mx;
        s.first_index_ = first;
        s.last_index_ = last;
        return s;
    }

  private:
    std::uint64_t n_ = 0;
    double sum_ = 0.0;
    double sumsq_ = 0.0;
    double min_ = std::numeric_limits<double>::infinity();
    double max_ = -std::numeric_limits<double>::infinity();
    std::uint64_t first_index_ = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t last_index_ = 0;
};

}  // namespace fpp
