#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace asymptolim {

/// Neumaier's variant of Kahan summation. The running compensation is an
/// error-free transformation of each addition, so the result is within a
/// couple of ulps of the exact sum regardless of term order.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  CompensatedSum& operator+=(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator-=(double x) noexcept { return *this += -x; }

  CompensatedSum& operator+=(const CompensatedSum& other) noexcept {
    *this += other.sum_;
    *this += other.comp_;
    return *this;
  }

  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated sum of a span.
double compensated_sum(std::span<const double> xs);

/// Index ranges are split into fixed-size chunks that do not depend on the
/// thread count; each chunk is reduced on its own and the per-chunk partials
/// are combined in chunk order. Results are therefore bit-identical for any
/// number of worker threads.
inline constexpr std::uint64_t kReductionChunk = std::uint64_t{1} << 15;

/// Sum of term(i) for i in [first, last), compensated and deterministic.
double parallel_sum(std::uint64_t first, std::uint64_t last,
                    const std::function<double(std::uint64_t)>& term,
                    unsigned threads = 1);

/// Number of i in [first, last) with pred(i) true.
std::uint64_t parallel_count(std::uint64_t first, std::uint64_t last,
                             const std::function<bool(std::uint64_t)>& pred,
                             unsigned threads = 1);

/// Runs task(i) for i in [0, count) on up to `threads` workers. Tasks must
/// write only to their own slot of any shared output.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  unsigned threads = 1);

}  // namespace asymptolim
