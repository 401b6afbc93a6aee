#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnas/rng.hpp"

namespace gnas {

// Dense row-major matrix of doubles. 64-bit throughout: the models here are
// desk-scale and gradient checks want the precision.
class Tensor {
 public:
  Tensor() = default;
  Tensor(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Tensor from_rows(std::initializer_list<std::initializer_list<double>> rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }

  double& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  double& operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool same_shape(const Tensor& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  bool all_finite() const;
  void fill(double v);
  double item() const;  // requires 1x1

  std::string shape_str() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// Block-diagonal matrix stored as per-block dense squares. Used for batch
// adjacency operators: multiplying block-by-block costs sum(n_i^2 d) instead
// of N^2 d for the assembled matrix.
struct BlockDiag {
  std::vector<size_t> offsets;  // size blocks+1, offsets.back() == total rows
  std::vector<Tensor> blocks;   // blocks[i] is square of side offsets[i+1]-offsets[i]

  size_t total() const { return offsets.empty() ? 0 : offsets.back(); }
  Tensor dense() const;
};
using BlockDiagPtr = std::shared_ptr<const BlockDiag>;

// A node in the computation graph: a value, an optional gradient buffer and
// an optional name (parameters carry names so optimizer and gradient-check
// diagnostics can point at the offender).
struct Node {
  Tensor value;
  Tensor grad;
  bool has_grad = false;       // backward accumulated at least once since last zero
  bool requires_grad = false;  // leaf parameter the optimizer may update
  bool is_leaf = true;         // not produced by a tape op
  std::string name;

  void ensure_grad();
  void zero_grad();
};
using Var = std::shared_ptr<Node>;

Var make_param(Tensor value, std::string name);
Var make_const(Tensor value);
Var make_zeros(size_t rows, size_t cols);

enum class SegmentMode { Sum, Mean, Max };

// Reverse-mode tape. Operations are recorded in forward order, which is a
// topological order by construction; one backward sweep walks the list in
// reverse and accumulates (never overwrites) gradients. A tape built with
// grad_enabled=false only computes values, for cheap re-evaluation inside
// finite-difference checks.
class Tape {
 public:
  explicit Tape(bool grad_enabled = true) : grad_enabled_(grad_enabled) {}

  bool grad_enabled() const { return grad_enabled_; }
  size_t size() const { return ops_.size(); }

  Var matmul(const Var& a, const Var& b);
  // block_diag(adj) * h ; adj is a constant (no gradient flows into it)
  Var adj_matmul(const BlockDiagPtr& adj, const Var& h);
  Var add(const Var& a, const Var& b);
  Var sub(const Var& a, const Var& b);
  Var mul(const Var& a, const Var& b);
  Var div(const Var& a, const Var& b);
  Var max2(const Var& a, const Var& b);  // ties route the gradient to a
  Var add_bias(const Var& a, const Var& bias_row);
  Var scale(const Var& a, double c);
  Var add_const(const Var& a, const Tensor& c);
  // a * (offset + s), s is a 1x1 variable
  Var scale_by_scalar(const Var& a, const Var& s, double offset = 0.0);
  Var relu(const Var& a);
  Var sigmoid(const Var& a);
  Var tanh_t(const Var& a);
  Var exp_t(const Var& a);
  Var log_t(const Var& a);
  Var softmax_rows(const Var& a);
  // inverted dropout; p==0 is an exact no-op (no tape node)
  Var dropout(const Var& a, double p, Rng& rng);
  Var concat_cols(const std::vector<Var>& parts);
  Var slice_cols(const Var& a, size_t begin, size_t count);
  Var reshape(const Var& a, size_t rows, size_t cols);
  Var row_sum(const Var& a);   // n x d -> n x 1
  Var sum_all(const Var& a);   // -> 1 x 1
  Var mean_all(const Var& a);  // -> 1 x 1
  // a[i,:] *= s[i,0]
  Var scale_rows(const Var& a, const Var& s);
  // per-segment reduction over rows; every segment must be non-empty.
  // Max scatters its gradient to the argmax row, first index on ties.
  Var segment_reduce(const Var& a, const std::vector<int>& segments, size_t num_segments,
                     SegmentMode mode);
  // out[r,:] = src[segments[r],:]
  Var rows_to_segments(const Var& src, const std::vector<int>& segments, size_t out_rows);
  // out[m,:] = src[row_ids[m],:], row_ids[m] == -1 gives a zero row
  Var select_rows(const Var& src, const std::vector<int>& row_ids);
  // mean negative log-likelihood over rows; numerically stabilized
  Var cross_entropy(const Var& logits, const std::vector<int>& labels);

  // root must be 1x1; seeds d(root)/d(root)=1 and sweeps the tape once.
  void backward(const Var& root);

 private:
  struct Op {
    Var output;
    std::function<void()> back;
  };

  Var emit(Tensor value, std::function<void()> back_builder);
  Var emit_value(Tensor value);

  bool grad_enabled_;
  std::vector<Op> ops_;
};

// Accumulate helper shared by backward rules: honors leaf/requires_grad
// gating so frozen parameter groups receive no gradient at all.
bool wants_grad(const Var& v);
void accum_grad(const Var& v, const Tensor& g);

// ---- Optimizers ------------------------------------------------------------

// Per-parameter Adam state: moment buffers shaped like the parameter and a
// strictly increasing step counter.
struct AdamState {
  Tensor m, v;
  int64_t step = 0;
};

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  // Applies one update to every registered parameter and zeroes gradients.
  // A registered parameter whose gradient was never populated by a backward
  // sweep is an error naming that parameter.
  virtual void step() = 0;
  void zero_grad();
  int64_t update_count(const std::string& param_name) const;
  int64_t total_updates() const { return total_updates_; }
  const std::vector<Var>& params() const { return params_; }

 protected:
  explicit Optimizer(std::vector<Var> params);
  void check_grads() const;
  void bump_counts();

  std::vector<Var> params_;
  std::vector<int64_t> counts_;
  int64_t total_updates_ = 0;
};

class Adam : public Optimizer {
 public:
  Adam(std::vector<Var> params, double lr, double weight_decay = 0.0, double beta1 = 0.9,
       double beta2 = 0.999, double eps = 1e-8);
  void step() override;

 private:
  double lr_, wd_, beta1_, beta2_, eps_;
  std::vector<AdamState> states_;
};

class AdaGrad : public Optimizer {
 public:
  AdaGrad(std::vector<Var> params, double lr, double weight_decay = 0.0, double eps = 1e-10);
  void step() override;

 private:
  double lr_, wd_, eps_;
  std::vector<Tensor> accum_;
};

// ---- Finite-difference gradient check --------------------------------------

struct GradCheckResult {
  double max_rel_err = 0.0;
  std::string worst_param;
  size_t worst_coord = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  size_t coords_checked = 0;
};

// build_loss must rebuild the same deterministic scalar computation on the
// given tape (any stochastic pieces frozen by the caller). Central
// differences (f(t+h)-f(t-h))/2h are compared per coordinate; relative error
// uses max(|analytic|,|numeric|,1e-6) as denominator so dead coordinates
// compare absolutely.
GradCheckResult finite_diff_check(const std::function<Var(Tape&)>& build_loss,
                                  const std::vector<Var>& params, double h = 1e-5);

// argmax per row of a plain tensor (first index on ties)
std::vector<int> argmax_rows(const Tensor& t);

}  // namespace gnas
