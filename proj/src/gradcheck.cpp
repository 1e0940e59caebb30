#include "mdet/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace mdet {

GradCheckReport grad_check(const std::vector<std::pair<std::string, Tensor>>& params,
                           const std::function<Tensor(Tape&)>& loss_fn,
                           double epsilon, double tolerance) {
  if (sizeof(Real) < 8) {
    throw ContractError("grad_check requires the 64-bit build");
  }
  for (const auto& [name, p] : params) {
    Tensor t = p;
    t.zero_grad();
  }
  Tape tape;
  Tensor loss = loss_fn(tape);
  tape.backward(loss);

  std::vector<std::vector<Real>> analytic;
  analytic.reserve(params.size());
  for (const auto& [name, p] : params) {
    Tensor t = p;
    analytic.push_back(t.has_grad() ? t.grad() : std::vector<Real>(t.numel(), Real(0)));
  }

  auto eval = [&]() -> double {
    Tape t;
    t.set_enabled(false);
    return double(loss_fn(t).value());
  };

  GradCheckReport report;
  for (std::size_t k = 0; k < params.size(); ++k) {
    Tensor p = params[k].second;
    GradCheckEntry entry;
    entry.name = params[k].first;
    for (std::size_t i = 0; i < p.numel(); ++i) {
      const Real saved = p.at(i);
      p.at(i) = saved + Real(epsilon);
      const double up = eval();
      p.at(i) = saved - Real(epsilon);
      const double down = eval();
      p.at(i) = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      const double exact = double(analytic[k][i]);
      const double denom = std::max({std::abs(exact), std::abs(numeric), 1e-5});
      entry.max_rel_err = std::max(entry.max_rel_err, std::abs(exact - numeric) / denom);
    }
    entry.pass = entry.max_rel_err <= tolerance;
    report.worst = std::max(report.worst, entry.max_rel_err);
    report.all_pass = report.all_pass && entry.pass;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace mdet
