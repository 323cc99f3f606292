#include "groupoidal/report.hpp"

#include <algorithm>
#include <sstream>

namespace groupoidal {

void ValidationReport::fail(std::string_view check, std::string witness, double residual)
{
  record(check, residual);
  auto& n = counts_[std::string(check)];
  ++n;
  ++failure_count_;
  if (n <= kMaxWitnessesPerCheck)
    failures_.push_back({std::string(check), std::move(witness), residual});
}

void ValidationReport::note(std::string text) { notes_.push_back(std::move(text)); }

void ValidationReport::record(std::string_view check, double residual)
{
  auto it = residuals_.find(check);
  if (it == residuals_.end())
    residuals_.emplace(std::string(check), residual);
  else
    it->second = std::max(it->second, residual);
}

bool ValidationReport::failed(std::string_view check) const { return failure_count(check) > 0; }

std::size_t ValidationReport::failure_count(std::string_view check) const
{
  auto it = counts_.find(check);
  return it == counts_.end() ? 0 : it->second;
}

double ValidationReport::residual(std::string_view check) const
{
  auto it = residuals_.find(check);
  return it == residuals_.end() ? 0.0 : it->second;
}

void ValidationReport::merge(const ValidationReport& other, std::string_view prefix)
{
  const std::string p(prefix);
  for (const auto& [check, r] : other.residuals_)
    record(p + check, r);
  for (const auto& [check, n] : other.counts_) {
    counts_[p + check] += n;
    failure_count_ += n;
  }
  for (const auto& f : other.failures_)
    failures_.push_back({p + f.check, f.witness, f.residual});
  for (const auto& n : other.notes_)
    notes_.push_back(p.empty() ? n : p + n);
}

std::string ValidationReport::to_string() const
{
  std::ostringstream os;
  os << (ok() ? "valid" : "INVALID") << " (" << failure_count_ << " violation"
     << (failure_count_ == 1 ? "" : "s") << ")\n";
  for (const auto& f : failures_)
    os << "  [" << f.check << "] " << f.witness << '\n';
  for (const auto& n : notes_)
    os << "  note: " << n << '\n';
  return os.str();
}

void require_valid(const ValidationReport& r, std::string_view context)
{
  if (r.ok())
    return;
  std::string msg(context);
  if (!r.failures().empty())
    msg += ": [" + r.failures().front().check + "] " + r.failures().front().witness;
  throw PreconditionError(msg);
}

} // namespace groupoidal
