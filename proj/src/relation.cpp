#include "gradedrel/relation.hpp"

#include <sstream>

#include "gradedrel/errors.hpp"

namespace gradedrel {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::StructuralInput: return "structural-input";
    case ErrorCode::RejectedInput: return "rejected-input";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::UndefinedInput: return "undefined-input";
    case ErrorCode::Usage: return "usage";
    case ErrorCode::Resource: return "resource";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  os << code << " at line " << line;
  if (column) os << ", column " << column;
  os << ": " << message;
  return os.str();
}

bool canonical_less(const PointSet& a, const PointSet& b) {
  const auto ca = a.count();
  const auto cb = b.count();
  if (ca != cb) return ca < cb;
  // Same size: the set holding the first differing index comes first.
  const auto ma = a.members();
  const auto mb = b.members();
  return ma < mb;
}

Relation Relation::diagonal(std::size_t n) {
  Relation r(n);
  for (std::size_t x = 0; x < n; ++x) r.set(x, x);
  return r;
}

Relation Relation::full(std::size_t n) {
  Relation r(n);
  for (std::size_t x = 0; x < n; ++x) r.rows_[x] = PointSet::full(n);
  return r;
}

bool Relation::is_subset_of(const Relation& other) const {
  if (other.size() != size()) throw Error(ErrorCode::StructuralInput, "relation size mismatch");
  for (std::size_t x = 0; x < size(); ++x)
    if (!rows_[x].is_subset_of(other.rows_[x])) return false;
  return true;
}

bool Relation::is_symmetric() const {
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y : rows_[x].members())
      if (!test(y, x)) return false;
  return true;
}

bool Relation::is_reflexive() const {
  for (std::size_t x = 0; x < size(); ++x)
    if (!test(x, x)) return false;
  return true;
}

bool Relation::is_transitive() const { return compose(*this, *this).is_subset_of(*this); }

Relation compose(const Relation& r, const Relation& s) {
  if (r.size() != s.size()) {
    throw Error(ErrorCode::StructuralInput, "cannot compose relations on " + std::to_string(r.size()) +
                                                " and " + std::to_string(s.size()) + " points");
  }
  const std::size_t n = r.size();
  Relation out(n);
  for (std::size_t x = 0; x < n; ++x) {
    PointSet row(n);
    for (std::size_t z : r.row(x).members()) row |= s.row(z);
    for (std::size_t y : row.members()) out.set(x, y);
  }
  return out;
}

}  // namespace gradedrel
