#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "qbc/error.hpp"

namespace qbc {

using Labels = std::vector<std::string>;

struct Subsystem {
  std::string label;
  std::size_t dim = 1;

  bool operator==(const Subsystem&) const = default;
};

// Ordered tensor-factor description of a Hilbert space. The first subsystem
// is the most significant one in the row-major (Kronecker) index.
class SystemLayout {
 public:
  SystemLayout() = default;
  SystemLayout(std::initializer_list<Subsystem> parts)
      : SystemLayout(std::vector<Subsystem>(parts)) {}
  explicit SystemLayout(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i].dim < 1)
        throw ValidationError("subsystem '" + parts_[i].label + "' has dimension 0");
      for (std::size_t j = 0; j < i; ++j)
        if (parts_[j].label == parts_[i].label)
          throw ValidationError("duplicate subsystem label '" + parts_[i].label + "'");
    }
  }

  const std::vector<Subsystem>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  std::size_t total_dim() const {
    std::size_t d = 1;
    for (const auto& p : parts_) d *= p.dim;
    return d;
  }

  bool contains(const std::string& label) const {
    return std::any_of(parts_.begin(), parts_.end(),
                       [&](const Subsystem& s) { return s.label == label; });
  }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < parts_.size(); ++i)
      if (parts_[i].label == label) return i;
    throw LabelNotFound(label);
  }

  std::size_t dim(const std::string& label) const { return parts_[index_of(label)].dim; }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    d.reserve(parts_.size());
    for (const auto& p : parts_) d.push_back(p.dim);
    return d;
  }

  Labels labels() const {
    Labels l;
    for (const auto& p : parts_) l.push_back(p.label);
    return l;
  }

  SystemLayout concat(const SystemLayout& other) const {
    std::vector<Subsystem> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return SystemLayout(std::move(all));
  }

  // Sub-layout of the given labels, kept in this layout's order.
  SystemLayout select(const Labels& keep) const {
    for (const auto& l : keep) (void)index_of(l);
    std::vector<Subsystem> out;
    for (const auto& p : parts_)
      if (std::find(keep.begin(), keep.end(), p.label) != keep.end()) out.push_back(p);
    return SystemLayout(std::move(out));
  }

  SystemLayout renamed(const std::string& from, const std::string& to) const {
    std::vector<Subsystem> out = parts_;
    out[index_of(from)].label = to;
    return SystemLayout(std::move(out));
  }

  std::string to_string() const {
    std::string s;
    for (const auto& p : parts_) {
      if (!s.empty()) s += "⊗";
      s += p.label + "(" + std::to_string(p.dim) + ")";
    }
    return s.empty() ? "trivial" : s;
  }

  bool operator==(const SystemLayout&) const = default;

 private:
  std::vector<Subsystem> parts_;
};

}  // namespace qbc
