#include "stagger/instance.hpp"

#include <algorithm>
#include <string>

#include "stagger/errors.hpp"
#include "stagger/numtheory.hpp"

namespace stagger {

Instance::Instance(std::vector<Item> items, Mode mode)
    : items_(std::move(items)), mode_(mode), h_sigma_(0), h_max_(0), t_min_(0), t_max_(0) {
  if (items_.empty()) throw InputError("Instance: item list must be nonempty");
  t_min_ = items_.front().interval;
  for (const Item& it : items_) {
    if (it.interval < 1) throw InputError("Instance: interval must be >= 1");
    if (it.quantity < 1) throw InputError("Instance: quantity must be >= 1");
    h_sigma_ += static_cast<long>(it.quantity);
    h_max_ = std::max(h_max_, it.quantity);
    t_min_ = std::min(t_min_, it.interval);
    t_max_ = std::max(t_max_, it.interval);
  }
}

BigInt Instance::cycle_length() const {
  std::vector<std::int64_t> intervals;
  intervals.reserve(items_.size());
  for (const Item& it : items_) intervals.push_back(it.interval);
  return lcm_of(intervals);
}

Instance Instance::restrict_to(const std::vector<std::size_t>& ids) const {
  std::vector<Item> sub;
  sub.reserve(ids.size());
  for (std::size_t id : ids) {
    if (id >= items_.size()) throw InputError("restrict_to: item id out of range");
    sub.push_back(items_[id]);
  }
  return Instance(std::move(sub), mode_);
}

Instance Instance::with_mode(Mode mode) const {
  return Instance(items_, mode);
}

ShiftVector::ShiftVector(const Instance& instance, std::vector<Rat> shifts)
    : shifts_(std::move(shifts)) {
  if (shifts_.size() != instance.size())
    throw InputError("ShiftVector: length " + std::to_string(shifts_.size()) +
                     " does not match item count " + std::to_string(instance.size()));
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    Rat period(static_cast<long>(instance.item(i).interval));
    shifts_[i] = rat_mod(shifts_[i], period);
    if (instance.mode() == Mode::Discrete && shifts_[i].get_den() != 1)
      throw InputError("ShiftVector: non-integer shift in Discrete mode");
  }
}

ShiftVector ShiftVector::zero(const Instance& instance) {
  return ShiftVector(instance, std::vector<Rat>(instance.size(), Rat(0)));
}

bool ShiftVector::lex_less(const ShiftVector& other) const {
  return std::lexicographical_compare(shifts_.begin(), shifts_.end(),
                                      other.shifts_.begin(), other.shifts_.end());
}

}  // namespace stagger
