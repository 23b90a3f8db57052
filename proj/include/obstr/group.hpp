#pragma once
/**
 * @file group.hpp
 * @brief Finite groups given by multiplication tables, and their subgroups.
 */

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "obstr/errors.hpp"

namespace obstr {

/// Bitset over the elements 0..n-1 of a group.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(int universe);

  void insert(int i) { words_[static_cast<size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  bool contains(int i) const { return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1U; }
  int universe() const { return universe_; }
  int count() const;
  bool subset_of(const ElemSet& o) const;
  ElemSet operator&(const ElemSet& o) const;
  ElemSet operator|(const ElemSet& o) const;
  std::vector<int> elements() const;
  std::size_t hash() const;
  bool operator==(const ElemSet& o) const { return words_ == o.words_; }

 private:
  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElemSetHash {
  std::size_t operator()(const ElemSet& s) const { return s.hash(); }
};

/// A subgroup stored by its sorted member list and a membership bitset.
class Subgroup {
 public:
  Subgroup() = default;
  /// `members` must be closed; it is sorted here.
  Subgroup(std::vector<int> members, int universe);
  explicit Subgroup(const ElemSet& bits);

  int order() const { return static_cast<int>(members_.size()); }
  bool contains(int g) const { return bits_.contains(g); }
  bool is_trivial() const { return members_.size() == 1; }
  bool subset_of(const Subgroup& o) const { return bits_.subset_of(o.bits_); }
  const std::vector<int>& members() const { return members_; }
  const ElemSet& bits() const { return bits_; }

  bool operator==(const Subgroup& o) const { return bits_ == o.bits_; }
  /// Orders by size, then lexicographically by member list.
  bool operator<(const Subgroup& o) const;

 private:
  std::vector<int> members_;
  ElemSet bits_;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const { return s.bits().hash(); }
};

struct LatticeCache;

/// A finite group with element 0 as identity.
class GroupTable {
 public:
  GroupTable(const GroupTable&) = delete;
  GroupTable& operator=(const GroupTable&) = delete;
  ~GroupTable();

  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int elem_order(int a) const { return elem_order_[a]; }
  int power(int a, long long k) const;
  /// g x g^{-1}
  int conjugate(int g, int x) const { return mul(mul(g, x), inv_[g]); }

  const std::vector<std::vector<int>>& conj_classes() const { return classes_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  int class_of(int g) const { return class_of_[g]; }
  int inverse_class(int c) const { return inv_class_[c]; }
  int class_size(int c) const { return static_cast<int>(classes_[c].size()); }
  /// |C_G(g)| for any g in class c.
  int centralizer_order(int c) const { return n_ / class_size(c); }
  bool is_abelian() const { return num_classes() == n_; }

  std::vector<std::vector<int>> table() const;

  /// Lazily built subgroup data; safe to call from several threads.
  const LatticeCache& lattice() const;

  friend std::shared_ptr<const GroupTable> build_group(const std::vector<std::vector<int>>& mul);

 private:
  GroupTable() = default;

  int n_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<int> elem_order_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::vector<int> inv_class_;

  mutable std::unique_ptr<LatticeCache> lattice_;
  mutable std::unique_ptr<std::once_flag> lattice_once_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

/// Verifies the group axioms and populates all derived tables.
/// Throws Error(NonGroup) naming a witness on failure.
GroupPtr build_group(const std::vector<std::vector<int>>& mul);

/// Builds a group from n elements and a multiplication callback.
GroupPtr build_group(int n, const std::function<int(int, int)>& mul);

}  // namespace obstr
