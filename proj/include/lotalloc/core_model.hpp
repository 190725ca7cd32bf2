#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lotalloc/errors.hpp"
#include "lotalloc/numeric.hpp"

namespace lotalloc {

inline constexpr int kMaxObjects = 32;
inline constexpr int kMaxAgents = 32;

/// 1-based object index o_1..o_m.
struct ObjectId {
  int index = 0;
  auto operator<=>(const ObjectId&) const = default;
};

/// 1-based agent index 1..n.
struct AgentId {
  int index = 0;
  auto operator<=>(const AgentId&) const = default;
};

/// Fixed-width set of 1-based ids backed by a 32-bit mask.
template <typename Id>
class IdSet {
 public:
  constexpr IdSet() = default;
  constexpr explicit IdSet(std::uint32_t bits) : bits_(bits) {}
  IdSet(std::initializer_list<Id> ids) {
    for (Id id : ids) insert(id);
  }

  /// {1..count}
  static constexpr IdSet first(int count) {
    return IdSet(count >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << count) - 1));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Id id) const { return (bits_ >> (id.index - 1)) & 1u; }
  constexpr void insert(Id id) { bits_ |= std::uint32_t{1} << (id.index - 1); }
  constexpr void erase(Id id) { bits_ &= ~(std::uint32_t{1} << (id.index - 1)); }
  constexpr bool is_subset_of(IdSet other) const { return (bits_ & ~other.bits_) == 0; }
  /// Smallest member; undefined on an empty set.
  constexpr Id smallest() const { return Id{std::countr_zero(bits_) + 1}; }

  friend constexpr IdSet operator|(IdSet a, IdSet b) { return IdSet(a.bits_ | b.bits_); }
  friend constexpr IdSet operator&(IdSet a, IdSet b) { return IdSet(a.bits_ & b.bits_); }
  friend constexpr IdSet operator-(IdSet a, IdSet b) { return IdSet(a.bits_ & ~b.bits_); }
  IdSet& operator|=(IdSet o) { bits_ |= o.bits_; return *this; }
  IdSet& operator&=(IdSet o) { bits_ &= o.bits_; return *this; }
  IdSet& operator-=(IdSet o) { bits_ &= ~o.bits_; return *this; }
  friend constexpr bool operator==(IdSet, IdSet) = default;

  /// Members in increasing index order.
  std::vector<Id> members() const {
    std::vector<Id> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(Id{std::countr_zero(b) + 1});
    return out;
  }

 private:
  std::uint32_t bits_ = 0;
};

using ObjectSet = IdSet<ObjectId>;
using AgentSet = IdSet<AgentId>;

/// A strict preference order over m objects, best first.
class Ranking {
 public:
  Ranking() = default;
  /// Throws DomainError unless `order` is a permutation of o_1..o_m.
  explicit Ranking(std::span<const ObjectId> order);
  Ranking(std::initializer_list<int> order);

  static Ranking identity(int m);

  int size() const { return m_; }
  /// Position of `o` in this ranking, 1 = best.
  int rank_of(ObjectId o) const;
  /// Object at 1-based position `k`.
  ObjectId at(int k) const;
  std::vector<ObjectId> order() const;

  /// Most preferred member of a nonempty set.
  ObjectId best_in(ObjectSet set) const;
  bool prefers(ObjectId a, ObjectId b) const { return rank_[a.index - 1] < rank_[b.index - 1]; }

  /// Advances to the lexicographically next permutation; false on wraparound.
  bool advance();

  friend bool operator==(const Ranking& a, const Ranking& b) {
    return a.m_ == b.m_ && a.order_ == b.order_;
  }

 private:
  void rebuild_ranks();

  int m_ = 0;
  std::array<std::uint8_t, kMaxObjects> order_{};  // 0-based object at each position
  std::array<std::uint8_t, kMaxObjects> rank_{};   // 0-based position of each object
};

/// One ranking per agent, all over the same objects.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<Ranking> rankings);

  int objects() const { return m_; }
  int agents() const { return static_cast<int>(rankings_.size()); }
  const Ranking& ranking(AgentId i) const;
  const std::vector<Ranking>& rankings() const { return rankings_; }
  std::vector<Ranking>& mutable_rankings() { return rankings_; }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  int m_ = 0;
  std::vector<Ranking> rankings_;
};

/// Rank -> score map: Borda m-k+1, lexicographic 2^(m-k), or a custom table.
class ScoringSpec {
 public:
  enum class Kind { Borda, Lexicographic, CustomTable };

  static ScoringSpec borda() { return ScoringSpec(Kind::Borda, {}); }
  static ScoringSpec lexicographic() { return ScoringSpec(Kind::Lexicographic, {}); }
  /// Entries must be strictly positive and non-increasing.
  static ScoringSpec custom(std::vector<Rational> table);

  Kind kind() const { return kind_; }
  const std::vector<Rational>& custom_table() const { return table_; }
  std::string name() const;

 private:
  ScoringSpec(Kind kind, std::vector<Rational> table) : kind_(kind), table_(std::move(table)) {}

  Kind kind_;
  std::vector<Rational> table_;
};

int rank_of(const Ranking& r, ObjectId o);
Rational score(const ScoringSpec& g, int k, int m);
/// Scores for ranks 1..m; element k-1 holds g(k).
std::vector<Rational> score_table(const ScoringSpec& g, int m);
/// True iff g(k)-g(k+1) is non-increasing in k.
bool is_convex(const ScoringSpec& g, int m);

/// Lazily enumerates the (m!)^n profiles in lexicographic order (agent 1
/// most significant). With symmetry reduction agent 1 is pinned to the
/// identity ranking and every item carries weight m!; object relabeling
/// preserves every rank, so rank-based aggregates are unchanged.
class ProfileStream {
 public:
  ProfileStream(int m, int n, bool reduce_symmetry);

  int objects() const { return m_; }
  int agents() const { return n_; }
  bool reduced() const { return reduced_; }
  std::uint64_t size() const { return size_; }
  const Integer& weight() const { return weight_; }
  /// Always (m!)^n.
  Integer total_weight() const { return weight_ * Integer(size_); }

  /// Profile number `index` in stream order.
  Profile at(std::uint64_t index) const;

  /// Cursor over the half-open index range [begin, end).
  class Cursor {
   public:
    Cursor(const ProfileStream& stream, std::uint64_t begin, std::uint64_t end);
    bool done() const { return pos_ >= end_; }
    const Profile& profile() const { return profile_; }
    std::uint64_t index() const { return pos_; }
    void next();

   private:
    Profile profile_;
    std::uint64_t pos_;
    std::uint64_t end_;
    int first_free_;
  };

  Cursor cursor(std::uint64_t begin, std::uint64_t end) const { return Cursor(*this, begin, end); }
  Cursor cursor() const { return Cursor(*this, 0, size_); }

 private:
  int m_;
  int n_;
  bool reduced_;
  std::uint64_t size_;
  std::uint64_t perms_;
  Integer weight_;
};

ProfileStream enumerate_profiles(int m, int n, bool reduce_symmetry);

/// Profile text format: one line per agent, space-separated object indices
/// best to worst. Blank lines and '#' comments are ignored.
Profile parse_profile(std::istream& in);
Profile parse_profile_file(const std::string& path);
/// Ranking lines only, without requiring a particular agent count.
std::vector<Ranking> parse_rankings(std::istream& in);
/// m whitespace-separated positive rationals, best rank first.
ScoringSpec parse_scoring_table(std::istream& in);

std::string format_ranking(const Ranking& r);
std::string format_set(ObjectSet s);

}  // namespace lotalloc
