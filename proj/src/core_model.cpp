#include "lotalloc/core_model.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>

namespace lotalloc {

// ---------------------------------------------------------------- Ranking

Ranking::Ranking(std::span<const ObjectId> order) : m_(static_cast<int>(order.size())) {
  if (m_ < 1 || m_ > kMaxObjects) {
    throw DomainError("ranking must cover between 1 and " + std::to_string(kMaxObjects) + " objects");
  }
  std::uint32_t seen = 0;
  for (int k = 0; k < m_; ++k) {
    int idx = order[static_cast<std::size_t>(k)].index;
    if (idx < 1 || idx > m_) {
      throw DomainError("object index " + std::to_string(idx) + " outside 1.." + std::to_string(m_));
    }
    if (seen & (1u << (idx - 1))) throw DomainError("object " + std::to_string(idx) + " repeated in ranking");
    seen |= 1u << (idx - 1);
    order_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(idx - 1);
  }
  rebuild_ranks();
}

Ranking::Ranking(std::initializer_list<int> order) {
  std::vector<ObjectId> ids;
  for (int v : order) ids.push_back(ObjectId{v});
  *this = Ranking(ids);
}

Ranking Ranking::identity(int m) {
  std::vector<ObjectId> ids(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) ids[static_cast<std::size_t>(k)] = ObjectId{k + 1};
  return Ranking(ids);
}

void Ranking::rebuild_ranks() {
  for (int k = 0; k < m_; ++k) rank_[order_[static_cast<std::size_t>(k)]] = static_cast<std::uint8_t>(k);
}

int Ranking::rank_of(ObjectId o) const {
  if (o.index < 1 || o.index > m_) {
    throw DomainError("object index " + std::to_string(o.index) + " outside 1.." + std::to_string(m_));
  }
  return rank_[static_cast<std::size_t>(o.index - 1)] + 1;
}

ObjectId Ranking::at(int k) const {
  if (k < 1 || k > m_) throw DomainError("rank " + std::to_string(k) + " outside 1.." + std::to_string(m_));
  return ObjectId{order_[static_cast<std::size_t>(k - 1)] + 1};
}

std::vector<ObjectId> Ranking::order() const {
  std::vector<ObjectId> out(static_cast<std::size_t>(m_));
  for (int k = 0; k < m_; ++k) out[static_cast<std::size_t>(k)] = ObjectId{order_[static_cast<std::size_t>(k)] + 1};
  return out;
}

ObjectId Ranking::best_in(ObjectSet set) const {
  for (int k = 0; k < m_; ++k) {
    if ((set.bits() >> order_[static_cast<std::size_t>(k)]) & 1u) return ObjectId{order_[static_cast<std::size_t>(k)] + 1};
  }
  throw DomainError("best of an empty object set");
}

bool Ranking::advance() {
  bool more = std::next_permutation(order_.begin(), order_.begin() + m_);
  rebuild_ranks();
  return more;
}

// ---------------------------------------------------------------- Profile

Profile::Profile(std::vector<Ranking> rankings) : rankings_(std::move(rankings)) {
  if (rankings_.empty()) throw DomainError("profile needs at least one agent");
  if (static_cast<int>(rankings_.size()) > kMaxAgents) {
    throw DomainError("at most " + std::to_string(kMaxAgents) + " agents are supported");
  }
  m_ = rankings_.front().size();
  for (const Ranking& r : rankings_) {
    if (r.size() != m_) throw DomainError("rankings in a profile must cover the same objects");
  }
}

const Ranking& Profile::ranking(AgentId i) const {
  if (i.index < 1 || i.index > agents()) {
    throw DomainError("agent " + std::to_string(i.index) + " outside 1.." + std::to_string(agents()));
  }
  return rankings_[static_cast<std::size_t>(i.index - 1)];
}

// ---------------------------------------------------------------- Scoring

ScoringSpec ScoringSpec::custom(std::vector<Rational> table) {
  if (table.empty()) throw DomainError("custom scoring table is empty");
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (table[k] <= 0) throw DomainError("custom scores must be strictly positive");
    if (k > 0 && table[k] > table[k - 1]) throw DomainError("custom scores must be non-increasing in rank");
  }
  return ScoringSpec(Kind::CustomTable, std::move(table));
}

std::string ScoringSpec::name() const {
  switch (kind_) {
    case Kind::Borda: return "borda";
    case Kind::Lexicographic: return "lex";
    case Kind::CustomTable: return "custom";
  }
  return "?";
}

int rank_of(const Ranking& r, ObjectId o) { return r.rank_of(o); }

Rational score(const ScoringSpec& g, int k, int m) {
  if (m < 1 || k < 1 || k > m) {
    throw DomainError("rank " + std::to_string(k) + " outside 1.." + std::to_string(m));
  }
  switch (g.kind()) {
    case ScoringSpec::Kind::Borda: return Rational(m - k + 1);
    case ScoringSpec::Kind::Lexicographic: return Rational(power(2, m - k));
    case ScoringSpec::Kind::CustomTable:
      if (static_cast<int>(g.custom_table().size()) != m) {
        throw DomainError("custom scoring table has " + std::to_string(g.custom_table().size()) +
                          " entries, expected " + std::to_string(m));
      }
      return g.custom_table()[static_cast<std::size_t>(k - 1)];
  }
  return Rational(0);
}

std::vector<Rational> score_table(const ScoringSpec& g, int m) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) out.push_back(score(g, k, m));
  return out;
}

bool is_convex(const ScoringSpec& g, int m) {
  auto table = score_table(g, m);
  for (int k = 0; k + 2 < m; ++k) {
    auto d1 = table[static_cast<std::size_t>(k)] - table[static_cast<std::size_t>(k + 1)];
    auto d2 = table[static_cast<std::size_t>(k + 1)] - table[static_cast<std::size_t>(k + 2)];
    if (d2 > d1) return false;
  }
  return true;
}

// ---------------------------------------------------------------- ProfileStream

ProfileStream::ProfileStream(int m, int n, bool reduce_symmetry)
    : m_(m), n_(n), reduced_(reduce_symmetry) {
  if (m < 1 || n < 1) throw DomainError("profile enumeration needs m >= 1 and n >= 1");
  if (m > 20) throw ResourceError("m! exceeds the enumerable range for m = " + std::to_string(m));
  if (n > kMaxAgents) throw DomainError("too many agents");
  perms_ = static_cast<std::uint64_t>(factorial(m));
  int free_agents = reduce_symmetry ? n - 1 : n;
  size_ = 1;
  for (int a = 0; a < free_agents; ++a) {
    if (size_ > std::numeric_limits<std::uint64_t>::max() / perms_) {
      throw ResourceError("profile space (" + std::to_string(m) + "!)^" + std::to_string(n) + " is too large to enumerate");
    }
    size_ *= perms_;
  }
  weight_ = reduce_symmetry ? Integer(perms_) : Integer(1);
}

namespace {

Ranking unrank_permutation(int m, std::uint64_t index) {
  std::vector<int> pool(static_cast<std::size_t>(m));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<std::uint64_t> fact(static_cast<std::size_t>(m), 1);
  for (int k = 1; k < m; ++k) fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * static_cast<std::uint64_t>(k);
  std::vector<ObjectId> order;
  for (int p = 0; p < m; ++p) {
    std::uint64_t f = fact[static_cast<std::size_t>(m - 1 - p)];
    std::uint64_t digit = index / f;
    index %= f;
    order.push_back(ObjectId{pool[digit]});
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return Ranking(order);
}

}  // namespace

Profile ProfileStream::at(std::uint64_t index) const {
  if (index >= size_) throw DomainError("profile index out of range");
  std::vector<Ranking> rankings(static_cast<std::size_t>(n_));
  int first_free = reduced_ ? 1 : 0;
  if (reduced_) rankings[0] = Ranking::identity(m_);
  for (int a = n_ - 1; a >= first_free; --a) {
    rankings[static_cast<std::size_t>(a)] = unrank_permutation(m_, index % perms_);
    index /= perms_;
  }
  return Profile(std::move(rankings));
}

ProfileStream::Cursor::Cursor(const ProfileStream& stream, std::uint64_t begin, std::uint64_t end)
    : pos_(begin), end_(std::min(end, stream.size())), first_free_(stream.reduced() ? 1 : 0) {
  if (pos_ < end_) profile_ = stream.at(pos_);
}

void ProfileStream::Cursor::next() {
  ++pos_;
  if (pos_ >= end_) return;
  auto& rankings = profile_.mutable_rankings();
  for (int a = static_cast<int>(rankings.size()) - 1; a >= first_free_; --a) {
    if (rankings[static_cast<std::size_t>(a)].advance()) return;
  }
}

ProfileStream enumerate_profiles(int m, int n, bool reduce_symmetry) {
  return ProfileStream(m, n, reduce_symmetry);
}

// ---------------------------------------------------------------- Text formats

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

std::vector<Ranking> parse_rankings(std::istream& in) {
  std::vector<Ranking> rankings;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::vector<ObjectId> order;
    std::string token;
    while (fields >> token) {
      int value = 0;
      try {
        std::size_t used = 0;
        value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError("expected an object index, got '" + token + "'", line_no);
      }
      order.push_back(ObjectId{value});
    }
    if (order.empty()) continue;
    try {
      rankings.emplace_back(order);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (rankings.back().size() != rankings.front().size()) {
      throw ParseError("ranking length differs from the first ranking", line_no);
    }
  }
  return rankings;
}

Profile parse_profile(std::istream& in) {
  auto rankings = parse_rankings(in);
  if (rankings.empty()) throw ParseError("profile has no rankings");
  return Profile(std::move(rankings));
}

Profile parse_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_profile(in);
}

ScoringSpec parse_scoring_table(std::istream& in) {
  std::vector<Rational> table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::string token;
    while (fields >> token) {
      try {
        table.push_back(parse_rational(token));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no);
      }
    }
  }
  try {
    return ScoringSpec::custom(std::move(table));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string format_ranking(const Ranking& r) {
  std::string out;
  for (ObjectId o : r.order()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(o.index);
  }
  return out;
}

std::string format_set(ObjectSet s) {
  std::string out = "{";
  bool first = true;
  for (ObjectId o : s.members()) {
    if (!first) out += ',';
    out += std::to_string(o.index);
    first = false;
  }
  return out + "}";
}

}  // namespace lotalloc
