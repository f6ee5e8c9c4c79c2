#include "jtree/tree.hpp"

#include <algorithm>
#include <charconv>

namespace jtree {

Vertex::Vertex(std::vector<std::uint32_t> word) : word_(std::move(word)) {}

Vertex Vertex::successor_marker() { return Vertex(std::vector<std::uint32_t>{0}); }

Vertex Vertex::parse(std::string_view text) {
  if (text == "e" || text.empty()) return Vertex{};
  if (text == "^") return successor_marker();
  std::vector<std::uint32_t> word;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string_view::npos) dot = text.size();
    std::string_view part = text.substr(pos, dot - pos);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || v == 0) {
      throw Error(ErrorCode::InvalidArgument, "bad vertex address '" + std::string(text) + "'");
    }
    word.push_back(v);
    pos = dot + 1;
  }
  return Vertex(std::move(word));
}

std::optional<Vertex> Vertex::parent() const {
  if (word_.empty()) return std::nullopt;
  return Vertex(std::vector<std::uint32_t>(word_.begin(), word_.end() - 1));
}

Vertex Vertex::child(std::uint32_t i) const {
  auto w = word_;
  w.push_back(i);
  return Vertex(std::move(w));
}

std::vector<Vertex> Vertex::children(unsigned d) const {
  std::vector<Vertex> out;
  out.reserve(d);
  for (std::uint32_t i = 1; i <= d; ++i) out.push_back(child(i));
  return out;
}

Vertex Vertex::prefix(std::size_t len) const {
  len = std::min(len, word_.size());
  return Vertex(std::vector<std::uint32_t>(word_.begin(), word_.begin() + static_cast<long>(len)));
}

bool Vertex::is_prefix_of(const Vertex& other) const {
  return word_.size() <= other.word_.size() &&
         std::equal(word_.begin(), word_.end(), other.word_.begin());
}

std::size_t Vertex::common_prefix_length(const Vertex& other) const {
  std::size_t n = std::min(word_.size(), other.word_.size());
  std::size_t i = 0;
  while (i < n && word_[i] == other.word_[i]) ++i;
  return i;
}

void Vertex::validate(unsigned d) const {
  for (auto v : word_) {
    if (v < 1 || v > d) {
      throw Error(ErrorCode::InvalidArgument,
                  "vertex " + to_string() + " has a letter outside 1.." + std::to_string(d));
    }
  }
}

std::string Vertex::to_string() const {
  if (word_.empty()) return "e";
  if (is_successor_marker()) return "^";
  std::string s;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) s.push_back('.');
    s += std::to_string(word_[i]);
  }
  return s;
}

std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
  if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.word_.begin(), a.word_.end(), b.word_.begin(),
                                                b.word_.end());
}

std::size_t checked_power(unsigned d, std::size_t k, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (out > cap / d) {
      throw Error(ErrorCode::PatchTooLarge, std::to_string(d) + "^" + std::to_string(k) +
                                                " entries exceed the budget of " +
                                                std::to_string(cap));
    }
    out *= d;
  }
  if (out > cap) {
    throw Error(ErrorCode::PatchTooLarge, "entry count exceeds the budget");
  }
  return out;
}

std::vector<Vertex> subtree_level(const Vertex& x, unsigned d, std::size_t depth,
                                  std::size_t budget) {
  if (depth < x.length()) return {};
  std::size_t extra = depth - x.length();
  std::size_t count = checked_power(d, extra, budget);
  std::vector<Vertex> out;
  out.reserve(count);
  std::vector<std::uint32_t> w = x.word();
  w.resize(depth, 1);
  for (std::size_t c = 0; c < count; ++c) {
    out.emplace_back(w);
    // odometer increment on the trailing `extra` letters
    for (std::size_t pos = depth; pos > x.length(); --pos) {
      if (w[pos - 1] < d) {
        ++w[pos - 1];
        break;
      }
      w[pos - 1] = 1;
    }
  }
  return out;
}

std::vector<Vertex> words_of_length(unsigned d, std::size_t length, std::size_t budget) {
  return subtree_level(Vertex{}, d, length, budget);
}

std::size_t LambdaPatch::size() const {
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t k = 0; k <= apex_level; ++k) {
    total += layer;
    layer *= d;
  }
  return total;
}

std::size_t LambdaPatch::level(const Vertex& w) const {
  if (w.is_successor_marker()) return apex_level + 1;
  if (w.length() > apex_level) {
    throw Error(ErrorCode::InvalidArgument, "word " + w.to_string() + " lies outside the patch");
  }
  return apex_level - w.length();
}

std::vector<Vertex> LambdaPatch::vertices(std::size_t budget) const {
  std::vector<Vertex> out;
  for (std::size_t len = 0; len <= apex_level; ++len) {
    auto layer = words_of_length(d, len, budget);
    if (out.size() + layer.size() > budget) {
      throw Error(ErrorCode::PatchTooLarge, "patch exceeds the entry budget");
    }
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace jtree
