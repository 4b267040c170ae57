#pragma once

#include "gbsn/exact/integer.hpp"

#include <string>
#include <variant>
#include <vector>

namespace gbsn {

/// A vertex-group element: the vector x in the Z^n of `vertex`.
struct VertexLetter {
  std::string vertex;
  IntVector vec;
  friend bool operator==(const VertexLetter&, const VertexLetter&) = default;
};

/// The stable letter of a non-tree edge, to the power +1 or -1.
struct StableLetter {
  std::string edge;
  int sign = 1;
  friend bool operator==(const StableLetter&, const StableLetter&) = default;
};

using Letter = std::variant<VertexLetter, StableLetter>;

/// A freely reduced word in the graph-of-groups generators. Adjacent vertex
/// letters at the same vertex are merged, zero vectors dropped, and t t^-1
/// pairs cancelled on every append.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(const std::vector<Letter>& letters) {
    for (const auto& l : letters) push_back(l);
  }

  static GroupWord vertex(const std::string& v, IntVector x) {
    GroupWord w;
    w.push_back(VertexLetter{v, std::move(x)});
    return w;
  }
  static GroupWord stable(const std::string& e, int sign = 1) {
    GroupWord w;
    w.push_back(StableLetter{e, sign});
    return w;
  }

  void push_back(const Letter& letter) {
    if (const auto* v = std::get_if<VertexLetter>(&letter)) {
      if (is_zero(v->vec)) return;
      if (!letters_.empty())
        if (auto* last = std::get_if<VertexLetter>(&letters_.back());
            last && last->vertex == v->vertex) {
          last->vec = last->vec + v->vec;
          if (is_zero(last->vec)) letters_.pop_back();
          return;
        }
      letters_.push_back(letter);
      return;
    }
    const auto& s = std::get<StableLetter>(letter);
    if (s.sign != 1 && s.sign != -1) {
      for (int k = 0; k < (s.sign < 0 ? -s.sign : s.sign); ++k)
        push_back(StableLetter{s.edge, s.sign < 0 ? -1 : 1});
      return;
    }
    if (!letters_.empty())
      if (auto* last = std::get_if<StableLetter>(&letters_.back());
          last && last->edge == s.edge && last->sign == -s.sign) {
        letters_.pop_back();
        return;
      }
    letters_.push_back(letter);
  }

  GroupWord& operator*=(const GroupWord& other) {
    for (const auto& l : other.letters_) push_back(l);
    return *this;
  }
  friend GroupWord operator*(GroupWord a, const GroupWord& b) { return a *= b; }

  GroupWord inverse() const {
    GroupWord w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      if (const auto* v = std::get_if<VertexLetter>(&*it))
        w.push_back(VertexLetter{v->vertex, -v->vec});
      else {
        const auto& s = std::get<StableLetter>(*it);
        w.push_back(StableLetter{s.edge, -s.sign});
      }
    }
    return w;
  }

  GroupWord pow(long long k) const {
    GroupWord base = k < 0 ? inverse() : *this;
    GroupWord out;
    for (long long i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
    return out;
  }

  /// g * this * g^-1
  GroupWord conjugated_by(const GroupWord& g) const { return g * *this * g.inverse(); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  friend bool operator==(const GroupWord& a, const GroupWord& b) {
    return a.letters_ == b.letters_;
  }
  friend bool operator!=(const GroupWord& a, const GroupWord& b) { return !(a == b); }

 private:
  std::vector<Letter> letters_;
};

}  // namespace gbsn
