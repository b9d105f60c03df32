#include "teichforge/words.hpp"

#include <algorithm>
#include <cctype>

namespace tf {

static bool valid_token(const std::string& l) {
  bool ok = !l.empty() && std::isalpha(static_cast<unsigned char>(l[0]));
  for (size_t i = 1; ok && i < l.size(); ++i) ok = std::isdigit(static_cast<unsigned char>(l[i]));
  return ok;
}

Alphabet::Alphabet(std::string name, std::vector<std::string> letters, std::vector<std::string> inverses)
    : name_(std::move(name)), letters_(std::move(letters)), inverses_(std::move(inverses)) {
  if (inverses_.empty()) {
    for (auto l : letters_) {
      if (!l.empty()) {
        unsigned char c = static_cast<unsigned char>(l[0]);
        l[0] = static_cast<char>(std::islower(c) ? std::toupper(c) : std::tolower(c));
      }
      inverses_.push_back(l);
    }
  }
  if (inverses_.size() != letters_.size()) throw WordError("inverse token count mismatch in basis " + name_);
  std::vector<std::string> all = letters_;
  all.insert(all.end(), inverses_.begin(), inverses_.end());
  for (const auto& l : all)
    if (!valid_token(l)) throw WordError("bad letter name '" + l + "' in basis " + name_);
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw WordError("duplicate letter in basis " + name_);
}

std::shared_ptr<const Alphabet> Alphabet::make(std::string name, std::vector<std::string> letters,
                                               std::vector<std::string> inverses) {
  return std::make_shared<const Alphabet>(std::move(name), std::move(letters), std::move(inverses));
}

std::shared_ptr<const Alphabet> Alphabet::indexed(std::string name, char prefix, int rank) {
  std::vector<std::string> ls;
  for (int i = 1; i <= rank; ++i) ls.push_back(prefix + std::to_string(i));
  return make(std::move(name), std::move(ls));
}

int Alphabet::lookup(std::string_view token) const {
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] == token) return static_cast<int>(i + 1);
    if (inverses_[i] == token) return -static_cast<int>(i + 1);
  }
  return 0;
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->name() == b->name() && a->letters() == b->letters() && a->inverses_equal(*b);
}

static void push_reduced(std::vector<FreeWord::Letter>& out, FreeWord::Letter l) {
  if (!out.empty() && out.back() == -l)
    out.pop_back();
  else
    out.push_back(l);
}

FreeWord::FreeWord(AlphabetPtr alphabet, const std::vector<Letter>& letters) : alpha_(std::move(alphabet)) {
  if (!alpha_) throw WordError("word without a basis");
  const int r = alpha_->rank();
  w_.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0 || l > r || l < -r) throw WordError("letter out of range for basis " + alpha_->name());
    push_reduced(w_, l);
  }
}

FreeWord FreeWord::parse(AlphabetPtr alphabet, std::string_view text) {
  std::vector<Letter> ls;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '.' || c == '*') {
      ++i;
      continue;
    }
    if (c == '1' && (i + 1 == text.size() || !std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) throw WordError("unexpected character in word: " + std::string(text));
    size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    int l = alphabet->lookup(text.substr(i, j - i));
    if (l == 0) throw WordError("unknown letter '" + std::string(text.substr(i, j - i)) + "' for basis " + alphabet->name());
    ls.push_back(l);
    i = j;
  }
  return FreeWord(std::move(alphabet), ls);
}

FreeWord FreeWord::generator(AlphabetPtr alphabet, int i, int sign) {
  return FreeWord(std::move(alphabet), {sign > 0 ? i + 1 : -(i + 1)});
}

void FreeWord::check_same(const FreeWord& o) const {
  if (!same_alphabet(alpha_, o.alpha_))
    throw WordError("basis mismatch: " + (alpha_ ? alpha_->name() : "?") + " vs " + (o.alpha_ ? o.alpha_->name() : "?"));
}

FreeWord FreeWord::inverse() const {
  FreeWord r(alpha_);
  r.w_.reserve(w_.size());
  for (auto it = w_.rbegin(); it != w_.rend(); ++it) r.w_.push_back(-*it);
  return r;
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
  FreeWord r = *this;
  r *= o;
  return r;
}

FreeWord& FreeWord::operator*=(const FreeWord& o) {
  check_same(o);
  for (Letter l : o.w_) push_reduced(w_, l);
  return *this;
}

FreeWord FreeWord::pow(long k) const {
  FreeWord base = k < 0 ? inverse() : *this;
  FreeWord r(alpha_);
  for (long i = 0; i < (k < 0 ? -k : k); ++i) r *= base;
  return r;
}

FreeWord FreeWord::conjugated_by(const FreeWord& g) const { return g * *this * g.inverse(); }

FreeWord FreeWord::substitute(const std::vector<FreeWord>& images) const {
  if (static_cast<int>(images.size()) < alpha_->rank()) throw WordError("missing image for basis " + alpha_->name());
  if (images.empty()) return *this;
  std::vector<FreeWord> invs;
  invs.reserve(images.size());
  for (const auto& im : images) invs.push_back(im.inverse());
  FreeWord r(images[0].alphabet());
  for (Letter l : w_) r *= l > 0 ? images[l - 1] : invs[-l - 1];
  return r;
}

std::vector<long> FreeWord::exponent_sums() const {
  std::vector<long> e(alpha_ ? alpha_->rank() : 0, 0);
  for (Letter l : w_) e[std::abs(l) - 1] += l > 0 ? 1 : -1;
  return e;
}

std::string FreeWord::str() const {
  if (w_.empty()) return "1";
  std::string s;
  for (Letter l : w_) {
    s += l > 0 ? alpha_->letter(l - 1) : alpha_->inverse_token(-l - 1);
  }
  return s;
}

CyclicSplit cyclic_split(const FreeWord& w) {
  const auto& ls = w.letters();
  size_t i = 0, j = ls.size();
  while (j - i >= 2 && ls[i] == -ls[j - 1]) {
    ++i;
    --j;
  }
  std::vector<FreeWord::Letter> pre(ls.begin(), ls.begin() + i), core(ls.begin() + i, ls.begin() + j);
  return {FreeWord(w.alphabet(), pre), FreeWord(w.alphabet(), core)};
}

std::optional<FreeWord> conjugate_in_free(const FreeWord& u, const FreeWord& v) {
  if (!same_alphabet(u.alphabet(), v.alphabet())) throw WordError("basis mismatch in conjugacy test");
  auto su = cyclic_split(u), sv = cyclic_split(v);
  const auto& c = su.core.letters();
  const auto& d = sv.core.letters();
  if (c.size() != d.size()) return std::nullopt;
  const size_t n = c.size();
  for (size_t k = 0; k < std::max<size_t>(n, 1); ++k) {
    bool match = true;
    for (size_t i = 0; i < n && match; ++i) match = d[i] == c[(i + k) % n];
    if (!match) continue;
    // d = x^-1 c x with x = c[0..k)
    FreeWord x(u.alphabet(), std::vector<FreeWord::Letter>(c.begin(), c.begin() + k));
    return sv.prefix * x.inverse() * su.prefix.inverse();
  }
  return std::nullopt;
}

FreeWord primitive_root(const FreeWord& w) {
  auto sp = cyclic_split(w);
  const auto& c = sp.core.letters();
  const size_t n = c.size();
  for (size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (size_t i = p; i < n && periodic; ++i) periodic = c[i] == c[i - p];
    if (periodic) {
      FreeWord r(w.alphabet(), std::vector<FreeWord::Letter>(c.begin(), c.begin() + p));
      return r.conjugated_by(sp.prefix);
    }
  }
  return w;
}

// ---- ambient group ----

ReflectionWord::ReflectionWord(const std::vector<uint8_t>& letters) {
  for (uint8_t l : letters) {
    if (l > 2) throw WordError("ambient letter out of range");
    if (!w_.empty() && w_.back() == l)
      w_.pop_back();
    else
      w_.push_back(l);
  }
}

ReflectionWord ReflectionWord::parse(std::string_view text) {
  std::vector<uint8_t> ls;
  for (char c : text) {
    switch (c) {
      case 't': ls.push_back(0); break;
      case 'u': ls.push_back(1); break;
      case 'v': ls.push_back(2); break;
      case 's':
        ls.insert(ls.end(), {2, 1, 0});
        break;
      case 'S':
        ls.insert(ls.end(), {0, 1, 2});
        break;
      case '1': case ' ': case '.': case '*': break;
      default: throw WordError("unexpected character in ambient word: " + std::string(text));
    }
  }
  return ReflectionWord(ls);
}

ReflectionWord ReflectionWord::letter(int i) { return ReflectionWord(std::vector<uint8_t>{static_cast<uint8_t>(i)}); }

ReflectionWord ReflectionWord::s() { return ReflectionWord(std::vector<uint8_t>{2, 1, 0}); }

ReflectionWord ReflectionWord::inverse() const {
  ReflectionWord r;
  r.w_.assign(w_.rbegin(), w_.rend());
  return r;
}

ReflectionWord ReflectionWord::operator*(const ReflectionWord& o) const {
  ReflectionWord r = *this;
  for (uint8_t l : o.w_) {
    if (!r.w_.empty() && r.w_.back() == l)
      r.w_.pop_back();
    else
      r.w_.push_back(l);
  }
  return r;
}

ReflectionWord ReflectionWord::conjugated_by(const ReflectionWord& g) const { return g * *this * g.inverse(); }

Grade letter_grade(int letter) {
  static const Grade g[3] = {{1, 1, 0}, {1, 0, 1}, {1, 1, 1}};
  return g[letter];
}

Grade operator+(const Grade& a, const Grade& b) {
  return {(a[0] + b[0]) & 1, (a[1] + b[1]) & 1, (a[2] + b[2]) & 1};
}

Grade ReflectionWord::grade() const {
  Grade g{0, 0, 0};
  for (uint8_t l : w_) g = g + letter_grade(l);
  return g;
}

std::string ReflectionWord::str() const {
  if (w_.empty()) return "1";
  std::string s;
  for (uint8_t l : w_) s += "tuv"[l];
  return s;
}

std::optional<ReflectionWord> conjugate_in_ambient(const ReflectionWord& u, const ReflectionWord& v) {
  // strip x..x pairs: w = p c p^-1 with c cyclically reduced
  auto split = [](const ReflectionWord& w) {
    const auto& ls = w.letters();
    size_t i = 0, j = ls.size();
    while (j - i >= 2 && ls[i] == ls[j - 1]) {
      ++i;
      --j;
    }
    return std::pair{ReflectionWord(std::vector<uint8_t>(ls.begin(), ls.begin() + i)),
                     ReflectionWord(std::vector<uint8_t>(ls.begin() + i, ls.begin() + j))};
  };
  auto [pu, cu] = split(u);
  auto [pv, cv] = split(v);
  const auto& c = cu.letters();
  const auto& d = cv.letters();
  if (c.size() != d.size()) return std::nullopt;
  const size_t n = c.size();
  for (size_t k = 0; k < std::max<size_t>(n, 1); ++k) {
    bool match = true;
    for (size_t i = 0; i < n && match; ++i) match = d[i] == c[(i + k) % n];
    if (!match) continue;
    ReflectionWord x(std::vector<uint8_t>(c.begin(), c.begin() + k));
    return pv * x.inverse() * pu.inverse();
  }
  return std::nullopt;
}

ReflectionWord to_ambient(const FreeWord& w, const std::vector<ReflectionWord>& images) {
  ReflectionWord r;
  for (auto l : w.letters()) r = r * (l > 0 ? images.at(l - 1) : images.at(-l - 1).inverse());
  return r;
}

namespace marks {

AlphabetPtr ambient() {
  static const AlphabetPtr a = Alphabet::make("ambient", {"t", "u", "v"});
  return a;
}
AlphabetPtr pi11() {
  static const AlphabetPtr a = Alphabet::make("pi11", {"a", "b"});
  return a;
}
AlphabetPtr pi04() {
  static const AlphabetPtr a = Alphabet::make("pi04", {"x", "y", "z"});
  return a;
}
AlphabetPtr pi03() {
  static const AlphabetPtr a = Alphabet::make("pi03", {"x", "y"});
  return a;
}
AlphabetPtr pi14A() {
  static const AlphabetPtr a = Alphabet::indexed("pi14A", 'a', 5);
  return a;
}
AlphabetPtr pi14B() {
  static const AlphabetPtr a = Alphabet::indexed("pi14B", 'b', 5);
  return a;
}
AlphabetPtr gamma2() {
  static const AlphabetPtr a = Alphabet::make("gamma2", {"G1", "G2"}, {"g1", "g2"});
  return a;
}
AlphabetPtr sl2() {
  static const AlphabetPtr a = Alphabet::make("sl2", {"S", "T"}, {"s", "t"});
  return a;
}

AlphabetPtr by_name(const std::string& name) {
  for (auto f : {ambient, pi11, pi04, pi03, pi14A, pi14B, gamma2, sl2})
    if (f()->name() == name) return f();
  return nullptr;
}

bool is_ambient(const AlphabetPtr& a) { return a && a->name() == "ambient"; }

}  // namespace marks

}  // namespace tf
