#include <algorithm>
#include <stdexcept>

#include "mevo/moea.hpp"

namespace mevo {

namespace {

void truncate(Genome& g, int max_len) {
  if (max_len > 0 && g.size() > static_cast<std::size_t>(max_len))
    g.resize(static_cast<std::size_t>(max_len));
}

}  // namespace

std::pair<Genome, Genome> one_point_crossover(const Genome& a, const Genome& b, Rng& rng,
                                              int max_len) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("one_point_crossover: parents must be non-empty");
  // Cut points range over [0, len]; 0 or len reproduces a parent.
  std::size_t ca = rng.below(a.size() + 1);
  std::size_t cb = rng.below(b.size() + 1);
  Genome c1(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(ca));
  c1.insert(c1.end(), b.begin() + static_cast<std::ptrdiff_t>(cb), b.end());
  Genome c2(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(cb));
  c2.insert(c2.end(), a.begin() + static_cast<std::ptrdiff_t>(ca), a.end());
  truncate(c1, max_len);
  truncate(c2, max_len);
  return {std::move(c1), std::move(c2)};
}

Genome mutate(const Genome& g, Rng& rng, const std::vector<std::string>& alphabet, double p_m,
              int max_len) {
  if (alphabet.empty()) throw std::invalid_argument("mutate: empty alphabet");
  Genome out = g;
  if (!rng.chance(p_m)) return out;

  enum Edit { kInsert, kDelete, kSubstitute };
  int edit = static_cast<int>(rng.below(3));
  if (out.empty()) edit = kInsert;
  if (edit == kDelete && out.size() == 1) edit = kSubstitute;
  if (edit == kInsert && max_len > 0 && out.size() >= static_cast<std::size_t>(max_len))
    edit = kSubstitute;

  const std::string& symbol = alphabet[rng.below(alphabet.size())];
  switch (edit) {
    case kInsert: {
      std::size_t pos = rng.below(out.size() + 1);
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), symbol);
      break;
    }
    case kDelete: {
      std::size_t pos = rng.below(out.size());
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
      break;
    }
    case kSubstitute: {
      if (out.empty()) return out;
      std::size_t pos = rng.below(out.size());
      out[pos] = symbol;
      break;
    }
  }
  truncate(out, max_len);
  return out;
}

}  // namespace mevo
