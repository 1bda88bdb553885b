#pragma once

// Shared fixtures and test-side oracles. Everything here recomputes expected
// values through a different route than the library (triangle fans instead of
// the shoelace loop, literal filters instead of odometers) so the two sides
// can disagree when one is wrong.

#include "ocs/model_io.hpp"
#include "ocs/rng.hpp"
#include "ocs/system.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ocs::testing {

inline Rational frac(long num, long den) { return Rational(num) / den; }

inline std::string models_dir() { return OCS_MODELS_DIR; }

inline std::string model_path(const std::string& file) { return models_dir() + "/" + file; }

// Area by fanning triangles out of the first vertex; valid for convex chains,
// which is all the library's regions are.
inline Rational fan_area(const Polygon& p) {
  Rational twice = 0;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const Rational ax = p[i].x - p[0].x, ay = p[i].y - p[0].y;
    const Rational bx = p[i + 1].x - p[0].x, by = p[i + 1].y - p[0].y;
    twice += ax * by - ay * bx;
  }
  return (twice < 0 ? -twice : twice) / 2;
}

// The four-atom square model assembled by hand, so tests of the atomizer and
// of the bundled files have something to compare against that never ran
// through either.
struct SquareByHand {
  SpacePtr space;
  RandomVariable x;
  RandomVariable y;

  SquareByHand()
      : space(FiniteProbabilitySpace::make("square",
                                           {Atom{"A", frac(3, 8)}, Atom{"B", frac(1, 8)},
                                            Atom{"C", frac(1, 8)}, Atom{"D", frac(3, 8)}})),
        x("X", space, {1, 1, 0, 0}),
        y("Y", space, {1, 0, 1, 0}) {}
};

// A complete system over the hand-built square: both observables carry the
// smallest consistent family over (X, Y).
inline ObservableCausalSystem square_system() {
  SquareByHand sq;
  std::vector<RandomVariable> obs{sq.x, sq.y};
  std::map<std::string, PotentialOutcomeFamily> families;
  families.emplace("X", minimal_family(obs, "X", {"X", "Y"}));
  families.emplace("Y", minimal_family(obs, "Y", {"X", "Y"}));
  return ObservableCausalSystem(sq.space, obs, std::move(families));
}

// Oracle for the consistent-completion enumeration: filter every (y0, y1)
// value pair over the image grid by the defining identity, no odometer
// involved. Only usable for small spaces.
inline std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
brute_force_completions(const RandomVariable& x, const RandomVariable& y) {
  const std::vector<std::int64_t> image = y.image();
  const std::size_t n = y.space()->size();
  std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> out;
  std::vector<std::size_t> digits(2 * n, 0);  // y0 then y1, indices into image
  while (true) {
    std::vector<std::int64_t> y0(n), y1(n);
    for (std::size_t i = 0; i < n; ++i) {
      y0[i] = image[digits[i]];
      y1[i] = image[digits[n + i]];
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ok = (x.value(i) == 1 ? y1[i] : y0[i]) == y.value(i);
    }
    if (ok) out.emplace_back(std::move(y0), std::move(y1));

    std::size_t pos = digits.size();
    while (pos > 0 && digits[pos - 1] + 1 == image.size()) digits[--pos] = 0;
    if (pos == 0) break;
    ++digits[pos - 1];
  }
  return out;
}

// Random space with exact masses k_i / K, every atom positive.
inline SpacePtr random_space(SplitMix64& gen, std::size_t max_atoms, const std::string& label) {
  const std::size_t n = 2 + static_cast<std::size_t>(gen.below(max_atoms - 1));
  std::vector<std::uint64_t> weights(n);
  std::uint64_t total = 0;
  for (auto& w : weights) {
    w = 1 + gen.below(9);
    total += w;
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) {
    atoms.push_back(Atom{"w" + std::to_string(i),
                         Rational(weights[i]) / Rational(total)});
  }
  return FiniteProbabilitySpace::make(label, std::move(atoms));
}

inline RandomVariable random_binary(SplitMix64& gen, const SpacePtr& space,
                                    const std::string& name) {
  std::vector<std::int64_t> values(space->size());
  bool seen_zero = false, seen_one = false;
  for (auto& v : values) {
    v = static_cast<std::int64_t>(gen.below(2));
    (v ? seen_one : seen_zero) = true;
  }
  // force both values into the image so treatments stay non-degenerate
  if (!seen_zero) values[gen.below(values.size())] = 0;
  if (!seen_one) values[gen.below(values.size())] = 1;
  return RandomVariable(name, space, std::move(values));
}

// A random system that satisfies both axioms by construction: every member
// equals its target on the identified set and is filled with random image
// values elsewhere.
inline ObservableCausalSystem random_valid_system(SplitMix64& gen, std::size_t max_atoms,
                                                  std::size_t n_observables) {
  const SpacePtr space = random_space(gen, max_atoms, "random");
  std::vector<RandomVariable> obs;
  for (std::size_t i = 0; i < n_observables; ++i) {
    obs.push_back(random_binary(gen, space, "V" + std::to_string(i)));
  }

  std::vector<std::string> names;
  for (const RandomVariable& v : obs) names.push_back(v.name());

  std::map<std::string, PotentialOutcomeFamily> families;
  for (const RandomVariable& target : obs) {
    const std::vector<std::int64_t> image = target.image();
    std::vector<std::vector<std::int64_t>> images;
    for (const RandomVariable& v : obs) images.push_back(v.image());

    std::map<std::vector<std::int64_t>, RandomVariable> members;
    std::vector<std::size_t> digits(obs.size(), 0);
    while (true) {
      std::vector<std::int64_t> key(obs.size());
      for (std::size_t i = 0; i < obs.size(); ++i) key[i] = images[i][digits[i]];
      std::vector<std::int64_t> values(space->size());
      for (std::size_t a = 0; a < space->size(); ++a) {
        bool observed = true;
        for (std::size_t i = 0; i < obs.size() && observed; ++i) {
          observed = obs[i].value(a) == key[i];
        }
        values[a] = observed ? target.value(a)
                             : image[gen.below(image.size())];
      }
      members.emplace(key, RandomVariable(target.name(), space, std::move(values)));

      std::size_t pos = digits.size();
      while (pos > 0 && digits[pos - 1] + 1 == images[pos - 1].size()) digits[--pos] = 0;
      if (pos == 0) break;
      ++digits[pos - 1];
    }
    families.emplace(target.name(),
                     PotentialOutcomeFamily(target.name(), names, images, std::move(members)));
  }
  return ObservableCausalSystem(space, obs, std::move(families));
}

}  // namespace ocs::testing
