#include "ocs/sampling.hpp"

#include "ocs/rng.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace ocs {

SampleBatch sample_atoms(const SpacePtr& space, std::size_t n, std::uint64_t seed) {
  // Cumulative thresholds scaled so that "u < c_i" becomes an integer
  // comparison: draw r selects the first atom with r * den_i < num_i * 2^64.
  const std::size_t m = space->size();
  std::vector<BigInt> nums(m), dens(m);
  Rational cum = 0;
  for (std::size_t i = 0; i < m; ++i) {
    cum += space->atom(i).mass;
    nums[i] = boost::multiprecision::numerator(cum) << 64;
    dens[i] = boost::multiprecision::denominator(cum);
  }

  SampleBatch batch{space, seed, {}};
  batch.draws.reserve(n);
  SplitMix64 gen(seed);
  for (std::size_t d = 0; d < n; ++d) {
    const BigInt r = gen.next();
    // binary search for the first i with r * den_i < num_i
    std::size_t lo = 0, hi = m - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (r * dens[mid] < nums[mid]) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    batch.draws.push_back(static_cast<std::uint32_t>(lo));
  }
  return batch;
}

double empirical_aoe(const SampleBatch& batch, const RandomVariable& x,
                     const RandomVariable& y) {
  if (x.space().get() != y.space().get() || x.space().get() != batch.space.get()) {
    throw MixedSpaces("sample batch and variables must share one space");
  }
  for (std::int64_t v : x.image()) {
    if (v != 0 && v != 1) {
      throw NonBinaryTreatment("treatment '" + x.name() + "' takes value " +
                               std::to_string(v));
    }
  }
  std::int64_t n1 = 0, n0 = 0, s1 = 0, s0 = 0;
  for (std::uint32_t atom : batch.draws) {
    if (x.value(atom) == 1) {
      ++n1;
      s1 += y.value(atom);
    } else {
      ++n0;
      s0 += y.value(atom);
    }
  }
  if (n1 == 0 || n0 == 0) {
    throw DegenerateSample("sample contains no draws with " + x.name() + "=" +
                           (n1 == 0 ? std::string("1") : std::string("0")));
  }
  return static_cast<double>(s1) / static_cast<double>(n1) -
         static_cast<double>(s0) / static_cast<double>(n0);
}

void write_batch(std::ostream& out, const SampleBatch& batch) {
  out << "# space: " << batch.space->label() << "\n";
  out << "# seed: " << batch.seed << "\n";
  out << "# n: " << batch.draws.size() << "\n";
  for (std::uint32_t atom : batch.draws) out << batch.space->atom(atom).id << "\n";
}

namespace {

std::string expect_header(std::istream& in, const std::string& prefix, int line_no) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) {
    throw SchemaError("line " + std::to_string(line_no), "expected '" + prefix + "...'");
  }
  return line.substr(prefix.size());
}

}  // namespace

SampleBatch read_batch(std::istream& in, const SpacePtr& space) {
  const std::string label = expect_header(in, "# space: ", 1);
  if (label != space->label()) {
    throw SchemaError("line 1", "batch was drawn from space '" + label + "', not '" +
                                    space->label() + "'");
  }
  const std::string seed_text = expect_header(in, "# seed: ", 2);
  const std::string n_text = expect_header(in, "# n: ", 3);

  SampleBatch batch{space, 0, {}};
  std::size_t n = 0;
  try {
    batch.seed = std::stoull(seed_text);
    n = std::stoull(n_text);
  } catch (const std::exception&) {
    throw SchemaError("line 2", "seed and n must be unsigned integers");
  }

  std::string line;
  int line_no = 3;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto idx = space->index_of(line);
    if (!idx) {
      throw SchemaError("line " + std::to_string(line_no),
                        "unknown atom id '" + line + "'");
    }
    batch.draws.push_back(static_cast<std::uint32_t>(*idx));
  }
  if (batch.draws.size() != n) {
    throw SchemaError("line " + std::to_string(line_no),
                      "header says n=" + std::to_string(n) + " but found " +
                          std::to_string(batch.draws.size()) + " draws");
  }
  return batch;
}

}  // namespace ocs
