#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adkit/density_report.hpp"
#include "adkit/int_set.hpp"
#include "adkit/periodic_set.hpp"
#include "adkit/rational.hpp"

namespace adkit {

enum class MapFamily {
  kIdentity,
  kDilate,
  kInterleave3,
  kBlockPermutation,
  kFinitePermutation,
  kComposed,
};

/// One-to-one map N -> N drawn from a small set of families, each with a
/// closed-form inverse and preimage bound.
///
///  - identity
///  - dilate(m): n -> m n
///  - interleave3: 2k-1 -> 3k, 2k -> k-th positive non-multiple of 3
///  - block_permutation(s_1..s_r): N is cut into consecutive blocks whose
///    sizes cycle through s_1..s_r, and every block is reversed in place
///  - finite_permutation(t_1..t_T): n -> t_n on [1, T], identity beyond
///  - composed: f∘g
class InjectiveMap {
 public:
  static InjectiveMap identity();
  static InjectiveMap dilate(std::uint64_t factor);
  static InjectiveMap interleave3();
  static InjectiveMap block_permutation(std::vector<std::uint64_t> block_sizes);
  static InjectiveMap finite_permutation(std::vector<std::uint64_t> table);

  MapFamily family() const;
  std::string describe() const;

  std::uint64_t apply(std::uint64_t n) const;
  /// Defined exactly on the image.
  std::optional<std::uint64_t> inverse(std::uint64_t m) const;

  /// An N with f(n) > L for every n > N. Exact (max{n : f(n) <= L}, 0 if none)
  /// for every family except composed, where bounds are chained:
  /// B_{f∘g}(L) = B_g(B_f(L)).
  std::uint64_t preimage_bound(std::uint64_t L) const;

  /// D with |f(A)(n) - A(n)| <= D for every A and n; only for maps that
  /// move points a bounded distance inside invariant blocks.
  std::optional<std::uint64_t> displacement_bound() const;

  /// f(A) as an ultimately periodic set, when A is one. Empty when the
  /// representation would exceed UltimatelyPeriodicSet::kMaxWordLength.
  std::optional<UltimatelyPeriodicSet> image_periodic(const UltimatelyPeriodicSet& set) const;

  /// lambda = d(f(N)), exact.
  std::optional<Rational> image_density() const;

  bool is_permutation() const;

 private:
  struct Identity {};
  struct Dilate {
    std::uint64_t factor;
  };
  struct Interleave3 {};
  struct BlockPermutation {
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint64_t> offsets;  // offsets[j] = s_1 + ... + s_j
    std::uint64_t cycle;
    std::uint64_t max_size;
  };
  struct FinitePermutation {
    std::vector<std::uint64_t> forward;  // 0-based storage of t_1..t_T
    std::vector<std::uint64_t> backward;
  };
  struct Composed {
    std::shared_ptr<const InjectiveMap> outer;
    std::shared_ptr<const InjectiveMap> inner;
  };
  using Repr = std::variant<Identity, Dilate, Interleave3, BlockPermutation, FinitePermutation,
                            Composed>;

  explicit InjectiveMap(Repr repr) : repr_(std::move(repr)) {}

  // [start, end] of the block holding n
  static std::pair<std::uint64_t, std::uint64_t> block_of(const BlockPermutation& b, std::uint64_t n);

  Repr repr_;

  friend InjectiveMap compose(const InjectiveMap& outer, const InjectiveMap& inner);
};

/// outer∘inner.
InjectiveMap compose(const InjectiveMap& outer, const InjectiveMap& inner);

/// max{n <= scan_horizon : f(n) <= L}. Uncertified: only meaningful when the
/// caller knows f(n) > L beyond scan_horizon.
std::uint64_t preimage_bound_by_scan(const InjectiveMap& f, std::uint64_t L,
                                     std::uint64_t scan_horizon);

/// f(A). Membership goes through the inverse; the cursor merges f over A's
/// cursor, buffering values until the preimage bound certifies their order.
/// When A is ultimately periodic the image carries its exact density.
IntSet image_set(const InjectiveMap& f, const IntSet& set);

/// Checkpoint report of f(N) with the exact lambda attached.
DensityReport lambda_estimate(const InjectiveMap& f, std::uint64_t horizon,
                              const CheckpointSchedule& schedule = CheckpointSchedule::standard());

struct InjectivityResult {
  bool injective = true;
  /// First collision (a < b with f(a) == f(b)) when not injective.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> collision;
};

InjectivityResult verify_injective_prefix(const std::function<std::uint64_t(std::uint64_t)>& f,
                                          std::uint64_t n);
InjectivityResult verify_injective_prefix(const InjectiveMap& f, std::uint64_t n);

}  // namespace adkit
