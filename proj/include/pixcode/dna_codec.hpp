#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pixcode/pixel_matrix.hpp"

namespace pixcode {

/// Most features one tile edge can present.
inline constexpr std::size_t kMaxEdgeFeatures = 10;

/// Version tag of the trit-pair -> base table, recorded in outputs.
inline constexpr std::string_view kQuaternaryMappingVersion = "pairs-v1";

/// DNA sequence over {A, C, G, T}.
class QuaternaryString {
 public:
  QuaternaryString() = default;
  /// Throws InvalidInputError on any character outside ACGT.
  explicit QuaternaryString(std::string sequence);

  const std::string& str() const noexcept { return seq_; }
  std::size_t size() const noexcept { return seq_.size(); }
  bool empty() const noexcept { return seq_.empty(); }
  auto operator<=>(const QuaternaryString&) const = default;

 private:
  std::string seq_;
};

/// Watson-Crick reverse complement (A<->T, C<->G, order reversed).
QuaternaryString complement(const QuaternaryString& s);

/// Consecutive trit pairs to bases: (+1,+1)->A, (+1,-1)->T, (-1,+1)->C,
/// (-1,-1)->G. Throws InvalidInputError on odd length or a non +-1 value.
QuaternaryString binary_to_quaternary(std::span<const int> trits);
/// Inverse of binary_to_quaternary.
std::vector<int> quaternary_to_binary(const QuaternaryString& s);

enum class EdgeRole { kOverhang, kVacancy };

/// How a vacancy-side edge reads its code.
enum class MateConvention {
  /// A vacancy for each 0 bit.
  kLiteral,
  /// A vacancy for each 1 bit, facing the overhangs of the same code.
  kMate,
};

const char* to_string(EdgeRole role);
const char* to_string(MateConvention convention);
MateConvention parse_mate_convention(const std::string& text);

struct EdgeFeature {
  enum class Kind { kAbsent, kOverhang, kVacancy };
  Kind kind = Kind::kAbsent;
  /// Overhang: the protruding strand. Vacancy: the strand it expects.
  QuaternaryString sequence;
  bool operator==(const EdgeFeature&) const = default;
};

struct EdgeCode {
  std::vector<EdgeFeature> features;
  std::string side;
};

/// Overhang side: position i carries overhang(pool[i]) where code[i] == 1.
/// Vacancy side: position i carries vacancy(complement(pool[i])) where
/// code[i] == 0 (kLiteral) or code[i] == 1 (kMate). Throws CapacityError for
/// codes longer than kMaxEdgeFeatures or a pool shorter than the code, and
/// InvalidInputError for repeated pool sequences or bits outside {0, 1}.
EdgeCode edge_from_binary(std::span<const int> code, EdgeRole role,
                          std::span<const QuaternaryString> sequence_pool,
                          MateConvention convention = MateConvention::kLiteral,
                          std::string side = {});

/// Positions where one edge presents overhang s and the other a vacancy
/// expecting complement(s). Throws DimensionError on unequal lengths.
int binding_score(const EdgeCode& a, const EdgeCode& b);

/// One uppercase ACGT sequence per line; blank lines ignored.
std::vector<QuaternaryString> parse_sequence_pool(std::string_view text);

/// How a 2D encoding is read onto a 1D edge.
struct EdgeTraversal {
  enum class Axis { kRow, kColumn };
  Axis axis = Axis::kRow;
  int index = 0;
};
EdgeTraversal parse_traversal(const std::string& text);

/// Bits of one row or column: +1 -> 1, -1 -> 0.
std::vector<int> edge_bits(const PixelMatrix& m, const EdgeTraversal& t);

nlohmann::json to_json(const EdgeCode& edge);

}  // namespace pixcode
