#include "pixcode/dna_codec.hpp"

#include <algorithm>
#include <set>

#include "pixcode/errors.hpp"

namespace pixcode {
namespace {

char pair_base(char c) {
  switch (c) {
    case 'A': return 'T';
    case 'T': return 'A';
    case 'C': return 'G';
    case 'G': return 'C';
  }
  throw InvalidInputError(std::string("not a DNA base: '") + c + "'");
}

}  // namespace

QuaternaryString::QuaternaryString(std::string sequence)
    : seq_(std::move(sequence)) {
  for (char c : seq_) {
    if (c != 'A' && c != 'C' && c != 'G' && c != 'T') {
      throw InvalidInputError(std::string("not a DNA base: '") + c + "'");
    }
  }
}

QuaternaryString complement(const QuaternaryString& s) {
  std::string out(s.str().rbegin(), s.str().rend());
  for (char& c : out) c = pair_base(c);
  return QuaternaryString(std::move(out));
}

QuaternaryString binary_to_quaternary(std::span<const int> trits) {
  if (trits.size() % 2 != 0) {
    throw InvalidInputError("quaternary translation needs an even length");
  }
  std::string out;
  out.reserve(trits.size() / 2);
  for (std::size_t i = 0; i < trits.size(); i += 2) {
    const int hi = trits[i];
    const int lo = trits[i + 1];
    if ((hi != 1 && hi != -1) || (lo != 1 && lo != -1)) {
      throw InvalidInputError("quaternary translation needs +-1 values");
    }
    if (hi > 0) {
      out += lo > 0 ? 'A' : 'T';
    } else {
      out += lo > 0 ? 'C' : 'G';
    }
  }
  return QuaternaryString(std::move(out));
}

std::vector<int> quaternary_to_binary(const QuaternaryString& s) {
  std::vector<int> out;
  out.reserve(2 * s.size());
  for (char c : s.str()) {
    switch (c) {
      case 'A': out.insert(out.end(), {1, 1}); break;
      case 'T': out.insert(out.end(), {1, -1}); break;
      case 'C': out.insert(out.end(), {-1, 1}); break;
      case 'G': out.insert(out.end(), {-1, -1}); break;
    }
  }
  return out;
}

const char* to_string(EdgeRole role) {
  return role == EdgeRole::kOverhang ? "overhang" : "vacancy";
}

const char* to_string(MateConvention convention) {
  return convention == MateConvention::kLiteral ? "literal" : "mate";
}

MateConvention parse_mate_convention(const std::string& text) {
  if (text == "literal") return MateConvention::kLiteral;
  if (text == "mate") return MateConvention::kMate;
  throw InvalidInputError("mate convention must be 'literal' or 'mate'");
}

EdgeCode edge_from_binary(std::span<const int> code, EdgeRole role,
                          std::span<const QuaternaryString> sequence_pool,
                          MateConvention convention, std::string side) {
  if (code.size() > kMaxEdgeFeatures) {
    throw CapacityError("edge codes hold at most " +
                        std::to_string(kMaxEdgeFeatures) + " features");
  }
  if (sequence_pool.size() < code.size()) {
    throw CapacityError("sequence pool has " +
                        std::to_string(sequence_pool.size()) +
                        " entries, code needs " + std::to_string(code.size()));
  }
  std::set<QuaternaryString> distinct;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (sequence_pool[i].empty()) {
      throw InvalidInputError("pool sequences must be non-empty");
    }
    if (!distinct.insert(sequence_pool[i]).second) {
      throw InvalidInputError("pool sequences must be pairwise distinct");
    }
  }
  EdgeCode edge;
  edge.side = std::move(side);
  const int vacancy_bit = convention == MateConvention::kLiteral ? 0 : 1;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (code[i] != 0 && code[i] != 1) {
      throw InvalidInputError("edge code bits must be 0 or 1");
    }
    EdgeFeature f;
    if (role == EdgeRole::kOverhang && code[i] == 1) {
      f = {EdgeFeature::Kind::kOverhang, sequence_pool[i]};
    } else if (role == EdgeRole::kVacancy && code[i] == vacancy_bit) {
      f = {EdgeFeature::Kind::kVacancy, complement(sequence_pool[i])};
    }
    edge.features.push_back(std::move(f));
  }
  return edge;
}

int binding_score(const EdgeCode& a, const EdgeCode& b) {
  if (a.features.size() != b.features.size()) {
    throw DimensionError("edges differ in feature count");
  }
  using Kind = EdgeFeature::Kind;
  int score = 0;
  for (std::size_t i = 0; i < a.features.size(); ++i) {
    const auto& x = a.features[i];
    const auto& y = b.features[i];
    if (x.kind == Kind::kOverhang && y.kind == Kind::kVacancy &&
        y.sequence == complement(x.sequence)) {
      ++score;
    } else if (x.kind == Kind::kVacancy && y.kind == Kind::kOverhang &&
               x.sequence == complement(y.sequence)) {
      ++score;
    }
  }
  return score;
}

std::vector<QuaternaryString> parse_sequence_pool(std::string_view text) {
  std::vector<QuaternaryString> pool;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      pool.emplace_back(line);
    } catch (const InvalidInputError& e) {
      throw InvalidInputError("sequence pool line " + std::to_string(line_no) +
                              ": " + e.what());
    }
  }
  return pool;
}

EdgeTraversal parse_traversal(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw InvalidInputError("traversal must look like row:<i> or column:<j>");
  }
  EdgeTraversal t;
  const std::string axis = text.substr(0, colon);
  if (axis == "row") {
    t.axis = EdgeTraversal::Axis::kRow;
  } else if (axis == "column") {
    t.axis = EdgeTraversal::Axis::kColumn;
  } else {
    throw InvalidInputError("traversal axis must be row or column");
  }
  try {
    std::size_t used = 0;
    const std::string idx = text.substr(colon + 1);
    t.index = std::stoi(idx, &used);
    if (used != idx.size()) throw std::invalid_argument(idx);
  } catch (const std::logic_error&) {
    throw InvalidInputError("traversal index must be an integer");
  }
  return t;
}

std::vector<int> edge_bits(const PixelMatrix& m, const EdgeTraversal& t) {
  if (t.index < 0 || t.index >= m.order()) {
    throw InvalidInputError("traversal index out of range");
  }
  std::vector<int> bits;
  for (int k = 0; k < m.order(); ++k) {
    const Trit v = t.axis == EdgeTraversal::Axis::kRow ? m(t.index, k)
                                                       : m(k, t.index);
    if (v == 0) throw InvalidInputError("edge bits need a binary matrix");
    bits.push_back(v > 0 ? 1 : 0);
  }
  return bits;
}

nlohmann::json to_json(const EdgeCode& edge) {
  nlohmann::json j;
  j["side"] = edge.side;
  j["features"] = nlohmann::json::array();
  for (std::size_t i = 0; i < edge.features.size(); ++i) {
    const auto& f = edge.features[i];
    nlohmann::json fj;
    fj["position"] = i;
    switch (f.kind) {
      case EdgeFeature::Kind::kAbsent: fj["kind"] = "absent"; break;
      case EdgeFeature::Kind::kOverhang: fj["kind"] = "overhang"; break;
      case EdgeFeature::Kind::kVacancy: fj["kind"] = "vacancy"; break;
    }
    if (f.kind != EdgeFeature::Kind::kAbsent) {
      fj["sequence"] = f.sequence.str();
    }
    j["features"].push_back(fj);
  }
  return j;
}

}  // namespace pixcode
