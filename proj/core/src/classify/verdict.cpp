#include "infharm/classify/verdict.hpp"

#include <algorithm>

namespace infharm::classify {

std::string to_string(Tag tag) {
  switch (tag) {
    case Tag::ConstantMap: return "ConstantMap";
    case Tag::AffineOnly: return "AffineOnly";
    case Tag::IsometricImmersion: return "IsometricImmersion";
    case Tag::ProjectionThenLinear: return "ProjectionThenLinear";
    case Tag::InclusionForm: return "InclusionForm";
    case Tag::HomothetyOfProjection: return "HomothetyOfProjection";
    case Tag::SplitsRealImag: return "SplitsRealImag";
    case Tag::Unconstrained: return "Unconstrained";
  }
  return "Unconstrained";
}

bool Residual::vanishes() const {
  return std::all_of(values.begin(), values.end(), [](const Quotient& q) { return q.is_zero(); });
}

std::string describe(const Verdict& v) {
  std::string out = to_string(v.tag);
  if (v.tag == Tag::HomothetyOfProjection && v.lambda && v.z0 && v.indices.size() == 1) {
    return out + "(" + std::to_string(v.indices[0]) + ", " + v.lambda->to_string() + ", " + v.z0->to_string() + ")";
  }
  if (v.indices.empty()) return out;
  out += "({";
  for (std::size_t k = 0; k < v.indices.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(v.indices[k]);
  }
  return out + "})";
}

}  // namespace infharm::classify
