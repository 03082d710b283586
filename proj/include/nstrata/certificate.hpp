#pragma once

#include <cstdint>
#include <memory>

#include "nstrata/extensions.hpp"
#include "nstrata/polygon.hpp"

namespace nstrata {

struct Certificate;
using CertificatePtr = std::shared_ptr<const Certificate>;

/// Evidence that a minuscule effective modification target -> source of
/// degree `degree` exists.
///
/// identity:  source == target.
/// basic:     source is semistable and the slopewise sandwich
///            target + 1 >= source >= target holds.
/// inductive: source = top (+) rest with `top` the run of maximal slope;
///            top_modified is a modification of top (sandwich), sub certifies
///            rest_modified -> rest, and `extension` realizes target as an
///            extension of rest_modified by top_modified.
struct Certificate {
  enum class Kind { identity, basic, inductive };

  Kind kind = Kind::identity;
  ConcavePolygon source;
  ConcavePolygon target;
  std::int64_t degree = 0;

  // basic
  bool bruhat_holds = false;
  bool sandwich_holds = false;

  // inductive
  ConcavePolygon top;
  ConcavePolygon rest;
  ConcavePolygon top_modified;
  ConcavePolygon rest_modified;
  ExtensionWitness extension;
  CertificatePtr sub;
};

inline const char* to_string(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::identity:
      return "identity";
    case Certificate::Kind::basic:
      return "basic";
    case Certificate::Kind::inductive:
      return "inductive";
  }
  return "?";
}

/// Number of inductive levels below and including this one.
inline int certificate_depth(const Certificate& c) {
  int depth = 1;
  for (const Certificate* p = c.sub.get(); p != nullptr; p = p->sub.get()) ++depth;
  return depth;
}

}  // namespace nstrata
