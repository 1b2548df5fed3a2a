#pragma once

// Line-oriented model and family files.
//
//   model toric | surface | cutkosky | split_ruled d1 d2
//   name <text>
//   dim d                       toric
//   ray x y ...                 toric, in order
//   basis i j ...               toric, basis divisors D_i (ray indices from 0)
//   basis_divisor c0 c1 ...     toric, explicit ray-coefficient vector
//   gram r c value              surface / cutkosky, symmetric entry
//   curve c1 c2 ...             surface
//   a x y z / b x y z           cutkosky
//   ample c1 c2 ...             optional reference ample class
//
//   family rank r vars d
//   rule threshold <L(m)>
//   rule weighted <l1,l2,...> <L(m)>
//   rule table
//   ideal <m1,m2,...> <g;g;...> | zero
//   rule toric <model-ref> <i,j,...>     model-ref: preset name or "self"
//   weight w1,w2,...
//   box lo hi
//
// '#' starts a comment. Errors carry "<origin>:<line>:".

#include <optional>
#include <string>
#include <string_view>

#include "asymvol/families.hpp"
#include "asymvol/models.hpp"

namespace asymvol {

struct ModelFile {
  std::optional<Model> model;
  std::optional<MonomialIdealFamily> family;
};

ModelFile parse_model_file(std::string_view text, std::string_view origin = "<input>");
ModelFile read_model_file(const std::string& path);

/// A preset spec, or a path to a model file when one exists under that name.
Model load_model(const std::string& spec);

/// One-line rule as accepted by `rule ...` in a family block, with rank and
/// variable count inferred when not given (rank from the highest m index,
/// vars from lambda or the toric model).
MonomialIdealFamily parse_rule(std::string_view rule, std::optional<int> rank = std::nullopt,
                               std::optional<int> vars = std::nullopt);

}  // namespace asymvol
