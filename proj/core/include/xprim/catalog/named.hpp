#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "xprim/catalog/finite_field.hpp"
#include "xprim/perm/perm_group.hpp"

namespace xprim {

PermGroup sym_group(std::size_t n);
PermGroup alt_group(std::size_t n);
/// Regular cyclic group of order n.
PermGroup cyclic_group(std::size_t n);
/// Dihedral group of order 2n on the n vertices of a polygon.
PermGroup dihedral_group(std::size_t n);

/// PSL2(q) / PGL2(q) on the projective line. Points 0..q-1 are the field
/// elements in their integer encoding, point q is infinity. Generated by
/// x -> x+b (b in the additive basis), x -> ax (a primitive for PGL, its
/// square for PSL) and x -> -1/x.
PermGroup psl2_group(std::uint32_t q);
PermGroup pgl2_group(std::uint32_t q);

/// Sp_{2m}(2) on the quadratic forms of type `plus` (or minus) polarizing
/// to the standard symplectic form, acting by Q -> Q o g^{-1}. Supports
/// m = 1, 2, 3. Throws std::logic_error if the generated group does not
/// have the order of Sp_{2m}(2).
PermGroup sp2m2_forms(std::size_t m, bool plus);
BigInt sp2m2_order(std::size_t m);

/// Matrices over GF(q) acting on row vectors from the right.
struct MatrixGroup {
  FiniteField field;
  std::size_t dim = 0;
  std::vector<std::vector<FiniteField::Elem>> gens;  // row-major dim*dim
};

/// Text format:
///
///     matrices q=4 dim=6 [modulus=c0,c1,...]
///     gen
///     <dim rows of dim integers>
///
/// Entries use the integer encoding of field elements.
MatrixGroup parse_matrix_text(std::string_view text);
MatrixGroup parse_matrix_file(const std::filesystem::path& path);
std::string write_matrix_text(const MatrixGroup& g);

/// Action on the orbit of the projective point spanned by `start` (default
/// e1). Vectors are normalized so the first nonzero coordinate is 1.
struct ProjectiveAction {
  PermGroup group;
  std::vector<std::vector<FiniteField::Elem>> points;
};
ProjectiveAction projective_action(const MatrixGroup& m, std::vector<FiniteField::Elem> start = {});

/// Constructs a group from "name" and parameters:
/// sym:n, alt:n, cyclic:n, dihedral:n, psl2:q, pgl2:q,
/// sp2m2_forms:m,plus|minus, matrix_action:path.
PermGroup build_named(std::string_view name, const std::vector<std::string>& params);
/// Same, from "name:p1,p2".
PermGroup build_named(std::string_view spec);

}  // namespace xprim
