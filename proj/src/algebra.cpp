#include "quatmetric/algebra.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace quatmetric {

StructureTensor change_of_basis(const StructureTensor& t, const Matrix& new_in_old) {
  const int n = t.dim;
  if (new_in_old.rows() != n || new_in_old.cols() != n)
    throw DimensionMismatch("change_of_basis: matrix does not match algebra dimension");
  Eigen::PartialPivLU<Matrix> lu(new_in_old);
  const Matrix inv = lu.inverse();
  if (!inv.allFinite())
    throw Singular("change_of_basis: basis matrix is not invertible");
  // A'^i_{jk} = inv^i_m A^m_{pq} S^p_j S^q_k
  StructureTensor out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m) {
          const double w = inv(i, m);
          if (w == 0.0) continue;
          for (int p = 0; p < n; ++p) {
            const double sp = new_in_old(p, j);
            if (sp == 0.0) continue;
            for (int q = 0; q < n; ++q) {
              const double a = t(m, p, q);
              if (a == 0.0) continue;
              acc += w * a * sp * new_in_old(q, k);
            }
          }
        }
        out.at(i, j, k) = acc;
      }
  return out;
}

std::optional<Element> find_identity(const StructureTensor& t, const Tolerance& tol) {
  const int n = t.dim;
  // Stack the conditions x e_j = e_j and e_j x = e_j over all basis j.
  Matrix M(2 * n * n, n);
  Vector rhs(2 * n * n);
  int row = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m < n; ++m) M(row, m) = t(i, m, j);
      rhs(row) = (i == j) ? 1.0 : 0.0;
      ++row;
    }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m < n; ++m) M(row, m) = t(i, j, m);
      rhs(row) = (i == j) ? 1.0 : 0.0;
      ++row;
    }
  Eigen::ColPivHouseholderQR<Matrix> qr(M);
  const Vector x = qr.solve(rhs);
  if (!x.allFinite()) return std::nullopt;
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const double resid = (M * x - rhs).cwiseAbs().maxCoeff();
  if (!(resid <= tol.rank_tol * scale)) return std::nullopt;
  return x;
}

Algebra::Algebra(StructureTensor tensor, std::vector<std::string> basis_labels,
                 const Tolerance& tol, bool quaternion_canonical)
    : tensor_(std::move(tensor)),
      labels_(std::move(basis_labels)),
      tol_(tol),
      quaternion_canonical_(quaternion_canonical) {
  if (tensor_.dim <= 0) throw DimensionMismatch("Algebra: dimension must be positive");
  if (labels_.size() != std::size_t(tensor_.dim))
    throw DimensionMismatch("Algebra: label count does not match dimension");
  if (tensor_.comp.size() != std::size_t(tensor_.dim) * tensor_.dim * tensor_.dim)
    throw DimensionMismatch("Algebra: component count does not match dimension");
  for (double c : tensor_.comp)
    if (!std::isfinite(c)) throw Error("Algebra: non-finite structure constant");
  identity_ = find_identity(tensor_, tol_);
  if (identity_) {
    // Cross-check the cached identity against every basis element.
    const int n = tensor_.dim;
    for (int j = 0; j < n; ++j) {
      Element ej = Element::Zero(n);
      ej(j) = 1.0;
      if ((multiply(*identity_, ej) - ej).cwiseAbs().maxCoeff() > tol_.sym_tol ||
          (multiply(ej, *identity_) - ej).cwiseAbs().maxCoeff() > tol_.sym_tol)
        throw Error("Algebra: cached identity fails the basis product check");
    }
  }
}

Element Algebra::multiply(const Element& a, const Element& b) const {
  const int n = tensor_.dim;
  if (a.size() != n || b.size() != n)
    throw DimensionMismatch("multiply: element size does not match algebra dimension");
  Element c = Element::Zero(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double w = tensor_(i, j, k);
        if (w == 0.0) continue;
        acc += w * a(j) * b(k);
      }
    c(i) = acc;
  }
  return c;
}

bool Algebra::is_associative() const {
  const int n = tensor_.dim;
  // (e_i e_j) e_k = e_i (e_j e_k), expanded over the constants, exactly.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double lhs = 0.0, rhs = 0.0;
          for (int m = 0; m < n; ++m) {
            lhs += tensor_(m, i, j) * tensor_(l, m, k);
            rhs += tensor_(m, j, k) * tensor_(l, i, m);
          }
          if (lhs != rhs) return false;
        }
  return true;
}

Algebra Algebra::commutator_algebra() const {
  const int n = tensor_.dim;
  StructureTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        t.at(i, j, k) = tensor_(i, j, k) - tensor_(i, k, j);
  return Algebra(t, labels_, tol_);
}

std::optional<Element> Algebra::inverse(const Element& a) const {
  const int n = tensor_.dim;
  if (a.size() != n)
    throw DimensionMismatch("inverse: element size does not match algebra dimension");
  if (!identity_) return std::nullopt;
  Element x;
  try {
    x = solve_square(left_multiplication_matrix(a), *identity_, tol_);
  } catch (const Singular&) {
    return std::nullopt;
  }
  // a x = 1 by construction; demand x a = 1 as well.
  if ((multiply(x, a) - *identity_).cwiseAbs().maxCoeff() > tol_.sym_tol)
    return std::nullopt;
  return x;
}

Matrix Algebra::left_multiplication_matrix(const Element& a) const {
  const int n = tensor_.dim;
  if (a.size() != n)
    throw DimensionMismatch("left_multiplication_matrix: element size mismatch");
  Matrix L = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        const double w = tensor_(i, j, k);
        if (w == 0.0) continue;
        acc += w * a(j);
      }
      L(i, k) = acc;
    }
  return L;
}

Matrix Algebra::right_multiplication_matrix(const Element& a) const {
  const int n = tensor_.dim;
  if (a.size() != n)
    throw DimensionMismatch("right_multiplication_matrix: element size mismatch");
  Matrix R = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        const double w = tensor_(i, j, k);
        if (w == 0.0) continue;
        acc += w * a(k);
      }
      R(i, j) = acc;
    }
  return R;
}

Algebra Algebra::rotate_canonical_basis(const Matrix& B) const {
  if (tensor_.dim != 4)
    throw DimensionMismatch("rotate_canonical_basis: algebra dimension must be 4");
  if (B.rows() != 3 || B.cols() != 3)
    throw DimensionMismatch("rotate_canonical_basis: rotation must be 3x3");
  if ((B.transpose() * B - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() > tol_.sym_tol)
    throw NotSO3("rotate_canonical_basis: matrix is not orthogonal");
  if (std::abs(B.determinant() - 1.0) > tol_.sym_tol)
    throw NotSO3("rotate_canonical_basis: matrix reverses orientation");
  Matrix S = Matrix::Identity(4, 4);
  S.block(1, 1, 3, 3) = B;
  return Algebra(change_of_basis(tensor_, S), labels_, tol_, quaternion_canonical_);
}

Element conjugate(const Element& a) {
  if (a.size() != 4) throw DimensionMismatch("conjugate: element must have dimension 4");
  Element c(4);
  c << a(0), -a(1), -a(2), -a(3);
  return c;
}

namespace {

Algebra from_table(int n, const std::vector<std::vector<std::vector<double>>>& comp,
                   std::vector<std::string> labels, bool quaternion = false) {
  StructureTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t.at(i, j, k) = comp[i][j][k];
  return Algebra(t, std::move(labels), {}, quaternion);
}

}  // namespace

Algebra quaternion_algebra() {
  // Component tables of the quaternion product, upper index first.
  const std::vector<std::vector<std::vector<double>>> comp = {
      {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}},
      {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}},
      {{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}},
      {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}}};
  return from_table(4, comp, {"1", "i", "j", "k"}, true);
}

Algebra complex_algebra() {
  const std::vector<std::vector<std::vector<double>>> comp = {
      {{1, 0}, {0, -1}}, {{0, 1}, {1, 0}}};
  return from_table(2, comp, {"1", "i"});
}

Algebra split_complex_algebra() {
  const std::vector<std::vector<std::vector<double>>> comp = {
      {{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}};
  return from_table(2, comp, {"1", "j"});
}

Algebra dual_number_algebra() {
  const std::vector<std::vector<std::vector<double>>> comp = {
      {{1, 0}, {0, 0}}, {{0, 1}, {1, 0}}};
  return from_table(2, comp, {"1", "eps"});
}

Algebra mat2_algebra() {
  // Basis E11, E12, E21, E22 with E_ab E_cd = delta_bc E_ad.
  StructureTensor t(4);
  auto idx = [](int a, int b) { return 2 * a + b; };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          if (b == c) t.at(idx(a, d), idx(a, b), idx(c, d)) = 1.0;
  return Algebra(t, {"E11", "E12", "E21", "E22"});
}

std::optional<Algebra> builtin_algebra(const std::string& name) {
  if (name == "quaternion") return quaternion_algebra();
  if (name == "complex") return complex_algebra();
  if (name == "split-complex") return split_complex_algebra();
  if (name == "dual") return dual_number_algebra();
  if (name == "mat2") return mat2_algebra();
  return std::nullopt;
}

std::vector<std::string> builtin_algebra_names() {
  return {"quaternion", "complex", "split-complex", "dual", "mat2"};
}

Algebra algebra_from_json_string(const std::string& text, const Tolerance& tol) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("algebra JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("algebra JSON: top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw ParseError("algebra JSON: missing integer field \"dim\"");
  const int n = doc["dim"].get<int>();
  if (n < 1) throw ParseError("algebra JSON: \"dim\" must be at least 1");
  if (!doc.contains("basis") || !doc["basis"].is_array())
    throw ParseError("algebra JSON: missing array field \"basis\"");
  if (doc["basis"].size() != std::size_t(n))
    throw ParseError("algebra JSON: \"basis\" has " +
                     std::to_string(doc["basis"].size()) + " entries, expected " +
                     std::to_string(n));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < doc["basis"].size(); ++i) {
    if (!doc["basis"][i].is_string())
      throw ParseError("algebra JSON: basis[" + std::to_string(i) +
                       "] is not a string");
    labels.push_back(doc["basis"][i].get<std::string>());
  }
  if (!doc.contains("components") || !doc["components"].is_array())
    throw ParseError("algebra JSON: missing array field \"components\"");
  const auto& comp = doc["components"];
  if (comp.size() != std::size_t(n))
    throw ParseError("algebra JSON: components has " + std::to_string(comp.size()) +
                     " slabs, expected " + std::to_string(n));
  StructureTensor t(n);
  for (int i = 0; i < n; ++i) {
    if (!comp[i].is_array() || comp[i].size() != std::size_t(n))
      throw ParseError("algebra JSON: components[" + std::to_string(i) +
                       "] must be an array of " + std::to_string(n) + " rows");
    for (int j = 0; j < n; ++j) {
      const auto& row = comp[i][j];
      if (!row.is_array() || row.size() != std::size_t(n))
        throw ParseError("algebra JSON: components[" + std::to_string(i) + "][" +
                         std::to_string(j) + "] must be an array of " +
                         std::to_string(n) + " numbers");
      for (int k = 0; k < n; ++k) {
        if (!row[k].is_number())
          throw ParseError("algebra JSON: components[" + std::to_string(i) + "][" +
                           std::to_string(j) + "][" + std::to_string(k) +
                           "] is not a number");
        t.at(i, j, k) = row[k].get<double>();
      }
    }
  }
  return Algebra(t, std::move(labels), tol);
}

Algebra algebra_from_json_file(const std::string& path, const Tolerance& tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("algebra JSON: cannot open file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return algebra_from_json_string(buffer.str(), tol);
}

std::string algebra_to_json_string(const Algebra& alg) {
  nlohmann::json doc;
  const int n = alg.dim();
  doc["dim"] = n;
  doc["basis"] = alg.basis_labels();
  auto comp = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    auto slab = nlohmann::json::array();
    for (int j = 0; j < n; ++j) {
      auto row = nlohmann::json::array();
      for (int k = 0; k < n; ++k) row.push_back(alg.tensor()(i, j, k));
      slab.push_back(row);
    }
    comp.push_back(slab);
  }
  doc["components"] = comp;
  return doc.dump(2);
}

}  // namespace quatmetric
