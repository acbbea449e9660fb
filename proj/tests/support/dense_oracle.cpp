#include "support/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace rcq::test {

Matrix identity_matrix(std::size_t dim) {
  Matrix m(dim, std::vector<Complex>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) {
    m[i][i] = 1.0;
  }
  return m;
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t ra = a.size(), rb = b.size();
  Matrix out(ra * rb, std::vector<Complex>(ra * rb, 0.0));
  for (std::size_t i = 0; i < ra; ++i) {
    for (std::size_t j = 0; j < ra; ++j) {
      for (std::size_t k = 0; k < rb; ++k) {
        for (std::size_t l = 0; l < rb; ++l) {
          out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
        }
      }
    }
  }
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t dim = a.size();
  Matrix out(dim, std::vector<Complex>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex aik = a[i][k];
      if (aik == Complex{}) {
        continue;
      }
      for (std::size_t j = 0; j < dim; ++j) {
        out[i][j] += aik * b[k][j];
      }
    }
  }
  return out;
}

}  // namespace

Matrix pauli_matrix(const PauliOperator& p) {
  static const Matrix kI = {{1.0, 0.0}, {0.0, 1.0}};
  static const Matrix kX = {{0.0, 1.0}, {1.0, 0.0}};
  static const Matrix kZ = {{1.0, 0.0}, {0.0, -1.0}};
  Matrix out = {{1.0}};
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    Matrix factor = kI;
    if (p.x(q) && p.z(q)) {
      factor = matmul(kX, kZ);  // X*Z; the i of Y lives in the phase exponent
    } else if (p.x(q)) {
      factor = kX;
    } else if (p.z(q)) {
      factor = kZ;
    }
    out = kron(out, factor);
  }
  static const Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex phase = kPhases[p.phase_exp() & 3];
  for (auto& row : out) {
    for (auto& v : row) {
      v *= phase;
    }
  }
  return out;
}

Matrix density_matrix(const MixedStabilizerState& state) {
  const std::size_t dim = std::size_t{1} << state.num_qubits();
  Matrix rho = identity_matrix(dim);
  for (const auto& g : state.generators()) {
    const Matrix gm = pauli_matrix(g);
    Matrix proj(dim, std::vector<Complex>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        proj[i][j] = 0.5 * ((i == j ? Complex{1.0} : Complex{}) + gm[i][j]);
      }
    }
    rho = matmul(rho, proj);
  }
  Complex trace = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    trace += rho[i][i];
  }
  if (std::abs(trace) < 1e-12) {
    throw std::runtime_error("density matrix has zero trace");
  }
  for (auto& row : rho) {
    for (auto& v : row) {
      v /= trace;
    }
  }
  return rho;
}

Matrix partial_trace(const Matrix& rho, std::size_t n,
                     const std::vector<std::size_t>& keep) {
  std::vector<bool> kept(n, false);
  for (auto q : keep) {
    kept[q] = true;
  }
  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < n; ++q) {
    if (!kept[q]) {
      traced.push_back(q);
    }
  }
  const std::size_t ka = keep.size();
  const std::size_t dim_a = std::size_t{1} << ka;
  const std::size_t dim_b = std::size_t{1} << traced.size();
  // qubit q occupies basis bit (n - 1 - q)
  auto full_index = [&](std::size_t ia, std::size_t ib) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < ka; ++i) {
      if ((ia >> (ka - 1 - i)) & 1) {
        idx |= std::size_t{1} << (n - 1 - keep[i]);
      }
    }
    for (std::size_t i = 0; i < traced.size(); ++i) {
      if ((ib >> (traced.size() - 1 - i)) & 1) {
        idx |= std::size_t{1} << (n - 1 - traced[i]);
      }
    }
    return idx;
  };
  Matrix out(dim_a, std::vector<Complex>(dim_a, 0.0));
  for (std::size_t i = 0; i < dim_a; ++i) {
    for (std::size_t j = 0; j < dim_a; ++j) {
      Complex sum = 0.0;
      for (std::size_t b = 0; b < dim_b; ++b) {
        sum += rho[full_index(i, b)][full_index(j, b)];
      }
      out[i][j] = sum;
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(Matrix a) {
  const std::size_t dim = a.size();
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        off += std::norm(a[p][q]);
      }
    }
    if (off < 1e-26) {
      break;
    }
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const Complex apq = a[p][q];
        if (std::abs(apq) < 1e-15) {
          continue;
        }
        // Phase rotation making a_pq real, then a real Jacobi rotation.
        const Complex u = apq / std::abs(apq);
        const double app = a[p][p].real();
        const double aqq = a[q][q].real();
        const double tau = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Combined unitary W = (phase on q) * (real rotation); A <- W^dag A W.
        for (std::size_t r = 0; r < dim; ++r) {
          const Complex vp = a[r][p];
          const Complex vq = a[r][q];
          a[r][p] = c * vp - s * std::conj(u) * vq;
          a[r][q] = s * vp + c * std::conj(u) * vq;
        }
        for (std::size_t r = 0; r < dim; ++r) {
          const Complex vp = a[p][r];
          const Complex vq = a[q][r];
          a[p][r] = c * vp - s * u * vq;
          a[q][r] = s * vp + c * u * vq;
        }
      }
    }
  }
  std::vector<double> eig(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    eig[i] = a[i][i].real();
  }
  return eig;
}

double von_neumann_entropy_bits(const Matrix& rho) {
  double entropy = 0.0;
  for (double lambda : hermitian_eigenvalues(rho)) {
    if (lambda > 1e-12) {
      entropy -= lambda * std::log2(lambda);
    }
  }
  return entropy;
}

double born_probability_plus(const Matrix& rho, const PauliOperator& p) {
  const Matrix pm = pauli_matrix(p);
  Complex trace = 0.0;
  const std::size_t dim = rho.size();
  for (std::size_t i = 0; i < dim; ++i) {
    trace += rho[i][i];
    for (std::size_t k = 0; k < dim; ++k) {
      trace += pm[i][k] * rho[k][i];
    }
  }
  return 0.5 * trace.real();
}

}  // namespace rcq::test
