#include "lasgap/lifted_sdp.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace lasgap {

void LiftedSDP::validate() const {
  auto check_key = [this](const SubsetKey& k) {
    if (k.size() > 2 * r) {
      throw std::invalid_argument("LiftedSDP: moment key " + k.to_string() +
                                  " exceeds size 2r");
    }
    if (!k.empty() && k.max_var() >= n) {
      throw std::out_of_range("LiftedSDP: moment key " + k.to_string() + " out of range");
    }
  };
  for (const auto& b : blocks) {
    if (b.kind == BlockKind::nonneg) {
      for (const auto& k : b.keys) check_key(k);
      continue;
    }
    const uint32_t d = b.kind == BlockKind::shifted ? b.shift.degree() : 0;
    for (const auto& s : b.basis) {
      for (const auto& t : b.basis) {
        if (s.union_with(t).size() + d > 2 * r) {
          throw std::invalid_argument("LiftedSDP: block " + b.name +
                                      " references moments beyond size 2r");
        }
      }
    }
  }
  for (const auto& eq : equalities) {
    if (eq.terms.empty()) {
      throw std::invalid_argument("LiftedSDP: empty equality row " + eq.label);
    }
    for (const auto& [k, c] : eq.terms) check_key(k);
  }
  for (const auto& [k, c] : objective) check_key(k);
}

LiftedSDP build_lifted_sdp(const BinaryProgram& prog, uint32_t r) {
  prog.validate();
  const uint32_t d_obj = prog.objective.degree();
  const uint32_t d_con = prog.constraint.degree();
  const uint32_t d = std::max(d_obj, d_con);
  if (r < d) {
    throw std::invalid_argument("build_lifted_sdp: round " + std::to_string(r) +
                                " below program degree " + std::to_string(d));
  }

  LiftedSDP sdp;
  sdp.n = prog.n;
  sdp.r = r;
  sdp.sense = prog.sense;
  sdp.source = "lifted";

  SymbolicBlock moment;
  moment.kind = BlockKind::moment;
  moment.basis = enumerate_subsets(prog.n, r);
  moment.name = "moment";
  sdp.blocks.push_back(std::move(moment));

  if (!prog.constraint.is_zero()) {
    SymbolicBlock shifted;
    shifted.kind = BlockKind::shifted;
    shifted.shift = prog.constraint;
    shifted.basis = enumerate_subsets(prog.n, r - (d_con + 1) / 2);
    shifted.name = "shifted";
    sdp.blocks.push_back(std::move(shifted));
  }

  for (const auto& [k, c] : prog.objective.terms()) sdp.objective[k] += c;
  sdp.validate();
  return sdp;
}

void add_moment_equalities(LiftedSDP& sdp, const MultilinearPoly& q,
                           const std::string& label_prefix) {
  const uint32_t d = q.degree();
  if (d > 2 * sdp.r) {
    throw std::invalid_argument("add_moment_equalities: polynomial degree exceeds 2r");
  }
  for (const auto& s : enumerate_subsets(sdp.n, 2 * sdp.r - d)) {
    MomentEquality eq;
    for (const auto& [t, c] : q.terms()) {
      eq.terms[s.union_with(t)] += c;
    }
    for (auto it = eq.terms.begin(); it != eq.terms.end();) {
      it = it->second == 0 ? eq.terms.erase(it) : std::next(it);
    }
    if (eq.terms.empty()) continue;
    eq.rhs = Rational(0);
    eq.label = label_prefix + s.to_string();
    sdp.equalities.push_back(std::move(eq));
  }
}

namespace {

LiftedSDP build_psi_common(const Graph& g, const Rational& tau_prime, uint32_t r,
                           const std::string& source) {
  const uint32_t n = g.num_vertices;
  LiftedSDP sdp;
  sdp.n = n;
  sdp.r = r;
  sdp.sense = Sense::minimize;
  sdp.source = source;
  sdp.tau_prime = tau_prime;

  SymbolicBlock moment;
  moment.kind = BlockKind::moment;
  moment.basis = enumerate_subsets(n, r);
  moment.name = "moment";
  sdp.blocks.push_back(std::move(moment));

  SymbolicBlock nonneg;
  nonneg.kind = BlockKind::nonneg;
  nonneg.keys = enumerate_subsets(n, 2 * r);
  nonneg.name = "nonneg";
  sdp.blocks.push_back(std::move(nonneg));

  MultilinearPoly balance =
      MultilinearPoly::balance_polynomial(n, tau_prime * Rational(n));
  add_moment_equalities(sdp, balance, "balance ");

  for (const auto& [u, v] : g.edges) {
    sdp.objective[SubsetKey::singleton(u)] += 1;
    sdp.objective[SubsetKey::singleton(v)] += 1;
    sdp.objective[SubsetKey::singleton(u).with(v)] += -2;
  }
  return sdp;
}

}  // namespace

std::vector<std::pair<Rational, LiftedSDP>> build_psi1(const Graph& g, const Rational& tau,
                                                       uint32_t r) {
  if (tau <= 0 || tau > Rational(1, 2)) {
    throw std::invalid_argument("build_psi1: tau must lie in (0, 1/2]");
  }
  if (r < 1) throw std::invalid_argument("build_psi1: r must be at least 1");
  const uint32_t n = g.num_vertices;
  const long long k_lo = ceil_ll(tau * Rational(n));
  const long long k_hi = floor_ll((Rational(1) - tau) * Rational(n));
  if (k_lo > k_hi) throw std::invalid_argument("build_psi1: empty tau' grid");

  std::vector<std::pair<Rational, LiftedSDP>> family;
  for (long long k = k_lo; k <= k_hi; ++k) {
    Rational tp(k, n);
    LiftedSDP sdp = build_psi_common(g, tp, r, "psi1");
    sdp.validate();
    family.emplace_back(std::move(tp), std::move(sdp));
  }
  return family;
}

std::vector<std::pair<Rational, LiftedSDP>> build_psi2(const Graph& g, uint32_t r) {
  const uint32_t n = g.num_vertices;
  if (n < 2) throw std::invalid_argument("build_psi2: need at least 2 vertices");
  if (r < 1) throw std::invalid_argument("build_psi2: r must be at least 1");

  std::vector<std::pair<Rational, LiftedSDP>> family;
  for (uint32_t k = 1; k <= n / 2; ++k) {
    Rational tau(k, n);
    LiftedSDP sdp = build_psi_common(g, tau, r, "psi2");
    // 1/(|V|^2 tau (1-tau)) = 1/(k (n-k))
    const Rational scale(1, static_cast<long long>(k) * (n - k));
    for (auto& [key, c] : sdp.objective) c *= scale;
    sdp.validate();
    family.emplace_back(std::move(tau), std::move(sdp));
  }
  return family;
}

namespace {

// Positions of moment keys inside the realized block-diagonal matrix. The
// canonical position of a key is its first appearance inside a moment block.
struct Realization {
  std::map<SubsetKey, sdp::SdpTerm> canonical;

  const sdp::SdpTerm& at(const SubsetKey& k) const {
    auto it = canonical.find(k);
    if (it == canonical.end()) {
      throw std::logic_error("realization: no canonical position for " + k.to_string());
    }
    return it->second;
  }
};

// Linear coefficient -> stored SDPA-convention coefficient.
void push_term(sdp::SdpRow& row, const sdp::SdpTerm& pos, double linear_coeff) {
  const double stored = pos.i == pos.j ? linear_coeff : linear_coeff / 2.0;
  row.terms.push_back({pos.block, pos.i, pos.j, stored});
}

}  // namespace

sdp::SdpProblem to_sdp_problem(const LiftedSDP& lifted) {
  lifted.validate();
  sdp::SdpProblem p;
  p.sense = lifted.sense;

  Realization real;
  std::vector<sdp::SdpRow> tie_rows;

  for (size_t bi = 0; bi < lifted.blocks.size(); ++bi) {
    const SymbolicBlock& b = lifted.blocks[bi];
    p.blocks.push_back({b.dim(), b.kind == BlockKind::nonneg});
    if (b.kind != BlockKind::moment) continue;
    const int dim = b.dim();
    for (int i = 0; i < dim; ++i) {
      for (int j = i; j < dim; ++j) {
        SubsetKey key = b.basis[static_cast<size_t>(i)].union_with(
            b.basis[static_cast<size_t>(j)]);
        sdp::SdpTerm pos{static_cast<int>(bi), i, j, 0.0};
        auto [it, inserted] = real.canonical.emplace(std::move(key), pos);
        if (!inserted) {
          sdp::SdpRow row;
          push_term(row, pos, 1.0);
          push_term(row, it->second, -1.0);
          row.rhs = 0.0;
          row.label = "tie " + it->first.to_string();
          tie_rows.push_back(std::move(row));
        }
      }
    }
  }

  {
    sdp::SdpRow row;
    push_term(row, real.at(SubsetKey::empty_set()), 1.0);
    row.rhs = 1.0;
    row.label = "normalize";
    p.constraints.push_back(std::move(row));
  }
  for (auto& row : tie_rows) p.constraints.push_back(std::move(row));

  for (size_t bi = 0; bi < lifted.blocks.size(); ++bi) {
    const SymbolicBlock& b = lifted.blocks[bi];
    if (b.kind == BlockKind::shifted) {
      const int dim = b.dim();
      for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
          SubsetKey su = b.basis[static_cast<size_t>(i)].union_with(
              b.basis[static_cast<size_t>(j)]);
          sdp::SdpRow row;
          push_term(row, {static_cast<int>(bi), i, j, 0.0}, 1.0);
          MomentForm combo;
          for (const auto& [t, c] : b.shift.terms()) {
            combo[su.union_with(t)] -= c;
          }
          for (const auto& [key, c] : combo) {
            if (c == 0) continue;
            push_term(row, real.at(key), to_double(c));
          }
          row.rhs = 0.0;
          row.label = "shift " + b.name + " (" + std::to_string(i) + "," +
                      std::to_string(j) + ")";
          p.constraints.push_back(std::move(row));
        }
      }
    } else if (b.kind == BlockKind::nonneg) {
      for (size_t k = 0; k < b.keys.size(); ++k) {
        sdp::SdpRow row;
        const int kk = static_cast<int>(k);
        push_term(row, {static_cast<int>(bi), kk, kk, 0.0}, 1.0);
        push_term(row, real.at(b.keys[k]), -1.0);
        row.rhs = 0.0;
        row.label = "nonneg tie " + b.keys[k].to_string();
        p.constraints.push_back(std::move(row));
      }
    }
  }

  for (const auto& eq : lifted.equalities) {
    sdp::SdpRow row;
    for (const auto& [key, c] : eq.terms) {
      push_term(row, real.at(key), to_double(c));
    }
    row.rhs = to_double(eq.rhs);
    row.label = eq.label;
    p.constraints.push_back(std::move(row));
  }

  for (const auto& [key, c] : lifted.objective) {
    if (c == 0) continue;
    sdp::SdpRow tmp;
    push_term(tmp, real.at(key), to_double(c));
    p.objective.push_back(tmp.terms.front());
  }

  for (const auto& [key, pos] : real.canonical) {
    p.variable_names.push_back(key.to_string());
    p.variable_positions.push_back(pos);
  }

  p.validate();
  return p;
}

MomentVector extract_moments(const LiftedSDP& lifted, const sdp::SdpSolution& solution) {
  MomentVector y;
  y.n = lifted.n;
  y.round = lifted.r;
  size_t moment_block = lifted.blocks.size();
  for (size_t bi = 0; bi < lifted.blocks.size(); ++bi) {
    if (lifted.blocks[bi].kind == BlockKind::moment) {
      moment_block = bi;
      break;
    }
  }
  if (moment_block == lifted.blocks.size()) {
    throw std::logic_error("extract_moments: no moment block");
  }
  const auto& basis = lifted.blocks[moment_block].basis;
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i; j < basis.size(); ++j) {
      SubsetKey key = basis[i].union_with(basis[j]);
      double v = solution.entry(static_cast<int>(moment_block), static_cast<int>(i),
                                static_cast<int>(j));
      y.values.emplace(std::move(key), Rational(v));
    }
  }
  return y;
}

MomentFeasReport check_moments(const LiftedSDP& lifted, const MomentVector& y) {
  MomentFeasReport report;
  for (const auto& eq : lifted.equalities) {
    Rational total(0);
    for (const auto& [key, c] : eq.terms) total += c * y.at(key);
    total -= eq.rhs;
    Rational mag = total < 0 ? -total : total;
    if (mag > report.max_equality_violation) {
      report.max_equality_violation = mag;
      report.worst_equality = eq.label;
    }
  }

  bool have_nonneg = false;
  for (const auto& b : lifted.blocks) {
    if (b.kind == BlockKind::nonneg) {
      for (const auto& k : b.keys) {
        const Rational& v = y.at(k);
        if (!have_nonneg || v < report.min_nonneg) {
          report.min_nonneg = v;
          have_nonneg = true;
        }
      }
      continue;
    }
    const auto dim = static_cast<Eigen::Index>(b.basis.size());
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = i; j < dim; ++j) {
        SubsetKey u = b.basis[static_cast<size_t>(i)].union_with(
            b.basis[static_cast<size_t>(j)]);
        Rational v(0);
        if (b.kind == BlockKind::moment) {
          v = y.at(u);
        } else {
          for (const auto& [t, c] : b.shift.terms()) v += c * y.at(u.union_with(t));
        }
        m(i, j) = to_double(v);
        m(j, i) = m(i, j);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    report.block_min_eigs.push_back(dim > 0 ? eig.eigenvalues().minCoeff() : 0.0);
  }

  for (const auto& [key, c] : lifted.objective) {
    report.objective += c * y.at(key);
  }
  return report;
}

bool MomentFeasReport::feasible(double tol) const {
  if (to_double(max_equality_violation) > tol) return false;
  if (to_double(min_nonneg) < -tol) return false;
  for (double e : block_min_eigs) {
    if (e < -tol) return false;
  }
  return true;
}

}  // namespace lasgap
