#pragma once

#include <utility>
#include <vector>

#include "lhk/geometry.hpp"
#include "lhk/hyperops.hpp"
#include "lhk/profiles.hpp"
#include "lhk/quadrature.hpp"

namespace lhk::atoms {

/// Admissible (p, q, s) triple with support radius. q may be infinity.
struct AtomSpec {
    double p = 1.0;
    double q = 2.0;
    int s = 0;
    double r = 1.0;

    void validate(double Q) const;
    bool q_is_inf() const;
    /// m_alpha B(e,r)^{1/q - 1/p}: the size-condition bound on ||a||_q.
    double size_bound(double alpha) const;
};

/// An atom with its own grid, an analytic evaluator, and measured metadata.
struct Atom {
    AtomSpec spec;
    double alpha = 0.0;
    hyperops::Evaluator eval;
    quad::PhysPtr grid; // stable address: values.grid points into it
    quad::GridFunction values;

    double q_norm = 0.0;
    double size_ratio = 0.0; // ||a||_q / size bound (1 by construction)
    double p_norm = 0.0;
    double l1_norm = 0.0;
    double linf = 0.0;
    bool exceptional = false; // ||a||_inf <= 1
    double gram_cond = 0.0;
    std::vector<cplx> moments; // against P_s monomials
    double max_moment_rel = 0.0;
};

/// Builds an atom from a seed profile supported in B(e, r): kills all moments
/// against P_s by projecting onto bump-weighted monomials (radius-normalized
/// Gram system), then rescales so the size condition holds with equality.
/// Throws on degenerate seeds (projection annihilates) or an ill-conditioned
/// Gram matrix.
Atom make_atom(const profiles::Profile& seed, const AtomSpec& spec, double alpha, int nx = 160,
               int nt = 160, double gram_cond_limit = 1e12);

/// Wraps an arbitrary evaluator as an Atom (measures only; no projection).
Atom atom_from_function(const hyperops::Evaluator& f, const AtomSpec& spec, double alpha,
                        int nx = 160, int nt = 160);

/// Independent re-validation on a finer, differently-paneled grid.
struct AtomValidation {
    double support_leakage = 0.0; // outside-ball |a| mass / ||a||_1
    double size_ratio = 0.0;
    double max_moment_rel = 0.0;  // max |moment| / ||a||_1
    double p_norm = 0.0;
    bool exceptional = false;
    bool pass = false;

    double moment_tol = 1e-10;
    double size_tol = 1e-8;
    double leak_tol = 1e-12;
};

AtomValidation validate_atom(const Atom& a);

/// Molecular data per the (p,q,s,eps) convention: a = 1-1/p+eps, b = 1-1/q+eps,
/// molecular norm ||M||_q^{a/b} ||M N^{Qb}||_q^{1-a/b}.
struct MoleculeReport {
    double p = 0, q = 0, eps = 0;
    int s = 0;
    double a = 0, b = 0;
    double q_norm = 0;
    double weighted_q_norm = 0;
    double molecule_norm = 0;
    std::vector<cplx> moments;
    double max_moment_rel = 0;
};

MoleculeReport molecule_norm(const quad::PhysicalGrid& g, const quad::GridFunction& M, double p,
                             double q, int s, double eps);

/// Finite combination sum beta_k a_k on a common grid with the H^p proxy norm.
struct AtomicCombination {
    std::vector<cplx> beta;
    double proxy_norm = 0.0; // (sum |beta|^p)^{1/p}
    double beta_l1 = 0.0;
    double measured_lp = 0.0;
    double cq_bound = 0.0; // C_Q^{1/p} * proxy
    quad::PhysPtr grid;
    quad::GridFunction values;
};

AtomicCombination atomic_combination(const std::vector<std::pair<cplx, const Atom*>>& terms,
                                     double p, int nx = 200, int nt = 200);

} // namespace lhk::atoms
